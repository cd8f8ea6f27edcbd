"""Command-line interface: ``soa-threat``."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import structlog

from soa_threat_toolkit.core.facts import to_facts
from soa_threat_toolkit.core.loader import load_model_file, parse_model
from soa_threat_toolkit.core.model import validate, with_derived_flows
from soa_threat_toolkit.delivery.delivery_manager import DeliveryManager
from soa_threat_toolkit.engine.datalog import dump_program
from soa_threat_toolkit.engine.intruder import profiles_for, run_profiles
from soa_threat_toolkit.reporting.card_builder import CardValidator, ReportCardBuilder
from soa_threat_toolkit.reporting.pipeline import AnalysisOptions, parse_asset_selector, run_analysis
from soa_threat_toolkit.reporting.report import read_report, write_report
from soa_threat_toolkit.reporting.tables import (
    pair_table,
    prefix_table,
    summary_table,
    trace_listing,
    violations_listing,
)
from soa_threat_toolkit.utils.constants import ExitCode, Profile
from soa_threat_toolkit.utils.exceptions import (
    AsilMismatchError,
    DeliveryError,
    InvalidModelError,
    ModelParseError,
    ModelReferenceError,
    ModelSchemaError,
    OracleBudgetExceeded,
    ReportError,
    SafetyParseError,
    SafetyReferenceError,
    SafetySchemaError,
    SelfCheckError,
    ToolkitError,
)
from soa_threat_toolkit.utils.logging import configure_logging

logger = structlog.get_logger(__name__)

INPUT_ERRORS = (
    ModelParseError,
    ModelSchemaError,
    ModelReferenceError,
    SafetyParseError,
    SafetySchemaError,
    SafetyReferenceError,
    AsilMismatchError,
    ReportError,
)


def cmd_validate(args) -> int:
    model = parse_model(Path(args.model).read_bytes())
    violations = validate(model)
    sys.stdout.write(violations_listing(violations))
    return ExitCode.VIOLATION if violations else ExitCode.OK


def cmd_analyze(args) -> int:
    options = AnalysisOptions(
        model_path=args.model,
        safety_path=args.safety,
        profile=args.profile,
        assets=parse_asset_selector(args.assets),
        self_check=args.self_check,
        derive_flows=args.derive_flows,
        timings=not args.no_timings,
    )
    report = run_analysis(options)
    if args.out:
        write_report(report, args.out)
    sys.stdout.write(summary_table(report))
    return ExitCode.OK


def cmd_trace(args) -> int:
    report = read_report(args.report)
    row = report.trace_row(args.loss_scenario)
    if row is None:
        sys.stderr.write(f"error: unknown loss scenario '{args.loss_scenario}'\n")
        return ExitCode.VIOLATION
    sys.stdout.write(trace_listing(row, report))
    if row.gap and args.fail_on_gap:
        return ExitCode.VIOLATION
    return ExitCode.OK


def cmd_prefixes(args) -> int:
    report = read_report(args.report)
    profile = Profile.INSIDER if args.insider else Profile.OUTSIDER
    if profile not in report.entry_groups:
        sys.stderr.write(f"error: report has no {profile} analysis\n")
        return ExitCode.VIOLATION
    heading = "Publisher" if args.insider else "Public element"
    sys.stdout.write(prefix_table(report.entry_groups[profile], report.placement_hints.get(profile, ()), heading))
    sys.stdout.write("\n" + pair_table(getattr(report.summary, profile).per_pair))
    return ExitCode.OK


def cmd_dump(args) -> int:
    model = load_model_file(args.model)
    violations = validate(model)
    if violations:
        raise InvalidModelError(f"Model has {len(violations)} violations", [str(v) for v in violations])
    if args.derive_flows:
        model, _ = with_derived_flows(model)
    facts = to_facts(model)
    results = run_profiles(facts, args.profile)
    for profile in profiles_for(args.profile):
        result = results[profile.kind]
        sys.stdout.write(f"% profile {profile.kind}\n")
        sys.stdout.write(dump_program(profile.program(profile.rules), facts, result.derivations))
    return ExitCode.OK


def cmd_notify(args) -> int:
    report = read_report(args.report)
    card = ReportCardBuilder().build(report)
    if args.dry_run:
        validation = CardValidator().validate(card)
        sys.stdout.write(ReportCardBuilder.get_json(card) + "\n")
        sys.stderr.write(f"card size {validation['size']:.2f}KB, valid={validation['valid']}\n")
        return ExitCode.OK if validation["valid"] else ExitCode.VIOLATION
    result = DeliveryManager(webhook_url=args.webhook).send(card)
    if not result["success"]:
        raise DeliveryError(result["message"], result["status_code"])
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soa-threat",
        description="Threat analysis and attack path enumeration for publish/subscribe vehicle architectures.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model document")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run the full analysis and write a report")
    p.add_argument("--model", required=True)
    p.add_argument("--safety")
    p.add_argument("--profile", choices=Profile.ALL, default=Profile.BOTH)
    p.add_argument("--assets", default="auto", help="'auto' (loss scenario messages) or t1,t2,...")
    p.add_argument("--out", help="report file")
    p.add_argument("--self-check", action="store_true", help="compare against the brute-force oracle")
    p.add_argument("--derive-flows", action="store_true", help="add over-approximated information flows")
    p.add_argument("--no-timings", action="store_true", help="omit wall-clock timings from the report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("trace", help="show the traceability row of a loss scenario")
    p.add_argument("report")
    p.add_argument("loss_scenario")
    p.add_argument("--fail-on-gap", action="store_true", help="exit 1 when the row is a gap")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("prefixes", help="show entry groups, prefixes, placement hints and potential attacks")
    p.add_argument("report")
    p.add_argument("--insider", action="store_true", help="group insider paths instead")
    p.set_defaults(func=cmd_prefixes)

    p = sub.add_parser("dump", help="print rules, facts and derived atoms")
    p.add_argument("--model", required=True)
    p.add_argument("--profile", choices=Profile.ALL, default=Profile.BOTH)
    p.add_argument("--derive-flows", action="store_true")
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("notify", help="post a report summary card to a Teams webhook")
    p.add_argument("report")
    p.add_argument("--webhook")
    p.add_argument("--dry-run", action="store_true", help="print the card instead of sending it")
    p.set_defaults(func=cmd_notify)
    return parser


def _fail(error: ToolkitError, code: int) -> int:
    sys.stderr.write(f"error: {error.message}\n")
    details = error.details if isinstance(error.details, list) else [f"{k}: {v}" for k, v in error.details.items()]
    for detail in details:
        sys.stderr.write(f"  {detail}\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    if args.command == "notify" and not args.dry_run and not args.webhook:
        parser.error("notify needs --webhook unless --dry-run is given")

    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        return _fail(e, ExitCode.INPUT_ERROR)
    except (InvalidModelError, DeliveryError) as e:
        return _fail(e, ExitCode.VIOLATION)
    except (SelfCheckError, OracleBudgetExceeded) as e:
        return _fail(e, ExitCode.INTERNAL_ERROR)
    except OSError as e:
        sys.stderr.write(f"error: {e.filename or ''}: {e.strerror or e}\n")
        return ExitCode.INPUT_ERROR
    except ToolkitError as e:
        return _fail(e, ExitCode.INTERNAL_ERROR)
    except Exception as e:  # pragma: no cover
        logger.exception("unexpected_failure")
        sys.stderr.write(f"internal error: {e}\n")
        return ExitCode.INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
