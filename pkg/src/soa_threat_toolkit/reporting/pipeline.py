"""Orchestration of one analysis run."""

import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import structlog

from soa_threat_toolkit.analysis.prefixes import group_by_entry, placement_hints
from soa_threat_toolkit.analysis.summary import summarize
from soa_threat_toolkit.core.facts import FactBase, to_facts
from soa_threat_toolkit.core.loader import digest, load_model_file, model_digest
from soa_threat_toolkit.core.model import ModelIndex, SystemModel, validate, with_derived_flows
from soa_threat_toolkit.core.safety import SafetyModel, load_safety
from soa_threat_toolkit.core.tara import (
    TaraConfig,
    check_traceability,
    derive_assets,
    derive_damage_scenarios,
    derive_threat_scenarios,
)
from soa_threat_toolkit.engine.intruder import IntruderResult, run_profiles
from soa_threat_toolkit.paths.enumeration import AttackPath, enumerate_paths
from soa_threat_toolkit.paths.oracle import PathOracle, oracle_enumerate
from soa_threat_toolkit.reporting.report import AtomCounts, Report, TaraSection
from soa_threat_toolkit.utils.constants import DEFAULT_ORACLE_NODE_BUDGET, Predicate, Profile
from soa_threat_toolkit.utils.exceptions import InvalidModelError, ModelReferenceError, SelfCheckError

logger = structlog.get_logger(__name__)

AUTO_ASSETS = "auto"


@dataclass(frozen=True)
class AnalysisOptions:
    """Inputs and switches of one analysis run."""

    model_path: Union[str, Path]
    safety_path: Optional[Union[str, Path]] = None
    profile: str = Profile.BOTH
    assets: Union[str, Tuple[str, ...]] = AUTO_ASSETS
    self_check: bool = False
    derive_flows: bool = False
    timings: bool = True
    oracle_node_budget: int = DEFAULT_ORACLE_NODE_BUDGET
    tara: Optional[TaraConfig] = None


def parse_asset_selector(text: str) -> Union[str, Tuple[str, ...]]:
    """``auto`` or a comma separated topic list."""
    if text.strip() == AUTO_ASSETS:
        return AUTO_ASSETS
    return tuple(sorted({t.strip() for t in text.split(",") if t.strip()}))


@contextmanager
def _timed(timings: Dict[str, float], phase: str) -> Iterator[None]:
    start = time.perf_counter()
    yield
    timings[phase] = round((time.perf_counter() - start) * 1000, 3)


def resolve_assets(selector, model: SystemModel, safety: SafetyModel) -> Tuple[str, ...]:
    if selector == AUTO_ASSETS:
        return tuple(safety.message_topics())
    known = ModelIndex(model).topics
    unknown = [t for t in selector if t not in known]
    if unknown:
        raise ModelReferenceError(f"Asset topics not declared in the model: {', '.join(unknown)}", unknown)
    return tuple(selector)


def self_check(facts: FactBase, results: Dict[str, IntruderResult], paths: Sequence[AttackPath], assets, budget: int) -> None:
    """Compare engine output against the brute-force oracle.

    Raises:
        SelfCheckError: On any reach, attack, derivation or path difference.
    """
    problems: List[str] = []
    oracle = PathOracle(facts, budget)
    for profile, result in results.items():
        expected_reach = oracle.reach(profile)
        if set(result.reach.ports) != expected_reach:
            diff = sorted(set(result.reach.ports) ^ expected_reach)
            problems.append(f"{profile}: reach differs on {diff}")
        expected_attacks = oracle.attacks(profile)
        if set(result.attacks.topics) != expected_attacks:
            problems.append(f"{profile}: attacks differ on {sorted(set(result.attacks.topics) ^ expected_attacks)}")
        broken = result.replay(facts)
        if broken:
            problems.append(f"{profile}: {len(broken)} derivations do not replay, first {broken[0]}")

    profile = Profile.BOTH if len(results) > 1 else next(iter(results))
    expected_paths = set(oracle_enumerate(facts, profile, assets, budget))
    if set(paths) != expected_paths:
        missing = len(expected_paths - set(paths))
        extra = len(set(paths) - expected_paths)
        problems.append(f"paths differ: {missing} missing, {extra} unexpected")
    if problems:
        raise SelfCheckError("Engine and oracle disagree", problems)
    logger.info("self_check_passed", profiles=sorted(results), paths=len(paths))


def _atom_counts(result: IntruderResult) -> AtomCounts:
    derived = result.derivations
    return AtomCounts(
        wrt=sum(1 for a in derived if a.predicate == Predicate.WRT),
        rd=sum(1 for a in derived if a.predicate == Predicate.RD),
        reach=sum(1 for a in derived if a.predicate == Predicate.REACH),
        attack=sum(1 for a in derived if a.predicate == Predicate.ATTACK),
        attacked_topics=tuple(sorted(result.attacks.topics)),
    )


def analyze(
    model: SystemModel,
    safety: SafetyModel,
    options: AnalysisOptions,
    safety_digest: Optional[str] = None,
) -> Report:
    """Run TARA derivation, intruder evaluation, path enumeration and analysis.

    Args:
        model: A loaded model.
        safety: Loss scenarios resolved against the model.
        options: Run switches.
        safety_digest: Digest of the safety document, recorded in the report.

    Returns:
        The report. Timings are omitted when options.timings is false.

    Raises:
        InvalidModelError: If the model has violations.
        ModelReferenceError: If an explicit asset topic is undeclared.
        SelfCheckError: If self-check is on and the oracle disagrees.
    """
    violations = validate(model)
    if violations:
        raise InvalidModelError(f"Model has {len(violations)} violations", [str(v) for v in violations])

    input_digest = model_digest(model)
    derived_flows = None
    if options.derive_flows:
        model, added = with_derived_flows(model)
        derived_flows = tuple(added)
        logger.info("flows_derived", added=len(added))

    assets_topics = resolve_assets(options.assets, model, safety)
    assets = derive_assets(model, safety, options.tara)
    damages = derive_damage_scenarios(safety)
    threats = derive_threat_scenarios(assets, safety)

    timings: Dict[str, float] = {}
    facts = to_facts(model)
    with _timed(timings, "reachability"):
        results = run_profiles(facts, options.profile)
    with _timed(timings, "paths"):
        paths = enumerate_paths(facts, results, assets_topics)
    if options.self_check:
        with _timed(timings, "self_check"):
            self_check(facts, results, paths, assets_topics, options.oracle_node_budget)

    groups = {}
    hints = {}
    for profile in results:
        groups[profile] = tuple(group_by_entry(p for p in paths if p.intruder.value == profile))
        hints[profile] = tuple(placement_hints(groups[profile]))

    trace = check_traceability(safety, assets, damages, threats, paths)
    report = Report(
        model_digest=input_digest,
        safety_digest=safety_digest,
        profile=options.profile,
        asset_topics=assets_topics,
        derived_flows=derived_flows,
        tara=TaraSection(assets=tuple(assets), damage_scenarios=tuple(damages), threat_scenarios=tuple(threats)),
        atom_counts={profile: _atom_counts(result) for profile, result in results.items()},
        attack_paths=tuple(paths),
        entry_groups=groups,
        placement_hints=hints,
        trace_matrix=trace,
        summary=summarize(paths, timings if options.timings else None),
    )
    logger.info(
        "analysis_finished",
        outsider=report.summary.outsider_count,
        insider=report.summary.insider_count,
        gaps=trace.gaps,
    )
    return report


def run_analysis(options: AnalysisOptions) -> Report:
    """Load the input files named by options and analyze them."""
    model = load_model_file(options.model_path)
    safety = SafetyModel()
    safety_digest = None
    if options.safety_path is not None:
        raw = Path(options.safety_path).read_bytes()
        safety = load_safety(raw, model)
        safety_digest = digest(raw.decode("utf-8"))
    return analyze(model, safety, options, safety_digest)
