"""The analysis report document."""

import json
from pathlib import Path
from typing import Dict, Literal, Optional, Tuple, Union

from pydantic import Field, ValidationError

from soa_threat_toolkit.analysis.prefixes import EntryGroup, PlacementHint
from soa_threat_toolkit.analysis.summary import Summary
from soa_threat_toolkit.core.model import InformationFlow, Record
from soa_threat_toolkit.core.tara import Asset, DamageScenario, ThreatScenario, TraceMatrix, TraceRow
from soa_threat_toolkit.paths.enumeration import AttackPath
from soa_threat_toolkit.utils.constants import SCHEMA_VERSION, Profile
from soa_threat_toolkit.utils.exceptions import ReportError


class TaraSection(Record):
    assets: Tuple[Asset, ...] = ()
    damage_scenarios: Tuple[DamageScenario, ...] = ()
    threat_scenarios: Tuple[ThreatScenario, ...] = ()


class AtomCounts(Record):
    wrt: int = 0
    rd: int = 0
    reach: int = 0
    attack: int = 0
    attacked_topics: Tuple[str, ...] = ()


class Report(Record):
    """Everything one analysis run produced, in canonical order."""

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    model_digest: str
    safety_digest: Optional[str] = None
    profile: str
    asset_topics: Tuple[str, ...] = ()
    derived_flows: Optional[Tuple[InformationFlow, ...]] = None
    tara: TaraSection = TaraSection()
    atom_counts: Dict[str, AtomCounts] = {}
    attack_paths: Tuple[AttackPath, ...] = ()
    entry_groups: Dict[str, Tuple[EntryGroup, ...]] = {}
    placement_hints: Dict[str, Tuple[PlacementHint, ...]] = {}
    trace_matrix: TraceMatrix = TraceMatrix()
    summary: Summary = Summary()

    def paths_for(self, intruder: str) -> Tuple[AttackPath, ...]:
        return tuple(p for p in self.attack_paths if p.intruder.value == intruder)

    def has_outsider_analysis(self) -> bool:
        return Profile.OUTSIDER in self.entry_groups

    def trace_row(self, loss_scenario_id: str) -> Optional[TraceRow]:
        return self.trace_matrix.row(loss_scenario_id)

    def asset(self, asset_id: str) -> Optional[Asset]:
        return next((a for a in self.tara.assets if a.id == asset_id), None)


def render_report(report: Report) -> str:
    """Serialize a report; identical reports give identical text."""
    data = report.model_dump(mode="json", by_alias=True)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(report: Report, path: Union[str, Path]) -> None:
    Path(path).write_text(render_report(report), encoding="utf-8")


def read_report(path: Union[str, Path]) -> Report:
    """Load a report written by write_report.

    Raises:
        ReportError: If the file is missing, malformed or of another schema.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ReportError(f"Cannot read report {path}: {e.strerror or e}")
    try:
        return Report.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ReportError(f"Report {path} is not valid JSON: {e.msg}")
    except ValidationError as e:
        raise ReportError(f"Report {path} does not match the report schema", [str(err["loc"]) for err in e.errors()])
