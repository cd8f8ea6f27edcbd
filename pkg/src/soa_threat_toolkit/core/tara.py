"""Security artifacts derived from safety artifacts."""

import hashlib
from collections import defaultdict
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import structlog
from pydantic import Field, field_validator

from soa_threat_toolkit.core.model import ModelIndex, Record, SystemModel
from soa_threat_toolkit.core.safety import Controllability, FailureMode, SafetyModel, Severity
from soa_threat_toolkit.utils.constants import (
    DEFAULT_FAILURE_MODE_PROPERTIES,
    IMPACT_BY_SEVERITY,
    STRIDE_MAP,
)

logger = structlog.get_logger(__name__)


class AssetKind(str, Enum):
    FUNCTION = "function"
    TOPIC = "topic"
    HARDWARE = "hardware"


class SecurityProperty(str, Enum):
    INTEGRITY = "integrity"
    AVAILABILITY = "availability"


class Impact(str, Enum):
    SEVERE = "severe"
    MODERATE = "moderate"
    NEGLIGIBLE = "negligible"


class Stride(str, Enum):
    SPOOFING = "spoofing"
    TAMPERING = "tampering"
    REPUDIATION = "repudiation"
    INFO_DISCLOSURE = "info_disclosure"
    DOS = "dos"
    ELEVATION = "elevation"


class TaraConfig(Record):
    """Tunable mapping from failure modes to violated security properties."""

    failure_mode_properties: Dict[FailureMode, SecurityProperty] = Field(
        default_factory=lambda: {FailureMode(k): SecurityProperty(v) for k, v in DEFAULT_FAILURE_MODE_PROPERTIES.items()}
    )

    @field_validator("failure_mode_properties")
    @classmethod
    def _covers_every_mode(cls, value):
        missing = [m.value for m in FailureMode if m not in value]
        if missing:
            raise ValueError(f"no property configured for failure modes {missing}")
        return value

    def property_of(self, mode: FailureMode) -> SecurityProperty:
        return self.failure_mode_properties[FailureMode(mode)]


class Asset(Record):
    id: str
    kind: AssetKind
    referent: str
    property: SecurityProperty
    trace: Tuple[str, ...]


class DamageScenario(Record):
    id: str
    hazard_id: str
    impact: Impact
    severity: Severity
    controllability: Controllability
    description: str


class ThreatScenario(Record):
    id: str
    asset_id: str
    stride: Stride
    trace: Tuple[str, ...]
    damage_ids: Tuple[str, ...] = ()


class TraceRow(Record):
    loss_scenario_id: str
    asset_ids: Tuple[str, ...]
    damage_ids: Tuple[str, ...]
    threat_ids: Tuple[str, ...]
    attack_path_count: int
    gap: bool


class TraceMatrix(Record):
    rows: Tuple[TraceRow, ...] = ()

    def row(self, loss_scenario_id: str) -> Optional[TraceRow]:
        return next((r for r in self.rows if r.loss_scenario_id == loss_scenario_id), None)

    @property
    def gaps(self) -> List[str]:
        return [r.loss_scenario_id for r in self.rows if r.gap]


def content_id(prefix: str, *parts: str) -> str:
    """Stable id derived from the content it names."""
    return f"{prefix}-{hashlib.sha256('|'.join(parts).encode('utf-8')).hexdigest()[:12]}"


def stride_for(kind: AssetKind, prop: SecurityProperty) -> Tuple[Stride, ...]:
    values = STRIDE_MAP.get((AssetKind(kind).value, SecurityProperty(prop).value))
    if values is None:
        values = STRIDE_MAP.get(("*", SecurityProperty(prop).value), ())
    return tuple(Stride(v) for v in values)


def derive_assets(model: SystemModel, safety: SafetyModel, config: Optional[TaraConfig] = None) -> List[Asset]:
    """Derive function, topic and hardware assets from loss scenarios.

    Args:
        model: The validated system model.
        safety: Loss scenarios resolved against the model.
        config: Failure-mode to property map; defaults to TaraConfig().

    Returns:
        Deduplicated assets with merged traces, sorted by kind, referent, property.
    """
    config = config or TaraConfig()
    index = ModelIndex(model)
    traces: Dict[Tuple[AssetKind, str, SecurityProperty], Set[str]] = defaultdict(set)

    for ls in safety.loss_scenarios:
        prop = config.property_of(ls.failure_mode)
        traces[(AssetKind.FUNCTION, ls.source, prop)].add(ls.id)
        traces[(AssetKind.FUNCTION, ls.target, prop)].add(ls.id)
        traces[(AssetKind.TOPIC, ls.message, prop)].add(ls.id)
        for ecu in sorted(set(index.hosting_ecus(ls.source)) | set(index.hosting_ecus(ls.target))):
            traces[(AssetKind.HARDWARE, ecu, prop)].add(ls.id)

    assets = [
        Asset(
            id=content_id("AS", kind.value, referent, prop.value),
            kind=kind,
            referent=referent,
            property=prop,
            trace=tuple(sorted(trace)),
        )
        for (kind, referent, prop), trace in traces.items()
    ]
    assets.sort(key=lambda a: (a.kind.value, a.referent, a.property.value))
    logger.debug("assets_derived", count=len(assets))
    return assets


def derive_damage_scenarios(safety: SafetyModel) -> List[DamageScenario]:
    """One damage scenario per hazard, rated by severity."""
    damages = [
        DamageScenario(
            id=content_id("DS", hazard.id),
            hazard_id=hazard.id,
            impact=Impact(IMPACT_BY_SEVERITY[hazard.severity.value]),
            severity=hazard.severity,
            controllability=hazard.controllability,
            description=f"Compromise leading to: {hazard.description}" if hazard.description else f"Compromise leading to {hazard.id}",
        )
        for hazard in safety.hazards
    ]
    return sorted(damages, key=lambda d: d.hazard_id)


def _damages_by_scenario(safety: SafetyModel) -> Dict[str, Tuple[str, ...]]:
    return {
        ls.id: tuple(sorted(content_id("DS", h) for h in ls.hazard_ids))
        for ls in safety.loss_scenarios
    }


def derive_threat_scenarios(assets: Iterable[Asset], safety: Optional[SafetyModel] = None) -> List[ThreatScenario]:
    """Emit one threat scenario per STRIDE category mapped to each asset.

    Args:
        assets: Derived assets.
        safety: When given, threats also link to the damage scenarios of
            the hazards behind their traced loss scenarios.

    Returns:
        Threat scenarios sorted by asset id, then STRIDE value.
    """
    damages = _damages_by_scenario(safety) if safety is not None else {}
    threats = []
    for asset in assets:
        damage_ids = tuple(sorted({d for ls in asset.trace for d in damages.get(ls, ())}))
        for stride in stride_for(asset.kind, asset.property):
            threats.append(ThreatScenario(
                id=content_id("TS", asset.id, stride.value),
                asset_id=asset.id,
                stride=stride,
                trace=asset.trace,
                damage_ids=damage_ids,
            ))
    return sorted(threats, key=lambda t: (t.asset_id, t.stride.value))


def path_touches_scenario(path, message: str, components: Set[str]) -> bool:
    return path.affected_topic == message or bool(components & set(path.endpoints))


def check_traceability(
    safety: SafetyModel,
    assets: Sequence[Asset],
    damages: Sequence[DamageScenario],
    threats: Sequence[ThreatScenario],
    paths: Sequence,
) -> TraceMatrix:
    """Cross-reference every loss scenario with the artifacts derived for it.

    Args:
        safety: The safety model.
        assets: Derived assets.
        damages: Derived damage scenarios.
        threats: Derived threat scenarios.
        paths: Attack paths; each needs ``affected_topic`` and ``endpoints``.

    Returns:
        One row per loss scenario; a row is a gap when any column is empty.
    """
    damage_by_hazard: Mapping[str, List[str]] = defaultdict(list)
    for damage in damages:
        damage_by_hazard[damage.hazard_id].append(damage.id)

    rows = []
    for ls in safety.loss_scenarios:
        asset_ids = tuple(sorted(a.id for a in assets if ls.id in a.trace))
        damage_ids = tuple(sorted({d for h in ls.hazard_ids for d in damage_by_hazard.get(h, [])}))
        threat_ids = tuple(sorted(t.id for t in threats if ls.id in t.trace))
        count = sum(1 for p in paths if path_touches_scenario(p, ls.message, {ls.source, ls.target}))
        rows.append(TraceRow(
            loss_scenario_id=ls.id,
            asset_ids=asset_ids,
            damage_ids=damage_ids,
            threat_ids=threat_ids,
            attack_path_count=count,
            gap=not (asset_ids and damage_ids and threat_ids and count),
        ))
    matrix = TraceMatrix(rows=tuple(sorted(rows, key=lambda r: r.loss_scenario_id)))
    if matrix.gaps:
        logger.info("traceability_gaps", scenarios=matrix.gaps)
    return matrix
