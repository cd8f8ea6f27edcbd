"""Hazards, loss scenarios and ASIL determination."""

from enum import Enum
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

import structlog
from pydantic import Field, ValidationError

from soa_threat_toolkit.core.loader import Document, decode_document, schema_errors
from soa_threat_toolkit.core.model import ModelIndex, Record, SystemModel
from soa_threat_toolkit.utils.constants import SCHEMA_VERSION
from soa_threat_toolkit.utils.exceptions import (
    AsilMismatchError,
    SafetyParseError,
    SafetyReferenceError,
    SafetySchemaError,
)

logger = structlog.get_logger(__name__)


class Severity(str, Enum):
    S0 = "S0"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"


class Exposure(str, Enum):
    E0 = "E0"
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"


class Controllability(str, Enum):
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"


class Asil(str, Enum):
    QM = "QM"
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def rank(self) -> int:
        return list(Asil).index(self)


class FailureMode(str, Enum):
    ERRONEOUS = "erroneous"
    LOSS = "loss"
    OMISSION = "omission"
    LATE = "late"
    EARLY = "early"


_QM, _A, _B, _C, _D = Asil.QM, Asil.A, Asil.B, Asil.C, Asil.D

# ISO 26262-3 risk graph: (severity, exposure) -> ASIL for C0, C1, C2, C3
ASIL_TABLE: Dict[Tuple[Severity, Exposure], Tuple[Asil, Asil, Asil, Asil]] = {
    (Severity.S0, Exposure.E0): (_QM, _QM, _QM, _QM),
    (Severity.S0, Exposure.E1): (_QM, _QM, _QM, _QM),
    (Severity.S0, Exposure.E2): (_QM, _QM, _QM, _QM),
    (Severity.S0, Exposure.E3): (_QM, _QM, _QM, _QM),
    (Severity.S0, Exposure.E4): (_QM, _QM, _QM, _QM),
    (Severity.S1, Exposure.E0): (_QM, _QM, _QM, _QM),
    (Severity.S1, Exposure.E1): (_QM, _QM, _QM, _QM),
    (Severity.S1, Exposure.E2): (_QM, _QM, _QM, _QM),
    (Severity.S1, Exposure.E3): (_QM, _QM, _QM, _A),
    (Severity.S1, Exposure.E4): (_QM, _QM, _A, _B),
    (Severity.S2, Exposure.E0): (_QM, _QM, _QM, _QM),
    (Severity.S2, Exposure.E1): (_QM, _QM, _QM, _QM),
    (Severity.S2, Exposure.E2): (_QM, _QM, _QM, _A),
    (Severity.S2, Exposure.E3): (_QM, _QM, _A, _B),
    (Severity.S2, Exposure.E4): (_QM, _A, _B, _C),
    (Severity.S3, Exposure.E0): (_QM, _QM, _QM, _QM),
    (Severity.S3, Exposure.E1): (_QM, _QM, _QM, _A),
    (Severity.S3, Exposure.E2): (_QM, _QM, _A, _B),
    (Severity.S3, Exposure.E3): (_QM, _A, _B, _C),
    (Severity.S3, Exposure.E4): (_QM, _B, _C, _D),
}


def compute_asil(severity, exposure, controllability) -> Asil:
    """Look up the ASIL for a severity/exposure/controllability triple.

    Args:
        severity: Severity class, as enum member or "S0".."S3".
        exposure: Exposure class, as enum member or "E0".."E4".
        controllability: Controllability class, as enum member or "C0".."C3".

    Returns:
        The ASIL from the risk graph.
    """
    row = ASIL_TABLE[(Severity(severity), Exposure(exposure))]
    return row[list(Controllability).index(Controllability(controllability))]


class HazardEntry(Record):
    id: str = Field(min_length=1)
    description: str = ""
    severity: Severity
    exposure: Exposure
    controllability: Controllability
    asil: Optional[Asil] = None


class Hazard(Record):
    id: str
    description: str
    severity: Severity
    exposure: Exposure
    controllability: Controllability
    asil: Asil


class LossScenario(Record):
    id: str = Field(min_length=1)
    hazard_ids: Tuple[str, ...] = Field(min_length=1)
    source: str
    target: str
    message: str
    failure_mode: FailureMode
    description: str = ""


class SafetyDocument(Record):
    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    hazards: Tuple[HazardEntry, ...] = ()
    loss_scenarios: Tuple[LossScenario, ...] = ()


class SafetyModel(Record):
    hazards: Tuple[Hazard, ...] = ()
    loss_scenarios: Tuple[LossScenario, ...] = ()

    def hazard(self, hazard_id: str) -> Hazard:
        return next(h for h in self.hazards if h.id == hazard_id)

    def loss_scenario(self, scenario_id: str) -> Optional[LossScenario]:
        return next((ls for ls in self.loss_scenarios if ls.id == scenario_id), None)

    def message_topics(self) -> List[str]:
        return sorted({ls.message for ls in self.loss_scenarios})


def _reference_errors(document: SafetyDocument, model: SystemModel) -> List[str]:
    index = ModelIndex(model)
    components = {c.id for c in model.components}
    hazard_ids = [h.id for h in document.hazards]
    errors = [f"{h}: hazard declared more than once" for h in sorted({h for h in hazard_ids if hazard_ids.count(h) > 1})]
    scenario_ids = [ls.id for ls in document.loss_scenarios]
    errors.extend(
        f"{s}: loss scenario declared more than once"
        for s in sorted({s for s in scenario_ids if scenario_ids.count(s) > 1})
    )
    for ls in document.loss_scenarios:
        for role in ("source", "target"):
            value = getattr(ls, role)
            if value not in components:
                errors.append(f"{ls.id}: {role} '{value}' is not a logical component")
        if ls.message not in index.topics:
            errors.append(f"{ls.id}: message '{ls.message}' is not a topic")
        for hazard_id in ls.hazard_ids:
            if hazard_id not in hazard_ids:
                errors.append(f"{ls.id}: hazard '{hazard_id}' is not declared")
    return errors


def load_safety(document: Document, model: SystemModel) -> SafetyModel:
    """Load a safety document and resolve it against a model.

    Args:
        document: Raw UTF-8 JSON safety document.
        model: The validated system model the scenarios refer to.

    Returns:
        SafetyModel with computed hazard ASILs.

    Raises:
        SafetyParseError: If the document is not well-formed JSON.
        SafetySchemaError: If fields are unknown, missing or mistyped.
        SafetyReferenceError: If a component, topic or hazard does not resolve.
        AsilMismatchError: If a declared ASIL disagrees with the computed one.
    """
    data = decode_document(document, SafetyParseError)
    try:
        parsed = SafetyDocument.model_validate(data)
    except ValidationError as e:
        details = schema_errors(e)
        raise SafetySchemaError(f"Safety document does not match the schema ({len(details)} errors)", details)

    errors = _reference_errors(parsed, model)
    if errors:
        raise SafetyReferenceError(f"Safety document has {len(errors)} unresolved references", errors)

    hazards = []
    mismatches = []
    for entry in parsed.hazards:
        asil = compute_asil(entry.severity, entry.exposure, entry.controllability)
        if entry.asil is not None and entry.asil != asil:
            mismatches.append(f"{entry.id}: declared ASIL {entry.asil.value}, computed {asil.value}")
        hazards.append(Hazard(
            id=entry.id,
            description=entry.description,
            severity=entry.severity,
            exposure=entry.exposure,
            controllability=entry.controllability,
            asil=asil,
        ))
    if mismatches:
        raise AsilMismatchError("Declared ASIL disagrees with the risk graph", mismatches)

    safety = SafetyModel(hazards=tuple(hazards), loss_scenarios=parsed.loss_scenarios)
    logger.debug("safety_loaded", hazards=len(safety.hazards), loss_scenarios=len(safety.loss_scenarios))
    return safety


def load_safety_file(path: Union[str, Path], model: SystemModel) -> SafetyModel:
    return load_safety(Path(path).read_bytes(), model)
