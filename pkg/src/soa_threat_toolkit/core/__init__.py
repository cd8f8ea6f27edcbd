"""Architecture model, safety artifacts and TARA derivation."""

from .facts import Atom, FactBase, atom, expected_fact_count, to_facts
from .loader import dump_model, load_model, load_model_file, model_digest, parse_model
from .model import (
    Allocation,
    Channel,
    ExecutionUnit,
    InformationFlow,
    LogicalComponent,
    ModelIndex,
    NetworkInterface,
    PortBinding,
    PublicElement,
    SystemModel,
    Topic,
    Violation,
    derive_information_flows,
    validate,
    with_derived_flows,
)
from .safety import (
    Asil,
    Controllability,
    Exposure,
    FailureMode,
    Hazard,
    LossScenario,
    SafetyModel,
    Severity,
    compute_asil,
    load_safety,
    load_safety_file,
)
from .tara import (
    Asset,
    AssetKind,
    DamageScenario,
    Impact,
    SecurityProperty,
    Stride,
    TaraConfig,
    ThreatScenario,
    TraceMatrix,
    TraceRow,
    check_traceability,
    derive_assets,
    derive_damage_scenarios,
    derive_threat_scenarios,
)

__all__ = [
    'Atom',
    'FactBase',
    'atom',
    'expected_fact_count',
    'to_facts',
    'dump_model',
    'load_model',
    'load_model_file',
    'model_digest',
    'parse_model',
    'Allocation',
    'Channel',
    'ExecutionUnit',
    'InformationFlow',
    'LogicalComponent',
    'ModelIndex',
    'NetworkInterface',
    'PortBinding',
    'PublicElement',
    'SystemModel',
    'Topic',
    'Violation',
    'derive_information_flows',
    'validate',
    'with_derived_flows',
    'Asil',
    'Controllability',
    'Exposure',
    'FailureMode',
    'Hazard',
    'LossScenario',
    'SafetyModel',
    'Severity',
    'compute_asil',
    'load_safety',
    'load_safety_file',
    'Asset',
    'AssetKind',
    'DamageScenario',
    'Impact',
    'SecurityProperty',
    'Stride',
    'TaraConfig',
    'ThreatScenario',
    'TraceMatrix',
    'TraceRow',
    'check_traceability',
    'derive_assets',
    'derive_damage_scenarios',
    'derive_threat_scenarios',
]
