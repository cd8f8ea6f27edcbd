"""SOA Threat Toolkit - safety-informed threat analysis and attack path enumeration for publish/subscribe vehicle architectures."""

__version__ = '0.1.0'

# Model, safety and TARA
from .core import (
    FactBase,
    SafetyModel,
    SystemModel,
    compute_asil,
    load_model,
    load_safety,
    to_facts,
    validate,
)

# Intruder model
from .engine import compute_attacks, compute_reach, derive_flows, run_profiles

# Paths and analysis
from .paths import AttackPath, enumerate_insider_paths, enumerate_outsider_paths, oracle_enumerate
from .analysis import group_by_entry, placement_hints, summarize

# Reports and delivery
from .reporting import AnalysisOptions, Report, ReportCardBuilder, run_analysis
from .delivery import DeliveryManager

__all__ = [
    # Model, safety and TARA
    'FactBase',
    'SafetyModel',
    'SystemModel',
    'compute_asil',
    'load_model',
    'load_safety',
    'to_facts',
    'validate',

    # Intruder model
    'compute_attacks',
    'compute_reach',
    'derive_flows',
    'run_profiles',

    # Paths and analysis
    'AttackPath',
    'enumerate_insider_paths',
    'enumerate_outsider_paths',
    'oracle_enumerate',
    'group_by_entry',
    'placement_hints',
    'summarize',

    # Reports and delivery
    'AnalysisOptions',
    'Report',
    'ReportCardBuilder',
    'run_analysis',
    'DeliveryManager',
]
