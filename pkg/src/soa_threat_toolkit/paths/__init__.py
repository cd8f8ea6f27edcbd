"""Attack path enumeration and its brute-force oracle."""

from .enumeration import (
    AttackPath,
    Intruder,
    enumerate_insider_paths,
    enumerate_outsider_paths,
    enumerate_paths,
    path_is_valid,
    project_elements,
)
from .influence import InfluenceRelation, component_graph
from .oracle import PathOracle, oracle_enumerate

__all__ = [
    'AttackPath',
    'Intruder',
    'enumerate_insider_paths',
    'enumerate_outsider_paths',
    'enumerate_paths',
    'path_is_valid',
    'project_elements',
    'InfluenceRelation',
    'component_graph',
    'PathOracle',
    'oracle_enumerate',
]
