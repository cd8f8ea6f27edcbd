"""Datalog evaluation of the intruder model."""

from .datalog import Derivation, Literal, Program, Rule, Var, dump_program, parse_rule, replay_derivation
from .intruder import (
    INTRUDER_RULES,
    AttackSet,
    IntruderProfile,
    IntruderResult,
    ReachSet,
    compute_attacks,
    compute_reach,
    derive_flows,
    run_profile,
    run_profiles,
)

__all__ = [
    'Derivation',
    'Literal',
    'Program',
    'Rule',
    'Var',
    'dump_program',
    'parse_rule',
    'replay_derivation',
    'INTRUDER_RULES',
    'AttackSet',
    'IntruderProfile',
    'IntruderResult',
    'ReachSet',
    'compute_attacks',
    'compute_reach',
    'derive_flows',
    'run_profile',
    'run_profiles',
]
