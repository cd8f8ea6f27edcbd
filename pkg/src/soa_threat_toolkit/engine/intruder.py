"""Intruder model: what an attacker can write, read, reach and attack."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

import structlog

from soa_threat_toolkit.core.facts import Atom, FactBase
from soa_threat_toolkit.engine.datalog import Derivation, Program, Rule, parse_rule, replay_derivation
from soa_threat_toolkit.utils.constants import Predicate, Profile

logger = structlog.get_logger(__name__)

INTRUDER_RULES: Dict[str, str] = {
    # Write and read rules
    "write1": "wrt(EO, NI) :- cpo(C, CO), alloc(CO, EO), ecuo(ECU, EO), neti(NET, NI), ch(EO, NI).",
    "write2": "wrt(EI, EO) :- ecui(ECU, EI), ecuo(ECU, EO), ch(EI, EO).",
    "write3": "wrt(NI, NO) :- neti(NET, NI), neto(NET, NO), ch(NI, NO).",
    "write4": "wrt(PO, NI) :- public(EL, PO), neti(NET, NI), ch(PO, NI).",
    "read1": "rd(CI, CO) :- sub(C1, CI, TP), pub(C2, CO, TP).",
    "read2": "rd(EI, NO) :- cpi(C, CI), alloc(CI, EI), ecui(ECU, EI), neto(NET, NO), ch(NO, EI).",
    # Reachability
    "basic_out": "reach(PO) :- public(EL, PO).",
    "basic_ins": "reach(CO) :- pub(C, CO, TP).",
    "reach_wrt": "reach(P2) :- wrt(P1, P2), reach(P1).",
    "reach_rd": "reach(P2) :- rd(P2, P1), reach(P1).",
    "reach_ins_rd": "reach(CI) :- pub(C, CO, TP), sub(C, CI, TP1), pub(C1, CO1, TP1), rd(CI, CO1), reach(CO).",
    # Attacks
    "at_out": "attack(TP) :- if(ECU, P, TP), reach(P).",
    "at_ins": "attack(TP) :- sub(C1, CI, TP), pub(C, CO, TP), not pro(TP), reach(CI), reach(CO).",
}

RULES: Dict[str, Rule] = {name: parse_rule(name, text) for name, text in INTRUDER_RULES.items()}

FLOW_RULES = ("write1", "write2", "write3", "write4", "read1", "read2")
ATTACK_RULES = ("at_out", "at_ins")


@dataclass(frozen=True)
class IntruderProfile:
    """Rule selection for one kind of intruder."""

    kind: str
    rules: Tuple[str, ...]

    @classmethod
    def of(cls, kind: str) -> "IntruderProfile":
        if kind not in PROFILE_RULES:
            raise ValueError(f"Unknown intruder profile '{kind}'; expected one of {sorted(PROFILE_RULES)}")
        return cls(kind, PROFILE_RULES[kind])

    @property
    def flow_rules(self) -> Tuple[str, ...]:
        return tuple(r for r in self.rules if r in FLOW_RULES)

    @property
    def reach_rules(self) -> Tuple[str, ...]:
        return tuple(r for r in self.rules if r not in ATTACK_RULES)

    @property
    def attack_rules(self) -> Tuple[str, ...]:
        return tuple(r for r in self.rules if r in ATTACK_RULES)

    def program(self, names: Iterable[str]) -> Program:
        return Program(RULES[n] for n in names)


PROFILE_RULES: Dict[str, Tuple[str, ...]] = {
    Profile.OUTSIDER: (
        "write1", "write2", "write3", "write4", "read1", "read2",
        "basic_out", "reach_wrt", "reach_rd", "at_out",
    ),
    Profile.INSIDER: ("read1", "basic_ins", "reach_ins_rd", "at_ins"),
}


def profiles_for(kind: str) -> List[IntruderProfile]:
    """Expand ``both`` into its two independent profiles."""
    if kind == Profile.BOTH:
        return [IntruderProfile.of(Profile.OUTSIDER), IntruderProfile.of(Profile.INSIDER)]
    return [IntruderProfile.of(kind)]


@dataclass(frozen=True)
class DerivedSet:
    """Derived atoms of one profile with their provenance.

    Each derived atom maps to the rule instance that first produced it.
    """

    profile: str
    derivations: Mapping[Atom, Derivation] = field(default_factory=dict)

    def atoms(self, predicate: str = None) -> FrozenSet[Atom]:
        """Derived atoms, optionally restricted to one predicate."""
        return frozenset(a for a in self.derivations if predicate is None or a.predicate == predicate)

    def values(self, predicate: str) -> FrozenSet[str]:
        """First arguments of the atoms of one predicate."""
        return frozenset(a.args[0] for a in self.derivations if a.predicate == predicate)

    def __contains__(self, item: object) -> bool:
        return item in self.derivations

    def __len__(self) -> int:
        return len(self.derivations)


class ReachSet(DerivedSet):
    """reach atoms plus the wrt/rd flows they were derived from."""

    @property
    def ports(self) -> FrozenSet[str]:
        return self.values(Predicate.REACH)

    def flows(self) -> FrozenSet[Atom]:
        return frozenset(a for a in self.derivations if a.predicate in (Predicate.WRT, Predicate.RD))


class AttackSet(DerivedSet):
    @property
    def topics(self) -> FrozenSet[str]:
        return self.values(Predicate.ATTACK)


def _as_profile(profile) -> IntruderProfile:
    return profile if isinstance(profile, IntruderProfile) else IntruderProfile.of(profile)


def derive_flows(facts: FactBase) -> Dict[Atom, Derivation]:
    """Compute every wrt/rd atom with its derivation."""
    derived = Program(RULES[n] for n in FLOW_RULES).evaluate(facts)
    logger.debug("flows_derived", atoms=len(derived))
    return derived


def compute_reach(facts: FactBase, profile) -> ReachSet:
    """Least fixpoint of the profile's flow and reachability rules.

    Args:
        facts: Ground facts of a validated model.
        profile: Profile name or IntruderProfile; ``both`` is not accepted here.

    Returns:
        ReachSet holding reach atoms and the flows used to derive them.
    """
    profile = _as_profile(profile)
    derived = profile.program(profile.reach_rules).evaluate(facts)
    reach = ReachSet(profile.kind, derived)
    logger.info("reach_computed", profile=profile.kind, reach=len(reach.ports), flows=len(reach.flows()))
    return reach


def compute_attacks(facts: FactBase, reach: ReachSet, profile) -> AttackSet:
    """Apply the profile's attack rules on top of a computed ReachSet."""
    profile = _as_profile(profile)
    premises = facts.atoms | reach.atoms(Predicate.REACH)
    derived = profile.program(profile.attack_rules).evaluate(premises)
    attacks = AttackSet(profile.kind, derived)
    logger.info("attacks_computed", profile=profile.kind, topics=sorted(attacks.topics))
    return attacks


@dataclass(frozen=True)
class IntruderResult:
    profile: str
    reach: ReachSet
    attacks: AttackSet
    derivations: Mapping[Atom, Derivation]

    def replay(self, facts: FactBase) -> List[Atom]:
        """Return the derived atoms whose derivation does not replay."""
        return sorted(a for a in self.derivations if not replay_derivation(a, self.derivations, facts, RULES))


def run_profile(facts: FactBase, profile) -> IntruderResult:
    """Run one intruder profile over the facts.

    Reach is computed first; attacks are then derived from the facts and the
    reach atoms.

    Args:
        facts: Ground input facts.
        profile: An IntruderProfile or a profile name (outsider or insider).

    Returns:
        IntruderResult with the reach set, the attack set and the provenance
        of every derived atom.
    """
    profile = _as_profile(profile)
    reach = compute_reach(facts, profile)
    attacks = compute_attacks(facts, reach, profile)
    derivations = dict(reach.derivations)
    derivations.update(attacks.derivations)
    return IntruderResult(profile.kind, reach, attacks, derivations)


def run_profiles(facts: FactBase, kind: str) -> Dict[str, IntruderResult]:
    """Evaluate one profile, or both independently and concurrently.

    Returns:
        Results keyed by profile name, in canonical profile order.
    """
    profiles = profiles_for(kind)
    if len(profiles) == 1:
        return {profiles[0].kind: run_profile(facts, profiles[0])}
    with ThreadPoolExecutor(max_workers=len(profiles)) as executor:
        futures = [executor.submit(run_profile, facts, p) for p in profiles]
        results = [f.result() for f in futures]
    return {r.profile: r for r in results}
