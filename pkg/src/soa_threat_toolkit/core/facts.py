"""Ground fact base compiled from a system model."""

import json
from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Tuple

from soa_threat_toolkit.core.model import SystemModel, validate
from soa_threat_toolkit.utils.constants import Predicate
from soa_threat_toolkit.utils.exceptions import InvalidModelError


class Atom(NamedTuple):
    """A ground atom such as ``pub("planning", "o2", "trajectory")``."""

    predicate: str
    args: Tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(json.dumps(a, ensure_ascii=False) for a in self.args)})"


def atom(predicate: str, *args: str) -> Atom:
    """Build an atom, e.g. ``atom(Predicate.CH, "o1", "i2")``."""
    return Atom(predicate, tuple(args))


class FactBase:
    """Immutable set of ground atoms with a per-predicate view."""

    def __init__(self, atoms: Iterable[Atom] = ()):
        self._atoms: FrozenSet[Atom] = frozenset(atoms)
        grouped: Dict[str, List[Atom]] = defaultdict(list)
        for item in self._atoms:
            grouped[item.predicate].append(item)
        self._by_predicate = {pred: tuple(sorted(items)) for pred, items in grouped.items()}

    @property
    def atoms(self) -> FrozenSet[Atom]:
        """All atoms, unordered."""
        return self._atoms

    def by_predicate(self, predicate: str) -> Tuple[Atom, ...]:
        """Atoms of one predicate in sorted order; empty when there are none."""
        return self._by_predicate.get(predicate, ())

    def with_atoms(self, *atoms: Atom) -> "FactBase":
        """Return a new FactBase with the given atoms added.

        Args:
            *atoms: Atoms to add. Atoms already present are ignored.

        Returns:
            A new FactBase; this one is left untouched.
        """
        return FactBase(self._atoms | set(atoms))

    def without_atoms(self, *atoms: Atom) -> "FactBase":
        """Return a new FactBase with the given atoms removed."""
        return FactBase(self._atoms - set(atoms))

    def protected_topics(self) -> FrozenSet[str]:
        """Topics named by a pro fact."""
        return frozenset(a.args[0] for a in self.by_predicate(Predicate.PRO))

    def port_owners(self) -> Dict[str, str]:
        """Map every port to the element that declares it."""
        owners = {}
        for pred in (Predicate.ECUI, Predicate.ECUO, Predicate.NETI, Predicate.NETO,
                     Predicate.CPI, Predicate.CPO, Predicate.PUBLIC):
            for item in self.by_predicate(pred):
                owners.setdefault(item.args[1], item.args[0])
        return owners

    def dump(self) -> str:
        """Render one atom per line, lexicographically sorted."""
        return "".join(f"{line}\n" for line in sorted(str(a) for a in self._atoms))

    def __len__(self) -> int:
        return len(self._atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(sorted(self._atoms))

    def __contains__(self, item: object) -> bool:
        return item in self._atoms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FactBase) and self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash(self._atoms)

    def __repr__(self) -> str:
        return f"FactBase({len(self._atoms)} atoms)"


def expected_fact_count(model: SystemModel) -> int:
    """Number of atoms to_facts emits for a validated model."""
    return (
        sum(len(e.in_ports) + len(e.out_ports) for e in model.ecus)
        + sum(len(n.in_ports) + len(n.out_ports) for n in model.networks)
        + 2 * sum(len(c.pub_ports) + len(c.sub_ports) for c in model.components)
        + len(model.channels)
        + len(model.allocations)
        + sum(len(p.out_ports) for p in model.publics)
        + len(model.information_flows)
        + sum(1 for t in model.topics if t.protected)
    )


def to_facts(model: SystemModel) -> FactBase:
    """Compile a validated model into its ground fact base.

    Args:
        model: A model for which validate() returns no violations.

    Returns:
        One atom per model feature.

    Raises:
        InvalidModelError: If the model has violations.
    """
    violations = validate(model)
    if violations:
        raise InvalidModelError(
            f"Cannot compile a model with {len(violations)} violations",
            [str(v) for v in violations],
        )

    atoms = []
    for ecu in model.ecus:
        atoms.extend(atom(Predicate.ECUI, ecu.id, p) for p in ecu.in_ports)
        atoms.extend(atom(Predicate.ECUO, ecu.id, p) for p in ecu.out_ports)
    for net in model.networks:
        atoms.extend(atom(Predicate.NETI, net.id, p) for p in net.in_ports)
        atoms.extend(atom(Predicate.NETO, net.id, p) for p in net.out_ports)
    for comp in model.components:
        for binding in comp.pub_ports:
            atoms.append(atom(Predicate.CPO, comp.id, binding.port))
            atoms.append(atom(Predicate.PUB, comp.id, binding.port, binding.topic))
        for binding in comp.sub_ports:
            atoms.append(atom(Predicate.CPI, comp.id, binding.port))
            atoms.append(atom(Predicate.SUB, comp.id, binding.port, binding.topic))
    atoms.extend(atom(Predicate.CH, c.from_port, c.to_port) for c in model.channels)
    atoms.extend(atom(Predicate.ALLOC, a.component_port, a.platform_port) for a in model.allocations)
    for public in model.publics:
        atoms.extend(atom(Predicate.PUBLIC, public.id, p) for p in public.out_ports)
    atoms.extend(atom(Predicate.IF, f.ecu, f.entry_port, f.topic) for f in model.information_flows)
    atoms.extend(atom(Predicate.PRO, t.id) for t in model.topics if t.protected)
    return FactBase(atoms)
