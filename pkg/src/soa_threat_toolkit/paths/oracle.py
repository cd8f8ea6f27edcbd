"""Brute-force recomputation of reachability and attack paths.

Shares no code with the rule engine or the goal-directed search: flows
are matched by plain comprehensions, reachability is iterated until
stable and paths come from an exhaustive forward walk. Meant for small
models in tests and self-checks.
"""

from typing import Dict, Iterable, List, Set, Tuple

import structlog

from soa_threat_toolkit.core.facts import FactBase
from soa_threat_toolkit.paths.enumeration import AttackPath, Intruder, canonical
from soa_threat_toolkit.utils.constants import DEFAULT_ORACLE_NODE_BUDGET, Predicate, Profile
from soa_threat_toolkit.utils.exceptions import OracleBudgetExceeded

logger = structlog.get_logger(__name__)


class PathOracle:
    """Naive reference implementation over one fact base.

    Args:
        facts: Ground facts of a validated model.
        node_budget: Maximum number of search nodes before giving up.
    """

    def __init__(self, facts: FactBase, node_budget: int = DEFAULT_ORACLE_NODE_BUDGET):
        self.facts = facts
        self.node_budget = node_budget
        self._nodes = 0
        self._rows = {pred: [a.args for a in facts.by_predicate(pred)] for pred in Predicate.INPUT}

    def _tick(self):
        self._nodes += 1
        if self._nodes > self.node_budget:
            raise OracleBudgetExceeded(
                f"Oracle search exceeded its budget of {self.node_budget} nodes", self.node_budget
            )

    def flows(self) -> Set[Tuple[str, str, str]]:
        """All (predicate, a, b) flow triples."""
        rows = self._rows
        ch = set(rows[Predicate.CH])
        alloc = set(rows[Predicate.ALLOC])
        ecu_in = {(e, p) for e, p in rows[Predicate.ECUI]}
        ecu_out = {(e, p) for e, p in rows[Predicate.ECUO]}
        net_in = {(n, p) for n, p in rows[Predicate.NETI]}
        net_out = {(n, p) for n, p in rows[Predicate.NETO]}
        comp_out = {p for _, p in rows[Predicate.CPO]}
        comp_in = {p for _, p in rows[Predicate.CPI]}
        public_out = {p for _, p in rows[Predicate.PUBLIC]}

        flows = set()
        for src, dst in ch:
            src_ecu = [e for e, p in ecu_out if p == src]
            if src_ecu and any(n_p == dst for _, n_p in net_in):
                if any((co, src) in alloc for co in comp_out):
                    flows.add(("wrt", src, dst))
            if any(e == e2 for e, p in ecu_in if p == src for e2, q in ecu_out if q == dst):
                flows.add(("wrt", src, dst))
            if any(n == n2 for n, p in net_in if p == src for n2, q in net_out if q == dst):
                flows.add(("wrt", src, dst))
            if src in public_out and any(p == dst for _, p in net_in):
                flows.add(("wrt", src, dst))
            if any(p == src for _, p in net_out) and any(p == dst for _, p in ecu_in):
                if any((ci, dst) in alloc for ci in comp_in):
                    flows.add(("rd", dst, src))
        for _, ci, topic in rows[Predicate.SUB]:
            for _, co, other in rows[Predicate.PUB]:
                if topic == other:
                    flows.add(("rd", ci, co))
        return flows

    def reach(self, profile: str) -> Set[str]:
        flows = self.flows()
        rows = self._rows
        if profile == Profile.OUTSIDER:
            reached = {p for _, p in rows[Predicate.PUBLIC]}
            changed = True
            while changed:
                changed = False
                for pred, a, b in flows:
                    if pred == "wrt" and a in reached and b not in reached:
                        reached.add(b)
                        changed = True
                    if pred == "rd" and b in reached and a not in reached:
                        reached.add(a)
                        changed = True
            return reached

        reached = {co for _, co, _ in rows[Predicate.PUB]}
        changed = True
        while changed:
            changed = False
            for comp, ci, topic in rows[Predicate.SUB]:
                if ci in reached:
                    continue
                publishes = any(c == comp and co in reached for c, co, _ in rows[Predicate.PUB])
                source = any(t == topic and ("rd", ci, co1) in flows for _, co1, t in rows[Predicate.PUB])
                if publishes and source:
                    reached.add(ci)
                    changed = True
        return reached

    def attacks(self, profile: str) -> Set[str]:
        reached = self.reach(profile)
        rows = self._rows
        if profile == Profile.OUTSIDER:
            return {tp for _, p, tp in rows[Predicate.IF] if p in reached}
        protected = {t for (t,) in rows[Predicate.PRO]}
        return {
            tp
            for _, ci, tp in rows[Predicate.SUB]
            for _, co, tp2 in rows[Predicate.PUB]
            if tp == tp2 and tp not in protected and ci in reached and co in reached
        }

    def influence(self) -> Set[Tuple[str, str]]:
        rows = self._rows
        topics = {t for _, _, t in rows[Predicate.PUB]} | {t for _, _, t in rows[Predicate.SUB]}
        pairs = {(t, t) for t in topics}
        for comp, _, t1 in rows[Predicate.SUB]:
            for other, _, t2 in rows[Predicate.PUB]:
                if comp == other:
                    pairs.add((t1, t2))
        changed = True
        while changed:
            changed = False
            for a, b in list(pairs):
                for c, d in list(pairs):
                    if b == c and (a, d) not in pairs:
                        pairs.add((a, d))
                        changed = True
        return pairs

    def _influenced(self, topic: str, assets: List[str], pairs) -> List[str]:
        return [a for a in assets if a == topic or (topic, a) in pairs]

    def _owners(self) -> Dict[str, str]:
        owners = {}
        for pred in (Predicate.ECUI, Predicate.ECUO, Predicate.NETI, Predicate.NETO,
                     Predicate.CPI, Predicate.CPO, Predicate.PUBLIC):
            for element, port in self._rows[pred]:
                owners.setdefault(port, element)
        return owners

    def outsider_paths(self, assets: List[str]) -> List[AttackPath]:
        reached = self.reach(Profile.OUTSIDER)
        flows = self.flows()
        owners = self._owners()
        pairs = self.influence()
        successors: Dict[str, List[str]] = {}
        for pred, a, b in flows:
            src, dst = (a, b) if pred == "wrt" else (b, a)
            if src in reached and dst in reached:
                successors.setdefault(src, []).append(dst)
        if_ports = {p for _, p, _ in self._rows[Predicate.IF]}

        walks: List[Tuple[str, ...]] = []

        def walk(path: List[str]):
            self._tick()
            if len(path) > 1 and path[-1] in if_ports:
                walks.append(tuple(path))
            for nxt in successors.get(path[-1], ()):
                if nxt not in path:
                    path.append(nxt)
                    walk(path)
                    path.pop()

        for _, port in self._rows[Predicate.PUBLIC]:
            if port in reached:
                walk([port])

        found = []
        for steps in walks:
            for ecu, port, topic in self._rows[Predicate.IF]:
                if port != steps[-1]:
                    continue
                endpoints = self._ecu_publishers(ecu, topic, owners)
                for asset in self._influenced(topic, assets, pairs):
                    elements: List[str] = []
                    for step in steps:
                        if not elements or elements[-1] != owners[step]:
                            elements.append(owners[step])
                    found.append(AttackPath(
                        intruder=Intruder.OUTSIDER,
                        entry=owners[steps[0]],
                        steps=steps,
                        elements=tuple(elements),
                        affected_topic=topic,
                        asset_topic=asset,
                        endpoints=endpoints,
                    ))
        return found

    def _ecu_publishers(self, ecu: str, topic: str, owners: Dict[str, str]) -> Tuple[str, ...]:
        ecu_ports = {p for e, p in self._rows[Predicate.ECUI] + self._rows[Predicate.ECUO] if e == ecu}
        hosted = {owners[c] for c, p in self._rows[Predicate.ALLOC] if p in ecu_ports and c in owners}
        return tuple(sorted({c for c, _, t in self._rows[Predicate.PUB] if t == topic and c in hosted}))

    def insider_paths(self, assets: List[str]) -> List[AttackPath]:
        """One path per (publisher, subscriber) component pair and influenced asset.

        Ports binding the same topic twice collapse onto the smallest (out, in) pair.
        """
        reached = self.reach(Profile.INSIDER)
        protected = {t for (t,) in self._rows[Predicate.PRO]}
        pairs = self.influence()
        chosen: Dict[Tuple[str, str, str], Tuple[str, str]] = {}
        for sub_comp, ci, topic in self._rows[Predicate.SUB]:
            for pub_comp, co, other in self._rows[Predicate.PUB]:
                if other != topic or topic in protected or ci not in reached or co not in reached:
                    continue
                key = (pub_comp, sub_comp, topic)
                chosen[key] = min(chosen.get(key, (co, ci)), (co, ci))

        found = []
        for (pub_comp, sub_comp, topic), (co, ci) in chosen.items():
            for asset in self._influenced(topic, assets, pairs):
                if asset == topic:
                    elements = (pub_comp, sub_comp)
                else:
                    chain = self._best_chain(sub_comp, asset)
                    if chain is None:
                        continue
                    elements = (pub_comp,) + chain
                found.append(AttackPath(
                    intruder=Intruder.INSIDER,
                    entry=pub_comp,
                    steps=(co, ci),
                    elements=elements,
                    affected_topic=topic,
                    asset_topic=asset,
                    endpoints=tuple(sorted({elements[0], elements[-1]})),
                ))
        return found

    def _best_chain(self, start: str, asset: str):
        """Exhaustively enumerate simple component chains; keep the shortest, then smallest."""
        rows = self._rows
        targets = {c for c, _, t in rows[Predicate.PUB] if t == asset}
        best = []

        def extend(chain: List[str]):
            self._tick()
            if best and len(chain) > len(best[0]):
                return
            if chain[-1] in targets:
                candidate = tuple(chain)
                if not best or (len(candidate), candidate) < (len(best[0]), best[0]):
                    best[:] = [candidate]
                return
            for comp, _, t in rows[Predicate.PUB]:
                if comp != chain[-1]:
                    continue
                for nxt, _, t2 in rows[Predicate.SUB]:
                    if t2 == t and nxt not in chain:
                        chain.append(nxt)
                        extend(chain)
                        chain.pop()

        extend([start])
        return best[0] if best else None


def oracle_enumerate(
    facts: FactBase,
    profile: str,
    asset_topics: Iterable[str],
    node_budget: int = DEFAULT_ORACLE_NODE_BUDGET,
) -> List[AttackPath]:
    """Recompute attack paths by exhaustive search.

    Args:
        facts: Ground facts of a validated model.
        profile: ``outsider``, ``insider`` or ``both``.
        asset_topics: Topics to aim for.
        node_budget: Search node limit.

    Returns:
        Canonically sorted paths, comparable to the engine's output.

    Raises:
        OracleBudgetExceeded: If the search visits more than node_budget nodes.
    """
    assets = sorted(set(asset_topics))
    oracle = PathOracle(facts, node_budget)
    paths: List[AttackPath] = []
    if profile in (Profile.OUTSIDER, Profile.BOTH):
        paths.extend(oracle.outsider_paths(assets))
    if profile in (Profile.INSIDER, Profile.BOTH):
        paths.extend(oracle.insider_paths(assets))
    result = canonical(paths)
    logger.debug("oracle_enumerated", profile=profile, paths=len(result), nodes=oracle._nodes)
    return result
