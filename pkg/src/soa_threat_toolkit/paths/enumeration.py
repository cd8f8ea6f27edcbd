"""Goal-directed enumeration of attack paths towards asset topics."""

from collections import defaultdict
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx
import structlog

from soa_threat_toolkit.core.facts import Atom, FactBase
from soa_threat_toolkit.core.model import Record
from soa_threat_toolkit.engine.intruder import IntruderResult, ReachSet
from soa_threat_toolkit.paths.influence import InfluenceRelation, component_graph
from soa_threat_toolkit.utils.constants import PATH_ARROW, Predicate, Profile

logger = structlog.get_logger(__name__)


class Intruder(str, Enum):
    OUTSIDER = Profile.OUTSIDER
    INSIDER = Profile.INSIDER


class AttackPath(Record):
    """An entry-to-asset chain.

    Outsider paths hop over platform ports; insider paths are a single
    publisher-to-subscriber hop followed by the component chain that
    carries the manipulated data to the asset's publisher.
    """

    intruder: Intruder
    entry: str
    steps: Tuple[str, ...]
    elements: Tuple[str, ...]
    affected_topic: str
    asset_topic: str
    endpoints: Tuple[str, ...] = ()

    def sort_key(self) -> tuple:
        return (self.intruder.value, self.entry, self.elements, self.affected_topic, self.asset_topic, self.steps)

    def render(self) -> str:
        return PATH_ARROW.join(self.elements)


def canonical(paths: Iterable[AttackPath]) -> List[AttackPath]:
    """Drop duplicates and sort by AttackPath.sort_key."""
    return sorted(set(paths), key=AttackPath.sort_key)


def project_elements(steps: Sequence[str], owners: Mapping[str, str]) -> Tuple[str, ...]:
    """Map ports to their owning elements, collapsing consecutive repeats.

    Args:
        steps: Port-level hops.
        owners: Port to element map, e.g. FactBase.port_owners().

    Returns:
        Element-level path in hop order.
    """
    elements: List[str] = []
    for port in steps:
        owner = owners.get(port, port)
        if not elements or elements[-1] != owner:
            elements.append(owner)
    return tuple(elements)


def flow_graph(flows: Iterable[Atom], nodes: Optional[Iterable[str]] = None) -> nx.DiGraph:
    """Directed port graph: wrt(a, b) is a -> b and rd(a, b) is b -> a."""
    graph = nx.DiGraph()
    for item in flows:
        if item.predicate == Predicate.WRT:
            graph.add_edge(item.args[0], item.args[1])
        elif item.predicate == Predicate.RD:
            graph.add_edge(item.args[1], item.args[0])
    if nodes is not None:
        graph = graph.subgraph(set(nodes)).copy()
    return graph


def publishers_on_ecu(facts: FactBase) -> Dict[Tuple[str, str], Set[str]]:
    """(ecu, topic) -> components with a port on the ECU that publish the topic."""
    owners = facts.port_owners()
    on_ecu: Dict[str, Set[str]] = defaultdict(set)
    ecu_ports = {a.args[1] for a in facts.by_predicate(Predicate.ECUI) + facts.by_predicate(Predicate.ECUO)}
    for item in facts.by_predicate(Predicate.ALLOC):
        if item.args[1] in ecu_ports and item.args[0] in owners:
            on_ecu[owners[item.args[1]]].add(owners[item.args[0]])
    result: Dict[Tuple[str, str], Set[str]] = defaultdict(set)
    for item in facts.by_predicate(Predicate.PUB):
        component, topic = item.args[0], item.args[2]
        for ecu, components in on_ecu.items():
            if component in components:
                result[(ecu, topic)].add(component)
    return result


def enumerate_outsider_paths(
    facts: FactBase,
    reach: ReachSet,
    asset_topics: Iterable[str],
    influence: Optional[InfluenceRelation] = None,
) -> List[AttackPath]:
    """Enumerate simple port paths from public ports to attacked if-ports.

    Only if-ports whose topic influences an asset are searched, and only
    over the ancestors of that port in the reached flow graph.

    Args:
        facts: Ground facts of the model.
        reach: Outsider ReachSet.
        asset_topics: Topics to aim for.
        influence: Precomputed influence relation.

    Returns:
        Canonically sorted attack paths.
    """
    assets = sorted(set(asset_topics))
    influence = influence or InfluenceRelation(facts, assets)
    owners = facts.port_owners()
    reached = reach.ports
    graph = flow_graph(reach.flows(), reached)
    entries = sorted(a.args[1] for a in facts.by_predicate(Predicate.PUBLIC) if a.args[1] in reached)
    endpoints_by = publishers_on_ecu(facts)

    @lru_cache(maxsize=None)
    def simple_paths_to(port: str) -> Tuple[Tuple[str, ...], ...]:
        if port not in graph:
            return ()
        upstream = nx.ancestors(graph, port) | {port}
        sub = graph.subgraph(upstream)
        found = []
        for entry in entries:
            if entry in upstream and entry != port:
                found.extend(tuple(p) for p in nx.all_simple_paths(sub, entry, port))
        return tuple(found)

    paths = []
    for flow in facts.by_predicate(Predicate.IF):
        ecu, port, topic = flow.args
        if port not in reached:
            continue
        targets = influence.influenced_by(topic, assets)
        if not targets:
            continue
        endpoints = tuple(sorted(endpoints_by.get((ecu, topic), ())))
        for steps in simple_paths_to(port):
            for asset in targets:
                paths.append(AttackPath(
                    intruder=Intruder.OUTSIDER,
                    entry=owners[steps[0]],
                    steps=steps,
                    elements=project_elements(steps, owners),
                    affected_topic=topic,
                    asset_topic=asset,
                    endpoints=endpoints,
                ))
    result = canonical(paths)
    logger.info("outsider_paths_enumerated", paths=len(result), assets=assets)
    return result


def shortest_chain(graph: nx.DiGraph, start: str, targets: Iterable[str]) -> Optional[Tuple[str, ...]]:
    """Shortest component chain from start to any target; ties broken lexicographically."""
    targets = set(targets)
    if start in targets:
        return (start,)
    if start not in graph:
        return None
    lengths = nx.single_source_shortest_path_length(graph, start)
    reachable = [t for t in targets if t in lengths]
    if not reachable:
        return None
    best = min(lengths[t] for t in reachable)
    candidates = [
        tuple(path)
        for target in reachable
        if lengths[target] == best
        for path in nx.all_shortest_paths(graph, start, target)
    ]
    return min(candidates)


def mitm_instances(facts: FactBase, reached: Set[str]) -> List[Tuple[Atom, Atom]]:
    """(pub, sub) atom pairs on an unprotected topic with both ports reached.

    Args:
        facts: Ground facts of the model.
        reached: Ports in the insider ReachSet.

    Returns:
        Every matching port-level pair, in fact order.
    """
    protected = facts.protected_topics()
    publishers: Dict[str, List[Atom]] = defaultdict(list)
    for item in facts.by_predicate(Predicate.PUB):
        publishers[item.args[2]].append(item)
    pairs = []
    for sub in facts.by_predicate(Predicate.SUB):
        topic = sub.args[2]
        if topic in protected or sub.args[1] not in reached:
            continue
        for pub in publishers.get(topic, ()):
            if pub.args[1] in reached:
                pairs.append((pub, sub))
    return pairs


def mitm_pairs(facts: FactBase, reached: Set[str]) -> Dict[Tuple[str, str, str], Tuple[str, str]]:
    """Collapse port-level MITM instances to component pairs.

    A component may bind the same topic on several ports; the pair keeps the
    lexicographically smallest (out port, in port) as its steps.

    Returns:
        (publisher, subscriber, topic) mapped to (out port, in port).
    """
    pairs: Dict[Tuple[str, str, str], Tuple[str, str]] = {}
    for pub, sub in mitm_instances(facts, reached):
        key = (pub.args[0], sub.args[0], pub.args[2])
        steps = (pub.args[1], sub.args[1])
        if key not in pairs or steps < pairs[key]:
            pairs[key] = steps
    return pairs


def enumerate_insider_paths(
    facts: FactBase,
    reach: ReachSet,
    asset_topics: Iterable[str],
    influence: Optional[InfluenceRelation] = None,
) -> List[AttackPath]:
    """One path per (publisher, subscriber) component pair on a topic and per asset it influences.

    Args:
        facts: Ground facts of the model.
        reach: Insider ReachSet.
        asset_topics: Topics to aim for.
        influence: Precomputed influence relation.

    Returns:
        Canonically sorted attack paths.
    """
    assets = sorted(set(asset_topics))
    influence = influence or InfluenceRelation(facts, assets)
    graph = component_graph(facts)
    publishers: Dict[str, Set[str]] = defaultdict(set)
    for item in facts.by_predicate(Predicate.PUB):
        publishers[item.args[2]].add(item.args[0])

    paths = []
    for (publisher, subscriber, topic), (out_port, in_port) in sorted(mitm_pairs(facts, reach.ports).items()):
        for asset in influence.influenced_by(topic, assets):
            if asset == topic:
                elements = (publisher, subscriber)
            else:
                chain = shortest_chain(graph, subscriber, publishers.get(asset, ()))
                if chain is None:
                    continue
                elements = (publisher,) + chain
            paths.append(AttackPath(
                intruder=Intruder.INSIDER,
                entry=publisher,
                steps=(out_port, in_port),
                elements=elements,
                affected_topic=topic,
                asset_topic=asset,
                endpoints=tuple(sorted({elements[0], elements[-1]})),
            ))
    result = canonical(paths)
    logger.info("insider_paths_enumerated", paths=len(result), assets=assets)
    return result


def enumerate_paths(facts: FactBase, results: Mapping[str, IntruderResult], asset_topics: Iterable[str]) -> List[AttackPath]:
    """Enumerate paths for every evaluated profile."""
    assets = sorted(set(asset_topics))
    influence = InfluenceRelation(facts, assets)
    paths: List[AttackPath] = []
    if Profile.OUTSIDER in results:
        paths.extend(enumerate_outsider_paths(facts, results[Profile.OUTSIDER].reach, assets, influence))
    if Profile.INSIDER in results:
        paths.extend(enumerate_insider_paths(facts, results[Profile.INSIDER].reach, assets, influence))
    return canonical(paths)


def path_is_valid(path: AttackPath, reach: ReachSet) -> bool:
    """Replay a path hop by hop against the flow atoms of its ReachSet."""
    edges = set(flow_graph(reach.flows()).edges())
    steps = path.steps
    return (
        len(set(steps)) == len(steps)
        and all(port in reach.ports for port in steps)
        and all((a, b) in edges for a, b in zip(steps, steps[1:]))
    )
