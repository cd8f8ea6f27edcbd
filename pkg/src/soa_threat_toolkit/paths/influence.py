"""Topic influence through subscribing/publishing components."""

from typing import Dict, FrozenSet, Iterable, List, Optional

import networkx as nx

from soa_threat_toolkit.core.facts import FactBase
from soa_threat_toolkit.utils.constants import Predicate


class InfluenceRelation:
    """Reflexive-transitive closure of "some component subscribes t1 and publishes t2"."""

    def __init__(self, facts: FactBase, extra_topics: Iterable[str] = ()):
        self.graph = nx.DiGraph()
        published: Dict[str, set] = {}
        subscribed: Dict[str, set] = {}
        for item in facts.by_predicate(Predicate.PUB):
            published.setdefault(item.args[0], set()).add(item.args[2])
            self.graph.add_node(item.args[2])
        for item in facts.by_predicate(Predicate.SUB):
            subscribed.setdefault(item.args[0], set()).add(item.args[2])
            self.graph.add_node(item.args[2])
        self.graph.add_nodes_from(extra_topics)
        for component, inputs in subscribed.items():
            for t1 in inputs:
                for t2 in published.get(component, ()):
                    self.graph.add_edge(t1, t2)
        self._closure: Dict[str, FrozenSet[str]] = {
            topic: frozenset(nx.descendants(self.graph, topic) | {topic}) for topic in self.graph
        }

    def influences(self, source: str, target: str) -> bool:
        return source == target or target in self._closure.get(source, ())

    def influenced_by(self, source: str, candidates: Optional[Iterable[str]] = None) -> List[str]:
        """Topics reachable from ``source``, optionally limited to candidates."""
        reached = self._closure.get(source, frozenset({source}))
        if candidates is None:
            return sorted(reached)
        return sorted(t for t in candidates if t == source or t in reached)

    def pairs(self) -> FrozenSet[tuple]:
        return frozenset((t1, t2) for t1, reached in self._closure.items() for t2 in reached)


def component_graph(facts: FactBase) -> nx.DiGraph:
    """Edge c1 -> c2 whenever c1 publishes a topic that c2 subscribes to."""
    publishers: Dict[str, set] = {}
    for item in facts.by_predicate(Predicate.PUB):
        publishers.setdefault(item.args[2], set()).add(item.args[0])
    graph = nx.DiGraph()
    graph.add_nodes_from(item.args[0] for item in facts.by_predicate(Predicate.PUB))
    graph.add_nodes_from(item.args[0] for item in facts.by_predicate(Predicate.SUB))
    for item in facts.by_predicate(Predicate.SUB):
        for publisher in publishers.get(item.args[2], ()):
            graph.add_edge(publisher, item.args[0], topic=item.args[2])
    return graph
