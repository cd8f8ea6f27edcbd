"""Tests for influence, attack path enumeration and path validity."""

import random
import unittest
from collections import Counter

from soa_threat_toolkit.core.facts import atom, to_facts
from soa_threat_toolkit.core.model import LogicalComponent, PortBinding, SystemModel, Topic
from soa_threat_toolkit.engine.intruder import run_profile, run_profiles
from soa_threat_toolkit.paths.enumeration import (
    AttackPath,
    Intruder,
    enumerate_insider_paths,
    enumerate_outsider_paths,
    enumerate_paths,
    path_is_valid,
    project_elements,
    shortest_chain,
)
from soa_threat_toolkit.paths.influence import InfluenceRelation, component_graph
from soa_threat_toolkit.paths.oracle import oracle_enumerate
from soa_threat_toolkit.utils.constants import Predicate, Profile
from tests.helpers import apollo_model, apollo_safety, insider_model, outsider_model, random_facts

AUTO_ASSETS = ("chassis", "guardian_status", "obstacles", "pose", "traffic_light", "trajectory")


class TestInfluence(unittest.TestCase):
    """Test cases for InfluenceRelation and component_graph()."""

    def setUp(self):
        self.facts = to_facts(apollo_model())
        self.influence = InfluenceRelation(self.facts)

    def test_reflexive(self):
        self.assertTrue(self.influence.influences("map", "map"))
        self.assertTrue(self.influence.influences("unknown", "unknown"))

    def test_transitive(self):
        self.assertTrue(self.influence.influences("raw_image_left", "trajectory"))
        self.assertTrue(self.influence.influences("trajectory", "chassis"))
        self.assertFalse(self.influence.influences("chassis", "trajectory"))
        self.assertFalse(self.influence.influences("guardian_status", "trajectory"))

    def test_influenced_by(self):
        self.assertEqual(self.influence.influenced_by("pose", AUTO_ASSETS), ["chassis", "pose", "trajectory"])
        self.assertEqual(self.influence.influenced_by("bt_audio", ["trajectory"]), ["trajectory"])

    def test_pairs_closed(self):
        pairs = self.influence.pairs()
        for a, b in pairs:
            for c, d in pairs:
                if b == c:
                    self.assertIn((a, d), pairs)

    def test_component_graph(self):
        graph = component_graph(self.facts)
        self.assertTrue(graph.has_edge("planning", "control"))
        self.assertEqual(graph.edges["planning", "control"]["topic"], "trajectory")
        self.assertFalse(graph.has_edge("control", "planning"))


class TestOutsiderPaths(unittest.TestCase):
    """Test cases for enumerate_outsider_paths()."""

    def test_outsider_example(self):
        facts = to_facts(outsider_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        paths = enumerate_outsider_paths(facts, reach, ["tp_cp1", "tp_cp2"])
        self.assertEqual(len(paths), 2)
        for path in paths:
            self.assertEqual(path.steps, ("o1", "i1", "o2", "i2"))
            self.assertEqual(path.elements, ("Sensor", "Network1", "ECU1"))
            self.assertEqual(path.entry, "Sensor")
            self.assertEqual(path.render(), "Sensor → Network1 → ECU1")
        self.assertEqual([(p.affected_topic, p.endpoints) for p in paths], [("tp_cp1", ("CP1",)), ("tp_cp2", ("CP2",))])

    def test_influenced_asset(self):
        """tp_cp1 feeds CP3, so an attack on it also reaches tp_cp3."""
        facts = to_facts(outsider_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        paths = enumerate_outsider_paths(facts, reach, ["tp_cp3"])
        self.assertEqual([(p.affected_topic, p.asset_topic) for p in paths], [("tp_cp1", "tp_cp3")])

    def test_unrelated_asset(self):
        facts = to_facts(outsider_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        self.assertEqual(enumerate_outsider_paths(facts, reach, ["sensor_data"]), [])

    def test_apollo_trajectory(self):
        facts = to_facts(apollo_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        paths = enumerate_outsider_paths(facts, reach, ["trajectory"])
        self.assertEqual(len(paths), 35)
        self.assertEqual(Counter(p.entry for p in paths), Counter({
            "Front Left Camera": 4,
            "Front Right Camera": 4,
            "GPS": 4,
            "Front Radar": 4,
            "Rear Radar": 4,
            "LiDAR": 8,
            "T-Box": 6,
            "Bluetooth": 1,
        }))
        for path in paths:
            self.assertTrue(path_is_valid(path, reach))
            self.assertEqual(path.intruder, Intruder.OUTSIDER)

    def test_paths_per_attacked_port(self):
        facts = to_facts(apollo_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        paths = enumerate_outsider_paths(facts, reach, AUTO_ASSETS)
        distinct = {(p.steps[-1], p.steps) for p in paths}
        per_port = Counter(port for port, _ in distinct)
        self.assertEqual(per_port["mcu.in1"], 3)
        self.assertEqual(per_port["mcu.in2"], 5)
        self.assertEqual(per_port["mdc.in1"], 2)
        self.assertEqual(per_port["vdc.in1"], 10)

    def test_sorted_and_unique(self):
        facts = to_facts(apollo_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        paths = enumerate_outsider_paths(facts, reach, AUTO_ASSETS)
        self.assertEqual(len(paths), 108)
        self.assertEqual(paths, sorted(paths, key=AttackPath.sort_key))
        self.assertEqual(len(set(paths)), len(paths))


class TestInsiderPaths(unittest.TestCase):
    """Test cases for enumerate_insider_paths()."""

    def test_insider_example(self):
        facts = to_facts(insider_model())
        reach = run_profile(facts, Profile.INSIDER).reach
        paths = enumerate_insider_paths(facts, reach, ["trajectory"])
        self.assertEqual(
            [p.elements for p in paths],
            [("perception", "prediction", "planning"), ("routing", "planning")],
        )
        self.assertEqual(paths[0].steps, ("o1", "i1"))
        self.assertEqual(paths[0].endpoints, ("perception", "planning"))
        self.assertEqual(paths[1].affected_topic, "routing_response")

    def test_direct_asset(self):
        facts = to_facts(insider_model())
        reach = run_profile(facts, Profile.INSIDER).reach
        paths = enumerate_insider_paths(facts, reach, ["routing_response"])
        self.assertEqual([p.elements for p in paths], [("routing", "planning")])

    def test_apollo_trajectory(self):
        facts = to_facts(apollo_model())
        reach = run_profile(facts, Profile.INSIDER).reach
        paths = enumerate_insider_paths(facts, reach, ["trajectory"])
        self.assertEqual(len(paths), 16)
        per_entry = Counter(p.entry for p in paths)
        self.assertEqual(per_entry["camera driver right"], 2)
        self.assertEqual(per_entry["perception"], 2)
        self.assertTrue(all(count == 1 for entry, count in per_entry.items() if entry not in ("camera driver right", "perception")))
        via_perception = [p for p in paths if p.entry == "perception"]
        self.assertEqual(via_perception[0].elements, ("perception", "prediction", "planning"))

    def test_apollo_auto_assets(self):
        facts = to_facts(apollo_model())
        reach = run_profile(facts, Profile.INSIDER).reach
        self.assertEqual(len(enumerate_insider_paths(facts, reach, AUTO_ASSETS)), 45)

    def test_no_paths_on_protected_topics(self):
        facts = to_facts(apollo_model())
        reach = run_profile(facts, Profile.INSIDER).reach
        paths = enumerate_insider_paths(facts, reach, AUTO_ASSETS)
        self.assertFalse({"pose", "guardian_status"} & {p.affected_topic for p in paths})

    def test_two_port_publisher_is_one_path(self):
        facts = to_facts(SystemModel(
            topics=(Topic(id="t"), Topic(id="u")),
            components=(
                LogicalComponent(id="A", pub_ports=(PortBinding(port="a1", topic="t"), PortBinding(port="a2", topic="t"))),
                LogicalComponent(
                    id="B",
                    pub_ports=(PortBinding(port="bo", topic="u"),),
                    sub_ports=(PortBinding(port="bi", topic="t"),),
                ),
            ),
        ))
        reach = run_profile(facts, Profile.INSIDER).reach
        self.assertTrue({"a1", "a2", "bi"} <= reach.ports)
        paths = enumerate_insider_paths(facts, reach, ["t"])
        self.assertEqual(len(paths), 1)
        self.assertEqual(paths[0].steps, ("a1", "bi"))
        self.assertEqual(paths[0].elements, ("A", "B"))
        self.assertEqual(oracle_enumerate(facts, Profile.INSIDER, ["t"]), paths)


class TestProtectionAndChannelMutations(unittest.TestCase):
    """Protecting a topic and adding channels on seeded random models."""

    SEEDS = range(150)
    CHANNELS_PER_SEED = 7

    @staticmethod
    def _paths(facts, assets):
        return set(enumerate_paths(facts, run_profiles(facts, Profile.BOTH), assets))

    @staticmethod
    def _platform_ports(facts):
        ports = set()
        for predicate in (Predicate.ECUI, Predicate.ECUO, Predicate.NETI, Predicate.NETO, Predicate.PUBLIC):
            ports.update(a.args[1] for a in facts.by_predicate(predicate))
        return sorted(ports)

    def test_mutations(self):
        mutations = 0
        for seed in self.SEEDS:
            facts = random_facts(seed)
            assets = sorted({a.args[2] for a in facts.by_predicate(Predicate.PUB)})
            before = self._paths(facts, assets)

            for topic in sorted(set(assets) - facts.protected_topics()):
                after = self._paths(facts.with_atoms(atom(Predicate.PRO, topic)), assets)
                dropped = {p for p in before if p.intruder == Intruder.INSIDER and p.affected_topic == topic}
                self.assertTrue(after <= before, f"seed {seed}, pro({topic}) added paths")
                self.assertEqual(before - after, dropped, f"seed {seed}, pro({topic})")
                mutations += 1

            rng = random.Random(seed)
            ports = self._platform_ports(facts)
            reach = {kind: result.reach.ports for kind, result in run_profiles(facts, Profile.BOTH).items()}
            mutated = facts
            for _ in range(self.CHANNELS_PER_SEED):
                mutated = mutated.with_atoms(atom(Predicate.CH, rng.choice(ports), rng.choice(ports)))
                widened = run_profiles(mutated, Profile.BOTH)
                for kind, ports_before in reach.items():
                    self.assertTrue(ports_before <= widened[kind].reach.ports, f"seed {seed}, {kind} lost reach")
                reach = {kind: result.reach.ports for kind, result in widened.items()}
                mutations += 1

        self.assertGreaterEqual(mutations, 1000)


class TestHelpers(unittest.TestCase):
    """Test cases for enumeration helpers."""

    def test_project_elements(self):
        owners = {"a": "X", "b": "X", "c": "Y", "d": "X"}
        self.assertEqual(project_elements(["a", "b", "c", "d"], owners), ("X", "Y", "X"))

    def test_shortest_chain_tie_break(self):
        graph = component_graph(to_facts(apollo_model()))
        self.assertEqual(shortest_chain(graph, "perception", {"planning"}), ("perception", "prediction", "planning"))
        self.assertEqual(shortest_chain(graph, "planning", {"planning"}), ("planning",))
        self.assertIsNone(shortest_chain(graph, "guardian", {"planning"}))

    def test_enumerate_paths_combines_profiles(self):
        facts = to_facts(apollo_model())
        results = run_profiles(facts, Profile.BOTH)
        paths = enumerate_paths(facts, results, ["trajectory"])
        self.assertEqual(Counter(p.intruder for p in paths), Counter({Intruder.OUTSIDER: 35, Intruder.INSIDER: 16}))

    def test_invalid_path_detected(self):
        facts = to_facts(outsider_model())
        reach = run_profile(facts, Profile.OUTSIDER).reach
        path = enumerate_outsider_paths(facts, reach, ["tp_cp1"])[0]
        skipping = path.model_copy(update={"steps": ("o1", "o2", "i2")})
        self.assertFalse(path_is_valid(skipping, reach))
        looping = path.model_copy(update={"steps": ("o1", "i1", "o1")})
        self.assertFalse(path_is_valid(looping, reach))

    def test_safety_assets_resolve(self):
        self.assertEqual(tuple(apollo_safety().message_topics()), AUTO_ASSETS)


if __name__ == "__main__":
    unittest.main()
