"""Tests for compiling models into ground fact bases."""

import unittest

from soa_threat_toolkit.core.facts import Atom, FactBase, atom, expected_fact_count, to_facts
from soa_threat_toolkit.core.model import Channel
from soa_threat_toolkit.utils.constants import Predicate
from soa_threat_toolkit.utils.exceptions import InvalidModelError
from tests.helpers import apollo_model, insider_model, outsider_model, random_model


class TestToFacts(unittest.TestCase):
    """Test cases for to_facts()."""

    def test_one_atom_per_feature(self):
        for model in (outsider_model(), insider_model(), apollo_model(), random_model(3)):
            self.assertEqual(len(to_facts(model)), expected_fact_count(model))

    def test_outsider_example_atoms(self):
        facts = to_facts(outsider_model())
        for expected in (
            atom(Predicate.PUBLIC, "Sensor", "o1"),
            atom(Predicate.NETI, "Network1", "i1"),
            atom(Predicate.NETO, "Network1", "o2"),
            atom(Predicate.ECUI, "ECU1", "i2"),
            atom(Predicate.ECUO, "ECU1", "o3"),
            atom(Predicate.CPI, "CP1", "cp1_in"),
            atom(Predicate.CPO, "CP1", "cp1_out"),
            atom(Predicate.SUB, "CP1", "cp1_in", "sensor_data"),
            atom(Predicate.PUB, "CP1", "cp1_out", "tp_cp1"),
            atom(Predicate.CH, "o1", "i1"),
            atom(Predicate.ALLOC, "cp1_in", "i2"),
            atom(Predicate.IF, "ECU1", "i2", "tp_cp1"),
        ):
            self.assertIn(expected, facts)
        self.assertEqual(facts.by_predicate(Predicate.PRO), ())

    def test_protected_topics(self):
        facts = to_facts(insider_model())
        self.assertEqual(facts.protected_topics(), frozenset({"prediction", "pose"}))
        self.assertIn(atom(Predicate.PRO, "pose"), facts)

    def test_invalid_model_rejected(self):
        model = outsider_model()
        broken = model.model_copy(update={"channels": model.channels + (Channel(from_port="o1", to_port="nowhere"),)})
        with self.assertRaises(InvalidModelError) as ctx:
            to_facts(broken)
        self.assertTrue(any("nowhere" in d for d in ctx.exception.details))

    def test_deterministic(self):
        self.assertEqual(to_facts(apollo_model()).dump(), to_facts(apollo_model()).dump())


class TestFactBase(unittest.TestCase):
    """Test cases for the FactBase container."""

    def setUp(self):
        self.facts = to_facts(outsider_model())

    def test_atom_rendering(self):
        self.assertEqual(str(atom(Predicate.PUB, "CP1", "cp1_out", "tp_cp1")), 'pub("CP1","cp1_out","tp_cp1")')
        self.assertEqual(str(atom(Predicate.PUBLIC, "Front Left Camera", "flc.out")), 'public("Front Left Camera","flc.out")')

    def test_dump_sorted(self):
        lines = self.facts.dump().splitlines()
        self.assertEqual(lines, sorted(lines))
        self.assertEqual(len(lines), len(self.facts))

    def test_iteration_sorted(self):
        items = list(self.facts)
        self.assertEqual(items, sorted(items))

    def test_port_owners(self):
        owners = self.facts.port_owners()
        self.assertEqual(owners["o1"], "Sensor")
        self.assertEqual(owners["i4"], "Network2")
        self.assertEqual(owners["cp3_out"], "CP3")

    def test_with_and_without_atoms(self):
        extra = Atom(Predicate.PRO, ("tp_cp1",))
        grown = self.facts.with_atoms(extra)
        self.assertEqual(len(grown), len(self.facts) + 1)
        self.assertEqual(grown.protected_topics(), frozenset({"tp_cp1"}))
        self.assertEqual(grown.without_atoms(extra), self.facts)
        self.assertNotIn(extra, self.facts)

    def test_equality_and_hash(self):
        again = FactBase(list(self.facts))
        self.assertEqual(again, self.facts)
        self.assertEqual(hash(again), hash(self.facts))


if __name__ == "__main__":
    unittest.main()
