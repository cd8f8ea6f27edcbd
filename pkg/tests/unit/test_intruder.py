"""Tests for the intruder rules and profiles."""

import unittest

from soa_threat_toolkit.core.facts import atom, to_facts
from soa_threat_toolkit.engine.intruder import (
    INTRUDER_RULES,
    PROFILE_RULES,
    IntruderProfile,
    compute_attacks,
    compute_reach,
    derive_flows,
    profiles_for,
    run_profile,
    run_profiles,
)
from soa_threat_toolkit.utils.constants import Predicate, Profile
from tests.helpers import apollo_model, insider_model, outsider_model, random_facts


class TestProfiles(unittest.TestCase):
    """Test cases for rule selection."""

    def test_rule_sets(self):
        self.assertEqual(len(INTRUDER_RULES), 13)
        outsider = set(PROFILE_RULES[Profile.OUTSIDER])
        insider = set(PROFILE_RULES[Profile.INSIDER])
        self.assertEqual(outsider | insider, set(INTRUDER_RULES))
        self.assertEqual(outsider & insider, {"read1"})

    def test_views(self):
        profile = IntruderProfile.of(Profile.OUTSIDER)
        self.assertEqual(profile.attack_rules, ("at_out",))
        self.assertNotIn("at_out", profile.reach_rules)
        self.assertEqual(len(profile.flow_rules), 6)

    def test_both_expands(self):
        self.assertEqual([p.kind for p in profiles_for(Profile.BOTH)], [Profile.OUTSIDER, Profile.INSIDER])
        self.assertEqual([p.kind for p in profiles_for(Profile.INSIDER)], [Profile.INSIDER])

    def test_unknown_profile(self):
        with self.assertRaises(ValueError):
            IntruderProfile.of("martian")
        with self.assertRaises(ValueError):
            IntruderProfile.of(Profile.BOTH)


class TestOutsiderExample(unittest.TestCase):
    """The outsider walkthrough: a sensor reaching two ECUs over one network."""

    def setUp(self):
        self.facts = to_facts(outsider_model())
        self.result = run_profile(self.facts, Profile.OUTSIDER)

    def test_reach(self):
        self.assertEqual(set(self.result.reach.ports), {"o1", "i1", "o2", "i2", "o3", "i4"})

    def test_attacks(self):
        self.assertEqual(set(self.result.attacks.topics), {"tp_cp1", "tp_cp2"})

    def test_flows(self):
        flows = derive_flows(self.facts)
        self.assertIn(atom(Predicate.WRT, "o1", "i1"), flows)
        self.assertIn(atom(Predicate.RD, "i2", "o2"), flows)
        self.assertIn(atom(Predicate.WRT, "o3", "i4"), flows)
        self.assertIn(atom(Predicate.RD, "cp3_in", "cp1_out"), flows)
        self.assertEqual(flows[atom(Predicate.WRT, "o1", "i1")].rule, "write4")

    def test_derivations_replay(self):
        self.assertEqual(self.result.replay(self.facts), [])

    def test_unreached_ecu_not_attacked(self):
        self.assertNotIn(atom(Predicate.ATTACK, "tp_cp3"), self.result.attacks)


class TestInsiderExample(unittest.TestCase):
    """The insider walkthrough: seven components, two protected topics."""

    def setUp(self):
        self.facts = to_facts(insider_model())
        self.result = run_profile(self.facts, Profile.INSIDER)

    def test_reach(self):
        expected = {f"o{i}" for i in range(1, 7)} | {f"i{i}" for i in range(1, 8)}
        self.assertEqual(set(self.result.reach.ports), expected)

    def test_attacks_skip_protected_topics(self):
        self.assertEqual(set(self.result.attacks.topics), {"obstacles", "routing_response"})

    def test_all_topics_protected(self):
        facts = self.facts.with_atoms(*(atom(Predicate.PRO, t) for t in ("obstacles", "routing_response", "trajectory", "chassis")))
        attacks = run_profile(facts, Profile.INSIDER).attacks
        self.assertEqual(len(attacks), 0)

    def test_derivations_replay(self):
        self.assertEqual(self.result.replay(self.facts), [])

    def test_outsider_reaches_nothing(self):
        self.assertEqual(len(run_profile(self.facts, Profile.OUTSIDER).reach.ports), 0)


class TestApollo(unittest.TestCase):
    """Reachability over the mini vehicle architecture."""

    def setUp(self):
        self.facts = to_facts(apollo_model())
        self.results = run_profiles(self.facts, Profile.BOTH)

    def test_both_profiles_evaluated(self):
        self.assertEqual(list(self.results), [Profile.OUTSIDER, Profile.INSIDER])

    def test_outsider_reach(self):
        ports = self.results[Profile.OUTSIDER].reach.ports
        for port in ("flc.out", "gmsl.in1", "viu1.in1", "sw1.out1", "mcu.in1", "mcu.in2", "vdc.in1", "cdc.in2"):
            self.assertIn(port, ports)
        self.assertFalse(any(p.startswith("perception.") for p in ports))

    def test_outsider_attacks(self):
        attacks = self.results[Profile.OUTSIDER].attacks.topics
        self.assertIn("trajectory", attacks)
        self.assertIn("chassis", attacks)
        self.assertIn("pose", attacks)

    def test_insider_never_attacks_protected(self):
        attacks = self.results[Profile.INSIDER].attacks.topics
        self.assertNotIn("pose", attacks)
        self.assertNotIn("guardian_status", attacks)
        self.assertIn("trajectory", attacks)

    def test_insider_reaches_every_publisher(self):
        ports = self.results[Profile.INSIDER].reach.ports
        for item in self.facts.by_predicate(Predicate.PUB):
            self.assertIn(item.args[1], ports)

    def test_replay(self):
        for result in self.results.values():
            self.assertEqual(result.replay(self.facts), [])

    def test_profiles_are_independent(self):
        self.assertEqual(
            self.results[Profile.OUTSIDER].reach.ports,
            run_profile(self.facts, Profile.OUTSIDER).reach.ports,
        )


class TestMonotonicity(unittest.TestCase):
    """Adding facts never removes reached ports or attacked topics."""

    def test_new_public_element(self):
        facts = to_facts(outsider_model())
        before = compute_reach(facts, Profile.OUTSIDER)
        grown = facts.with_atoms(
            atom(Predicate.PUBLIC, "Modem", "m.out"),
            atom(Predicate.CH, "m.out", "i3"),
        )
        after = compute_reach(grown, Profile.OUTSIDER)
        self.assertTrue(before.ports < after.ports)
        self.assertIn("i5", after.ports)
        attacks = compute_attacks(grown, after, Profile.OUTSIDER)
        self.assertIn("tp_cp3", attacks.topics)

    def test_random_channel_removal(self):
        for seed in range(10):
            facts = random_facts(seed)
            full = run_profiles(facts, Profile.BOTH)
            for channel in facts.by_predicate(Predicate.CH)[:3]:
                smaller = run_profiles(facts.without_atoms(channel), Profile.BOTH)
                for profile in (Profile.OUTSIDER, Profile.INSIDER):
                    self.assertTrue(smaller[profile].reach.ports <= full[profile].reach.ports)
                    self.assertTrue(smaller[profile].attacks.topics <= full[profile].attacks.topics)

    def test_reach_facts_characterised(self):
        """Every outsider reach atom is a public port or the target of a reached flow."""
        for seed in range(10):
            facts = random_facts(seed)
            reach = compute_reach(facts, Profile.OUTSIDER)
            public = {a.args[1] for a in facts.by_predicate(Predicate.PUBLIC)}
            for item, derivation in reach.derivations.items():
                if item.predicate != Predicate.REACH:
                    continue
                if derivation.rule == "basic_out":
                    self.assertIn(item.args[0], public)
                else:
                    self.assertIn(derivation.rule, ("reach_wrt", "reach_rd"))


if __name__ == "__main__":
    unittest.main()
