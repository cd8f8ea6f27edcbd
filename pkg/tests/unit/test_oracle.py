"""Cross-checks between the rule engine, the path search and the brute-force oracle."""

import unittest

from soa_threat_toolkit.core.facts import atom, to_facts
from soa_threat_toolkit.engine.intruder import run_profiles
from soa_threat_toolkit.paths.enumeration import enumerate_paths
from soa_threat_toolkit.paths.oracle import PathOracle, oracle_enumerate
from soa_threat_toolkit.utils.constants import Predicate, Profile
from soa_threat_toolkit.utils.exceptions import OracleBudgetExceeded
from tests.helpers import apollo_model, insider_model, outsider_model, random_facts

RANDOM_SEEDS = range(60)


def _topics(facts):
    return sorted({a.args[2] for a in facts.by_predicate(Predicate.PUB)})


class TestOracleAgreement(unittest.TestCase):
    """The engine and the oracle agree on every model."""

    def assertAgree(self, facts, assets, label=""):
        results = run_profiles(facts, Profile.BOTH)
        oracle = PathOracle(facts)
        for profile, result in results.items():
            self.assertEqual(set(result.reach.ports), oracle.reach(profile), f"{label} {profile} reach")
            self.assertEqual(set(result.attacks.topics), oracle.attacks(profile), f"{label} {profile} attacks")
            self.assertEqual(result.replay(facts), [], f"{label} {profile} replay")
        self.assertEqual(
            enumerate_paths(facts, results, assets),
            oracle_enumerate(facts, Profile.BOTH, assets),
            f"{label} paths",
        )

    def test_fixtures(self):
        for model in (outsider_model(), insider_model(), apollo_model()):
            facts = to_facts(model)
            self.assertAgree(facts, _topics(facts))

    def test_random_models(self):
        for seed in RANDOM_SEEDS:
            facts = random_facts(seed)
            topics = _topics(facts)
            self.assertAgree(facts, topics[:2], f"seed {seed}")

    def test_random_models_with_mutations(self):
        """Dropping a channel or protecting a topic keeps both sides in step."""
        for seed in range(20):
            facts = random_facts(seed)
            topics = _topics(facts)
            channels = facts.by_predicate(Predicate.CH)
            if channels:
                self.assertAgree(facts.without_atoms(channels[len(channels) // 2]), topics, f"seed {seed} -ch")
            if topics:
                self.assertAgree(facts.with_atoms(atom(Predicate.PRO, topics[0])), topics, f"seed {seed} +pro")

    def test_flow_sets_match(self):
        facts = to_facts(apollo_model())
        results = run_profiles(facts, Profile.OUTSIDER)
        engine = {(a.predicate, a.args[0], a.args[1]) for a in results[Profile.OUTSIDER].reach.flows()}
        self.assertEqual(engine, PathOracle(facts).flows())

    def test_influence_matches(self):
        from soa_threat_toolkit.paths.influence import InfluenceRelation

        facts = to_facts(apollo_model())
        self.assertEqual(set(InfluenceRelation(facts).pairs()), PathOracle(facts).influence())


class TestOracleBudget(unittest.TestCase):
    """Test cases for the search node budget."""

    def test_budget_exceeded(self):
        facts = to_facts(apollo_model())
        with self.assertRaises(OracleBudgetExceeded) as ctx:
            oracle_enumerate(facts, Profile.OUTSIDER, ["trajectory"], node_budget=10)
        self.assertEqual(ctx.exception.budget, 10)
        self.assertEqual(ctx.exception.details, {"budget": 10})

    def test_default_budget_is_enough_for_fixtures(self):
        facts = to_facts(apollo_model())
        paths = oracle_enumerate(facts, Profile.OUTSIDER, ["trajectory"])
        self.assertEqual(len(paths), 35)


if __name__ == "__main__":
    unittest.main()
