import random

import pytest

from reprokit.errors import DegenerateTiesError, OverlapTooSmallError
from reprokit.ordering import (
    RboParams,
    kendall_tau,
    mean_over_topics,
    ordering_at_cutoffs,
    rbo,
    tau_intersection,
    tau_union,
)
from reprokit.trec_io import TopicSet

import oracles
from conftest import make_run, random_run


class TestKendallTau:
    def test_identity(self):
        assert kendall_tau([1, 2, 3], [1, 2, 3]) == 1.0

    def test_full_reversal(self):
        assert kendall_tau([1, 2, 3], [3, 2, 1]) == -1.0

    def test_worked_example(self):
        assert kendall_tau([1, 2, 3, 4], [2, 5, 3, 6]) == pytest.approx(2 / 3)

    def test_all_tied_is_degenerate(self):
        with pytest.raises(DegenerateTiesError):
            kendall_tau([1, 1, 1], [1, 2, 3])

    def test_matches_brute_force_with_ties(self, rng):
        for _ in range(500):
            n = rng.randint(2, 15)
            x = [rng.randint(1, 6) for _ in range(n)]
            y = [rng.randint(1, 6) for _ in range(n)]
            expected = oracles.brute_kendall_tau(x, y)
            if expected is None:
                with pytest.raises(DegenerateTiesError):
                    kendall_tau(x, y)
            else:
                assert kendall_tau(x, y) == pytest.approx(expected, abs=1e-12)


class TestTauUnion:
    def test_shared_prefix_worked_example(self):
        assert tau_union(["d1", "d2", "d3"], ["d1", "d2", "d4"]) == 1.0

    def test_partial_overlap_worked_example(self):
        assert tau_union(["d1", "d2", "d3", "d4"], ["d2", "d5", "d3", "d6"]) == pytest.approx(2 / 3)

    def test_identity(self, rng):
        docs = [f"d{i}" for i in range(10)]
        assert tau_union(docs, docs) == 1.0

    def test_equals_plain_tau_on_same_doc_set(self, rng):
        for _ in range(1000):
            n = rng.randint(2, 20)
            docs = [f"d{i}" for i in range(n)]
            perm = docs[:]
            rng.shuffle(perm)
            expected = oracles.brute_kendall_tau(
                list(range(1, n + 1)), [docs.index(d) + 1 for d in perm]
            )
            assert tau_union(docs, perm) == pytest.approx(expected, abs=1e-12)

    def test_unequal_lengths_pairs_common_prefix(self):
        # only the first 2 positions of each list are paired
        val = tau_union(["a", "b", "c"], ["a", "b"])
        assert val == 1.0

    def test_strict_length_flag(self):
        with pytest.raises(ValueError):
            tau_union(["a", "b", "c"], ["a", "b"], strict_lengths=True)


class TestTauIntersection:
    def test_same_relative_order(self):
        tau, overlap = tau_intersection(["a", "b", "c", "x"], ["a", "y", "b", "c"])
        assert tau == 1.0
        assert overlap == 3

    def test_opposite_order(self):
        tau, overlap = tau_intersection(["a", "b", "c"], ["c", "x", "a"])
        assert tau == -1.0
        assert overlap == 2

    def test_disjoint_errors(self):
        with pytest.raises(OverlapTooSmallError):
            tau_intersection(["a", "b"], ["x", "y"])


class TestRbo:
    def test_identical_lists_closed_form(self):
        docs = [f"d{i}" for i in range(10)]
        for phi in (0.5, 0.8, 0.9):
            for d in (1, 5, 10):
                assert rbo(docs, docs, RboParams(phi, d)) == pytest.approx(
                    1 - phi ** d, abs=1e-12)

    def test_disjoint_lists(self):
        assert rbo(["a", "b"], ["x", "y"], RboParams(0.8, 10)) == 0.0

    def test_swapped_pair(self):
        assert rbo(["a", "b"], ["b", "a"], RboParams(0.8, 2)) == pytest.approx(0.16)

    def test_matches_direct_summation(self, rng):
        for _ in range(1000):
            pool = [f"d{i}" for i in range(60)]
            r = rng.sample(pool, rng.randint(1, 50))
            s = rng.sample(pool, rng.randint(1, 50))
            phi = rng.uniform(0.1, 0.95)
            depth = rng.randint(1, 60)
            assert rbo(r, s, RboParams(phi, depth)) == pytest.approx(
                oracles.brute_rbo(r, s, phi, depth), abs=1e-12)

    def test_monotone_in_depth(self, rng):
        pool = [f"d{i}" for i in range(40)]
        r = rng.sample(pool, 30)
        s = rng.sample(pool, 30)
        prev = 0.0
        for d in range(1, 31):
            cur = rbo(r, s, RboParams(0.8, d))
            assert cur >= prev - 1e-15
            prev = cur

    def test_range(self, rng):
        for _ in range(100):
            pool = [f"d{i}" for i in range(30)]
            r = rng.sample(pool, 20)
            s = rng.sample(pool, 20)
            val = rbo(r, s, RboParams(0.8, 20))
            assert 0.0 <= val < 1.0


class TestMeanOverTopics:
    def test_simple_mean(self):
        mean, excluded = mean_over_topics({"t1": 1.0, "t2": 0.0})
        assert mean == 0.5
        assert excluded == 0

    def test_single_topic(self):
        assert mean_over_topics({"t": 0.7}) == (0.7, 0)

    def test_degenerate_topics_excluded_with_count(self):
        mean, excluded = mean_over_topics({"t1": 1.0, "t2": None})
        assert mean == 1.0
        assert excluded == 1

    def test_all_degenerate_errors(self):
        with pytest.raises(DegenerateTiesError):
            mean_over_topics({"t1": None})


class TestOrderingAtCutoffs:
    def test_identical_runs_tau_one_everywhere(self, rng):
        run = random_run(rng, "r", 4, 30)
        topics = TopicSet(tuple(run.topics))
        out = ordering_at_cutoffs(run, run, topics, [5, 10, 30], RboParams(0.8, 1000))
        for k, (tau_mean, rbo_mean) in out.items():
            assert tau_mean == 1.0
            assert rbo_mean == pytest.approx(1 - 0.8 ** k, abs=1e-12)

    def test_cutoff_one_same_top_doc(self):
        a = make_run("a", {"1": ["top", "x"]})
        b = make_run("b", {"1": ["top", "y"]})
        topics = TopicSet(("1",))
        out = ordering_at_cutoffs(a, b, topics, [1], RboParams(0.8, 1000))
        # tau degenerate at depth 1 is excluded upstream; RBO = (1-phi) * A_1
        assert out[1][1] == pytest.approx(0.2, abs=1e-12)

    def test_cutoff_beyond_length_is_noop(self, rng):
        a = random_run(rng, "a", 3, 10)
        b = random_run(rng, "b", 3, 10)
        topics = TopicSet(tuple(a.topics))
        params = RboParams(0.8, 1000)
        full = ordering_at_cutoffs(a, b, topics, [10], params)[10]
        huge = ordering_at_cutoffs(a, b, topics, [999], params)[999]
        assert full == huge
