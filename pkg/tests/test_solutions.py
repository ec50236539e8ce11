import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournkit import (
    MAX,
    dominating_set_greedy,
    is_r_dominating,
    k_kings,
    middle_vertex,
    path_worstcase,
    r_dominating_set,
    reach_within,
    top_cycle,
    transitive,
)
from tournkit.errors import InvalidK, InvalidR, OutOfRange

from conftest import A, B, C, D, E, random_tournament


def bfs_reach(t, src, k):
    """Independent oracle: plain level-by-level BFS on adjacency lists."""
    adjacency = [[j for j in range(t.n) if j != i and t.dominates(i, j)] for i in range(t.n)]
    seen = {src}
    frontier = [src]
    for _ in range(k):
        nxt = []
        for u in frontier:
            for v in adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def bfs_kings(t, k):
    return {x for x in range(t.n) if len(bfs_reach(t, x, k)) == t.n}


class TestReachWithin:
    def test_fig1_c_two_steps(self, fig1):
        assert reach_within(fig1, C, 2) == {C, D, E, A}

    def test_zero_steps(self, fig1):
        for src in range(5):
            assert reach_within(fig1, src, 0) == {src}

    def test_path_worstcase_six(self):
        t = path_worstcase(6)
        assert 5 not in reach_within(t, 0, 4)
        assert reach_within(t, 0, 5) == set(range(6))

    def test_out_of_range(self, fig1):
        with pytest.raises(OutOfRange):
            reach_within(fig1, 9, 2)

    @given(st.integers(0, 2**32 - 1), st.integers(2, 9), st.integers(0, 8))
    @settings(max_examples=50, deadline=None)
    def test_matches_bfs(self, seed, n, k):
        t = random_tournament(n, seed=seed)
        src = seed % n
        assert reach_within(t, src, k) == bfs_reach(t, src, k)


class TestKKings:
    def test_fig1_two_kings(self, fig1):
        assert k_kings(fig1, 2).members == {A, B, D}

    def test_fig1_three_kings(self, fig1):
        assert k_kings(fig1, 3).members == {A, B, C, D}

    def test_fig1_e_never_king(self, fig1):
        for k in range(2, 5):
            assert E not in k_kings(fig1, k).members

    def test_transitive_only_top(self):
        t = transitive(7)
        for k in (2, 3, 6, MAX):
            assert k_kings(t, k).members == {0}

    def test_invalid_k(self, fig1):
        with pytest.raises(InvalidK):
            k_kings(fig1, 1)
        with pytest.raises(InvalidK):
            k_kings(fig1, "2")

    def test_max_equals_n_minus_one(self):
        for seed in range(20):
            t = random_tournament(9, seed=seed)
            assert k_kings(t, MAX).members == k_kings(t, 8).members

    def test_nonempty_and_max_outdegree_member(self):
        for seed in range(30):
            t = random_tournament(11, seed=seed)
            kings2 = k_kings(t, 2).members
            assert kings2
            top_degree = max(t.outdegree(i) for i in range(t.n))
            for i in range(t.n):
                if t.outdegree(i) == top_degree:
                    assert i in kings2

    @given(st.integers(0, 2**32 - 1), st.integers(3, 9))
    @settings(max_examples=60, deadline=None)
    def test_inclusion_chain(self, seed, n):
        t = random_tournament(n, seed=seed)
        previous = k_kings(t, 2).members
        for k in range(3, n):
            current = k_kings(t, k).members
            assert previous <= current
            previous = current

    def test_agrees_with_bfs_oracle(self):
        for n in range(3, 8):
            for seed in range(40):
                t = random_tournament(n, seed=seed)
                for k in range(2, n):
                    assert k_kings(t, k).members == bfs_kings(t, k)


class TestTopCycle:
    def test_fig1(self, fig1):
        assert top_cycle(fig1).members == {A, B, C, D}
        assert top_cycle(fig1).members == k_kings(fig1, 4).members

    def test_transitive(self):
        for n in (1, 2, 6):
            assert top_cycle(transitive(n)).members == {0}

    def test_path_worstcase_all(self):
        t = path_worstcase(5)
        assert top_cycle(t).members == set(range(5))
        # brute-force reachability agrees
        for x in range(5):
            assert len(bfs_reach(t, x, 4)) == 5

    def test_equals_k_kings(self):
        for seed in range(60):
            t = random_tournament(10, seed=seed)
            assert top_cycle(t).members == k_kings(t, 9).members


class TestDominatingSets:
    def test_transitive_greedy(self):
        assert dominating_set_greedy(transitive(8)) == {0}

    def test_single_alternative(self):
        assert dominating_set_greedy(transitive(1)) == {0}

    def test_fig1_size_and_coverage(self, fig1):
        dom = dominating_set_greedy(fig1)
        assert len(dom) <= math.ceil(math.log2(5))
        assert is_r_dominating(fig1, dom, 1)

    def test_greedy_bound_random(self):
        for seed in range(40):
            for n in (2, 5, 9, 16, 33):
                t = random_tournament(n, seed=seed)
                dom = dominating_set_greedy(t)
                assert is_r_dominating(t, dom, 1)
                assert len(dom) <= max(1, math.ceil(math.log2(n)))

    def test_is_r_dominating_examples(self, fig1):
        t = transitive(4)
        assert is_r_dominating(t, {0}, 1)
        assert not is_r_dominating(t, {3}, 1)
        assert is_r_dominating(fig1, {A, B}, 1)

    def test_is_r_dominating_out_of_range(self, fig1):
        with pytest.raises(OutOfRange):
            is_r_dominating(fig1, {0, 9}, 1)

    def test_r_dominating_transitive(self):
        dom = r_dominating_set(transitive(8), 2)
        assert dom.members == {0, 1}
        for x in range(2, 8):
            assert transitive(8).dominates(0, x) and transitive(8).dominates(1, x)

    def test_r1_reduces_to_greedy(self):
        for seed in range(10):
            t = random_tournament(12, seed=seed)
            assert r_dominating_set(t, 1).members == frozenset(dominating_set_greedy(t))

    def test_condorcet_example(self):
        t = random_tournament(32, seed=7, kind="condorcet", p=0.3)
        dom = r_dominating_set(t, 3)
        assert is_r_dominating(t, dom.members, 3)
        assert len(dom.members) <= 15  # 3 * ceil(log2 32)

    def test_bounds_random(self):
        for seed in range(15):
            t = random_tournament(20, seed=seed)
            for r in (1, 2, 4):
                dom = r_dominating_set(t, r)
                assert is_r_dominating(t, dom.members, r)
                assert len(dom.members) <= r * math.ceil(math.log2(20))

    def test_invalid_r(self, fig1):
        with pytest.raises(InvalidR):
            r_dominating_set(fig1, 0)
        with pytest.raises(InvalidR):
            r_dominating_set(fig1, 6)


class TestMiddleVertex:
    def test_fig1_is_c(self, fig1):
        assert middle_vertex(fig1) == C
        assert fig1.indegree(C) > 5 / 4 - 1
        assert fig1.outdegree(C) > 5 / 4 - 1

    def test_transitive_two(self):
        # sorted order is (x_1, x_0); position 1 is x_1
        assert middle_vertex(transitive(2)) == 1

    def test_uniform_n64_bounds(self):
        t = random_tournament(64, seed=1)
        v = middle_vertex(t)
        assert t.indegree(v) > 15
        assert t.outdegree(v) > 15

    def test_bounds_random(self):
        for seed in range(40):
            for n in (1, 2, 3, 8, 21):
                t = random_tournament(n, seed=seed) if n >= 2 else transitive(1)
                v = middle_vertex(t)
                assert t.indegree(v) > n / 4 - 1
                assert t.outdegree(v) > n / 4 - 1
