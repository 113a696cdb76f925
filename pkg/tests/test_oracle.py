"""Exact oracles: enumeration and the subset dynamic program."""

from __future__ import annotations

import math
import random
from itertools import permutations

import numpy as np
import pytest

from ringtour import (
    CompleteInstance,
    DomainError,
    brute_force,
    held_karp,
    random_instance,
    solve,
)


def enumerate_tours(inst):
    """Test-local oracle: all undirected tour weights, fixing v1 first."""
    n = inst.n
    out = []
    for perm in permutations(range(2, n + 1)):
        if perm[0] > perm[-1]:
            continue
        seq = (1,) + perm
        w = sum(
            inst.weight(seq[i], seq[(i + 1) % n]) for i in range(n)
        )
        out.append((w, seq))
    return out


class TestBruteForce:
    def test_k4_full_multiset(self, k4):
        tours = enumerate_tours(k4)
        assert sorted(w for w, _ in tours) == [27, 28, 29]
        res = brute_force(k4)
        assert res.optimum == 27
        assert res.optimal_count == 1
        assert res.method == "permutation"

    def test_k5_twelve_tours(self, k5):
        tours = enumerate_tours(k5)
        assert len(tours) == 12
        res = brute_force(k5)
        assert res.optimum == min(w for w, _ in tours) == 35
        assert res.tour == (1, 2, 5, 3, 4)

    def test_all_equal_weights(self):
        for n in (4, 5, 6):
            inst = random_instance(n, 1, (3, 3))
            res = brute_force(inst)
            assert res.optimum == 3 * n
            assert res.optimal_count == math.factorial(n - 1) // 2

    def test_tour_weight_matches_optimum(self):
        for seed in range(6):
            inst = random_instance(7, seed, (1, 99))
            res = brute_force(inst)
            w = sum(
                inst.weight(res.tour[i], res.tour[(i + 1) % 7]) for i in range(7)
            )
            assert w == res.optimum

    def test_canonical_tour_form(self):
        inst = random_instance(8, 123, (1, 50))
        res = brute_force(inst)
        assert res.tour[0] == 1
        assert res.tour[1] < res.tour[-1]

    def test_size_caps(self):
        with pytest.raises(DomainError):
            brute_force(random_instance(11, 1, (1, 9)))


class TestHeldKarp:
    def test_k6_matches_enumeration(self, k6):
        dp = held_karp(k6)
        bf = brute_force(k6)
        assert dp.optimum == bf.optimum == 36
        assert dp.tour == bf.tour
        assert dp.optimal_count == bf.optimal_count == 1
        assert dp.method == "dp"

    def test_k5_variants(self, k5_e10_40, k5_e10_40_e5_50):
        assert held_karp(k5_e10_40).optimum == 35
        assert held_karp(k5_e10_40_e5_50).optimum == 35

    def test_n3(self):
        inst = random_instance(3, 4, (1, 20))
        res = held_karp(inst)
        assert res.optimum == sum(inst.edge_weight(e) for e in range(1, 4))
        assert res.tour == (1, 2, 3)

    def test_count_unknown_beyond_enumeration(self):
        inst = random_instance(11, 2, (1, 30))
        res = held_karp(inst)
        assert res.optimal_count is None
        w = sum(
            inst.weight(res.tour[i], res.tour[(i + 1) % 11]) for i in range(11)
        )
        assert w == res.optimum

    def test_matches_brute_force_random(self):
        rng = random.Random(31415)
        for _ in range(40):
            n = rng.randint(4, 9)
            inst = random_instance(n, rng.randint(0, 10**6), (1, 100))
            assert held_karp(inst).optimum == brute_force(inst).optimum

    def test_relabel_invariance(self):
        rng = random.Random(7)
        base = random_instance(8, 99, (1, 80))
        opt = held_karp(base).optimum
        for _ in range(5):
            perm = list(range(8))
            rng.shuffle(perm)
            p = np.array(perm)
            shuffled = CompleteInstance(base.weights[np.ix_(p, p)])
            assert held_karp(shuffled).optimum == opt

    def test_size_caps(self):
        with pytest.raises(DomainError):
            held_karp(random_instance(21, 1, (1, 9)))


class TestHeuristicMeetsOptimum:
    def test_all_worked_instances(
        self, k4, k5, k5_e10_40, k5_e10_40_e5_50, k6
    ):
        # the oracle first establishes each optimum independently; the
        # heuristic happens to reach it on all five desk instances
        for inst in (k4, k5, k5_e10_40, k5_e10_40_e5_50, k6):
            optimum = brute_force(inst).optimum
            res = solve(inst)
            assert res.weight >= optimum
            assert res.weight == optimum
