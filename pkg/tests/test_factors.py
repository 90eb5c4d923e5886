from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from graphfactors import (
    FactorQuery,
    Outcome,
    ParameterError,
    ab_factor,
    f_factor,
    fractional_pm,
    is_unique_pm,
    kelmans_sequence_to_extremal,
    odd_1b_factor,
    one_b_factor_exists,
    perfect_matching,
)
from graphfactors.canon import is_isomorphic
from graphfactors.enumeration import graph_classes
from graphfactors.factors import (
    condition_sweep,
    count_factors,
    fractional_pm_sweep,
    is_factor,
    odd_1b_factor_search,
    witness_holds,
)
from graphfactors.graph import (
    Graph,
    complete,
    cycle,
    g_unique_kfactor,
    g_unique_pm,
    is_connected,
    isolated_extremal,
    join,
    path,
    star,
    t_graph,
    empty,
)
from graphfactors.spectral import rho


def test_perfect_matching():
    assert perfect_matching(complete(4)).found
    r = perfect_matching(star(3))
    assert r.outcome is Outcome.REFUTED
    assert r.witness == {0} and r.violation == (3, 1)
    r = perfect_matching(g_unique_pm(8))
    assert r.found and r.factor.num_edges == 4
    assert is_factor(g_unique_pm(8), r.factor, FactorQuery(1, 1))


def test_unique_pm():
    assert not is_unique_pm(cycle(4))
    assert is_unique_pm(path(4))
    for two_n in range(2, 13, 2):
        assert is_unique_pm(g_unique_pm(two_n), cross_check=True)


def test_f_factor():
    r = f_factor(cycle(5), 2)
    assert r.found and r.factor == cycle(5)
    assert f_factor(complete(4), 1).found
    r = f_factor(complete(4), 2)
    assert r.found and r.factor.degrees() == [2] * 4
    assert count_factors(complete(4), FactorQuery(2, 2), 10) == 3
    r = f_factor(star(3), 2)
    assert r.outcome is Outcome.REFUTED and r.method == "degree-bound" and len(r.witness) == 1
    bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    r = f_factor(bowtie, 2)
    assert r.outcome is Outcome.NOT_FOUND and r.exhaustive


def test_odd_factors():
    r = odd_1b_factor(star(3), 3)
    assert r.found and r.factor == star(3)
    r = odd_1b_factor(star(4), 3)
    assert r.outcome is Outcome.REFUTED and witness_holds(star(4), r, "odd", 3)
    # with an even order a single hub is the smallest violating set
    g = star(5)
    r = odd_1b_factor(g, 3)
    assert r.witness == {0} and r.violation == (5, 3)
    t = t_graph(12, 3, 1)
    r = odd_1b_factor(t, 3)
    hub = {v for v in range(12) if t.degree(v) == 11}
    assert r.outcome is Outcome.REFUTED and set(r.witness) == hub
    assert r.violation[0] >= 5
    with pytest.raises(ParameterError):
        odd_1b_factor(star(3), 2)


def test_parity_gadget_path():
    # a star with three leaves plus a pendant pair has no perfect matching
    # but does have an odd [1,3]-factor
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
    assert not perfect_matching(g).found
    r = odd_1b_factor(g, 3)
    assert r.found and is_factor(g, r.factor, FactorQuery(1, 3, odd_only=True))


def test_one_b_factor():
    r = one_b_factor_exists(star(4), 2)
    assert r.outcome is Outcome.REFUTED and r.witness == {0} and r.violation == (4, 2)
    r = one_b_factor_exists(star(4), 4)
    assert r.found and is_factor(star(4), r.factor, FactorQuery(1, 4))
    assert one_b_factor_exists(cycle(7), 2).found


def test_ab_factor():
    assert ab_factor(cycle(6), FactorQuery(2, 2)).factor == cycle(6)
    r = ab_factor(complete(5), FactorQuery(2, 3))
    assert r.found and is_factor(complete(5), r.factor, FactorQuery(2, 3))
    assert ab_factor(star(3), FactorQuery(2, 3)).outcome is Outcome.NOT_FOUND
    with pytest.raises(ParameterError):
        FactorQuery(3, 2)


def test_fractional_pm():
    r = fractional_pm(cycle(5))
    assert r.found and set(r.fractional.weights.values()) == {Fraction(1, 2)}
    r = fractional_pm(star(3))
    assert r.outcome is Outcome.REFUTED and r.witness == {0} and r.violation == (3, 1)
    r = fractional_pm(complete(4))
    assert r.found and set(r.fractional.weights.values()) == {Fraction(1)}
    ext = isolated_extremal(12, 1, 1)
    assert sorted(ext.degrees()) == [1, 1] + [9] * 9 + [11]
    r = fractional_pm(ext, cross_check=True)
    assert r.outcome is Outcome.REFUTED and r.violation == (2, 1)


def test_fractional_weights_are_valid():
    for g in graph_classes(6):
        r = fractional_pm(g, cross_check=True)
        if r.found:
            w = r.fractional
            assert w.total() == Fraction(g.n, 2)
            assert all(w.load(v) == 1 for v in range(g.n))
            assert all(g.has_edge(*e) for e in w.weights)


def test_sweep_tie_break():
    # two hubs each isolate leaves; the lexicographically first smallest set wins
    g = join(empty(1), empty(3))
    mask, count = condition_sweep(g, "isolated", 1)
    assert mask == 1 and count == 3
    assert condition_sweep(complete(4), "odd", 1) is None


def test_odd_fast_path_vs_search_small():
    for n in range(1, 7):
        for g in graph_classes(n):
            for b in (1, 3):
                assert odd_1b_factor(g, b).found == odd_1b_factor_search(g, b).found


def test_fractional_sweep_agrees():
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = int(rng.integers(2, 11))
        upper = np.triu(rng.random((n, n)) < 0.35, 1)
        g = Graph.from_adjacency(upper | upper.T)
        assert fractional_pm(g).outcome is fractional_pm_sweep(g).outcome


def test_unique_kfactor_constructions():
    for two_n, k in [(8, 2), (10, 2), (6, 1), (8, 3)]:
        g = g_unique_kfactor(two_n, k)
        assert count_factors(g, FactorQuery(k, k), 2) == 1


def test_kelmans_sequence():
    g6 = g_unique_pm(6)
    seq = kelmans_sequence_to_extremal(g6)
    assert is_isomorphic(seq[-1], g6)
    assert all(abs(rho(h) - rho(g6)) < 1e-9 for h in seq)
    seq = kelmans_sequence_to_extremal(path(4))
    assert is_isomorphic(seq[-1], g_unique_pm(4))
    radii = [rho(h) for h in seq]
    assert all(b >= a - 1e-12 for a, b in zip(radii, radii[1:])) and radii[-1] > radii[0]
    with pytest.raises(ParameterError):
        kelmans_sequence_to_extremal(cycle(4))


def test_kelmans_sequence_on_all_small_unique_pm_graphs():
    for n in (2, 4, 6):
        for g in graph_classes(n):
            if is_connected(g) and is_unique_pm(g):
                assert is_isomorphic(kelmans_sequence_to_extremal(g)[-1], g_unique_pm(n))
