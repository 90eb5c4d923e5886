"""Acceptance criteria, one or more tests per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion. Runtime budgets are asserted alongside results.
"""

from __future__ import annotations

import json
import time
from fractions import Fraction

import numpy as np
import pytest

from graphfactors import (
    EnumerationSource,
    FactorQuery,
    Outcome,
    canonical_code,
    char_poly,
    f_factor,
    fractional_pm,
    is_isomorphic,
    matrix_spectral_radius,
    odd_1b_factor,
    parse_graph6,
    perfect_matching,
    quotient_matrix,
    verify_cor_1_1,
    verify_lemma_suite,
    verify_thm_1_1,
    verify_thm_1_3,
    write_graph6,
)
from graphfactors import cli
from graphfactors.enumeration import graph_classes
from graphfactors.factors import (
    condition_sweep,
    count_factors,
    degree_search,
    fractional_pm_sweep,
    odd_1b_factor_search,
    tutte_berge_sweep,
    witness_holds,
)
from graphfactors.graph import (
    Graph,
    complete,
    empty,
    g_unique_kfactor,
    g_unique_pm,
    is_connected,
    isolated_extremal,
    join,
    pair_join_graph,
    t_graph,
    union,
)
from graphfactors.matching import brute_force_matching_number, matching_number
from graphfactors.spectral import b1_matrix, f_poly, rho
from graphfactors.theorems import is_isomorphic_any


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def random_graph(rng: np.random.Generator, n: int) -> Graph:
    upper = np.triu(rng.random((n, n)) < rng.random(), 1)
    return Graph.from_adjacency(upper | upper.T)


# -- 1 -------------------------------------------------------------------------

C1 = (1, "unique-PM maximiser, exhaustive 2n in {4, 6}; extended 2n = 8 via fixture")


@pytest.mark.criterion(*C1)
@pytest.mark.parametrize("two_n, checked", [(4, 38), (6, 26704)])
def test_c1_unique_pm_maximiser(two_n, checked):
    with Timer() as t:
        r = verify_thm_1_1(two_n)
    assert r.verdict == "pass" and not r.counterexamples
    assert r.checked == checked  # every labelled connected graph
    assert r.extremal_attainers == [canonical_code(g_unique_pm(two_n)).decode()]
    assert r.details["argmax_is_extremal"]
    assert t.seconds < 30


@pytest.mark.criterion(*C1)
def test_c1_extended_fixture(fixtures):
    with Timer() as t:
        r = verify_thm_1_1(8, EnumerationSource.graph6(fixtures / "graphs8.g6", connected_only=True))
    assert r.verdict == "pass" and r.checked == 11117
    assert r.extremal_attainers == [canonical_code(g_unique_pm(8)).decode()]
    assert t.seconds < 300


# -- 2 -------------------------------------------------------------------------

C2 = (2, "[a,b]-factor threshold: (6,1,2) with rho = 4, (7,2,2) over 2^21 graphs")


@pytest.mark.criterion(*C2)
def test_c2_threshold_6_1_2():
    r = verify_thm_1_3(6, 1, 2)
    assert r.verdict == "pass" and r.checked == 1 << 15
    assert abs(r.threshold_rho - 4) <= 1e-9
    assert is_isomorphic(parse_graph6(r.details["extremal"]), union(complete(1), complete(5)))


@pytest.mark.criterion(*C2)
def test_c2_threshold_7_2_2():
    with Timer() as t:
        r = verify_thm_1_3(7, 2, 2)
    assert r.verdict == "pass" and r.checked == 1 << 21
    assert r.hypothesis_count > 0
    assert t.seconds < 600


# -- 3 -------------------------------------------------------------------------

C3 = (3, "k-factor threshold (n=7, k=2) exhaustive with the Tutte gadget")


@pytest.mark.criterion(*C3)
def test_c3_k_factor_threshold():
    with Timer() as t:
        r = verify_cor_1_1(7, 2)
    assert r.verdict == "pass" and r.checked == 1 << 21
    # the threshold graph has a degree-1 vertex and is refuted by the degree bound
    assert r.details["extremal_method"] == "degree-bound"
    decided = r.details["decided_by"]
    assert decided.get("tutte-gadget", 0) > 0
    assert sum(decided.values()) == r.hypothesis_count
    assert t.seconds < 600


# -- 4 -------------------------------------------------------------------------

C4 = (4, "quotient matrix B_1 identities for 1 <= t <= 4, 2t+2 <= n <= 20")


@pytest.mark.criterion(*C4)
def test_c4_quotient_identities():
    with Timer() as t:
        cases = 0
        for t_ in range(1, 5):
            for n in range(2 * t_ + 2, 21):
                g = pair_join_graph(n, t_)
                assert is_isomorphic_any(g, join(complete(t_), union(empty(2), complete(n - t_ - 2))))
                q = quotient_matrix(g, [[0, 1], range(2, t_ + 2), range(t_ + 2, n)])
                assert q.entries.tolist() == b1_matrix(n, t_).tolist()
                assert char_poly(q) == [1, -(n - 4), -(n + 2 * t_ - 3), 2 * t_ * n - 2 * t_**2 - 6 * t_]
                assert f_poly(n, t_, 0) == 2 * t_ * (n - t_ - 3)
                assert f_poly(n, t_, n - 3) == -2 * t_**2
                expect = (Fraction(n) - Fraction(3, 2)) ** 2 - 2 * t_**2 - 2 * t_ - Fraction(1, 4)
                assert f_poly(n, t_, Fraction(n - 2)) == expect
                assert abs(matrix_spectral_radius(q) - rho(g, 1e-12)) <= 1e-8
                cases += 1
    assert cases == sum(21 - (2 * t_ + 2) for t_ in range(1, 5))
    assert t.seconds < 5


# -- 5 -------------------------------------------------------------------------

C5 = (5, "deterministic refutations of the extremal graphs, sweep and fast path")


@pytest.mark.criterion(*C5)
def test_c5_refutations():
    with Timer() as t:
        g = t_graph(20, 1, 2)
        fast = perfect_matching(g)
        assert fast.outcome is Outcome.REFUTED and fast.method == "blossom+barrier"
        assert len(fast.witness) == 2 and fast.violation == (4, 2)
        mask, o = condition_sweep(g, "odd", 1)
        assert mask.bit_count() == 2 and o == 4
        assert set(fast.witness) == {v for v in range(20) if mask >> v & 1}

        g = t_graph(20, 3, 1)
        r = odd_1b_factor(g, 3)
        assert r.outcome is Outcome.REFUTED and witness_holds(g, r, "odd", 3)
        assert not perfect_matching(g).found
        mask, o = condition_sweep(g, "odd", 3)
        assert o > 3 * mask.bit_count()

        g = isolated_extremal(12, 1, 1)
        assert is_isomorphic_any(g, join(complete(1), union(complete(9), empty(2))))
        r = fractional_pm(g)
        assert r.outcome is Outcome.REFUTED and r.method == "double-cover+isolated-sweep"
        assert len(r.witness) == 1 and r.violation == (2, 1)
        sweep = fractional_pm_sweep(g)
        assert sweep.outcome is Outcome.REFUTED and sweep.witness == r.witness
    assert t.seconds < 5


# -- 6 -------------------------------------------------------------------------

C6 = (6, "oracle equivalence suite: blossom, sweeps, double cover, Tutte gadget")


def classes_upto(n_max: int):
    for n in range(1, n_max + 1):
        yield from graph_classes(n)


@pytest.mark.criterion(*C6)
def test_c6_tutte_berge():
    for g in classes_upto(7):
        assert g.n - 2 * matching_number(g) == tutte_berge_sweep(g)
    rng = np.random.default_rng(20240601)
    for _ in range(1000):
        g = random_graph(rng, int(rng.integers(1, 15)))
        assert g.n - 2 * matching_number(g) == tutte_berge_sweep(g)


@pytest.mark.criterion(*C6)
def test_c6_blossom_vs_brute_force():
    rng = np.random.default_rng(20240602)
    for _ in range(1000):
        g = random_graph(rng, int(rng.integers(1, 11)))
        assert matching_number(g) == brute_force_matching_number(g)


@pytest.mark.criterion(*C6)
def test_c6_odd_sweep_vs_backtracking():
    for g in classes_upto(6):
        for b in (1, 3):
            assert (condition_sweep(g, "odd", b) is None) == odd_1b_factor_search(g, b).found
            assert odd_1b_factor(g, b).found == odd_1b_factor_search(g, b).found


@pytest.mark.criterion(*C6)
def test_c6_double_cover_vs_sweep():
    for g in classes_upto(7):
        assert fractional_pm(g).found == (condition_sweep(g, "isolated", 1) is None)


@pytest.mark.criterion(*C6)
def test_c6_gadget_vs_backtracking():
    for g in classes_upto(6):
        for k in (1, 2, 3):
            count, _ = degree_search(g, [1 << k] * g.n)
            assert f_factor(g, k).found == bool(count)


# -- 7 -------------------------------------------------------------------------

C7 = (7, "lemma suite exhaustive at n <= 6")


@pytest.mark.criterion(*C7)
def test_c7_lemma_suite():
    with Timer() as t:
        r = verify_lemma_suite(6)
    assert r.verdict == "pass"
    props = r.details["properties"]
    for name in (
        "edge_addition", "kelmans_shift", "pair_join_maximality",
        "unique_pm_edge_bound", "unique_pm_bridge", "g_unique_pm_edges",
    ):
        assert props[name]["checked"] > 0 and props[name]["failed"] == 0, name
    for n in range(1, 7):
        assert g_unique_pm(2 * n).num_edges == n * n
    assert t.seconds < 600


# -- 8 -------------------------------------------------------------------------

C8 = (8, "unique k-factor construction G(2n,k)")


@pytest.mark.criterion(*C8)
def test_c8_unique_kfactor():
    with Timer() as t:
        for two_n in (8, 10):
            g = g_unique_kfactor(two_n, 2)
            assert is_connected(g)
            assert count_factors(g, FactorQuery(2, 2), 2) == 1
        for two_n in (4, 6, 8):
            assert canonical_code(g_unique_kfactor(two_n, 1)) == canonical_code(g_unique_pm(two_n))
    assert t.seconds < 30


# -- 9 -------------------------------------------------------------------------

C9 = (9, "sampled odd [1,b]-factor threshold, 10^4 seeded samples per parameter set")


@pytest.mark.criterion(*C9)
@pytest.mark.parametrize("b, delta", [(1, 2), (3, 1)])
def test_c9_sampled(b, delta, tmp_path, capsys):
    out = tmp_path / "report.json"
    argv = [
        "verify", "thm1.2", "--n", "20", "--b", str(b), "--delta", str(delta),
        "--samples", "10000", "--seed", "7", "--strategy", "mixed", "--out", str(out),
    ]
    with Timer() as t:
        code = cli.main(argv)
    capsys.readouterr()
    report = json.loads(out.read_text())
    assert report["mode"] == "sampled" and report["checked"] == 10000
    assert report["counterexamples"] == []
    assert report["verdict"] == "no-counterexample"
    assert set(report["details"]["samples_by_strategy"]) == {"uniform", "near_extremal"}
    assert code == 5  # sampled runs never exit 0
    assert cli.main(["verify", "thm1.1", "--two-n", "4"]) == 0
    capsys.readouterr()
    assert t.seconds < 600


# -- 10 ------------------------------------------------------------------------

C10 = (10, "graph6 round trip on 10^4 random graphs plus known vectors")


@pytest.mark.criterion(*C10)
def test_c10_graph6_round_trip():
    with Timer() as t:
        assert parse_graph6("Bw") == complete(3) and write_graph6(complete(3)) == b"Bw"
        assert parse_graph6("A_") == complete(2) and write_graph6(complete(2)) == b"A_"
        assert parse_graph6("B?") == empty(3) and write_graph6(empty(3)) == b"B?"
        rng = np.random.default_rng(10)
        for _ in range(10_000):
            g = random_graph(rng, int(rng.integers(0, 65)))
            code = write_graph6(g)
            back = parse_graph6(code)
            assert back == g and write_graph6(back) == code
    assert t.seconds < 5
