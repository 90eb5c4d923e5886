from __future__ import annotations

import pytest

from graphfactors import (
    CapacityError,
    EnumerationSource,
    ParameterError,
    Sampler,
    VerificationReport,
    explore_problem_5_1,
    verify_cor_1_1,
    verify_lemma_suite,
    verify_thm_1_1,
    verify_thm_1_2,
    verify_thm_1_3,
    verify_thm_5_1,
)
from graphfactors.canon import canonical_code
from graphfactors.graph import g_unique_kfactor, g_unique_pm
from graphfactors.theorems import f_bound, fmt_real, revalidate


def test_thm_1_1_small():
    r = verify_thm_1_1(2)
    assert r.verdict == "pass" and r.checked == 1
    r = verify_thm_1_1(4)
    assert r.verdict == "pass"
    assert r.checked == 38 and r.hypothesis_count == 24
    assert r.extremal_attainers == [canonical_code(g_unique_pm(4)).decode()]
    assert revalidate(r)
    with pytest.raises(ParameterError):
        verify_thm_1_1(5)


def test_thm_1_1_jobs_merge_is_deterministic():
    a = verify_thm_1_1(6)
    b = verify_thm_1_1(6, jobs=2)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert a.extremal_attainers == [canonical_code(g_unique_pm(6)).decode()]


def test_thm_1_3_threshold():
    r = verify_thm_1_3(6, 1, 2)
    assert r.verdict == "pass"
    assert r.threshold_rho == pytest.approx(4, abs=1e-12)
    with pytest.raises(ParameterError):
        verify_thm_1_3(5, 2, 2)


def test_cor_1_1_bounds():
    with pytest.raises(ParameterError):
        verify_cor_1_1(6, 2)
    with pytest.raises(CapacityError):
        verify_cor_1_1(8, 2, EnumerationSource.internal(8))


def test_cor_1_1_from_fixture(fixtures):
    r = verify_cor_1_1(8, 2, EnumerationSource.graph6(fixtures / "graphs8.g6"))
    assert r.verdict == "pass" and r.checked == 12346


def test_sampled_verifiers():
    r = verify_thm_1_2(20, 1, 2, Sampler(seed=1, count=200))
    assert r.verdict == "no-counterexample" and r.mode == "sampled"
    d = r.details
    assert d["hub_violation"] == [4, 2]
    with pytest.raises(ParameterError):
        verify_thm_1_2(12, 3, 1, Sampler(seed=1, count=1))
    assert f_bound(3, 1) == 20
    r = verify_thm_5_1(12, 1, 1, "fpm", Sampler(seed=2, count=100))
    assert r.verdict == "no-counterexample"
    r = verify_thm_5_1(16, 2, 1, "oneb", Sampler(seed=2, count=100))
    assert r.verdict == "no-counterexample"
    with pytest.raises(ParameterError):
        verify_thm_5_1(10, 1, 1, "fpm", Sampler(seed=1, count=1))


def test_lemma_suite_small():
    r = verify_lemma_suite(5)
    assert r.verdict == "pass"
    props = r.details["properties"]
    assert all(v["failed"] == 0 for v in props.values())
    assert props["unique_pm_edge_bound"]["checked"] > 0
    with pytest.raises(CapacityError):
        verify_lemma_suite(8)


def test_explorer():
    r = explore_problem_5_1(6, 1)
    assert r.verdict == "evidence"
    assert r.details["construction_is_argmax"]
    r = explore_problem_5_1(6, 4)
    assert r.details["candidates"] and r.details["h_order_source"] == "default"
    assert r.details["best_candidate_is_argmax"]
    with pytest.raises(ParameterError):
        explore_problem_5_1(6, 4, h_order=5)
    assert g_unique_kfactor(6, 2).n == 6


def test_report_round_trip():
    r = verify_thm_1_1(4)
    text = r.to_json()
    back = VerificationReport.from_json(text)
    assert back.to_json(timing=False) == r.to_json(timing=False)
    assert fmt_real(4.0) == "4.00000000000"
    assert "wall_time_ms" not in r.to_dict(timing=False)
