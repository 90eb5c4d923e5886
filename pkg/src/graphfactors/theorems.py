"""Exhaustive and sampled checks of spectral factor theorems on small graphs.

Every verifier returns a :class:`VerificationReport`. Exhaustive runs walk an
:class:`~graphfactors.enumeration.EnumerationSource`; labelled sweeps are split
into contiguous mask ranges that can run in worker processes, and partial
results are merged in range order so the report does not depend on
scheduling. Sampled runs never claim a pass.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from .canon import MAX_CANON_ORDER, canonical_code
from .enumeration import (
    EnumerationSource,
    Sampler,
    connected_flags,
    enumerate_graphs,
    graph_classes,
    mask_adjacency,
    num_pairs,
    sample_graphs,
)
from .errors import CapacityError, ParameterError
from .factors import (
    FactorQuery,
    FactorResult,
    ab_factor,
    all_subsets,
    condition_sweep,
    count_factors,
    degree_search,
    f_factor,
    fractional_pm,
    fractional_pm_sweep,
    is_factor,
    is_unique_pm,
    odd_1b_factor,
    odd_1b_factor_search,
    one_b_factor_exists,
    perfect_matching,
    subset_stats,
    tutte_berge_sweep,
    violation_count,
    witness_holds,
)
from .graph import (
    Graph,
    bridges,
    circulant,
    clique_chain,
    complete,
    g_unique_kfactor,
    g_unique_pm,
    h_na,
    is_connected,
    isolated_extremal,
    join,
    kelmans_shift,
    pair_join_graph,
    mask_vertices,
    max_degree,
    min_degree,
    t_graph,
)
from .graph6 import parse_graph6, write_graph6
from .matching import UNMATCHED, count_perfect_matchings, mate_array, mate_edges
from .spectral import (
    TIE_TOL,
    Verdict,
    b1_matrix,
    char_poly,
    classify,
    compare_rho,
    f_poly_coefficients,
    matrix_spectral_radius,
    perron_vector,
    quotient_matrix,
    rho,
    spectral_radii,
)

EXHAUSTIVE_MAX_ORDER = MAX_CANON_ORDER
LEMMA_SUITE_MAX_ORDER = 7
SAMPLED_MAX_ORDER = 24
TIGHT_TOL = 1e-12
_BLOCK = 1 << 15


def fmt_real(x: float) -> str:
    """Decimal string with 12 significant digits (trailing zeros kept)."""
    return format(float(x), "#.12g")


def f_bound(b: int, delta: int) -> int:
    """Order threshold max{4(b+1)delta + 4, b*delta^3 + delta} for odd [1,b]-factors."""
    return max(4 * (b + 1) * delta + 4, b * delta**3 + delta)


def g6(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def is_isomorphic_any(g: Graph, h: Graph) -> bool:
    """Isomorphism test for any order: canonical codes up to order 10, VF2 beyond."""
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    if g.adj == h.adj:
        return True
    if g.n <= MAX_CANON_ORDER:
        return canonical_code(g) == canonical_code(h)
    import networkx as nx

    return nx.is_isomorphic(nx.Graph(g.edges()), nx.Graph(h.edges()))


# -- reports --------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return fmt_real(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    raise TypeError(f"cannot serialise {type(x).__name__}")


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    mode: str  # "exhaustive" | "sampled" | "exploration"
    source: str
    checked: int
    hypothesis_count: int
    counterexamples: list[str]
    extremal_attainers: list[str]
    threshold_rho: float | None
    ties: list[str]
    details: dict = field(default_factory=dict)
    wall_time_ms: float | None = None

    @property
    def verdict(self) -> str:
        if self.counterexamples:
            return "fail"
        if self.mode == "sampled":
            return "no-counterexample"
        if self.mode == "exploration":
            return "evidence"
        return "pass"

    @property
    def summary(self) -> str:
        if self.counterexamples:
            return f"{len(self.counterexamples)} counterexample(s) among {self.checked} graphs"
        if self.mode == "sampled":
            return f"no counterexample in {self.checked} samples (not a proof)"
        if self.mode == "exploration":
            return f"evidence from {self.checked} graphs (not a proof)"
        return f"pass over {self.checked} graphs"

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "summary": self.summary,
            "mode": self.mode,
            "source": self.source,
            "params": _jsonable(self.params),
            "checked": self.checked,
            "hypothesis_count": self.hypothesis_count,
            "threshold_rho": None if self.threshold_rho is None else fmt_real(self.threshold_rho),
            "counterexamples": list(self.counterexamples),
            "extremal_attainers": list(self.extremal_attainers),
            "ties": list(self.ties),
            "details": _jsonable(self.details),
        }
        if timing:
            out["wall_time_ms"] = None if self.wall_time_ms is None else fmt_real(self.wall_time_ms)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        thr = d.get("threshold_rho")
        wall = d.get("wall_time_ms")
        return cls(
            theorem=d["theorem"],
            params=d["params"],
            mode=d["mode"],
            source=d["source"],
            checked=d["checked"],
            hypothesis_count=d["hypothesis_count"],
            counterexamples=list(d["counterexamples"]),
            extremal_attainers=list(d["extremal_attainers"]),
            threshold_rho=None if thr is None else float(thr),
            ties=list(d["ties"]),
            details=d.get("details", {}),
            wall_time_ms=None if wall is None else float(wall),
        )

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))


# -- partial results and the chunked runner ---------------------------------------


@dataclass
class _Partial:
    checked: int = 0
    hypothesis: int = 0
    counterexamples: list = field(default_factory=list)
    attainers: set = field(default_factory=set)
    ties: list = field(default_factory=list)
    best_rho: float = -math.inf
    argmax: set = field(default_factory=set)
    counts: dict = field(default_factory=dict)

    def bump(self, key: str, k: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + k

    def track(self, r: float, g: Graph, tie_tol: float) -> None:
        if r > self.best_rho + tie_tol:
            self.best_rho = r
            self.argmax = {canonical_code(g).decode()}
        elif abs(r - self.best_rho) <= tie_tol:
            self.argmax.add(canonical_code(g).decode())

    def merge(self, other: _Partial, tie_tol: float) -> None:
        self.checked += other.checked
        self.hypothesis += other.hypothesis
        self.counterexamples += other.counterexamples
        self.attainers |= other.attainers
        self.ties += other.ties
        for k, v in other.counts.items():
            self.bump(k, v)
        if other.best_rho > self.best_rho + tie_tol:
            self.best_rho, self.argmax = other.best_rho, set(other.argmax)
        elif abs(other.best_rho - self.best_rho) <= tie_tol:
            self.argmax |= other.argmax
            self.best_rho = max(self.best_rho, other.best_rho)


def _split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _blocks(spec) -> Iterator[np.ndarray]:
    if spec[0] == "range":
        _, start, stop = spec
        for lo in range(start, stop, _BLOCK):
            yield np.arange(lo, min(lo + _BLOCK, stop), dtype=np.uint64)
    else:
        arr = spec[1]
        for lo in range(0, arr.size, _BLOCK):
            yield arr[lo:lo + _BLOCK]


def _source_specs(src: EnumerationSource, n: int, jobs: int) -> tuple[list, int]:
    """Split ``src`` into worker specs over edge bitmasks of order-``n`` graphs."""
    if n > EXHAUSTIVE_MAX_ORDER:
        raise CapacityError(f"exhaustive verification limited to order <= {EXHAUSTIVE_MAX_ORDER}")
    if src.mode == "internal" and not src.dedup:
        if src.n != n:
            raise ParameterError(f"source enumerates order {src.n}, theorem needs order {n}")
        return [("range", a, b) for a, b in _split_range(1 << num_pairs(n), jobs)], 0
    masks, skipped = [], 0
    for g in enumerate_graphs(src):
        if g.n != n:
            skipped += 1
            continue
        masks.append(g.to_mask())
    arr = np.array(masks, dtype=np.uint64)
    parts = max(1, min(jobs, arr.size))
    return [("masks", part) for part in np.array_split(arr, parts)], skipped


def _run(worker: Callable, tasks: list, jobs: int, tie_tol: float) -> _Partial:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(worker, tasks))
    else:
        parts = [worker(t) for t in tasks]
    total = _Partial()
    for p in parts:  # fixed order: by range start
        total.merge(p, tie_tol)
    return total


def _check_jobs(jobs: int) -> None:
    if jobs < 1:
        raise ParameterError("jobs must be >= 1")


# -- unique perfect matchings -------------------------------------------------------


def _thm11_worker(task) -> _Partial:
    n, spec, connected_only, rho_star, star_code, tie_tol = task
    star = parse_graph6(star_code)
    p = _Partial()
    for masks in _blocks(spec):
        flags = connected_flags(n, masks)
        if connected_only:
            masks, flags = masks[flags], flags[flags]
        p.checked += int(masks.size)
        for mask in masks[flags].tolist():
            g = Graph.from_mask(n, mask)
            if not is_unique_pm(g):
                continue
            p.hypothesis += 1
            r = rho(g, tie_tol / 10)
            p.track(r, g, tie_tol)
            verdict = classify(r, rho_star, tie_tol)
            if verdict is Verdict.TIE:
                verdict = compare_rho(g, star, tie_tol).verdict
            if verdict is Verdict.GREATER:
                p.counterexamples.append(g6(g))
            elif verdict is Verdict.TIE:
                code = canonical_code(g).decode()
                if code == star_code:
                    p.attainers.add(code)
                else:
                    p.ties.append(g6(g))
    return p


def verify_thm_1_1(
    two_n: int, src: EnumerationSource | None = None, jobs: int = 1, tie_tol: float = TIE_TOL
) -> VerificationReport:
    """Among connected graphs of order ``two_n`` with a unique perfect matching,
    rho(G) <= rho(G(2n,1)) with equality only on G(2n,1)'s isomorphism class."""
    if two_n < 2 or two_n % 2:
        raise ParameterError(f"two_n must be even and >= 2, got {two_n}")
    _check_jobs(jobs)
    t0 = time.perf_counter()
    src = src or EnumerationSource.internal(two_n, connected_only=True)
    star = g_unique_pm(two_n)
    star_code = canonical_code(star).decode()
    rho_star = rho(star, TIGHT_TOL)
    specs, skipped = _source_specs(src, two_n, jobs)
    tasks = [(two_n, s, src.connected_only, rho_star, star_code, tie_tol) for s in specs]
    p = _run(_thm11_worker, tasks, jobs, tie_tol)
    details = {
        "extremal": star_code,
        "argmax_rho": p.best_rho if p.hypothesis else None,
        "argmax": sorted(p.argmax),
        "argmax_is_extremal": sorted(p.argmax) == [star_code],
        "skipped_other_order": skipped,
    }
    return VerificationReport(
        "thm1.1", {"two_n": two_n}, "exhaustive", src.describe(), p.checked, p.hypothesis,
        p.counterexamples, sorted(p.attainers), rho_star, p.ties, details,
        (time.perf_counter() - t0) * 1000,
    )


# -- spectral thresholds for [a,b]- and k-factors ---------------------------------


def _stanley_bound(m: np.ndarray) -> np.ndarray:
    # rho <= (-1 + sqrt(1 + 8m)) / 2 for every graph with m edges
    return (-1.0 + np.sqrt(1.0 + 8.0 * m.astype(np.float64))) / 2.0


def _threshold_worker(task) -> _Partial:
    n, spec, connected_only, rho_h, ext_code, tie_tol, a, b, method = task
    ext = parse_graph6(ext_code)
    q = FactorQuery(a, b)
    p = _Partial()
    for masks in _blocks(spec):
        if connected_only:
            masks = masks[connected_flags(n, masks)]
        p.checked += int(masks.size)
        cand = masks[_stanley_bound(np.bitwise_count(masks)) >= rho_h - tie_tol]
        p.bump("prefilter_survivors", int(cand.size))
        if not cand.size:
            continue
        radii = spectral_radii(mask_adjacency(n, cand), tol=tie_tol / 10)
        for mask, r in zip(cand.tolist(), radii.tolist()):
            verdict = classify(r, rho_h, tie_tol)
            if verdict is Verdict.LESS:
                continue
            g = Graph.from_mask(n, mask)
            if verdict is Verdict.TIE:
                verdict = compare_rho(g, ext, tie_tol).verdict
                if verdict is Verdict.TIE:
                    code = canonical_code(g).decode()
                    if code == ext_code:
                        p.attainers.add(code)
                    else:
                        p.ties.append(g6(g))
                        has = f_factor(g, a).found if method == "f-factor" else ab_factor(g, q).found
                        p.bump("ties_with_factor", int(has))
                    continue
                if verdict is Verdict.LESS:
                    continue
            p.hypothesis += 1
            res = f_factor(g, a) if method == "f-factor" else ab_factor(g, q)
            p.bump("method:" + res.method, 1)
            if not res.found:
                p.counterexamples.append(g6(g))
            elif not is_factor(g, res.factor, q):
                raise AssertionError(f"invalid factor certificate for {g6(g)}")
    return p


def _check_thm_1_3(n: int, a: int, b: int) -> None:
    if not b >= a >= 1:
        raise ParameterError(f"needs b >= a >= 1, got a={a}, b={b}")
    if (a * n) % 2:
        raise ParameterError(f"needs a*n even, got a={a}, n={n}")
    if n < 3 * a + b - 1:
        raise ParameterError(f"needs n >= 3a+b-1 = {3 * a + b - 1}, got n={n}")


def _threshold_report(
    theorem: str, params: dict, n: int, a: int, b: int, method: str,
    src: EnumerationSource | None, jobs: int, tie_tol: float,
) -> VerificationReport:
    _check_jobs(jobs)
    t0 = time.perf_counter()
    src = src or EnumerationSource.internal(n)
    ext = h_na(n, a)
    ext_code = canonical_code(ext).decode()
    rho_h = rho(ext, TIGHT_TOL)
    ext_result = f_factor(ext, a) if method == "f-factor" else ab_factor(ext, FactorQuery(a, b))
    specs, skipped = _source_specs(src, n, jobs)
    tasks = [(n, s, src.connected_only, rho_h, ext_code, tie_tol, a, b, method) for s in specs]
    p = _run(_threshold_worker, tasks, jobs, tie_tol)
    counterexamples = list(p.counterexamples)
    if ext_result.found:
        # the threshold graph itself must not have the factor
        counterexamples.insert(0, g6(ext))
    details = {
        "extremal": g6(ext),
        "extremal_has_factor": ext_result.found,
        "extremal_method": ext_result.method,
        "prefilter": "rho <= (sqrt(1+8m)-1)/2",
        "prefilter_survivors": p.counts.get("prefilter_survivors", 0),
        "ties_with_factor": p.counts.get("ties_with_factor", 0),
        "decided_by": {k[7:]: v for k, v in sorted(p.counts.items()) if k.startswith("method:")},
        "skipped_other_order": skipped,
    }
    return VerificationReport(
        theorem, params, "exhaustive", src.describe(), p.checked, p.hypothesis,
        counterexamples, sorted(p.attainers), rho_h, p.ties, details,
        (time.perf_counter() - t0) * 1000,
    )


def verify_thm_1_3(
    n: int, a: int, b: int, src: EnumerationSource | None = None, jobs: int = 1, tie_tol: float = TIE_TOL
) -> VerificationReport:
    """Every order-n graph with rho(G) > rho(H_{n,a}) has an [a,b]-factor."""
    _check_thm_1_3(n, a, b)
    return _threshold_report("thm1.3", {"n": n, "a": a, "b": b}, n, a, b, "ab-factor", src, jobs, tie_tol)


def verify_cor_1_1(
    n: int, k: int, src: EnumerationSource | None = None, jobs: int = 1, tie_tol: float = TIE_TOL
) -> VerificationReport:
    """Every order-n graph with rho(G) > rho(H_{n,k}) has a k-factor (Tutte gadget)."""
    if k < 1:
        raise ParameterError(f"needs k >= 1, got {k}")
    if (k * n) % 2:
        raise ParameterError(f"needs k*n even, got k={k}, n={n}")
    if n < 4 * k - 1:
        raise ParameterError(f"needs n >= 4k-1 = {4 * k - 1}, got n={n}")
    return _threshold_report("cor1.1", {"n": n, "k": k}, n, k, k, "f-factor", src, jobs, tie_tol)


# -- sampled verifiers ------------------------------------------------------------


def _sampled_threshold(
    theorem: str, params: dict, n: int, delta: int, ext: Graph, kind: str, b: int,
    checker: Callable[[Graph], FactorResult], sampler: Sampler, tie_tol: float,
) -> VerificationReport:
    t0 = time.perf_counter()
    hub = (1 << delta) - 1
    hub_count = violation_count(ext, hub, kind)
    ext_result = checker(ext)
    sweep = condition_sweep(ext, kind, b)
    counterexamples: list[str] = []
    ext_ok = (
        not ext_result.found
        and hub_count > b * delta
        and min_degree(ext) == delta
        and sweep is not None
        and (ext_result.witness is None or witness_holds(ext, ext_result, kind, b))
    )
    if not ext_ok:
        counterexamples.append(g6(ext))

    rho_t = rho(ext, TIGHT_TOL)
    attainers: set[str] = set()
    ties: list[str] = []
    checked = hypothesis = 0
    per_kind = {"uniform": [0, 0], "near_extremal": [0, 0]}  # [drawn, in hypothesis]
    for strategy, g in sample_graphs(sampler, n, base=ext, min_deg=delta):
        checked += 1
        per_kind[strategy][0] += 1
        if not is_connected(g) or min_degree(g) < delta:
            continue
        r = rho(g, tie_tol / 10)
        verdict = classify(r, rho_t, tie_tol)
        if verdict is Verdict.TIE:
            verdict = compare_rho(g, ext, tie_tol).verdict
        if verdict is Verdict.LESS:
            continue
        hypothesis += 1
        per_kind[strategy][1] += 1
        if verdict is Verdict.TIE and is_isomorphic_any(g, ext):
            attainers.add(g6(ext))
            continue
        res = checker(g)
        if res.found:
            continue
        if verdict is Verdict.TIE:
            ties.append(g6(g))
        else:
            counterexamples.append(g6(g))

    details = {
        "extremal": g6(ext),
        "extremal_min_degree": min_degree(ext),
        "extremal_outcome": ext_result.outcome.value,
        "extremal_method": ext_result.method,
        "extremal_witness": sorted(ext_result.witness) if ext_result.witness is not None else None,
        "hub_witness": list(range(delta)),
        "hub_violation": [hub_count, b * delta],
        "sweep_witness": mask_vertices(sweep[0]) if sweep else None,
        "seed": sampler.seed,
        "strategy": sampler.strategy,
        "samples_by_strategy": per_kind,
    }
    return VerificationReport(
        theorem, params, "sampled", f"sampler:{sampler.strategy}:seed={sampler.seed}",
        checked, hypothesis, counterexamples, sorted(attainers), rho_t, ties, details,
        (time.perf_counter() - t0) * 1000,
    )


def _check_sampled_order(n: int) -> None:
    if n > SAMPLED_MAX_ORDER:
        raise CapacityError(f"sampled verification limited to order <= {SAMPLED_MAX_ORDER}")


def verify_thm_1_2(n: int, b: int, delta: int, sampler: Sampler, tie_tol: float = TIE_TOL) -> VerificationReport:
    """Connected even-order graphs with minimum degree delta and rho(G) >= rho(T(n,b,delta))
    have an odd [1,b]-factor unless isomorphic to T(n,b,delta). Sampled, not exhaustive."""
    if b < 1 or b % 2 == 0:
        raise ParameterError(f"b must be a positive odd integer, got {b}")
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    if n % 2:
        raise ParameterError(f"n must be even, got {n}")
    if n < f_bound(b, delta):
        raise ParameterError(
            f"needs n >= F(b,delta) = max{{4(b+1)delta+4, b*delta^3+delta}} = {f_bound(b, delta)}, got n={n}"
        )
    _check_sampled_order(n)
    ext = t_graph(n, b, delta)
    return _sampled_threshold(
        "thm1.2", {"n": n, "b": b, "delta": delta, "samples": sampler.count}, n, delta, ext,
        "odd", b, lambda g: odd_1b_factor(g, b), sampler, tie_tol,
    )


VARIANTS = ("oneb", "fpm")


def verify_thm_5_1(
    n: int, b: int, delta: int, variant: str, sampler: Sampler, tie_tol: float = TIE_TOL
) -> VerificationReport:
    """Spectral conditions for [1,b]-factors (``variant="oneb"``) and fractional
    perfect matchings (``variant="fpm"``, b is ignored). Sampled, not exhaustive."""
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    if variant == "oneb":
        if b < 2:
            raise ParameterError(f"variant oneb needs b >= 2, got {b}")
        if n < 4 * (b + 1) * delta + 4:
            raise ParameterError(f"needs n >= 4(b+1)delta+4 = {4 * (b + 1) * delta + 4}, got n={n}")
        kb, checker = b, (lambda g: one_b_factor_exists(g, b))
    elif variant == "fpm":
        if n < 8 * delta + 4:
            raise ParameterError(f"needs n >= 8delta+4 = {8 * delta + 4}, got n={n}")
        kb, checker = 1, fractional_pm
    else:
        raise ParameterError(f"variant must be one of {VARIANTS}, got {variant!r}")
    _check_sampled_order(n)
    ext = isolated_extremal(n, kb, delta)
    params = {"n": n, "b": kb, "delta": delta, "variant": variant, "samples": sampler.count}
    return _sampled_threshold("thm5.1", params, n, delta, ext, "isolated", kb, checker, sampler, tie_tol)


# -- lemma and invariant suite -------------------------------------------------------


class _Suite:
    def __init__(self) -> None:
        self.stats: dict[str, list[int]] = {}
        self.failures: dict[str, list[str]] = {}

    def check(self, prop: str, ok: bool, g: Graph | None = None) -> None:
        st = self.stats.setdefault(prop, [0, 0])
        st[0] += 1
        if not ok:
            st[1] += 1
            self.failures.setdefault(prop, []).append(g6(g) if g is not None else "")


def _spectral_checks(suite: _Suite, g: Graph, joins: dict[tuple[int, int], Graph]) -> None:
    n = g.n
    r = rho(g, TIGHT_TOL)
    if g.num_edges:
        avg = 2 * g.num_edges / n
        lo = max(avg, math.sqrt(max_degree(g)))
        suite.check("rho_bounds", lo - 1e-9 <= r <= max_degree(g) + 1e-9, g)
    if not is_connected(g) or n < 2:
        return
    for u, v in g.non_edges():
        suite.check("edge_addition", rho(g.add_edge(u, v), TIGHT_TOL) - r >= 1e-9, g)
    x = perron_vector(g, TIGHT_TOL).perron
    for u in range(n):
        for v in range(n):
            if u == v or x[u] < x[v]:
                continue
            movable = g.adj[v] & ~g.adj[u] & ~(1 << u)
            if not movable:
                continue
            h = kelmans_shift(g, u, v)
            if not is_connected(h):
                continue
            suite.check("kelmans_shift", rho(h, TIGHT_TOL) - r > 1e-9, g)
    degs = g.degrees()
    t0 = min((max(degs[u], degs[w]) for u, w in g.non_edges()), default=None)
    if t0 is None:
        return
    for t in range(max(t0, 1), n - 1):
        ext = joins[(n, t)]
        verdict = classify(r, rho(ext, TIGHT_TOL))
        ok = verdict is Verdict.LESS or (verdict is Verdict.TIE and canonical_code(g) == canonical_code(ext))
        suite.check("pair_join_maximality", ok, g)


def _unique_pm_checks(suite: _Suite, g: Graph) -> None:
    if g.n % 2:
        return
    unique = is_unique_pm(g)
    suite.check("unique_pm_alt_cycle_vs_count", unique == (count_perfect_matchings(g, 2) == 1), g)
    if not unique:
        return
    suite.check("unique_pm_edge_bound", 4 * g.num_edges <= g.n * g.n, g)
    pm = set(mate_edges(mate_array(g)))
    suite.check("unique_pm_bridge", any(e in pm for e in bridges(g)), g)


def _factor_checks(suite: _Suite, g: Graph) -> None:
    n = g.n
    mate = mate_array(g)
    deficiency = sum(1 for w in mate if w == UNMATCHED)
    suite.check("tutte_berge", deficiency == tutte_berge_sweep(g), g)
    masks = all_subsets(n)
    odd, _ = subset_stats(g, masks)
    parity = (n - np.bitwise_count(masks).astype(np.int64)) % 2
    suite.check("odd_component_parity", bool(np.all(odd % 2 == parity)), g)

    pm = perfect_matching(g, cross_check=False)
    suite.check("pm_vs_tutte_sweep", pm.found == (condition_sweep(g, "odd", 1) is None), g)
    if not pm.found:
        suite.check("witness_recheck", witness_holds(g, pm, "odd", 1), g)

    fr = fractional_pm(g)
    suite.check("fractional_vs_sweep", fr.found == fractional_pm_sweep(g).found, g)
    if fr.found:
        w = fr.fractional
        ok = w.total() == Fraction(n, 2) and all(w.load(v) == 1 for v in range(n))
        suite.check("fractional_weights", ok, g)
    else:
        suite.check("witness_recheck", witness_holds(g, fr, "isolated", 1), g)

    odd1 = odd_1b_factor(g, 1)
    odd3 = odd_1b_factor(g, 3)
    suite.check("odd_b1_is_pm", odd1.found == pm.found, g)
    suite.check("odd_monotone_b", not odd1.found or odd3.found, g)
    for b, res in ((1, odd1), (3, odd3)):
        if res.found:
            suite.check("certificate_recheck", is_factor(g, res.factor, FactorQuery(1, b, True)), g)
        else:
            suite.check("witness_recheck", witness_holds(g, res, "odd", b), g)
    if n > 6:
        return
    for b, res in ((1, odd1), (3, odd3)):
        suite.check("odd_sweep_vs_search", res.found == odd_1b_factor_search(g, b).found, g)
    for k in (1, 2, 3):
        ff = f_factor(g, k)
        count, _ = degree_search(g, [1 << k] * n)
        suite.check("f_factor_gadget_vs_search", ff.found == bool(count), g)
        if ff.found:
            suite.check("certificate_recheck", is_factor(g, ff.factor, FactorQuery(k, k)), g)


def _construction_checks(suite: _Suite, n_max: int) -> None:
    for two_n in range(2, 13, 2):
        g = g_unique_pm(two_n)
        half = two_n // 2
        suite.check("g_unique_pm_edges", g.num_edges == half * half, g)
        suite.check("g_unique_pm_unique", count_perfect_matchings(g, 2) == 1, g)
    for n in range(4, 21):
        for t in range(1, 5):
            if n < 2 * t + 2:
                continue
            g = pair_join_graph(n, t)
            qm = quotient_matrix(g, [[0, 1], range(2, t + 2), range(t + 2, n)])
            ok = qm.entries.tolist() == b1_matrix(n, t).tolist()
            ok = ok and char_poly(qm) == f_poly_coefficients(n, t)
            ok = ok and abs(matrix_spectral_radius(qm) - rho(g, TIGHT_TOL)) <= 1e-8
            suite.check("pair_join_quotient", ok, g)
    for n in range(4, max(n_max, 7) + 6):
        for s in range(1, n - 1):
            for t in range(2, n - s + 1):
                for p in range(1, (n - s) // t + 1):
                    top = n - s - p * (t - 1)
                    ref = rho(clique_chain(s, [top] + [p] * (t - 1)), TIGHT_TOL)
                    for parts in _partitions(n - s, t, p):
                        if parts[0] >= top:
                            continue
                        g = clique_chain(s, parts)
                        suite.check("clique_chain_balance", ref - rho(g, TIGHT_TOL) > 1e-9, g)


def _partitions(total: int, parts: int, least: int, most: int | None = None) -> Iterator[list[int]]:
    """Non-increasing sequences of ``parts`` integers >= ``least`` summing to ``total``."""
    most = total if most is None else most
    if parts == 0:
        if total == 0:
            yield []
        return
    for first in range(min(most, total - least * (parts - 1)), least - 1, -1):
        for rest in _partitions(total - first, parts - 1, least, first):
            yield [first] + rest


def verify_lemma_suite(n_max: int) -> VerificationReport:
    """Structural, spectral and factor invariants over every isomorphism class of
    order 1..n_max, plus the closed-form constructions."""
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    if n_max > LEMMA_SUITE_MAX_ORDER:
        raise CapacityError(f"lemma suite limited to n_max <= {LEMMA_SUITE_MAX_ORDER}")
    t0 = time.perf_counter()
    suite = _Suite()
    joins = {(n, t): pair_join_graph(n, t) for n in range(3, n_max + 1) for t in range(1, n - 1)}
    checked = 0
    per_order = {}
    for n in range(1, n_max + 1):
        classes = graph_classes(n)
        per_order[n] = len(classes)
        for g in classes:
            checked += 1
            _spectral_checks(suite, g, joins)
            _unique_pm_checks(suite, g)
            _factor_checks(suite, g)
    _construction_checks(suite, n_max)
    counterexamples = sorted({x for fails in suite.failures.values() for x in fails if x})
    details = {
        "classes_per_order": per_order,
        "properties": {k: {"checked": v[0], "failed": v[1]} for k, v in sorted(suite.stats.items())},
        "failures": {k: v for k, v in sorted(suite.failures.items())},
    }
    return VerificationReport(
        "lemmas", {"n_max": n_max}, "exhaustive", f"isomorphism-classes:n<={n_max}", checked,
        checked, counterexamples, [], None, [], details, (time.perf_counter() - t0) * 1000,
    )


# -- unique k-factors -------------------------------------------------------------------


def _unique_k_count(g: Graph, k: int) -> int:
    if k == 1:
        return count_perfect_matchings(g, 2)
    if min_degree(g) < k:
        return 0
    return count_factors(g, FactorQuery(k, k), 2)


def _explore_worker(task) -> _Partial:
    n, spec, connected_only, k, tie_tol = task
    p = _Partial()
    for masks in _blocks(spec):
        if connected_only:
            masks = masks[connected_flags(n, masks)]
        p.checked += int(masks.size)
        for mask in masks.tolist():
            g = Graph.from_mask(n, mask)
            if _unique_k_count(g, k) != 1:
                continue
            p.hypothesis += 1
            p.track(rho(g, tie_tol / 10), g, tie_tol)
    return p


def circulant_candidates(two_n: int, k: int) -> list[tuple[tuple[int, ...], Graph]]:
    """K_{2n-k} join H over circulant 2(k-n)-regular graphs H of order k (k > n)."""
    n = two_n // 2
    deg = 2 * (k - n)
    offsets = range(1, k // 2 + 1)
    out = []
    for r in range(len(offsets) + 1):
        for combo in combinations(offsets, r):
            d = sum(1 if 2 * c == k else 2 for c in combo)
            if d == deg:
                out.append((combo, join(complete(two_n - k), circulant(k, combo))))
    return out


def explore_problem_5_1(
    two_n: int, k: int, src: EnumerationSource | None = None, jobs: int = 1, tie_tol: float = TIE_TOL,
    h_order: int | None = None,
) -> VerificationReport:
    """Largest spectral radius among order-``two_n`` graphs with a unique k-factor,
    set against the known constructions. Evidence only.

    For k > n the candidates are K_{2n-k} join H with H 2(k-n)-regular. The
    order of H is ``h_order``; only ``h_order = k`` gives order ``two_n``, so
    that is the default and any other value is rejected. The report records
    whether the value was given or defaulted.
    """
    if two_n < 2 or two_n % 2:
        raise ParameterError(f"two_n must be even and >= 2, got {two_n}")
    if not 1 <= k < two_n:
        raise ParameterError(f"needs 1 <= k < two_n, got k={k}")
    if h_order is not None and h_order != k:
        raise ParameterError(
            f"K_{{2n-k}} join H has order {two_n} only when |V(H)| = k = {k}, got h_order={h_order}"
        )
    _check_jobs(jobs)
    t0 = time.perf_counter()
    n = two_n // 2
    src = src or EnumerationSource.internal(two_n, dedup=True)
    specs, skipped = _source_specs(src, two_n, jobs)
    p = _run(_explore_worker, [(two_n, s, src.connected_only, k, tie_tol) for s in specs], jobs, tie_tol)
    argmax = sorted(p.argmax)
    details: dict = {
        "max_rho": p.best_rho if p.hypothesis else None,
        "argmax": argmax,
        "skipped_other_order": skipped,
        "outside_known_cases": k > 1,
    }
    threshold = None
    if k <= n:
        c = g_unique_kfactor(two_n, k)
        threshold = rho(c, TIGHT_TOL)
        code = canonical_code(c).decode()
        details["construction"] = code
        details["construction_unique"] = _unique_k_count(c, k) == 1
        details["construction_is_argmax"] = argmax == [code]
        if p.hypothesis:
            details["construction_vs_max"] = classify(threshold, p.best_rho, tie_tol).value
    else:
        cands = []
        for offsets, c in circulant_candidates(two_n, k):
            cands.append({
                "offsets": list(offsets),
                "graph6": canonical_code(c).decode(),
                "rho": rho(c, TIGHT_TOL),
                "unique_k_factor": _unique_k_count(c, k) == 1,
            })
        details["h_order"] = k
        details["h_order_source"] = "default" if h_order is None else "given"
        details["candidates"] = cands
        if cands:
            best = max(cands, key=lambda d: d["rho"])
            threshold = best["rho"]
            details["best_candidate"] = best["graph6"]
            details["best_candidate_is_argmax"] = argmax == [best["graph6"]]
            if p.hypothesis:
                details["candidate_vs_max"] = classify(threshold, p.best_rho, tie_tol).value
    return VerificationReport(
        "problem5.1", {"two_n": two_n, "k": k}, "exploration", src.describe(), p.checked,
        p.hypothesis, [], argmax, threshold, [], details, (time.perf_counter() - t0) * 1000,
    )


# -- re-validation -----------------------------------------------------------------------


def revalidate(report: VerificationReport, tol: float = 1e-9) -> bool:
    """Re-parse every listed graph; attainers must sit at the threshold radius and
    counterexamples must fail their factor check again."""
    graphs = [parse_graph6(s) for s in report.counterexamples + report.extremal_attainers + report.ties]
    del graphs
    if report.threshold_rho is not None and report.mode != "exploration":
        for s in report.extremal_attainers:
            if abs(rho(parse_graph6(s), TIGHT_TOL) - report.threshold_rho) > tol:
                return False
    prm = report.params
    check: Callable[[Graph], bool] | None = None
    if report.theorem == "thm1.1":
        check = lambda g: is_unique_pm(g) and rho(g) > report.threshold_rho + tol
    elif report.theorem == "thm1.3":
        check = lambda g: not ab_factor(g, FactorQuery(prm["a"], prm["b"])).found
    elif report.theorem == "cor1.1":
        check = lambda g: not f_factor(g, prm["k"]).found
    elif report.theorem == "thm1.2":
        check = lambda g: not odd_1b_factor(g, prm["b"]).found
    elif report.theorem == "thm5.1":
        if prm["variant"] == "oneb":
            check = lambda g: not one_b_factor_exists(g, prm["b"]).found
        else:
            check = lambda g: not fractional_pm(g).found
    if check is not None:
        for s in report.counterexamples:
            if not check(parse_graph6(s)):
                return False
    return True


__all__ = [
    "VerificationReport",
    "f_bound",
    "fmt_real",
    "is_isomorphic_any",
    "verify_thm_1_1",
    "verify_thm_1_3",
    "verify_cor_1_1",
    "verify_thm_1_2",
    "verify_thm_5_1",
    "verify_lemma_suite",
    "explore_problem_5_1",
    "circulant_candidates",
    "revalidate",
    "VARIANTS",
]
