"""Factor existence with certificates.

Every decision comes with evidence: a ``FOUND`` result carries the factor as a
spanning subgraph; a ``REFUTED`` result carries a vertex set ``S`` violating
the relevant deletion condition

* perfect matching:      o(G - S) > |S|
* odd [1,b]-factor:      o(G - S) > b|S|
* [1,b]-factor (b >= 2): i(G - S) > b|S|
* fractional p.m.:       i(G - S) > |S|

Searches that prove nonexistence without such a set return ``NOT_FOUND`` with
``exhaustive=True``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, ParameterError
from .graph import (
    Edge,
    Graph,
    bridges,
    is_connected,
    isolated_vertices,
    mask_vertices,
    odd_components,
    to_mask,
)
from .matching import (
    UNMATCHED,
    barrier,
    count_perfect_matchings,
    has_alternating_cycle,
    mate_array,
    mate_edges,
    max_matching_lists,
)
from .spectral import perron_vector

SWEEP_MAX_ORDER = 24
GADGET_MAX_NODES = 512
PARITY_GADGET_MAX_NODES = 2048
SEARCH_NODE_BUDGET = 200_000


class Outcome(enum.Enum):
    FOUND = "Found"
    REFUTED = "Refuted"
    NOT_FOUND = "NotFound"


@dataclass(frozen=True)
class FactorQuery:
    a: int
    b: int
    odd_only: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.a <= self.b:
            raise ParameterError(f"need 1 <= a <= b, got a={self.a}, b={self.b}")
        if self.odd_only and (self.a != 1 or self.b % 2 == 0):
            raise ParameterError("odd factors need a = 1 and b odd")


@dataclass(frozen=True)
class FractionalMatching:
    weights: dict[Edge, Fraction]

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def load(self, v: int) -> Fraction:
        return sum((w for e, w in self.weights.items() if v in e), Fraction(0))


@dataclass(frozen=True)
class FactorResult:
    outcome: Outcome
    method: str
    factor: Graph | None = None
    witness: frozenset[int] | None = None
    # (deficient count, allowed bound) for the witness, e.g. (o(G-S), b|S|)
    violation: tuple[int, int] | None = None
    exhaustive: bool | None = None
    fractional: FractionalMatching | None = None

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND

    def edges(self) -> list[Edge]:
        return self.factor.edges() if self.factor is not None else []


def _found(g: Graph, edges: Iterable[Edge], method: str, **kw) -> FactorResult:
    return FactorResult(Outcome.FOUND, method, factor=Graph.from_edges(g.n, edges), **kw)


def _refuted(s_mask: int, count: int, bound: int, method: str) -> FactorResult:
    return FactorResult(
        Outcome.REFUTED, method, witness=frozenset(mask_vertices(s_mask)), violation=(count, bound)
    )


# -- validation (independent of the search paths) ------------------------------


def is_factor(g: Graph, h: Graph, q: FactorQuery) -> bool:
    """Re-check a claimed factor from scratch."""
    if h.n != g.n:
        return False
    for u, v in h.edges():
        if not g.has_edge(u, v):
            return False
    for d in h.degrees():
        if not q.a <= d <= q.b or (q.odd_only and d % 2 == 0):
            return False
    return True


def violation_count(g: Graph, s: Iterable[int] | int, kind: str) -> int:
    if kind == "odd":
        return odd_components(g, s)
    if kind == "isolated":
        return isolated_vertices(g, s)
    raise ParameterError(f"unknown condition kind {kind!r}")


def witness_holds(g: Graph, result: FactorResult, kind: str, b: int) -> bool:
    """Recompute the witness inequality count > b|S| from scratch."""
    s = result.witness
    return s is not None and violation_count(g, s, kind) > b * len(s)


# -- subset sweeps ----------------------------------------------------------------


def subset_stats(g: Graph, s_masks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each deleted set S in ``s_masks``: (o(G - S), i(G - S)), vectorised."""
    n = g.n
    adj = np.array(g.adj, dtype=np.uint64)
    full = np.uint64((1 << n) - 1)
    rest = np.asarray(s_masks, dtype=np.uint64) ^ full
    odd = np.zeros(rest.shape, dtype=np.int64)
    iso = np.zeros(rest.shape, dtype=np.int64)
    idx = np.nonzero(rest)[0]
    r = rest[idx]
    one = np.uint64(1)
    while idx.size:
        comp = r & (~r + one)
        while True:
            grown = comp.copy()
            for v in range(n):
                hit = ((grown >> np.uint64(v)) & one).astype(bool)
                grown[hit] |= adj[v]
                grown &= r
            if np.array_equal(grown, comp):
                break
            comp = grown
        size = np.bitwise_count(comp)
        odd[idx] += size & 1
        iso[idx] += size == 1
        r = r & ~comp
        keep = r != 0
        idx, r = idx[keep], r[keep]
    return odd, iso


def all_subsets(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def _lex_key(s_mask: int) -> tuple[int, ...]:
    return tuple(mask_vertices(s_mask))


def condition_sweep(g: Graph, kind: str, b: int) -> tuple[int, int] | None:
    """First S (smallest, then lexicographic) with count(G - S) > b|S|.

    ``kind`` is ``"odd"`` (o) or ``"isolated"`` (i). Returns ``(mask, count)``
    or ``None`` when the condition holds for every S. Only sizes with
    n - |S| > b|S| can violate, so larger sets are skipped.
    """
    n = g.n
    if n > SWEEP_MAX_ORDER:
        raise CapacityError(f"subset sweep limited to order <= {SWEEP_MAX_ORDER}, got {n}")
    max_size = next((k for k in range(n + 1) if n - k <= b * k), n + 1) - 1
    # small sizes: scalar scan with early exit
    k = 0
    scanned = 0
    while k <= max_size and scanned + comb(n, k) <= 4096:
        for s in combinations(range(n), k):
            mask = to_mask(s)
            cnt = violation_count(g, mask, kind)
            if cnt > b * k:
                return mask, cnt
        scanned += comb(n, k)
        k += 1
    if k > max_size:
        return None
    # remaining sizes: vectorised over chunks of all masks
    best: dict[int, tuple[tuple[int, ...], int, int]] = {}
    chunk = 1 << 18
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.uint64)
        sizes = np.bitwise_count(masks)
        sel = (sizes >= k) & (sizes <= max_size)
        masks, sizes = masks[sel], sizes[sel].astype(np.int64)
        if not masks.size:
            continue
        odd, iso = subset_stats(g, masks)
        cnt = odd if kind == "odd" else iso
        bad = np.nonzero(cnt > b * sizes)[0]
        if not bad.size:
            continue
        for size in np.unique(sizes[bad]):
            size = int(size)
            if best and size > min(best):
                continue
            rows = bad[sizes[bad] == size]
            cands = [(_lex_key(int(masks[i])), int(masks[i]), int(cnt[i])) for i in rows]
            cand = min(cands)
            if size not in best or cand < best[size]:
                best[size] = cand
    if not best:
        return None
    _, mask, cnt = best[min(best)]
    return mask, cnt


def tutte_berge_sweep(g: Graph) -> int:
    """max over S of o(G - S) - |S| by enumerating every S (oracle)."""
    masks = all_subsets(g.n)
    odd, _ = subset_stats(g, masks)
    return int(np.max(odd - np.bitwise_count(masks).astype(np.int64)))


# -- backtracking factor search -----------------------------------------------


class SearchBudgetExceeded(Exception):
    pass


def degree_search(
    g: Graph,
    allowed: Sequence[int],
    cap: int = 1,
    budget: int | None = None,
) -> tuple[int, list[Edge] | None]:
    """Backtracking over spanning subgraphs with per-vertex allowed degrees.

    ``allowed[v]`` is a bitmask over degrees (bit d set = degree d allowed).
    Vertices are processed in order; at vertex v the undecided edges to later
    vertices are chosen so v's degree lands in its allowed set, pruning any
    later vertex that can no longer reach an allowed degree. Returns
    ``(min(count, cap), first_factor_edges)``.
    """
    n = g.n
    adj = g.adj
    later = [mask_vertices(adj[v] >> (v + 1) << (v + 1)) for v in range(n)]
    # pot[i][w]: number of w's neighbours with index > i
    deg = [0] * n
    for v in range(n):
        if not allowed[v]:
            return 0, None
    max_allowed = [a.bit_length() - 1 for a in allowed]
    chosen: list[Edge] = []
    state = {"count": 0, "first": None, "nodes": 0}

    def reachable(w: int, pot: int) -> bool:
        return bool(allowed[w] >> deg[w] & ((1 << (pot + 1)) - 1))

    def rec(v: int) -> bool:
        state["nodes"] += 1
        if budget is not None and state["nodes"] > budget:
            raise SearchBudgetExceeded
        if v == n:
            state["count"] += 1
            if state["first"] is None:
                state["first"] = list(chosen)
            return state["count"] >= cap
        cand = [w for w in later[v] if deg[w] < max_allowed[w]]
        cur = deg[v]
        for k in range(len(cand) + 1):
            if not allowed[v] >> (cur + k) & 1:
                continue
            for combo in combinations(cand, k):
                for w in combo:
                    deg[w] += 1
                    chosen.append((v, w))
                deg[v] += k
                ok = True
                for w in later[v]:
                    pot = (adj[w] >> (v + 1) << (v + 1)).bit_count()
                    if not reachable(w, pot):
                        ok = False
                        break
                if ok and rec(v + 1):
                    return True
                deg[v] -= k
                for w in combo:
                    deg[w] -= 1
                    chosen.pop()
        return False

    if n == 0:
        return 1, []
    # vertex 0 has no earlier neighbours; the loop above handles the rest
    rec(0)
    return min(state["count"], cap), state["first"]


def degree_bits(lo: int, hi: int, odd_only: bool = False) -> int:
    bits = 0
    for d in range(lo, hi + 1):
        if not odd_only or d % 2:
            bits |= 1 << d
    return bits


def count_factors(g: Graph, q: FactorQuery, cap: int) -> int:
    """``min(#factors, cap)`` for query ``q`` by exhaustive backtracking."""
    allowed = [degree_bits(q.a, q.b, q.odd_only)] * g.n
    return degree_search(g, allowed, cap=cap)[0]


# -- perfect matchings -----------------------------------------------------------


def perfect_matching(g: Graph, cross_check: bool | None = None) -> FactorResult:
    """Blossom search with a Gallai-Edmonds barrier as the refutation.

    With ``cross_check`` (default: when n <= 16) a refutation is confirmed
    against an exhaustive sweep of the Tutte-Berge deficiency.
    """
    mate = mate_array(g)
    if all(w != UNMATCHED for w in mate):
        return _found(g, mate_edges(mate), "blossom")
    a = barrier(g, mate)
    deficiency = sum(1 for w in mate if w == UNMATCHED)
    o = odd_components(g, a)
    if o - a.bit_count() != deficiency:
        raise AssertionError("Gallai-Edmonds barrier does not attain the deficiency")
    if cross_check is None:
        cross_check = g.n <= 16
    if cross_check and tutte_berge_sweep(g) != deficiency:
        raise AssertionError("blossom deficiency disagrees with the subset sweep")
    return _refuted(a, o, a.bit_count(), "blossom+barrier")


def is_unique_pm(g: Graph, cross_check: bool = False) -> bool:
    """True iff ``g`` has exactly one perfect matching (alternating-cycle test)."""
    mate = mate_array(g)
    if any(w == UNMATCHED for w in mate):
        unique = False
    else:
        unique = not has_alternating_cycle(g, mate)
    if cross_check and unique != (count_perfect_matchings(g, 2) == 1):
        raise AssertionError("alternating-cycle test disagrees with the capped count")
    return unique


# -- f-factors via the Tutte gadget ----------------------------------------------


def tutte_gadget(g: Graph, f: Sequence[int]) -> tuple[list[list[int]], dict[tuple[int, int], Edge]]:
    """Gadget whose perfect matchings correspond to f-factors of ``g``.

    Vertex v becomes d(v) end nodes (one per incident edge) joined completely
    to d(v) - f(v) inner nodes; each edge uv links u's and v's end nodes for
    that edge. Returns adjacency lists and a map from end-node pairs to the
    original edge.
    """
    nodes = sum(2 * g.degree(v) - f[v] for v in range(g.n))
    if nodes > GADGET_MAX_NODES:
        raise CapacityError(f"gadget would have {nodes} nodes (cap {GADGET_MAX_NODES})")
    nbrs: list[list[int]] = []
    end_node: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        ends = []
        for w in g.neighbors(v):
            end_node[(v, w)] = len(nbrs)
            ends.append(len(nbrs))
            nbrs.append([])
        inner = list(range(len(nbrs), len(nbrs) + g.degree(v) - f[v]))
        nbrs.extend([] for _ in inner)
        for x in ends:
            for y in inner:
                nbrs[x].append(y)
                nbrs[y].append(x)
    link: dict[tuple[int, int], Edge] = {}
    for u, v in g.edges():
        x, y = end_node[(u, v)], end_node[(v, u)]
        nbrs[x].append(y)
        nbrs[y].append(x)
        link[(x, y)] = (u, v)
    return nbrs, link


def f_factor(g: Graph, f: Sequence[int] | int) -> FactorResult:
    """Spanning subgraph with degree exactly ``f[v]`` at every vertex."""
    f = [f] * g.n if isinstance(f, int) else list(f)
    if len(f) != g.n:
        raise ParameterError("f must give one target per vertex")
    if any(x < 0 for x in f):
        raise ParameterError("targets must be non-negative")
    for v in range(g.n):
        if f[v] > g.degree(v):
            return _refuted(1 << v, f[v], g.degree(v), "degree-bound")
    nbrs, link = tutte_gadget(g, f)
    mate = max_matching_lists(nbrs)
    if any(w == UNMATCHED for w in mate):
        return FactorResult(Outcome.NOT_FOUND, "tutte-gadget", exhaustive=True)
    edges = [e for (x, y), e in link.items() if mate[x] == y]
    return _found(g, edges, "tutte-gadget")


# -- odd [1,b]-factors -----------------------------------------------------------


def _parity_gadget_factor(g: Graph, b: int) -> list[Edge] | None:
    """Odd [1,b]-factor through a perfect matching in a parity gadget.

    Vertex v with degree d keeps m = largest odd number <= min(b, d) end nodes
    free: d - m inner nodes are joined to all end nodes, and end nodes form a
    clique so they can also absorb each other in pairs. The number of end
    nodes matched across original edges is then an odd number in [1, m].
    Returns ``None`` when the gadget has no perfect matching.
    """
    nbrs: list[list[int]] = []
    end_node: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        d = g.degree(v)
        m = min(b, d)
        if m % 2 == 0:
            m -= 1
        if m < 1:
            return None
        ends = []
        for w in g.neighbors(v):
            end_node[(v, w)] = len(nbrs)
            ends.append(len(nbrs))
            nbrs.append([])
        inner = list(range(len(nbrs), len(nbrs) + d - m))
        nbrs.extend([] for _ in inner)
        for i, x in enumerate(ends):
            for y in inner:
                nbrs[x].append(y)
                nbrs[y].append(x)
            for y in ends[i + 1:]:
                nbrs[x].append(y)
                nbrs[y].append(x)
        if len(nbrs) > PARITY_GADGET_MAX_NODES:
            raise CapacityError("parity gadget too large")
    link: dict[tuple[int, int], Edge] = {}
    for u, v in g.edges():
        x, y = end_node[(u, v)], end_node[(v, u)]
        nbrs[x].append(y)
        nbrs[y].append(x)
        link[(x, y)] = (u, v)
    mate = max_matching_lists(nbrs)
    if any(w == UNMATCHED for w in mate):
        return None
    return [e for (x, y), e in link.items() if mate[x] == y]


def odd_1b_factor(g: Graph, b: int) -> FactorResult:
    """Odd [1,b]-factor, or the first S with o(G - S) > b|S|."""
    if b < 1 or b % 2 == 0:
        raise ParameterError(f"b must be a positive odd integer, got {b}")
    if g.n > SWEEP_MAX_ORDER:
        raise CapacityError(f"odd [1,b]-factor decision limited to order <= {SWEEP_MAX_ORDER}")
    if g.n == 0:
        return _found(g, [], "trivial")
    mate = mate_array(g)
    if all(w != UNMATCHED for w in mate):
        return _found(g, mate_edges(mate), "blossom")
    if b >= 3:
        edges = _parity_gadget_factor(g, b)
        if edges is not None:
            return _found(g, edges, "parity-gadget")
    hit = condition_sweep(g, "odd", b)
    if hit is None:
        raise AssertionError("no odd [1,b]-factor found but no violating set exists")
    mask, cnt = hit
    return _refuted(mask, cnt, b * mask.bit_count(), "amahashi-sweep")


def odd_1b_factor_search(g: Graph, b: int) -> FactorResult:
    """Pure backtracking decision for odd [1,b]-factors (oracle path)."""
    allowed = [degree_bits(1, b, odd_only=True)] * g.n
    count, edges = degree_search(g, allowed)
    if count:
        return _found(g, edges, "backtracking")
    return FactorResult(Outcome.NOT_FOUND, "backtracking", exhaustive=True)


# -- [1,b]-factors and fractional perfect matchings --------------------------------


def _double_cover_permutation(g: Graph) -> list[int] | None:
    """Perfect matching of the bipartite double cover as a map v -> sigma(v)."""
    n = g.n
    nbrs = [[n + w for w in g.neighbors(v)] for v in range(n)]
    nbrs += [g.neighbors(v) for v in range(n)]
    mate = max_matching_lists(nbrs)
    if any(mate[v] == UNMATCHED for v in range(n)):
        return None
    return [mate[v] - n for v in range(n)]


def _sigma_weights(sigma: Sequence[int]) -> dict[Edge, Fraction]:
    weights: dict[Edge, Fraction] = {}
    half = Fraction(1, 2)
    for v, w in enumerate(sigma):
        e = (min(v, w), max(v, w))
        weights[e] = weights.get(e, Fraction(0)) + half
    return weights


def _rounded_weights(sigma: Sequence[int]) -> dict[Edge, Fraction]:
    """Half-integral weights with every even cycle of sigma rounded to a matching.

    A cycle v0 -> v1 -> ... of sigma is a cycle of the graph (or a single
    edge when it has length 2); even cycles carry a perfect matching of their
    own, so only odd cycles keep weight 1/2.
    """
    weights: dict[Edge, Fraction] = {}
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        while not seen[sigma[cyc[-1]]]:
            cyc.append(sigma[cyc[-1]])
            seen[cyc[-1]] = True
        if len(cyc) % 2 == 0:
            for i in range(0, len(cyc), 2):
                u, v = cyc[i], cyc[i + 1]
                weights[(min(u, v), max(u, v))] = Fraction(1)
        else:
            for i, u in enumerate(cyc):
                v = cyc[(i + 1) % len(cyc)]
                weights[(min(u, v), max(u, v))] = Fraction(1, 2)
    return weights


def fractional_pm_sweep(g: Graph) -> FactorResult:
    """Decide fractional perfect matchings by the i(G - S) <= |S| sweep alone."""
    hit = condition_sweep(g, "isolated", 1)
    if hit is None:
        return FactorResult(Outcome.FOUND, "isolated-sweep")
    mask, cnt = hit
    return _refuted(mask, cnt, mask.bit_count(), "isolated-sweep")


def fractional_pm(g: Graph, cross_check: bool = False) -> FactorResult:
    """Fractional perfect matching via the bipartite double cover.

    A perfect matching u' -> sigma(u)'' of the double cover is a permutation
    whose cycles are edges and cycles of G; even cycles are rounded to
    matchings and odd cycles get weight 1/2 on each edge. Refutations come
    from the i(G - S) <= |S| sweep (orders up to 24).
    """
    sigma = _double_cover_permutation(g)
    if sigma is not None:
        weights = _rounded_weights(sigma)
        result = _found(g, weights.keys(), "double-cover", fractional=FractionalMatching(weights))
    else:
        hit = condition_sweep(g, "isolated", 1)
        if hit is None:
            raise AssertionError("double cover has no perfect matching but no violating set exists")
        mask, cnt = hit
        result = _refuted(mask, cnt, mask.bit_count(), "double-cover+isolated-sweep")
    if cross_check and fractional_pm_sweep(g).outcome is not result.outcome:
        raise AssertionError("double cover and isolated-vertex sweep disagree")
    return result


def one_b_factor_exists(g: Graph, b: int) -> FactorResult:
    """[1,b]-factor (b >= 2), or the first S with i(G - S) > b|S|."""
    if b < 2:
        raise ParameterError(f"[1,b]-factor checker needs b >= 2, got {b}")
    if g.n > SWEEP_MAX_ORDER:
        raise CapacityError(f"[1,b]-factor decision limited to order <= {SWEEP_MAX_ORDER}")
    if g.n == 0:
        return _found(g, [], "trivial")
    sigma = _double_cover_permutation(g)
    if sigma is not None:
        # cycles of sigma give a spanning subgraph with degrees 1 or 2
        return _found(g, _sigma_weights(sigma).keys(), "double-cover")
    hit = condition_sweep(g, "isolated", b)
    if hit is not None:
        mask, cnt = hit
        return _refuted(mask, cnt, b * mask.bit_count(), "isolated-sweep")
    count, edges = degree_search(g, [degree_bits(1, b)] * g.n)
    if not count:
        raise AssertionError("no violating set but backtracking found no [1,b]-factor")
    return _found(g, edges, "backtracking")


def ab_factor(g: Graph, q: FactorQuery) -> FactorResult:
    """Dispatch an [a,b]-factor query to the matching decision procedure."""
    if q.odd_only:
        return odd_1b_factor(g, q.b)
    if q.a == q.b:
        return f_factor(g, q.a)
    if q.a == 1:
        return one_b_factor_exists(g, q.b)
    for v in range(g.n):
        if g.degree(v) < q.a:
            return FactorResult(Outcome.NOT_FOUND, "degree-obstruction", exhaustive=True)
    count, edges = degree_search(g, [degree_bits(q.a, q.b)] * g.n)
    if count:
        return _found(g, edges, "backtracking")
    return FactorResult(Outcome.NOT_FOUND, "backtracking", exhaustive=True)


# -- Kelmans sequence for unique perfect matchings --------------------------------


def kelmans_sequence_to_extremal(g: Graph) -> list[Graph]:
    """Transform a connected unique-perfect-matching graph into G(2n,1).

    Step i works inside S_i (vertices not yet fixed): pick a cut edge of
    G_i[S_i] that lies in its unique perfect matching, orient it u_i v_i with
    x(u_i) >= x(v_i) under the Perron vector of G_i, delete v_i's other edges
    inside S_i and join u_i to all of S_i. Returns [G_0, ..., G_{n-1}].
    """
    if g.n == 0 or g.n % 2 or not is_connected(g) or not is_unique_pm(g):
        raise ParameterError("input must be a connected graph with a unique perfect matching")
    seq = [g]
    cur = g
    s_mask = g.full_mask
    for _ in range(g.n // 2 - 1):
        sub_vertices = mask_vertices(s_mask)
        sub = cur.induced(s_mask)
        pm = set(mate_edges(mate_array(sub)))
        cut = [e for e in bridges(sub) if e in pm]
        if not cut:
            raise AssertionError("no cut edge inside the unique perfect matching")
        a, b_ = sub_vertices[cut[0][0]], sub_vertices[cut[0][1]]
        x = perron_vector(cur).perron
        u, v = (a, b_) if x[a] >= x[b_] else (b_, a)
        adj = list(cur.adj)
        drop = adj[v] & s_mask & ~(1 << u)
        add = s_mask & ~adj[u] & ~(1 << u)
        adj[v] &= ~drop
        for w in mask_vertices(drop):
            adj[w] &= ~(1 << v)
        adj[u] |= add
        for w in mask_vertices(add):
            adj[w] |= 1 << u
        cur = Graph._trusted(g.n, adj)
        seq.append(cur)
        s_mask &= ~((1 << u) | (1 << v))
    return seq
