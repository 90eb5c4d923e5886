"""Graph streams: exhaustive labelled enumeration, isomorphism classes, graph6
files, and seeded random samplers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator

import numpy as np

from .canon import MAX_CANON_ORDER, canonical_code, canonical_form
from .errors import CapacityError, ParameterError
from .graph import Graph, is_connected, min_degree
from .graph6 import read_graph6_file

MAX_INTERNAL_ORDER = 7

# OEIS A000088 / A001349
GRAPH_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080, 10: 11716571}


@dataclass(frozen=True)
class EnumerationSource:
    """Where graphs come from.

    ``mode="internal"`` walks all 2^(n(n-1)/2) labelled graphs on ``n``
    vertices (n <= 7); ``mode="graph6"`` reads ``path`` line by line.
    ``dedup`` keeps one graph per isomorphism class (order <= 10).
    """

    mode: str = "internal"
    n: int | None = None
    path: str | Path | None = None
    connected_only: bool = False
    dedup: bool = False

    def __post_init__(self) -> None:
        if self.mode == "internal":
            if self.n is None or self.n < 0:
                raise ParameterError("internal enumeration needs an order n >= 0")
            if self.n > MAX_INTERNAL_ORDER:
                raise CapacityError(
                    f"internal enumeration capped at n = {MAX_INTERNAL_ORDER}; supply a graph6 stream"
                )
        elif self.mode == "graph6":
            if self.path is None:
                raise ParameterError("graph6 mode needs a path")
        else:
            raise ParameterError(f"unknown enumeration mode {self.mode!r}")

    @classmethod
    def internal(cls, n: int, connected_only: bool = False, dedup: bool = False) -> EnumerationSource:
        return cls("internal", n=n, connected_only=connected_only, dedup=dedup)

    @classmethod
    def graph6(cls, path: str | Path, connected_only: bool = False, dedup: bool = False) -> EnumerationSource:
        return cls("graph6", path=path, connected_only=connected_only, dedup=dedup)

    def describe(self) -> str:
        base = f"internal:n={self.n}" if self.mode == "internal" else f"graph6:{Path(self.path).name}"
        flags = [f for f, on in (("connected", self.connected_only), ("dedup", self.dedup)) if on]
        return base + ("[" + ",".join(flags) + "]" if flags else "")


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for v in range(1, n) for u in range(v)]


def mask_adjacency(n: int, masks: np.ndarray) -> np.ndarray:
    """Stack of adjacency matrices ``(B, n, n)`` for edge bitmasks."""
    masks = np.asarray(masks, dtype=np.uint64)
    a = np.zeros((masks.size, n, n), dtype=np.float64)
    for i, (u, v) in enumerate(pair_list(n)):
        bit = ((masks >> np.uint64(i)) & np.uint64(1)).astype(np.float64)
        a[:, u, v] = bit
        a[:, v, u] = bit
    return a


@lru_cache(maxsize=None)
def graph_classes(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Built by extending every class on n-1 vertices with a new vertex attached
    to each possible neighbour set and keeping one graph per canonical code;
    every graph on n vertices arises this way by deleting its last vertex.
    """
    if n > MAX_CANON_ORDER:
        raise CapacityError(f"isomorphism classes limited to order <= {MAX_CANON_ORDER}")
    if n == 0:
        return (Graph._trusted(0, []),)
    seen: dict[bytes, Graph] = {}
    for base in graph_classes(n - 1):
        for nb in range(1 << (n - 1)):
            adj = list(base.adj)
            for v in range(n - 1):
                if nb >> v & 1:
                    adj[v] |= 1 << (n - 1)
            adj.append(nb)
            g = Graph._trusted(n, adj)
            code = canonical_code(g)
            if code not in seen:
                seen[code] = canonical_form(g)
    return tuple(seen[c] for c in sorted(seen))


def connected_classes(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in graph_classes(n) if is_connected(g))


def enumerate_graphs(src: EnumerationSource) -> Iterator[Graph]:
    """Yield graphs from ``src`` honouring its connected/dedup flags."""
    if src.mode == "internal":
        n = src.n
        if src.dedup:
            yield from (connected_classes(n) if src.connected_only else graph_classes(n))
            return
        for mask in range(1 << num_pairs(n)):
            g = Graph.from_mask(n, mask)
            if not src.connected_only or is_connected(g):
                yield g
        return

    seen: set[bytes] = set()
    for lineno, g in read_graph6_file(src.path):
        if src.connected_only and not is_connected(g):
            continue
        if src.dedup:
            if g.n > MAX_CANON_ORDER:
                raise CapacityError(f"line {lineno}: dedup needs order <= {MAX_CANON_ORDER}")
            code = canonical_code(g)
            if code in seen:
                continue
            seen.add(code)
        yield g


# -- samplers ------------------------------------------------------------------


@dataclass(frozen=True)
class Sampler:
    """Seeded random graph source.

    ``strategy`` is ``"uniform"`` (G(n, p) with p drawn from ``p_range`` per
    sample), ``"near_extremal"`` (up to ``max_edits`` random edge toggles of a
    base graph, each keeping it connected with minimum degree >= ``min_deg``)
    or ``"mixed"`` (alternating, uniform first).
    """

    seed: int
    count: int
    strategy: str = "mixed"
    p_range: tuple[float, float] = (0.5, 1.0)
    max_edits: int = 3

    def __post_init__(self) -> None:
        if self.strategy not in ("uniform", "near_extremal", "mixed"):
            raise ParameterError(f"unknown sampling strategy {self.strategy!r}")
        if self.count < 0:
            raise ParameterError("sample count must be non-negative")


def uniform_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    adj = [0] * n
    for u, v in zip(*np.nonzero(upper)):
        adj[u] |= 1 << int(v)
        adj[v] |= 1 << int(u)
    return Graph._trusted(n, adj)


def _ok(g: Graph, min_deg: int) -> bool:
    return is_connected(g) and min_degree(g) >= min_deg


def near_extremal_graph(
    rng: np.random.Generator, base: Graph, max_edits: int, min_deg: int, tries: int = 200
) -> Graph:
    g = base
    edits = int(rng.integers(1, max_edits + 1))
    for _ in range(edits):
        for _ in range(tries):
            u, v = (int(x) for x in rng.choice(base.n, size=2, replace=False))
            h = g.remove_edge(u, v) if g.has_edge(u, v) else g.add_edge(u, v)
            if _ok(h, min_deg):
                g = h
                break
    return g


def sample_graphs(sampler: Sampler, n: int, base: Graph | None = None, min_deg: int = 0) -> Iterator[tuple[str, Graph]]:
    """Yield ``(strategy, graph)`` pairs; identical seeds give identical streams."""
    rng = np.random.default_rng(sampler.seed)
    lo, hi = sampler.p_range
    for i in range(sampler.count):
        kind = sampler.strategy
        if kind == "mixed":
            kind = "uniform" if i % 2 == 0 else "near_extremal"
        if kind == "uniform":
            yield kind, uniform_graph(rng, n, float(rng.uniform(lo, hi)))
        else:
            if base is None:
                raise ParameterError("near-extremal sampling needs a base graph")
            yield kind, near_extremal_graph(rng, base, sampler.max_edits, min_deg)


# -- vectorised helpers over edge bitmasks -------------------------------------


def mask_rows(n: int, masks: np.ndarray) -> list[np.ndarray]:
    """Per-vertex neighbourhood bitmasks (one uint64 array per vertex)."""
    masks = np.asarray(masks, dtype=np.uint64)
    rows = [np.zeros(masks.shape, dtype=np.uint64) for _ in range(n)]
    one = np.uint64(1)
    for i, (u, v) in enumerate(pair_list(n)):
        bit = (masks >> np.uint64(i)) & one
        rows[u] |= bit << np.uint64(v)
        rows[v] |= bit << np.uint64(u)
    return rows


def connected_flags(n: int, masks: np.ndarray) -> np.ndarray:
    """Boolean array: is the graph with each edge bitmask connected."""
    masks = np.asarray(masks, dtype=np.uint64)
    if n <= 1:
        return np.ones(masks.shape, dtype=bool)
    rows = mask_rows(n, masks)
    one = np.uint64(1)
    reach = np.ones(masks.shape, dtype=np.uint64)
    for _ in range(n - 1):
        grown = reach.copy()
        for v in range(n):
            hit = ((reach >> np.uint64(v)) & one).astype(bool)
            grown[hit] |= rows[v][hit]
        if np.array_equal(grown, reach):
            break
        reach = grown
    return reach == np.uint64((1 << n) - 1)
