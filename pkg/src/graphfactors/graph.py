"""Immutable small graphs stored as per-vertex neighbour bitmasks.

Vertex sets are plain ``int`` bitmasks internally; public functions also
accept any iterable of vertex indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import CapacityError, ParameterError

MAX_ORDER = 64

Edge = tuple[int, int]
VertexSet = frozenset[int]


def to_mask(vertices: Iterable[int] | int) -> int:
    """Coerce a vertex collection (or an int bitmask) to a bitmask."""
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def pair_index(u: int, v: int) -> int:
    """Position of pair {u, v} in graph6 column order (0,1),(0,2),(1,2),(0,3),..."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def bool_rows_to_masks(a: np.ndarray) -> list[int]:
    """Row ``v`` of a boolean ``(n, n)`` matrix as the bitmask sum of 2^u over set columns u."""
    n = a.shape[0]
    if n == 0:
        return []
    padded = np.zeros((n, 64), dtype=bool)
    padded[:, :n] = a
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").ravel().tolist()


def _check_order(n: int) -> None:
    if n < 0:
        raise ParameterError(f"order must be non-negative, got {n}")
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds the {MAX_ORDER}-vertex cap")


@dataclass(frozen=True, slots=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitmask of neighbours of ``v``. Instances are immutable;
    every "mutation" returns a new graph.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_order(self.n)
        if len(self.adj) != self.n:
            raise ParameterError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ParameterError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise ParameterError(f"self-loop at vertex {v}")
            for w in mask_vertices(nb):
                if not self.adj[w] >> v & 1:
                    raise ParameterError(f"asymmetric adjacency between {v} and {w}")

    # -- construction -------------------------------------------------------

    @classmethod
    def _trusted(cls, n: int, adj: Iterable[int]) -> Graph:
        # skips validation; callers guarantee symmetry and irreflexivity
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        _check_order(n)
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for order {n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Graph:
        """Build from an edge bitmask in graph6 column order (bit i = i-th pair)."""
        _check_order(n)
        adj = [0] * n
        i = 0
        for v in range(1, n):
            for u in range(v):
                if mask >> i & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                i += 1
        return cls._trusted(n, adj)

    @classmethod
    def from_adjacency(cls, matrix) -> Graph:
        a = np.asarray(matrix) != 0
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError("adjacency matrix must be square")
        _check_order(a.shape[0])
        if np.any(np.diagonal(a)):
            raise ParameterError("adjacency matrix has a self-loop")
        if not np.array_equal(a, a.T):
            raise ParameterError("adjacency matrix is not symmetric")
        return cls._trusted(a.shape[0], bool_rows_to_masks(a))

    # -- queries -------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def to_mask(self) -> int:
        mask = 0
        for u, v in self.edges():
            mask |= 1 << pair_index(u, v)
        return mask

    def edges(self) -> list[Edge]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        out = []
        for u in range(self.n):
            for v in mask_vertices(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return mask_vertices(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def non_edges(self) -> Iterator[Edge]:
        for u, v in combinations(range(self.n), 2):
            if not self.adj[u] >> v & 1:
                yield (u, v)

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    # -- derived graphs ------------------------------------------------------

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise ParameterError(f"self-loop at vertex {u}")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph._trusted(self.n, adj)

    def remove_edge(self, u: int, v: int) -> Graph:
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph._trusted(self.n, adj)

    def induced(self, vertices: Iterable[int] | int) -> Graph:
        """Induced subgraph, re-indexed in increasing vertex order."""
        keep = mask_vertices(to_mask(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            nb = 0
            for w in mask_vertices(self.adj[v] & to_mask(keep)):
                nb |= 1 << pos[w]
            adj.append(nb)
        return Graph._trusted(len(keep), adj)

    def relabel(self, perm: list[int]) -> Graph:
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for u, v in self.edges():
            adj[perm[u]] |= 1 << perm[v]
            adj[perm[v]] |= 1 << perm[u]
        return Graph._trusted(self.n, adj)

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph._trusted(self.n, [(full ^ nb) & ~(1 << v) for v, nb in enumerate(self.adj)])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


# -- basic constructors -------------------------------------------------------


def empty(n: int) -> Graph:
    """``n`` isolated vertices (nK_1)."""
    _check_order(n)
    return Graph._trusted(n, [0] * n)


def complete(n: int) -> Graph:
    _check_order(n)
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)])


def union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; ``h``'s vertices follow ``g``'s."""
    _check_order(g.n + h.n)
    return Graph._trusted(g.n + h.n, list(g.adj) + [nb << g.n for nb in h.adj])


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``."""
    _check_order(g.n + h.n)
    g_all = (1 << g.n) - 1
    h_all = ((1 << h.n) - 1) << g.n
    adj = [nb | h_all for nb in g.adj] + [(nb << g.n) | g_all for nb in h.adj]
    return Graph._trusted(g.n + h.n, adj)


def copies(k: int, g: Graph) -> Graph:
    """``k`` disjoint copies of ``g`` (kG)."""
    if k < 0:
        raise ParameterError("number of copies must be non-negative")
    _check_order(k * g.n)
    out = empty(0)
    for _ in range(k):
        out = union(out, g)
    return out


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return join(empty(1), empty(leaves))


def complete_bipartite(p: int, q: int) -> Graph:
    return join(empty(p), empty(q))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def circulant(n: int, connections: Iterable[int]) -> Graph:
    """Vertex ``i`` adjacent to ``i +- d (mod n)`` for each offset ``d``."""
    _check_order(n)
    offsets = sorted(set(connections))
    for d in offsets:
        if not 1 <= d <= n // 2:
            raise ParameterError(f"offset {d} outside 1..{n // 2}")
    edges = [(i, (i + d) % n) for i in range(n) for d in offsets]
    return Graph.from_edges(n, edges)


# -- extremal families --------------------------------------------------------


def h_na(n: int, a: int) -> Graph:
    """K_{a-1} join (K_1 union K_{n-a}).

    Vertices ``0..a-2`` form the K_{a-1}, vertex ``a-1`` is the low-degree
    vertex and the rest form K_{n-a}.
    """
    if not 1 <= a <= n - 1:
        raise ParameterError(f"h_na needs 1 <= a <= n-1, got n={n}, a={a}")
    return join(complete(a - 1), union(empty(1), complete(n - a)))


def t_graph(n: int, b: int, delta: int) -> Graph:
    """K_delta join (K_{n-(b+1)delta-1} union (b*delta+1)K_1).

    Hub vertices come first, then the clique, then the independent vertices.
    """
    if b < 1 or b % 2 == 0:
        raise ParameterError(f"b must be a positive odd integer, got {b}")
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    return isolated_extremal(n, b, delta)


def isolated_extremal(n: int, b: int, delta: int) -> Graph:
    """K_delta join (K_{n-(b+1)delta-1} union (b*delta+1)K_1) for any b >= 1.

    Same shape as :func:`t_graph` without the parity requirement on ``b``;
    it is the extremal graph for [1,b]-factors and (b=1) fractional perfect
    matchings.
    """
    if b < 1 or delta < 1:
        raise ParameterError("b and delta must be positive")
    if n < (b + 1) * delta + 2:
        raise ParameterError(f"needs n >= (b+1)*delta + 2 = {(b + 1) * delta + 2}, got n={n}")
    clique = n - (b + 1) * delta - 1
    return join(complete(delta), union(complete(clique), empty(b * delta + 1)))


def pair_join_graph(n: int, t: int) -> Graph:
    """K_t join (2K_1 union K_{n-t-2}); the two low-degree vertices are 0 and 1.

    Vertex order: the two independent vertices, then K_t, then K_{n-t-2}.
    """
    if t < 1 or n - t - 2 < 0:
        raise ParameterError(f"needs t >= 1 and n >= t+2, got n={n}, t={t}")
    core = join(complete(t), union(empty(2), complete(n - t - 2)))
    # move the two independent vertices (t, t+1) to the front
    perm = list(range(core.n))
    order = [t, t + 1] + list(range(t)) + list(range(t + 2, core.n))
    for new, old in enumerate(order):
        perm[old] = new
    return core.relabel(perm)


def clique_chain(s: int, parts: Iterable[int]) -> Graph:
    """K_s join (K_{p_1} union K_{p_2} union ...)."""
    body = empty(0)
    for p in parts:
        body = union(body, complete(p))
    return join(complete(s), body)


def g_unique_pm(two_n: int) -> Graph:
    """Half graph over a clique: the unique-perfect-matching extremal graph.

    With ``n = two_n // 2``, vertices ``0..n-1`` are the clique ``w_1..w_n`` and
    ``n..2n-1`` are ``u_1..u_n`` with ``N(u_i) = {w_1..w_i}``. The unique
    perfect matching is ``{u_i w_i}``.
    """
    if two_n < 2 or two_n % 2:
        raise ParameterError(f"order must be even and >= 2, got {two_n}")
    n = two_n // 2
    edges = list(combinations(range(n), 2))
    edges += [(w, n + i) for i in range(n) for w in range(i + 1)]
    return Graph.from_edges(two_n, edges)


def g_unique_kfactor(two_n: int, k: int) -> Graph:
    """The unique-k-factor construction built from one F_1 block and s-1 K_k joins.

    Write ``n = s*k + t`` with ``0 <= t < k``. F_1 has parts A_12 = K_t and
    A_11 = tK_1 (together K_t join tK_1), A_22 = K_k and A_21 = kK_1 joined by
    a (k-t)-regular circulant bipartite bridge (singleton ``i`` to clique
    vertices ``i..i+k-t-1 mod k``). A_11-A_22, A_12-A_21 and A_12-A_22 are
    complete. Blocks F_2..F_s are K_k join kK_1 and every W_i (the clique part
    of F_i) is joined to all of F_j for i < j.

    Vertex order per block: clique part W_i first, then U_i; in F_1 that is
    A_12, A_22, A_11, A_21.
    """
    if two_n % 2:
        raise ParameterError(f"order must be even, got {two_n}")
    n = two_n // 2
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if k > n:
        raise ParameterError(f"k={k} > n={n}: construction only covers k <= n")
    _check_order(two_n)
    s, t = divmod(n, k)

    edges: list[Edge] = []
    a12 = list(range(0, t))
    a22 = list(range(t, t + k))
    a11 = list(range(t + k, 2 * t + k))
    a21 = list(range(2 * t + k, 2 * t + 2 * k))
    edges += combinations(a12, 2)
    edges += [(x, y) for x in a12 for y in a11]
    edges += combinations(a22, 2)
    for i, x in enumerate(a21):
        edges += [(a22[(i + j) % k], x) for j in range(k - t)]
    edges += [(x, y) for x in a11 for y in a22]
    edges += [(x, y) for x in a12 for y in a21]
    edges += [(x, y) for x in a12 for y in a22]

    blocks = [(a12 + a22, a12 + a22 + a11 + a21)]  # (W_i, V(F_i))
    start = 2 * (k + t)
    for _ in range(s - 1):
        w = list(range(start, start + k))
        u = list(range(start + k, start + 2 * k))
        edges += combinations(w, 2)
        edges += [(x, y) for x in w for y in u]
        blocks.append((w, w + u))
        start += 2 * k
    for i, (w_i, _) in enumerate(blocks):
        for _, f_j in blocks[i + 1:]:
            edges += [(x, y) for x in w_i for y in f_j]
    return Graph.from_edges(two_n, edges)


# -- operations and structural queries ----------------------------------------


def kelmans_shift(g: Graph, u: int, v: int) -> Graph:
    """Move every neighbour of ``v`` outside ``N(u) + u`` from ``v`` to ``u``."""
    if u == v:
        raise ParameterError("kelmans_shift needs distinct vertices")
    movable = g.adj[v] & ~g.adj[u] & ~(1 << u)
    if not movable:
        return g
    adj = list(g.adj)
    adj[v] &= ~movable
    adj[u] |= movable
    for w in mask_vertices(movable):
        adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
    return Graph._trusted(g.n, adj)


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    remaining = g.full_mask if within is None else within
    adj = g.adj
    out = []
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            grow = 0
            while frontier:
                low = frontier & -frontier
                grow |= adj[low.bit_length() - 1]
                frontier ^= low
            grow &= remaining & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        remaining &= ~comp
    return out


def components(g: Graph) -> list[VertexSet]:
    return [frozenset(mask_vertices(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise ParameterError("minimum degree of the null graph is undefined")
    return min(nb.bit_count() for nb in g.adj)


def max_degree(g: Graph) -> int:
    return max((nb.bit_count() for nb in g.adj), default=0)


def odd_components(g: Graph, s: Iterable[int] | int = 0) -> int:
    """o(G - S): number of odd-order components after deleting ``S``."""
    rest = g.full_mask & ~to_mask(s)
    return sum(c.bit_count() & 1 for c in component_masks(g, rest))


def isolated_vertices(g: Graph, s: Iterable[int] | int = 0) -> int:
    """i(G - S): number of isolated vertices after deleting ``S``."""
    rest = g.full_mask & ~to_mask(s)
    return sum(1 for v in mask_vertices(rest) if not g.adj[v] & rest)


def bridges(g: Graph) -> list[Edge]:
    """All cut edges, by an iterative lowpoint depth-first search."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out: list[Edge] = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, g.adj[root])]
        while stack:
            v, parent, todo = stack[-1]
            if todo:
                w_bit = todo & -todo
                stack[-1] = (v, parent, todo ^ w_bit)
                w = w_bit.bit_length() - 1
                if w == parent:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, g.adj[w]))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.append((min(v, parent), max(v, parent)))
    return sorted(out)
