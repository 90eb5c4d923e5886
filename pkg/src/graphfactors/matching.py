"""Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

The solver works on plain adjacency lists so it can run on gadget graphs
larger than the 64-vertex :class:`Graph` cap.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Sequence

from .graph import Edge, Graph, mask_vertices

UNMATCHED = -1


class _Blossom:
    """Search state for augmenting paths from a single root."""

    def __init__(self, nbrs: Sequence[Sequence[int]], mate: list[int]) -> None:
        self.nbrs = nbrs
        self.mate = mate
        self.n = len(nbrs)

    def _lca(self, a: int, b: int) -> int:
        base, mate, parent = self.base, self.mate, self.parent
        seen = [False] * self.n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == UNMATCHED:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def _mark_path(self, v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        base, mate, parent = self.base, self.mate, self.parent
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def search(self, root: int) -> int:
        """Grow an alternating tree from ``root``; return an exposed endpoint or -1.

        After an unsuccessful search ``self.outer`` marks every vertex reachable
        from ``root`` by an even alternating path.
        """
        n, nbrs, mate = self.n, self.nbrs, self.mate
        self.parent = parent = [UNMATCHED] * n
        self.base = base = list(range(n))
        self.outer = outer = [False] * n
        outer[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != UNMATCHED and parent[mate[to]] != UNMATCHED):
                    cur = self._lca(v, to)
                    in_blossom = [False] * n
                    self._mark_path(v, cur, to, in_blossom)
                    self._mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not outer[i]:
                                outer[i] = True
                                queue.append(i)
                elif parent[to] == UNMATCHED:
                    parent[to] = v
                    if mate[to] == UNMATCHED:
                        return to
                    outer[mate[to]] = True
                    queue.append(mate[to])
        return UNMATCHED

    def augment(self, end: int) -> None:
        mate, parent = self.mate, self.parent
        v = end
        while v != UNMATCHED:
            pv = parent[v]
            nxt = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = nxt


def _greedy(nbrs: Sequence[Sequence[int]]) -> list[int]:
    mate = [UNMATCHED] * len(nbrs)
    for v in sorted(range(len(nbrs)), key=lambda x: len(nbrs[x])):
        if mate[v] == UNMATCHED:
            for w in nbrs[v]:
                if mate[w] == UNMATCHED:
                    mate[v], mate[w] = w, v
                    break
    return mate


def max_matching_lists(nbrs: Sequence[Sequence[int]], mate: list[int] | None = None) -> list[int]:
    """Maximum matching on adjacency lists; returns the mate array (-1 = exposed)."""
    mate = _greedy(nbrs) if mate is None else list(mate)
    solver = _Blossom(nbrs, mate)
    for root in range(len(nbrs)):
        if mate[root] == UNMATCHED:
            end = solver.search(root)
            if end != UNMATCHED:
                solver.augment(end)
    return mate


def graph_lists(g: Graph) -> list[list[int]]:
    return [mask_vertices(nb) for nb in g.adj]


def mate_array(g: Graph) -> list[int]:
    return max_matching_lists(graph_lists(g))


def mate_edges(mate: Sequence[int]) -> list[Edge]:
    return sorted((v, w) for v, w in enumerate(mate) if w != UNMATCHED and v < w)


def max_matching(g: Graph) -> list[Edge]:
    """A maximum cardinality matching as a sorted edge list."""
    return mate_edges(mate_array(g))


def matching_number(g: Graph) -> int:
    return sum(1 for w in mate_array(g) if w != UNMATCHED) // 2


def barrier(g: Graph, mate: Sequence[int]) -> int:
    """Gallai-Edmonds barrier A(G) for a maximum matching ``mate``.

    D = vertices reachable from an exposed vertex by an even alternating path,
    A = N(D) - D. Then o(G - A) - |A| equals the deficiency n - 2*nu(G).
    """
    nbrs = graph_lists(g)
    solver = _Blossom(nbrs, list(mate))
    d_mask = 0
    for root in range(g.n):
        if mate[root] == UNMATCHED and not d_mask >> root & 1:
            solver.search(root)
            for v, flag in enumerate(solver.outer):
                if flag:
                    d_mask |= 1 << v
    nb = 0
    for v in mask_vertices(d_mask):
        nb |= g.adj[v]
    return nb & ~d_mask


def has_alternating_cycle(g: Graph, mate: Sequence[int]) -> bool:
    """True iff the perfect matching ``mate`` lies on an alternating cycle.

    For each matching edge uv, drop it and look for an augmenting path between
    the now-exposed u and v; such a path closes an alternating cycle with uv.
    """
    lists = graph_lists(g)
    for u, v in mate_edges(mate):
        nbrs = [list(x) for x in lists]
        nbrs[u].remove(v)
        nbrs[v].remove(u)
        m = list(mate)
        m[u] = m[v] = UNMATCHED
        if _Blossom(nbrs, m).search(u) != UNMATCHED:
            return True
    return False


def count_perfect_matchings(g: Graph, cap: int) -> int:
    """``min(#perfect matchings, cap)`` by branching on the most constrained vertex."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    adj = g.adj
    if g.n % 2:
        return 0

    def go(rest: int, budget: int) -> int:
        if not rest:
            return 1
        best_v, best_nb, best_k = -1, 0, 65
        r = rest
        while r:
            low = r & -r
            v = low.bit_length() - 1
            nb = adj[v] & rest
            k = nb.bit_count()
            if k < best_k:
                best_v, best_nb, best_k = v, nb, k
                if k <= 1:
                    break
            r ^= low
        if best_k == 0:
            return 0
        total = 0
        rest_v = rest & ~(1 << best_v)
        for w in mask_vertices(best_nb):
            total += go(rest_v & ~(1 << w), budget - total)
            if total >= budget:
                return total
        return total

    return min(go(g.full_mask, cap), cap)


def brute_force_matching_number(g: Graph) -> int:
    """Matching number by exhaustive recursion over vertex subsets (oracle)."""
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(rest: int) -> int:
        if not rest:
            return 0
        low = rest & -rest
        v = low.bit_length() - 1
        rest_v = rest ^ low
        out = best(rest_v)
        for w in mask_vertices(adj[v] & rest_v):
            out = max(out, 1 + best(rest_v & ~(1 << w)))
        return out

    return best(g.full_mask)
