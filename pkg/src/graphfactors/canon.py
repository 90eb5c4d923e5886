"""Canonical labelling for small graphs (order <= 10).

The search refines the vertex partition by neighbour counts until it is
equitable, then individualises vertices of the first non-singleton cell and
recurses. Every leaf gives a vertex ordering; the canonical form is the
ordering whose upper-triangle bit string is lexicographically smallest. Cell
order is decided by label-free signatures only, so isomorphic graphs explore
identical sets of leaves.
"""

from __future__ import annotations

from .errors import CapacityError
from .graph import Graph
from .graph6 import write_graph6

MAX_CANON_ORDER = 10


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _uniform(adj: tuple[int, ...], cells: list[list[int]]) -> bool:
    # every cell pair is fully joined or fully disjoint: all leaves coincide
    masks = [sum(1 << v for v in c) for c in cells]
    for i, cell in enumerate(cells):
        for j, m in enumerate(masks):
            size = len(cells[j]) - (1 if i == j else 0)
            for v in cell:
                k = (adj[v] & m).bit_count()
                if k != 0 and k != size:
                    return False
    return True


def _leaf_bits(adj: tuple[int, ...], order: list[int]) -> int:
    bits = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            bits = bits << 1 | (row >> order[i] & 1)
    return bits


def canonical_order(g: Graph) -> list[int]:
    """Vertex ordering (position -> original vertex) of the canonical form."""
    if g.n > MAX_CANON_ORDER:
        raise CapacityError(f"canonical form limited to order <= {MAX_CANON_ORDER}, got {g.n}")
    adj = g.adj
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        if len(cells) == g.n or _uniform(adj, cells):
            order = [v for c in cells for v in c]
            bits = _leaf_bits(adj, order)
            if best[0] is None or bits < best[0]:
                best[0], best[1] = bits, order
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[idx]
        tried: list[int] = []
        for v in cell:
            # twins are exchanged by an automorphism; one representative suffices
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search([list(range(g.n))])
    return best[1]


def canonical_form(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_code(g: Graph) -> bytes:
    """graph6 bytes of the canonical form; equal codes iff isomorphic graphs."""
    return write_graph6(canonical_form(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)
