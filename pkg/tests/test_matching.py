from __future__ import annotations

import networkx as nx
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from graphfactors import max_matching
from graphfactors.graph import Graph, complete, complete_bipartite, cycle, odd_components, petersen, star
from graphfactors.matching import (
    barrier,
    brute_force_matching_number,
    count_perfect_matchings,
    has_alternating_cycle,
    mate_array,
    matching_number,
)


def random_graph(rng, n, p=None) -> Graph:
    upper = np.triu(rng.random((n, n)) < (rng.random() if p is None else p), 1)
    return Graph.from_adjacency(upper | upper.T)


def test_examples():
    assert len(max_matching(cycle(5))) == 2
    assert len(max_matching(star(4))) == 1
    assert len(max_matching(petersen())) == 5
    assert brute_force_matching_number(petersen()) == 5


def test_counts():
    assert count_perfect_matchings(complete(4), 10) == 3
    assert count_perfect_matchings(cycle(6), 10) == 2
    assert count_perfect_matchings(complete_bipartite(3, 3), 10) == 6
    assert count_perfect_matchings(complete(8), 10) == 10
    assert count_perfect_matchings(cycle(5), 10) == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 11), st.integers(0, 2**32 - 1))
def test_blossom_matches_networkx(n, seed):
    g = random_graph(np.random.default_rng(seed), n)
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(g.edges())
    m = max_matching(g)
    assert len(m) == len(nx.max_weight_matching(h, maxcardinality=True))
    used = [v for e in m for v in e]
    assert len(used) == len(set(used)) and all(g.has_edge(u, v) for u, v in m)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_barrier_attains_deficiency(n, seed):
    g = random_graph(np.random.default_rng(seed), n)
    mate = mate_array(g)
    a = barrier(g, mate)
    assert odd_components(g, a) - a.bit_count() == n - 2 * matching_number(g)


def test_alternating_cycle():
    mate = mate_array(cycle(4))
    assert has_alternating_cycle(cycle(4), mate)
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert not has_alternating_cycle(p4, mate_array(p4))
