from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from graphfactors import CapacityError, EnumerationSource, ParameterError, Sampler, enumerate_graphs, graph_classes
from graphfactors.enumeration import (
    CONNECTED_COUNTS,
    GRAPH_COUNTS,
    connected_classes,
    connected_flags,
    mask_adjacency,
    near_extremal_graph,
    num_pairs,
    sample_graphs,
)
from graphfactors.graph import Graph, is_connected, min_degree, t_graph


def test_class_counts():
    for n in range(0, 8):
        assert len(graph_classes(n)) == GRAPH_COUNTS[n]
    for n in range(1, 8):
        assert len(connected_classes(n)) == CONNECTED_COUNTS[n]


def test_sources():
    assert len(list(enumerate_graphs(EnumerationSource.internal(4, dedup=True)))) == 11
    assert len(list(enumerate_graphs(EnumerationSource.internal(4, connected_only=True, dedup=True)))) == 6
    assert len(list(enumerate_graphs(EnumerationSource.internal(4)))) == 64
    assert len(list(enumerate_graphs(EnumerationSource.internal(4, connected_only=True)))) == 38
    assert EnumerationSource.internal(7).n == 7 and num_pairs(7) == 21
    with pytest.raises(CapacityError):
        EnumerationSource.internal(8)
    with pytest.raises(ParameterError):
        EnumerationSource("graph6")


def test_graph6_source(fixtures):
    src = EnumerationSource.graph6(fixtures / "graphs4.g6", connected_only=True)
    assert len(list(enumerate_graphs(src))) == 6
    assert src.describe() == "graph6:graphs4.g6[connected]"


def test_fixture_has_all_classes(fixtures):
    graphs = list(enumerate_graphs(EnumerationSource.graph6(fixtures / "graphs8.g6")))
    assert len(graphs) == 12346
    assert sum(map(is_connected, graphs)) == 11117
    # independent check with networkx: a random sample is pairwise non-isomorphic
    rng = np.random.default_rng(0)
    pick = [graphs[i] for i in rng.choice(len(graphs), 60, replace=False)]
    nxg = []
    for g in pick:
        h = nx.Graph()
        h.add_nodes_from(range(8))
        h.add_edges_from(g.edges())
        nxg.append(h)
    for i in range(len(nxg)):
        for j in range(i):
            assert not nx.is_isomorphic(nxg[i], nxg[j])


def test_vectorised_helpers_match_scalar():
    n = 6
    masks = np.arange(0, 1 << num_pairs(n), 97, dtype=np.uint64)
    flags = connected_flags(n, masks)
    adj = mask_adjacency(n, masks)
    for m, f, a in zip(masks, flags, adj):
        g = Graph.from_mask(n, int(m))
        assert f == is_connected(g)
        assert np.array_equal(a, g.adjacency_matrix())


def test_sampler_is_seeded():
    base = t_graph(20, 1, 2)
    s = Sampler(seed=5, count=20)
    a = [(k, g.to_mask()) for k, g in sample_graphs(s, 20, base, 2)]
    b = [(k, g.to_mask()) for k, g in sample_graphs(s, 20, base, 2)]
    assert a == b
    assert [k for k, _ in a[:4]] == ["uniform", "near_extremal", "uniform", "near_extremal"]
    with pytest.raises(ParameterError):
        Sampler(seed=0, count=1, strategy="nope")


def test_near_extremal_keeps_hypothesis():
    rng = np.random.default_rng(1)
    base = t_graph(20, 1, 2)
    for _ in range(30):
        g = near_extremal_graph(rng, base, 3, 2)
        assert is_connected(g) and min_degree(g) >= 2
