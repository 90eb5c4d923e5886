from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest

from graphfactors import CapacityError, canonical_code, canonical_form, is_isomorphic
from graphfactors.graph import Graph, complete, cycle, path, petersen, star


def test_relabel_invariance():
    p4 = path(4)
    assert canonical_code(p4) == canonical_code(p4.relabel([2, 0, 3, 1]))
    assert canonical_code(cycle(4)) != canonical_code(star(3))


def test_eleven_classes_on_four_vertices():
    codes = {canonical_code(Graph.from_mask(4, m)) for m in range(1 << 6)}
    assert len(codes) == 11


def test_canonical_form_is_isomorphic_and_fixed():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 9))
        upper = np.triu(rng.random((n, n)) < 0.5, 1)
        g = Graph.from_adjacency(upper | upper.T)
        c = canonical_form(g)
        assert canonical_form(c) == c
        perm = [int(x) for x in rng.permutation(n)]
        assert canonical_code(g.relabel(perm)) == canonical_code(g)


def test_agrees_with_networkx_on_random_pairs():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        a, b = (np.triu(rng.random((n, n)) < 0.5, 1) for _ in range(2))
        g, h = Graph.from_adjacency(a | a.T), Graph.from_adjacency(b | b.T)
        ng, nh = nx.Graph(g.edges()), nx.Graph(h.edges())
        ng.add_nodes_from(range(n))
        nh.add_nodes_from(range(n))
        assert is_isomorphic(g, h) == nx.is_isomorphic(ng, nh)


def test_regular_graphs():
    # vertex-transitive inputs exercise the individualisation branch
    pet = petersen()
    assert is_isomorphic(pet, pet.relabel([3, 1, 4, 0, 9, 2, 6, 5, 8, 7]))
    assert not is_isomorphic(complete(4), cycle(4))
    c3c3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(cycle(6), c3c3)


def test_capacity():
    with pytest.raises(CapacityError):
        canonical_code(path(11))


def test_all_labelled_p3s_share_code():
    codes = {canonical_code(path(3).relabel(list(p))) for p in itertools.permutations(range(3))}
    assert len(codes) == 1
