"""
Tests for pegsets, I_p^n and G_4^n
"""
from __future__ import absolute_import

import itertools

import networkx as nx
import numpy
import pytest

from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError
from HanoiBench.Graphs import pegsets, separators, state_space
from HanoiBench.Graphs.pegsets import Pegset
from . import test_utils as u

#============================ fixtures ========================================

@pytest.fixture(params=[(4, 3), (4, 5), (5, 4)])
def regular_params(request):
    return request.param

#============================ tests ===========================================

def test_regular_counts():
    assert pegsets.regular_pegset_count(4, 3) == 12
    assert pegsets.regular_pegset_count(4, 5) == 40
    assert pegsets.regular_pegset_count(5, 4) == 120
    assert pegsets.regular_pegset_count(3, 4) == 1
    for (p, n) in [(4, 3), (4, 5), (4, 7), (5, 4), (6, 5)]:
        found = pegsets.enumerate_regular_pegsets(p, n)
        assert len(found) == pegsets.regular_pegset_count(p, n)
        assert len(set(found)) == len(found)
        assert all(ps.is_regular() for ps in found)

def test_unsupported_shape():
    with pytest.raises(ParameterError):
        pegsets.enumerate_regular_pegsets(4, 4)
    with pytest.raises(ParameterError):
        pegsets.frozen_size(2, 3)

def test_pegset_validation():
    with pytest.raises(ParameterError):
        Pegset(4, 3, [(0, [1]), (1, [1])])
    with pytest.raises(ParameterError):
        Pegset(4, 3, [(0, [1]), (0, [2])])
    with pytest.raises(ParameterError):
        Pegset(4, 3, [(4, [1])])
    with pytest.raises(ParameterError):
        Pegset(4, 3, [(0, [3])])

def test_pegset_rendering():
    ps = Pegset(5, 4, {0: [2], 3: [0]})
    assert str(ps) == u'1:{3}|4:{1}'
    assert ps.to_json() == {
        u'p': 5, u'n': 4,
        u'frozen': [{u'peg': 1, u'disks': [3]}, {u'peg': 4, u'disks': [1]}],
    }
    assert Pegset.from_json(ps.to_json()) == ps
    assert ps.free_pegs == [1, 2, 4]
    assert ps.unfrozen_disks == [1, 3]

def test_membership():
    ps = Pegset(4, 3, [(0, [1])])
    members = pegsets.pegset_members(ps)
    # disk 2 on peg 1, disks 1 and 3 free among pegs 2..4
    assert len(members) == 9
    for code in range(4 ** 3):
        cfg = state_space.Configuration.decode(code, 4, 3)
        assert ps.contains(cfg) == (code in members)

def test_adjacency_matches_member_intersection(regular_params):
    (p, n) = regular_params
    found = pegsets.enumerate_regular_pegsets(p, n)
    for (a, b) in itertools.combinations(found, 2):
        assert pegsets.regular_adjacent(a, b) == u.brute_intersection(a, b), (a, b)
        shared = pegsets.shared_configuration(a, b)
        assert (shared is not None) == u.brute_intersection(a, b)
        if shared is not None:
            assert a.contains(shared) and b.contains(shared)

def test_adjacency_rejects_irregular():
    with pytest.raises(ParameterError):
        pegsets.regular_adjacent(Pegset(4, 3, []), Pegset(4, 3, [(0, [1])]))

def test_intersection_graph(regular_params):
    (p, n) = regular_params
    pg = pegsets.build_intersection_graph(p, n)
    assert pg.number_of_nodes() == pegsets.regular_pegset_count(p, n)
    assert GraphCore.is_connected(pg.graph)
    for (i, ps) in enumerate(pg.pegsets):
        assert pg.node_of(ps) == i
    # vertex-transitive, so every vertex has the same degree
    assert len(set(dict(pg.graph.degree()).values())) == 1

def test_swap_automorphisms():
    pg = pegsets.build_intersection_graph(4, 5)
    for (i, j) in itertools.combinations(range(5), 2):
        mapping = pegsets.graph_map(pg, lambda ps: pegsets.swap_automorphism(ps, i, j))
        assert pegsets.is_automorphism(pg, mapping)
    with pytest.raises(ParameterError):
        pegsets.swap_automorphism(pg.pegsets[0], 0, 5)

def test_peg_relabel_automorphism():
    pg = pegsets.build_intersection_graph(4, 5)
    mapping = pegsets.graph_map(pg, lambda ps: pegsets.peg_relabel(ps, [1, 2, 3, 0]))
    assert pegsets.is_automorphism(pg, mapping)
    with pytest.raises(ParameterError):
        pegsets.peg_relabel(pg.pegsets[0], [0, 0, 1, 2])

def test_is_automorphism_rejects_non_edges():
    pg = pegsets.build_intersection_graph(4, 3)
    # swap two vertices only: some edge lands on a non-edge
    (a, b) = (0, 1)
    while pg.graph.has_edge(a, b) or sorted(pg.graph[a]) == sorted(pg.graph[b]):
        b += 1
    mapping = dict((i, i) for i in pg.graph.nodes())
    (mapping[a], mapping[b]) = (b, a)
    assert not pegsets.is_automorphism(pg, mapping)

def test_orbit_is_everything():
    for (p, n) in [(4, 5), (5, 4)]:
        found = pegsets.enumerate_regular_pegsets(p, n)
        assert pegsets.orbit(found[0]) == set(found)

def test_pegset_paths():
    rng = numpy.random.RandomState(7)
    for n in (3, 5, 7):
        found = pegsets.enumerate_regular_pegsets(4, n)
        for _ in range(40):
            (a, b) = [found[i] for i in rng.randint(len(found), size=2)]
            path = pegsets.pegset_path(a, b)
            if a == b:
                assert path == []
                continue
            assert path[-1] == b
            assert len(path) <= pegsets.path_bound(n)
            for (x, y) in zip([a] + path, path):
                assert pegsets.regular_adjacent(x, y)

def test_pegset_path_between_neighbours():
    found = pegsets.enumerate_regular_pegsets(4, 5)
    a = found[0]
    b = [ps for ps in found if pegsets.regular_adjacent(a, ps)][0]
    assert pegsets.pegset_path(a, b) == [b]

def test_configuration_to_pegsets(regular_params):
    (p, n) = regular_params
    best = 0
    for code in range(p ** n):
        cfg   = state_space.Configuration.decode(code, p, n)
        found = pegsets.pegsets_of_config(cfg)
        for ps in found:
            assert ps.contains(cfg)
        best = max(best, len(found))
    assert best == pegsets.bounds_f(p, n)

def test_bounds_f():
    assert pegsets.bounds_f(4, 5) == 2
    assert pegsets.bounds_f(4, 3) == 3
    assert pegsets.bounds_f(5, 4) == 6
    assert pegsets.bounds_f(5, 7) == 3

def test_pegsets_cover_every_configuration():
    found = pegsets.enumerate_regular_pegsets(4, 3)
    assert pegsets.configs_of_pegsets(found) <= frozenset(range(4 ** 3))
    for ps in found:
        assert pegsets.pegset_members(ps) <= pegsets.configs_of_pegsets(found)

def test_g4():
    for n in (3, 5, 7):
        pg = pegsets.build_g4(n)
        assert pg.number_of_nodes() == pegsets.g4_vertex_count(n)
    assert pegsets.g4_vertex_count(5) == 64
    with pytest.raises(ParameterError):
        pegsets.build_g4(2)

def test_g4_configuration_bound():
    (p, n) = (4, 5)
    for code in range(p ** n):
        cfg   = state_space.Configuration.decode(code, p, n)
        found = pegsets.pegsets_of_config(cfg, family=pegsets.FAMILY_G4)
        assert len(found) <= 4
        for ps in found:
            assert ps.contains(cfg)
    with pytest.raises(ParameterError):
        pegsets.pegsets_of_config(state_space.Configuration((0, 0, 0), 3), family=pegsets.FAMILY_G4)
    with pytest.raises(ParameterError):
        pegsets.pegsets_of_config(state_space.Configuration((0, 0, 0), 4), family=u'other')

def test_members_induce_three_peg_hanoi(regular_params):
    (p, n) = regular_params
    g = state_space.build_hanoi(p, n)
    for ps in pegsets.enumerate_regular_pegsets(p, n):
        sub = g.subgraph(pegsets.pegset_members(ps))
        assert nx.is_connected(sub), ps
        assert nx.is_isomorphic(sub, state_space.build_hanoi(3, len(ps.unfrozen_disks))), ps

@pytest.mark.parametrize('n', [3, 5])
def test_g4_agrees_with_intersection_graph_on_regular_pegsets(n):
    g4  = pegsets.build_g4(n)
    ipn = pegsets.build_intersection_graph(4, n)
    for (a, b) in itertools.combinations(ipn.pegsets, 2):
        assert g4.graph.has_edge(g4.node_of(a), g4.node_of(b)) == \
            ipn.graph.has_edge(ipn.node_of(a), ipn.node_of(b)), (a, b)

def test_expansion_of_ipn_is_positive():
    assert separators.vertex_expansion(pegsets.build_intersection_graph(4, 3).graph) > 0
