"""
Tests for the shared graph carrier: traversal, export and import
"""
from __future__ import absolute_import

import networkx as nx
import pytest

from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError
from HanoiBench.Graphs import fractal, state_space

#============================ tests ===========================================

def test_diameter_agrees_with_networkx():
    for g in [nx.petersen_graph(), nx.cycle_graph(7), nx.path_graph(5), nx.complete_graph(4)]:
        assert GraphCore.diameter(g) == nx.diameter(g)

def test_disconnected_graph():
    g = nx.Graph([(0, 1), (2, 3)])
    assert GraphCore.diameter(g) == GraphCore.INFINITY
    assert GraphCore.bfs_distance(g, 0, 3) == GraphCore.INFINITY
    assert not GraphCore.is_connected(g)
    assert [sorted(c) for c in GraphCore.components(g)] == [[0, 1], [2, 3]]

def test_components_with_removed_vertices():
    g = nx.path_graph(7)
    comps = GraphCore.components(g, removed=set([2, 4]))
    assert [sorted(c) for c in comps] == [[0, 1], [3], [5, 6]]
    comps = GraphCore.components(g, removed=set([3]), within=range(2, 6))
    assert [sorted(c) for c in comps] == [[2], [4, 5]]

def test_invalid_vertex():
    with pytest.raises(ParameterError):
        GraphCore.bfs_distance(nx.path_graph(3), 0, 7)
    with pytest.raises(ParameterError):
        GraphCore.bfs_distance(state_space.build_hanoi(3, 2, implicit=True), 0, 9)

def test_mask_components():
    (nodes, masks) = GraphCore.indexed_masks(nx.path_graph(5))
    assert nodes == [0, 1, 2, 3, 4]
    assert GraphCore.mask_components(masks, 0b11011) == [0b00011, 0b11000]
    assert GraphCore.popcount(0b1011) == 3

def test_materialize_implicit():
    g = GraphCore.materialize(state_space.build_hanoi(3, 3, implicit=True))
    assert g.number_of_nodes() == 27
    assert g.number_of_edges() == state_space.hanoi_edge_count(3, 3)
    assert str(GraphCore.label_of(g, 0)) == u'111'

def test_edgelist_export_and_import(tmpdir):
    g     = state_space.build_hanoi(3, 2)
    path  = str(tmpdir.join('h32.edgelist'))
    index = GraphCore.write_edgelist(g, path)
    assert sorted(index.values()) == list(range(1, 10))
    with open(path) as f:
        assert f.readline().strip() == u'# vertices=9 edges=12 family=hanoi'
    h = GraphCore.read_edgelist(path)
    assert nx.is_isomorphic(g, h)
    assert sorted(h.nodes()) == list(range(1, 10))

def test_json_export_and_labels(tmpdir):
    s     = fractal.build_sierpinski(2)
    path  = str(tmpdir.join('s2.json'))
    GraphCore.write_edgelist(s.graph, path, fmt=u'json')
    GraphCore.write_labels(s.graph, str(tmpdir.join('s2.labels.csv')))
    h = GraphCore.read_edgelist(path)
    assert h.number_of_nodes() == 6
    assert h.number_of_edges() == 9
    labels = GraphCore.read_labels(str(tmpdir.join('s2.labels.csv')))
    assert sorted(labels.values()) == sorted(s.graph.nodes())

def test_isolated_vertices_survive_export(tmpdir):
    g = GraphCore.new_graph(u'test', {})
    g.add_nodes_from(range(4))
    g.add_edge(0, 1)
    path = str(tmpdir.join('iso.edgelist'))
    GraphCore.write_edgelist(g, path)
    assert GraphCore.read_edgelist(path).number_of_nodes() == 4

def test_malformed_edgelist(tmpdir):
    path = tmpdir.join('bad.edgelist')
    path.write('# vertices=3 edges=1\n1 x\n')
    with pytest.raises(ParameterError):
        GraphCore.read_edgelist(str(path))
    path.write('1 2\n')
    with pytest.raises(ParameterError):
        GraphCore.read_edgelist(str(path))
    path.write('# vertices=2 edges=1\n1 5\n')
    with pytest.raises(ParameterError):
        GraphCore.read_edgelist(str(path))

def test_unknown_export_format(tmpdir):
    with pytest.raises(ParameterError):
        GraphCore.write_edgelist(nx.path_graph(2), str(tmpdir.join('x')), fmt=u'gml')
