"""
Tests for tree decompositions, exact treewidth and havens
"""
from __future__ import absolute_import

import networkx as nx
import numpy as np
import pytest

from HanoiBench import GraphCore
from HanoiBench.BenchErrors import CapacityError, ParameterError, VerificationError
from HanoiBench.Graphs import corpus, decomposition, fractal, state_space
from HanoiBench.Graphs.decomposition import TreeDecomposition
from . import test_utils as u

#============================ helpers =========================================

KNOWN_TREEWIDTH = [
    (u'K1',         lambda: nx.complete_graph(1),              0),
    (u'K5',         lambda: nx.complete_graph(5),              4),
    (u'P6',         lambda: nx.path_graph(6),                  1),
    (u'tree',       lambda: nx.balanced_tree(2, 3),            1),
    (u'C7',         lambda: nx.cycle_graph(7),                 2),
    (u'K3,3',       lambda: nx.complete_bipartite_graph(3, 3), 3),
    (u'petersen',   lambda: nx.petersen_graph(),               4),
    (u'octahedron', lambda: nx.octahedral_graph(),             4),
    (u'grid3x3',    lambda: nx.grid_2d_graph(3, 3),            3),
    (u'hanoi_3_2',  lambda: state_space.build_hanoi(3, 2),     2),
]

def path_decomposition(bags):
    t = TreeDecomposition()
    parent = None
    for bag in bags:
        parent = t.add_bag(bag, parent)
    return t

#============================ fixtures ========================================

@pytest.fixture(params=KNOWN_TREEWIDTH, ids=[name for (name, _, _) in KNOWN_TREEWIDTH])
def known_graph(request):
    return request.param

#============================ tests ===========================================

@pytest.mark.parametrize('n', [1, 2, 3, 4, 5, 6])
def test_sierpinski_decomposition(n):
    s = fractal.build_sierpinski(n)
    t = decomposition.sierpinski_decomposition(n)
    verdict = decomposition.validate(s.graph, t)
    assert verdict.ok, verdict.violations
    assert verdict.value == (2 if n == 1 else 4)
    assert len(t) == decomposition.sierpinski_bag_count(n)

def test_exact_treewidth(known_graph):
    (_, build, width) = known_graph
    g = build()
    assert decomposition.exact_treewidth(g) == width
    assert decomposition.treewidth_at_most(g, width)
    assert not decomposition.treewidth_at_most(g, width - 1)

def test_optimal_order_gives_optimal_decomposition(known_graph):
    (_, build, width) = known_graph
    g = build()
    (tw, order) = decomposition.optimal_elimination_order(g)
    t = decomposition.decomposition_from_order(g, order)
    verdict = decomposition.validate(g, t)
    assert verdict.ok, verdict.violations
    assert verdict.value == tw == width

def test_decomposition_of_disconnected_graph():
    g = nx.disjoint_union(nx.cycle_graph(4), nx.complete_graph(3))
    (tw, order) = decomposition.optimal_elimination_order(g)
    assert tw == 2
    assert decomposition.validate(g, decomposition.decomposition_from_order(g, order)).ok

def test_small_sierpinski_treewidth():
    assert decomposition.exact_treewidth(fractal.build_sierpinski(2).graph) == 2
    assert decomposition.exact_treewidth(fractal.build_sierpinski(3).graph) == 3

def test_exact_treewidth_cap(bench):
    bench(diff_caps={'exact_treewidth': 10})
    with pytest.raises(CapacityError):
        decomposition.exact_treewidth(nx.path_graph(11))
    assert decomposition.exact_treewidth(nx.path_graph(11), cap=11) == 1
    with pytest.raises(ParameterError):
        decomposition.exact_treewidth(nx.path_graph(12), cap=11)

def test_validate_reports_uncovered_edge():
    g = nx.path_graph(3)
    t = path_decomposition([[0, 1], [2]])
    verdict = decomposition.validate(g, t)
    assert not verdict.ok
    assert verdict.violations == [u'edge 1-2 is not covered']

def test_validate_reports_missing_vertex():
    g = nx.path_graph(3)
    t = path_decomposition([[0, 1]])
    verdict = decomposition.validate(g, t)
    assert u'vertex 2 is not in any bag' in verdict.violations

def test_validate_reports_broken_subtree():
    g = nx.path_graph(3)
    t = path_decomposition([[0, 1], [1, 2], [0]])
    verdict = decomposition.validate(g, t)
    assert not verdict.ok
    assert any(u'connected subtree' in v for v in verdict.violations)

def test_validate_reports_forest():
    g = nx.path_graph(3)
    t = TreeDecomposition()
    t.add_bag([0, 1])
    t.add_bag([1, 2])
    verdict = decomposition.validate(g, t)
    assert any(v.startswith(u'tree:') for v in verdict.violations)

def test_validate_logs_result(bench):
    bench()
    decomposition.validate(nx.path_graph(3), path_decomposition([[0, 1], [1, 2]]))
    logs = u.read_log_file(filter=['verify.result'])
    assert len(logs) == 1
    assert logs[0]['kind'] == 'decomposition'
    assert logs[0]['passed']

def test_pace_format():
    s     = fractal.build_sierpinski(3)
    t     = decomposition.sierpinski_decomposition(3)
    index = GraphCore.export_index(s.graph)
    text  = t.to_pace(index, len(index))
    assert text.splitlines()[0] == u's td {0} 5 {1}'.format(len(t), len(index))

    h = nx.relabel_nodes(s.graph, index)
    verdict = decomposition.validate(h, TreeDecomposition.from_pace(text))
    assert verdict.ok, verdict.violations
    assert verdict.value == 4

def test_pace_cycle_is_reported():
    text = u's td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 1 3\n1 2\n2 3\n3 1\n'
    t = TreeDecomposition.from_pace(text)
    verdict = decomposition.validate(nx.cycle_graph([1, 2, 3]), t)
    assert any(u'closes a cycle' in v for v in verdict.violations)

def test_pace_malformed():
    with pytest.raises(ParameterError):
        TreeDecomposition.from_pace(u'b 1 1 2\n')
    with pytest.raises(ParameterError):
        TreeDecomposition.from_pace(u's td 2 2 2\nb 1 1 2\n')
    with pytest.raises(ParameterError):
        TreeDecomposition.from_pace(u's td 1 2 2\nb x 1 2\n')

def test_json_format():
    s = fractal.build_sierpinski(3)
    t = decomposition.sierpinski_decomposition(3)
    data = t.to_json()
    assert data['width'] == 4
    assert decomposition.validate(s.graph, TreeDecomposition.from_json(data)).ok

@pytest.mark.parametrize('n', [2, 3, 4, 5, 6])
def test_lift_to_hanoi(n):
    s      = fractal.build_sierpinski(n)
    model  = fractal.embed_hanoi_minor(s)
    lifted = decomposition.lift_through_minor(decomposition.sierpinski_decomposition(n), model)
    verdict = decomposition.validate(model.pattern, lifted)
    assert verdict.ok, verdict.violations
    assert verdict.value <= 4

def test_lift_rejects_invalid_host_decomposition():
    s     = fractal.build_sierpinski(3)
    model = fractal.embed_hanoi_minor(s)
    t     = path_decomposition([list(s.graph.nodes())[:3]])
    with pytest.raises(VerificationError) as excinfo:
        decomposition.lift_through_minor(t, model)
    assert excinfo.value.exit_code == 1

def test_haven_matches_treewidth():
    for (name, g) in corpus.small_graphs(max_vertices=7):
        tw = decomposition.exact_treewidth(g)
        assert decomposition.haven_order_at_least(g, tw + 1).robber_wins, name
        assert not decomposition.haven_order_at_least(g, tw + 2).robber_wins, name

def test_haven_trace():
    query = decomposition.haven_order_at_least(nx.cycle_graph(5), 3)
    assert query.robber_wins
    assert query.outcome == decomposition.ROBBER_WINS
    # with no cop down the robber holds the whole cycle
    assert query.trace[()] == [tuple(range(5))]

def test_haven_caps():
    with pytest.raises(CapacityError):
        decomposition.haven_order_at_least(nx.path_graph(11), 2)
    with pytest.raises(CapacityError):
        decomposition.haven_order_at_least(nx.path_graph(5), 7)
    assert decomposition.haven_order_at_least(nx.path_graph(11), 2, vertex_cap=11).robber_wins

def test_pace_header_must_match_bags():
    # largest bag has 2 vertices
    with pytest.raises(ParameterError):
        TreeDecomposition.from_pace(u's td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n')
    # vertex 3 beyond the announced 2
    with pytest.raises(ParameterError):
        TreeDecomposition.from_pace(u's td 2 2 2\nb 1 1 2\nb 2 2 3\n1 2\n')
    with pytest.raises(ParameterError):
        TreeDecomposition.from_pace(u's td 2 2\nb 1 1 2\nb 2 2 3\n1 2\n')

def test_lift_through_identity_model():
    g = nx.path_graph(4)
    t = path_decomposition([[0, 1], [1, 2], [2, 3]])
    model = fractal.MinorModel(
        g, g, dict((v, [v]) for v in g), dict(((a, b), (a, b)) for (a, b) in g.edges())
    )
    lifted = decomposition.lift_through_minor(t, model)
    assert list(lifted.bags.values()) == list(t.bags.values())
    assert lifted.parents == t.parents

def test_lift_through_single_branch_set():
    host = nx.cycle_graph(5)
    (_, order) = decomposition.optimal_elimination_order(host)
    t = decomposition.decomposition_from_order(host, order)
    pattern = nx.Graph()
    pattern.add_node(0)
    model = fractal.MinorModel(host, pattern, {0: list(host.nodes())}, {})
    lifted = decomposition.lift_through_minor(t, model)
    verdict = decomposition.validate(pattern, lifted)
    assert verdict.ok, verdict.violations
    assert verdict.value == 0
    assert len(lifted) == 1

@pytest.mark.parametrize('seed', range(1, 11))
def test_lift_through_random_contraction(seed):
    rng  = np.random.RandomState(seed)
    host = nx.gnp_random_graph(9, 0.35, seed=seed)
    (tw, order) = decomposition.optimal_elimination_order(host)
    t = decomposition.decomposition_from_order(host, order)

    classes = nx.utils.UnionFind(host.nodes())
    for (a, b) in host.edges():
        if rng.rand() < 0.4:
            classes.union(a, b)
    rep     = dict((v, classes[v]) for v in host.nodes())
    dropped = set(r for r in set(rep.values()) if rng.rand() < 0.2)

    branch_sets = {}
    for (v, r) in rep.items():
        if r not in dropped:
            branch_sets.setdefault(r, []).append(v)
    pattern = nx.Graph()
    pattern.add_nodes_from(branch_sets)
    witnesses = {}
    for (a, b) in host.edges():
        (ra, rb) = (rep[a], rep[b])
        if ra != rb and ra in branch_sets and rb in branch_sets:
            pattern.add_edge(ra, rb)
            witnesses[(ra, rb)] = (a, b)
            witnesses.pop((rb, ra), None)
    model = fractal.MinorModel(host, pattern, branch_sets, witnesses)

    lifted  = decomposition.lift_through_minor(t, model)
    verdict = decomposition.validate(pattern, lifted)
    assert verdict.ok, verdict.violations
    assert verdict.value <= tw
