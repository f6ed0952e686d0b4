"""
Fixed corpus of small graphs for the exhaustive cross-checks.
"""
from __future__ import absolute_import

# =========================== imports =========================================

import networkx as nx
import numpy

from . import fractal
from . import state_space

# =========================== defines =========================================

CORPUS_SEED = 5

# =========================== helpers =========================================

def _integers(g):
    return nx.convert_node_labels_to_integers(g, ordering=u'sorted')

def connected_graphs(max_vertices, min_vertices=1):
    """every connected graph on min..max vertices, from the graph atlas (<= 7)"""
    return [
        g for g in nx.graph_atlas_g()
        if min_vertices <= g.number_of_nodes() <= max_vertices and nx.is_connected(g)
    ]

# =========================== body ============================================

def named_graphs():
    rng    = numpy.random.RandomState(CORPUS_SEED)
    result = [
        (u'K2',           nx.complete_graph(2)),
        (u'K3',           nx.complete_graph(3)),
        (u'K4',           nx.complete_graph(4)),
        (u'K5',           nx.complete_graph(5)),
        (u'P4',           nx.path_graph(4)),
        (u'P5',           nx.path_graph(5)),
        (u'P7',           nx.path_graph(7)),
        (u'C4',           nx.cycle_graph(4)),
        (u'C5',           nx.cycle_graph(5)),
        (u'C6',           nx.cycle_graph(6)),
        (u'C8',           nx.cycle_graph(8)),
        (u'star6',        nx.star_graph(5)),
        (u'K2,3',         nx.complete_bipartite_graph(2, 3)),
        (u'K3,3',         nx.complete_bipartite_graph(3, 3)),
        (u'wheel6',       nx.wheel_graph(6)),
        (u'petersen',     nx.petersen_graph()),
        (u'octahedron',   nx.octahedral_graph()),
        (u'cube',         _integers(nx.hypercube_graph(3))),
        (u'grid3x3',      _integers(nx.grid_2d_graph(3, 3))),
        (u'grid2x4',      _integers(nx.grid_2d_graph(2, 4))),
        (u'prism',        nx.circular_ladder_graph(3)),
        (u'bull',         nx.bull_graph()),
        (u'house',        nx.house_graph()),
        (u'diamond',      nx.diamond_graph()),
        (u'tree7',        nx.balanced_tree(2, 2)),
        (u'lollipop',     nx.lollipop_graph(4, 2)),
        (u'hanoi_3_2',    state_space.build_hanoi(3, 2)),
        (u'sierpinski_2', fractal.build_sierpinski(2).graph),
        (u'sierpinski_3', fractal.build_sierpinski(3).graph),
    ]
    for (i, n) in enumerate((7, 8, 9, 10)):
        g = nx.gnp_random_graph(n, 0.4, seed=int(rng.randint(2 ** 31)))
        result.append((u'gnp{0}_{1}'.format(n, i), g))
    return result

def small_graphs(max_vertices=None):
    """
    (name, graph) pairs: the named graphs, then every connected graph on 5
    vertices
    """
    result = named_graphs()
    for (i, g) in enumerate(connected_graphs(5, min_vertices=5)):
        result.append((u'atlas5_{0}'.format(i), g))
    if max_vertices is not None:
        result = [(name, g) for (name, g) in result if g.number_of_nodes() <= max_vertices]
    return result
