#!/usr/bin/python
"""
\brief Uniform graph carrier shared by every family.

A graph is either a networkx.Graph (materialized) or an ImplicitGraph which
serves neighbors on demand. The traversal helpers below accept both.

Materialized graphs carry:
- g.graph['family'], g.graph['params']
- a 'label' attribute per vertex (the domain object, rendered by str())
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import collections
import csv
import json

import networkx as nx

from . import BenchLog
from . import BenchSettings
from .BenchErrors import ParameterError

# =========================== defines =========================================

INFINITY = float(u'inf')

# outcome of every verifier: ok flag, the verified value (width, Separation,
# ...) and the itemized violations
Verdict = collections.namedtuple(u'Verdict', [u'ok', u'value', u'violations'])

# =========================== helpers =========================================

def vertex_key(v):
    # vertices of one graph share a type; the type name keeps mixed sets sortable
    return (type(v).__name__, v)

def sorted_vertices(g):
    return sorted(g.nodes(), key=vertex_key)

def check_materialization(count, family):
    settings = BenchSettings.BenchSettings()
    limit    = settings.cap(u'materialization')
    if count > limit:
        BenchLog.BenchLog().log(
            BenchLog.LOG_CAP_EXCEEDED,
            {
                u'cap':       u'materialization',
                u'limit':     limit,
                u'requested': count,
            }
        )
    settings.check_cap(
        u'materialization',
        count,
        hint=u'use implicit=True to serve {0} neighbors on demand'.format(family),
    )

def new_graph(family, params):
    g = nx.Graph()
    g.graph[u'family'] = family
    g.graph[u'params'] = dict(params)
    return g

def announce(g):
    """log a freshly built graph and hand it back"""
    BenchLog.BenchLog().log(
        BenchLog.LOG_GRAPH_BUILT,
        {
            u'family':   g.graph.get(u'family'),
            u'params':   g.graph.get(u'params'),
            u'vertices': g.number_of_nodes(),
            u'edges':    g.number_of_edges(),
        }
    )
    return g

# =========================== body ============================================

class ImplicitGraph(object):
    """
    Graph exposed through a neighbor function.

    Subclasses implement neighbors(v), has_node(v), nodes() and label(v).
    """

    def __init__(self, family, params, vertex_count):
        self.graph        = {u'family': family, u'params': dict(params)}
        self.vertex_count = vertex_count

    def number_of_nodes(self):
        return self.vertex_count

    def __len__(self):
        return self.vertex_count

    def __contains__(self, v):
        return self.has_node(v)

    def degree(self, v):
        return len(list(self.neighbors(v)))

    def neighbors(self, v):
        raise NotImplementedError()

    def has_node(self, v):
        raise NotImplementedError()

    def nodes(self):
        raise NotImplementedError()

    def label(self, v):
        return v

def label_of(g, v):
    if isinstance(g, ImplicitGraph):
        return g.label(v)
    return g.nodes[v].get(u'label', v)

def _check_vertex(g, v):
    if not g.has_node(v):
        raise ParameterError(u'invalid vertex id {0!r}'.format(v))

def bfs_distances(g, source, allowed=None):
    """
    Distances from source.

    :param allowed: optional vertex set; the search never leaves it
    """
    _check_vertex(g, source)
    dist  = {source: 0}
    queue = collections.deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in dist:
                continue
            if allowed is not None and w not in allowed:
                continue
            dist[w] = dist[u] + 1
            queue.append(w)
    return dist

def bfs_distance(g, u, v):
    """exact shortest-path length, INFINITY when v is unreachable"""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        return 0
    dist  = {u: 0}
    queue = collections.deque([u])
    while queue:
        x = queue.popleft()
        for w in g.neighbors(x):
            if w in dist:
                continue
            if w == v:
                return dist[x] + 1
            dist[w] = dist[x] + 1
            queue.append(w)
    return INFINITY

def eccentricity(g, v):
    dist = bfs_distances(g, v)
    if len(dist) < g.number_of_nodes():
        return INFINITY
    return max(dist.values())

def diameter(g, sources=None):
    """
    All-pairs BFS diameter; INFINITY on a disconnected graph.

    :param sources: restrict the outer loop (vertex-transitive families)
    """
    if g.number_of_nodes() == 0:
        return 0
    if sources is None:
        sources = g.nodes()
    best = 0
    for v in sources:
        e = eccentricity(g, v)
        if e == INFINITY:
            return INFINITY
        best = max(best, e)
    return best

def components(g, removed=frozenset(), within=None):
    """
    Connected components of g - removed (optionally restricted to within),
    sorted by their smallest vertex.
    """
    if within is None:
        pool = [v for v in g.nodes() if v not in removed]
    else:
        pool = [v for v in within if v not in removed]
    allowed = set(pool)
    seen    = set()
    result  = []
    for v in pool:
        if v in seen:
            continue
        comp = set(bfs_distances(g, v, allowed=allowed))
        seen.update(comp)
        result.append(comp)
    result.sort(key=lambda c: vertex_key(min(c, key=vertex_key)))
    return result

def is_connected(g, within=None):
    if within is None:
        within = list(g.nodes())
    within = list(within)
    if not within:
        return True
    return len(bfs_distances(g, within[0], allowed=set(within))) == len(within)

def indexed_masks(g):
    """
    (sorted vertices, adjacency bitmasks) for the exhaustive searches; bit i
    stands for the i-th sorted vertex, loops are dropped
    """
    nodes = sorted_vertices(g)
    index = dict((v, i) for (i, v) in enumerate(nodes))
    masks = [0] * len(nodes)
    for (u, v) in g.edges():
        if u == v:
            continue
        masks[index[u]] |= 1 << index[v]
        masks[index[v]] |= 1 << index[u]
    return (nodes, masks)

def popcount(mask):
    return bin(mask).count(u'1')

def mask_components(masks, free):
    """components (as bitmasks) of the vertices in free, by lowest bit"""
    result = []
    while free:
        low   = free & -free
        comp  = low
        front = low
        while front:
            step = 0
            f    = front
            while f:
                bit   = f & -f
                f    ^= bit
                step |= masks[bit.bit_length() - 1]
            front = step & free & ~comp
            comp |= front
        result.append(comp)
        free &= ~comp
    return result

def materialize(g):
    """networkx copy of an implicit graph"""
    if not isinstance(g, ImplicitGraph):
        return g
    check_materialization(g.number_of_nodes(), g.graph[u'family'])
    h = new_graph(g.graph[u'family'], g.graph[u'params'])
    for v in g.nodes():
        h.add_node(v, label=g.label(v))
    for v in g.nodes():
        for w in g.neighbors(v):
            h.add_edge(v, w)
    return h

#=== export / import

def export_index(g):
    """1-indexed export ids, in sorted vertex order"""
    return dict((v, i + 1) for (i, v) in enumerate(sorted_vertices(g)))

def write_edgelist(g, path, fmt=u'edgelist'):
    """
    Write g and return the export index.

    edgelist: header '# vertices=V edges=E family=F' then 'u v' lines
    json:     {family, params, vertices: [labels], edges: [[u, v], ...]}
    """
    index = export_index(g)
    edges = sorted(
        tuple(sorted((index[u], index[v]))) for (u, v) in g.edges()
    )
    with open(path, u'w') as f:
        if fmt == u'edgelist':
            f.write(u'# vertices={0} edges={1} family={2}\n'.format(
                len(index), len(edges), g.graph.get(u'family'))
            )
            for (u, v) in edges:
                f.write(u'{0} {1}\n'.format(u, v))
        elif fmt == u'json':
            json.dump(
                {
                    u'family':   g.graph.get(u'family'),
                    u'params':   g.graph.get(u'params'),
                    u'vertices': [str(label_of(g, v)) for v in sorted_vertices(g)],
                    u'edges':    [list(e) for e in edges],
                },
                f,
                sort_keys=True,
            )
            f.write(u'\n')
        else:
            raise ParameterError(u'unknown format "{0}"'.format(fmt))
    return index

def write_labels(g, path, column=u'label'):
    with open(path, u'w') as f:
        writer = csv.writer(f, lineterminator=u'\n')
        writer.writerow([u'id', column])
        for (i, v) in enumerate(sorted_vertices(g)):
            writer.writerow([i + 1, str(label_of(g, v))])

def read_edgelist(path):
    """
    Read an edge list (or the json form) into a networkx graph on 1..V.
    """
    with open(path, u'r') as f:
        text = f.read()
    g = nx.Graph()
    if text.lstrip().startswith(u'{'):
        data = json.loads(text)
        g.graph[u'family'] = data.get(u'family')
        g.add_nodes_from(range(1, len(data[u'vertices']) + 1))
        g.add_edges_from(tuple(e) for e in data[u'edges'])
        return g

    header = None
    for (lineno, line) in enumerate(text.splitlines()):
        line = line.strip()
        if not line:
            continue
        if line.startswith(u'#'):
            fields = dict(
                item.split(u'=', 1) for item in line[1:].split() if u'=' in item
            )
            if u'vertices' in fields:
                header = fields
            continue
        try:
            (u, v) = [int(x) for x in line.split()]
        except ValueError:
            raise ParameterError(
                u'{0}:{1}: malformed edge line "{2}"'.format(path, lineno + 1, line)
            )
        g.add_edge(u, v)
    if header is None:
        raise ParameterError(u'{0}: missing "# vertices=" header'.format(path))
    g.graph[u'family'] = header.get(u'family')
    g.add_nodes_from(range(1, int(header[u'vertices']) + 1))
    if g.number_of_nodes() != int(header[u'vertices']):
        raise ParameterError(u'{0}: vertex ids out of range'.format(path))
    return g

def read_labels(path):
    """id -> label string"""
    with open(path, u'r') as f:
        rows = list(csv.reader(f))
    return dict((int(row[0]), row[1]) for row in rows[1:] if row)
