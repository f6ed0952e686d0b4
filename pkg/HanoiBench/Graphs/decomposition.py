"""
Tree decompositions: representation, validation, the Sierpinski
construction, lifting through minor models, and the small-graph oracles
(exact treewidth, havens).
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import collections
import itertools

import networkx as nx

from HanoiBench import BenchLog
from HanoiBench import BenchSettings
from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError, VerificationError
from HanoiBench.GraphCore import Verdict
from . import fractal

# =========================== defines =========================================

ROBBER_WINS = u'robber-wins'
COPS_WIN    = u'cops-win'

# =========================== body ============================================

class TreeDecomposition(object):
    """
    bags:    node id -> frozenset of graph vertices
    parents: node id -> parent node id, None at the root
    """

    def __init__(self):
        self.bags    = collections.OrderedDict()
        self.parents = {}
        self.extra_edges = []   # tree edges closing a cycle, kept for validate()

    def add_bag(self, bag, parent=None):
        node = len(self.bags)
        self.bags[node]    = frozenset(bag)
        self.parents[node] = parent
        return node

    @property
    def width(self):
        if not self.bags:
            return -1
        return max(len(bag) for bag in self.bags.values()) - 1

    def __len__(self):
        return len(self.bags)

    def children(self):
        result = collections.defaultdict(list)
        for (node, parent) in self.parents.items():
            if parent is not None:
                result[parent].append(node)
        return result

    def topological(self):
        """nodes, parents before children"""
        kids   = self.children()
        roots  = [node for (node, parent) in self.parents.items() if parent is None]
        order  = []
        queue  = collections.deque(sorted(roots))
        while queue:
            node = queue.popleft()
            order.append(node)
            queue.extend(sorted(kids[node]))
        return order

    #=== serialization

    def to_json(self, index=None):
        index = index or (lambda v: v)
        return {
            u'nodes': [
                {
                    u'id':     node,
                    u'bag':    sorted(index(v) for v in bag),
                    u'parent': self.parents[node],
                }
                for (node, bag) in self.bags.items()
            ],
            u'width': self.width,
        }

    @classmethod
    def from_json(cls, data):
        t = cls()
        for item in data[u'nodes']:
            t.bags[item[u'id']]    = frozenset(item[u'bag'])
            t.parents[item[u'id']] = item[u'parent']
        return t

    def to_pace(self, index, vertex_count):
        """'s td' header, 'b i v1 v2 ...' bag lines, then tree edges"""
        numbering = dict((node, i + 1) for (i, node) in enumerate(self.bags))
        lines = [u's td {0} {1} {2}'.format(len(self.bags), self.width + 1, vertex_count)]
        for (node, bag) in self.bags.items():
            lines.append(u' '.join(
                [u'b', str(numbering[node])] + [str(v) for v in sorted(index[v] for v in bag)]
            ))
        for (node, parent) in self.parents.items():
            if parent is not None:
                lines.append(u'{0} {1}'.format(numbering[parent], numbering[node]))
        return u'\n'.join(lines) + u'\n'

    @classmethod
    def from_pace(cls, text):
        header = None
        bags   = {}
        edges  = []
        for line in text.splitlines():
            fields = line.split()
            if not fields or fields[0] == u'c':
                continue
            try:
                if fields[0] == u's':
                    if fields[1] != u'td':
                        raise ParameterError(u'not a tree decomposition file')
                    header = [int(x) for x in fields[2:5]]
                elif fields[0] == u'b':
                    bags[int(fields[1])] = frozenset(int(x) for x in fields[2:])
                else:
                    edges.append((int(fields[0]), int(fields[1])))
            except (IndexError, ValueError):
                raise ParameterError(u'malformed line "{0}"'.format(line))
        if header is None:
            raise ParameterError(u'missing "s td" header')
        if len(header) != 3:
            raise ParameterError(u'"s td" header needs bag count, width+1 and vertex count')
        if len(bags) != header[0]:
            raise ParameterError(u'header announces {0} bags, found {1}'.format(header[0], len(bags)))
        largest = max([len(bag) for bag in bags.values()] or [0])
        if largest != header[1]:
            raise ParameterError(
                u'header announces bags of at most {0} vertices, largest has {1}'.format(header[1], largest)
            )
        for (node, bag) in sorted(bags.items()):
            for v in sorted(bag):
                if not 1 <= v <= header[2]:
                    raise ParameterError(
                        u'bag {0} holds vertex {1}, header announces {2} vertices'.format(node, v, header[2])
                    )

        t = cls()
        adjacency = collections.defaultdict(list)
        for (a, b) in edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        for node in sorted(bags):
            t.bags[node] = bags[node]
        seen = set()
        for root in sorted(bags):
            if root in seen:
                continue
            t.parents[root] = None
            seen.add(root)
            queue = collections.deque([root])
            while queue:
                a = queue.popleft()
                for b in adjacency[a]:
                    if b == t.parents.get(a):
                        continue
                    if b in seen:
                        if a < b:
                            t.extra_edges.append((a, b))
                        continue
                    seen.add(b)
                    t.parents[b] = a
                    queue.append(b)
        return t

def _tree_violations(t):
    violations = []
    roots = [node for (node, parent) in t.parents.items() if parent is None]
    if t.bags and len(roots) != 1:
        violations.append(u'tree: {0} roots'.format(len(roots)))
    for (node, parent) in t.parents.items():
        if parent is not None and parent not in t.bags:
            violations.append(u'tree: node {0} has unknown parent {1}'.format(node, parent))
    for node in t.bags:
        seen = set()
        walk = node
        while walk is not None and walk in t.bags:
            if walk in seen:
                violations.append(u'tree: cycle through node {0}'.format(node))
                break
            seen.add(walk)
            walk = t.parents.get(walk)
    for (a, b) in t.extra_edges:
        violations.append(u'tree: edge {0}-{1} closes a cycle'.format(a, b))
    return violations

def validate(g, t):
    """
    :returns: Verdict carrying the width when every condition holds,
              otherwise the itemized violations
    """
    violations = _tree_violations(t)

    where = collections.defaultdict(list)
    for (node, bag) in t.bags.items():
        for v in bag:
            if not g.has_node(v):
                violations.append(u'bag {0} holds unknown vertex {1!r}'.format(node, v))
            where[v].append(node)

    for v in GraphCore.sorted_vertices(g):
        if v not in where:
            violations.append(u'vertex {0!r} is not in any bag'.format(v))

    for (u, v) in g.edges():
        if u == v:
            continue
        if not set(where.get(u, ())) & set(where.get(v, ())):
            (a, b) = sorted((u, v), key=GraphCore.vertex_key)
            violations.append(u'edge {0!r}-{1!r} is not covered'.format(a, b))

    if not any(x.startswith(u'tree:') for x in violations):
        for (v, nodes) in where.items():
            tops = [
                node for node in nodes
                if t.parents[node] is None or v not in t.bags[t.parents[node]]
            ]
            if len(tops) != 1:
                violations.append(
                    u'bags containing {0!r} do not form a connected subtree'.format(v)
                )

    violations.sort()
    BenchLog.BenchLog().log(
        BenchLog.LOG_VERIFY_RESULT,
        {u'kind': u'decomposition', u'passed': not violations, u'violations': violations[:20]}
    )
    if violations:
        return Verdict(False, None, violations)
    return Verdict(True, t.width, [])

#=== Sierpinski

def sierpinski_bag_count(n):
    return 2 * 3 ** (n - 1) - 1

def sierpinski_decomposition(n):
    """
    Width-4 decomposition of S_n out of triangular bags {t, lt, rt, l, r} and
    trapezoidal bags {lt, rt, l, lr, r}: a triangle has its top child's
    triangle and its trapezoid as children, a trapezoid has the triangles of
    the left and right children.
    """
    if n < 1:
        raise ParameterError(u'n must be at least 1 (got {0})'.format(n))
    GraphCore.check_materialization(fractal.sierpinski_vertex_count(n), u'sierpinski')

    t     = TreeDecomposition()
    stack = [(u'', n, None)]
    while stack:
        (address, level, parent) = stack.pop()
        corner = dict((c, fractal.corner_id(address, c)) for c in (u'l', u'r', u't'))
        if level == 1:
            t.add_bag(corner.values(), parent)
            continue
        lt = fractal.junction_id(address, u'lt')
        rt = fractal.junction_id(address, u'rt')
        lr = fractal.junction_id(address, u'lr')
        triangle  = t.add_bag([corner[u't'], lt, rt, corner[u'l'], corner[u'r']], parent)
        trapezoid = t.add_bag([lt, rt, corner[u'l'], lr, corner[u'r']], triangle)
        stack.append((address + u'R', level - 1, trapezoid))
        stack.append((address + u'L', level - 1, trapezoid))
        stack.append((address + u'T', level - 1, triangle))
    return t

#=== lifting

def lift_through_minor(t, m):
    """
    Replace every host vertex by the pattern vertex whose branch set holds it
    (dropping the rest); equal neighbouring bags and empty bags are merged
    into their parent.
    """
    check = validate(m.host, t)
    if not check.ok:
        raise VerificationError([u'host decomposition: ' + v for v in check.violations])
    check = fractal.verify_minor_model(m)
    if not check.ok:
        raise VerificationError([u'minor model: ' + v for v in check.violations])

    owner  = m.owner()
    lifted = TreeDecomposition()
    rep    = {}
    for node in t.topological():
        bag    = frozenset(owner[v] for v in t.bags[node] if v in owner)
        parent = t.parents[node]
        if parent is not None:
            up = rep[parent]
            if not bag or bag == lifted.bags[up]:
                rep[node] = up
                continue
            rep[node] = lifted.add_bag(bag, up)
        else:
            rep[node] = lifted.add_bag(bag, None)
    return lifted

#=== exact treewidth

def _as_simple_graph(g):
    h = nx.Graph()
    (nodes, masks) = GraphCore.indexed_masks(g)
    h.add_nodes_from(range(len(nodes)))
    for (i, mask) in enumerate(masks):
        for j in range(i + 1, len(nodes)):
            if mask >> j & 1:
                h.add_edge(i, j)
    return (nodes, h)

def _fillin(graph, nodes):
    count = 0
    for (v1, v2) in itertools.combinations(nodes, 2):
        if v2 not in graph[v1]:
            count += 1
    return count

def _eliminate(graph, v):
    for (a, b) in itertools.combinations(list(graph[v]), 2):
        graph.add_edge(a, b)
    graph.remove_node(v)

def upper_bound(graph):
    """Min-fill: (width, elimination order)."""
    graph = graph.copy()
    dmax  = 0
    order = []
    while len(graph) > 0:
        (_, u) = min((_fillin(graph, graph[u]), u) for u in graph)
        dmax = max(dmax, len(graph[u]))
        _eliminate(graph, u)
        order.append(u)
    return (dmax, order)

def lower_bound(graph):
    """Minor-min-width"""
    graph = graph.copy()
    dmax  = 0
    while len(graph) > 0:
        (deg, u) = min((len(graph[u]), u) for u in graph)
        dmax = max(dmax, deg)
        nb = set(graph[u]) - set([u])
        if nb:
            (_, v) = min((len(set(graph[v]) & nb), v) for v in nb)
            graph = nx.contracted_nodes(graph, v, u, self_loops=False)
        else:
            graph.remove_node(u)
    return dmax

class _EliminationSearch(object):
    """
    Subset search over elimination prefixes. A prefix S can be extended by v
    when Q(S, v), the number of vertices outside S+v reachable from v through
    S, is at most k.
    """

    def __init__(self, masks):
        self.masks = masks
        self.n     = len(masks)
        self.q     = {}

    def q_value(self, s, v):
        key = (s, v)
        if key in self.q:
            return self.q[key]
        reach    = 1 << v
        frontier = 1 << v
        boundary = 0
        while frontier:
            step = 0
            f    = frontier
            while f:
                low  = f & -f
                f   ^= low
                step |= self.masks[low.bit_length() - 1]
            boundary |= step & ~s
            frontier  = step & s & ~reach
            reach    |= frontier
        boundary &= ~(1 << v)
        value = GraphCore.popcount(boundary)
        self.q[key] = value
        return value

    def order_at_most(self, k):
        """an elimination order of width <= k, or None"""
        n = self.n
        if n <= k + 1:
            return list(range(n))
        if k < 0:
            return None
        level  = [0]
        parent = {0: None}
        for _ in range(n):
            nxt = set()
            for s in level:
                if n - GraphCore.popcount(s) <= k + 1:
                    return self._unwind(parent, s)
                for v in range(n):
                    if s >> v & 1:
                        continue
                    t = s | (1 << v)
                    if t in parent:
                        continue
                    if self.q_value(s, v) <= k:
                        parent[t] = (s, v)
                        nxt.add(t)
            if not nxt:
                return None
            level = sorted(nxt)
        return self._unwind(parent, level[0])

    def _unwind(self, parent, s):
        order = []
        walk  = s
        while parent[walk] is not None:
            (walk, v) = parent[walk]
            order.append(v)
        order.reverse()
        order.extend(v for v in range(self.n) if not s >> v & 1)
        return order

def _check_treewidth_cap(g, cap):
    if cap is None:
        BenchSettings.BenchSettings().check_cap(u'exact_treewidth', g.number_of_nodes())
    elif g.number_of_nodes() > cap:
        raise ParameterError(u'{0} vertices over the given cap {1}'.format(g.number_of_nodes(), cap))

def treewidth_at_most(g, k, cap=None):
    """
    Decision version of the subset search. The cap defaults to the exact
    treewidth cap; small k keeps larger graphs tractable, so callers may
    raise it.
    """
    _check_treewidth_cap(g, cap)
    (nodes, masks) = GraphCore.indexed_masks(g)
    if len(nodes) <= k + 1:
        return True
    if k < 0:
        return False
    (_, simple) = _as_simple_graph(g)
    if lower_bound(simple) > k:
        return False
    if upper_bound(simple)[0] <= k:
        return True
    return _EliminationSearch(masks).order_at_most(k) is not None

def optimal_elimination_order(g, cap=None):
    """
    :returns: (treewidth, elimination order of that width), ties broken
              towards lower vertex ids
    """
    _check_treewidth_cap(g, cap)
    (nodes, simple) = _as_simple_graph(g)
    if not nodes:
        return (-1, [])
    (ub, ub_order) = upper_bound(simple)
    lb             = lower_bound(simple)
    (_, masks)     = GraphCore.indexed_masks(g)
    search         = _EliminationSearch(masks)
    for k in range(lb, ub):
        order = search.order_at_most(k)
        if order is not None:
            return (k, [nodes[i] for i in order])
    return (ub, [nodes[i] for i in ub_order])

def exact_treewidth(g, cap=None):
    return optimal_elimination_order(g, cap)[0]

def decomposition_from_order(g, order):
    """
    Tree decomposition of width max |N+(v)| along an elimination order: bag of
    v is v plus its later neighbours in the filled graph, hung below the bag
    of the earliest of them.
    """
    graph = nx.Graph()
    graph.add_nodes_from(g.nodes())
    graph.add_edges_from((u, v) for (u, v) in g.edges() if u != v)
    position = dict((v, i) for (i, v) in enumerate(order))
    bags     = {}
    for v in order:
        later   = [w for w in graph[v] if position[w] > position[v]]
        bags[v] = frozenset([v] + later)
        for (a, b) in itertools.combinations(later, 2):
            graph.add_edge(a, b)

    t    = TreeDecomposition()
    node = {}
    for v in reversed(order):
        later = [w for w in bags[v] if w != v]
        if later:
            up = min(later, key=lambda w: position[w])
            node[v] = t.add_bag(bags[v], node[up])
        elif not t.bags:
            node[v] = t.add_bag(bags[v], None)
        else:
            # new component: hang it under the root
            node[v] = t.add_bag(bags[v], 0)
    return t

#=== havens

class HavenQuery(object):

    def __init__(self, graph, k, outcome, trace=None):
        self.graph   = graph
        self.k       = k
        self.outcome = outcome
        self.trace   = trace or {}

    @property
    def robber_wins(self):
        return self.outcome == ROBBER_WINS

    def __repr__(self):
        return u'HavenQuery(k={0}, {1})'.format(self.k, self.outcome)

def haven_order_at_least(g, k, vertex_cap=None, order_cap=None):
    """
    Helicopter cops and robber with k-1 cops. A move lands or lifts one cop;
    the robber sees a landing coming and may run anywhere in its component
    first. The robber wins iff g has a haven of order k.

    :returns: HavenQuery; on a robber win the trace maps every cop set to the
              components the robber can safely hold
    """
    settings = BenchSettings.BenchSettings()
    if vertex_cap is None:
        settings.check_cap(u'haven_vertices', g.number_of_nodes())
    elif g.number_of_nodes() > vertex_cap:
        raise ParameterError(u'{0} vertices over the given cap {1}'.format(g.number_of_nodes(), vertex_cap))
    if order_cap is None:
        settings.check_cap(u'haven_order', k)
    elif k > order_cap:
        raise ParameterError(u'order {0} over the given cap {1}'.format(k, order_cap))
    if k < 1:
        return HavenQuery(g, k, ROBBER_WINS)

    (nodes, masks) = GraphCore.indexed_masks(g)
    n    = len(nodes)
    cops = k - 1
    full = (1 << n) - 1

    positions = {}
    for size in range(cops + 1):
        for chosen in itertools.combinations(range(n), size):
            x = 0
            for i in chosen:
                x |= 1 << i
            positions[x] = GraphCore.mask_components(masks, full & ~x)

    alive   = set((x, c) for (x, comps) in positions.items() for c in comps)
    changed = True
    while changed:
        changed = False
        for (x, c) in sorted(alive):
            caught = False
            for v in range(n):
                bit = 1 << v
                if x & bit:
                    y = x & ~bit
                    d = [comp for comp in positions[y] if comp & c][0]
                    if (y, d) not in alive:
                        caught = True
                        break
                elif GraphCore.popcount(x) < cops:
                    y       = x | bit
                    replies = [comp for comp in positions[y] if comp & c == comp]
                    if not any((y, r) in alive for r in replies):
                        caught = True
                        break
            if caught:
                alive.discard((x, c))
                changed = True

    def names(mask):
        return tuple(nodes[i] for i in range(n) if mask >> i & 1)

    if any((0, c) in alive for c in positions[0]):
        trace = collections.OrderedDict()
        for x in sorted(positions, key=lambda m: (GraphCore.popcount(m), m)):
            safe = [names(c) for c in positions[x] if (x, c) in alive]
            if safe:
                trace[names(x)] = safe
        return HavenQuery(g, k, ROBBER_WINS, trace)
    return HavenQuery(g, k, COPS_WIN)
