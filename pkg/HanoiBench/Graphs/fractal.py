"""
Sierpinski triangle graphs S_n, their links to three-peg Hanoi graphs, and
the octahedron subdivision that pins their treewidth from below.

Vertex ids are canonical addresses. A sub-triangle is addressed by the
letters (L, R, T) of the copies leading to it, and a vertex is either an
outer corner ('/l', '/r', '/t') or a junction '<address>/<lr|lt|rt>' where
two children of the sub-triangle at <address> meet. A corner of a deep
sub-triangle is reduced to the shallowest name it has, so copies share
vertices without a union-find pass.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import itertools
import json

import networkx as nx

from HanoiBench import BenchLog
from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError
from HanoiBench.GraphCore import Verdict
from . import GraphDefines as d
from . import state_space

# =========================== helpers =========================================

def corner_id(address, corner):
    """canonical id of corner `corner` of the sub-triangle at `address`"""
    while address and d.LETTER_OF_CORNER[corner] == address[-1]:
        address = address[:-1]
    if not address:
        return u'/' + corner
    return u'{0}/{1}'.format(address[:-1], d.JUNCTION_OF[(address[-1], corner)])

def junction_id(address, junction):
    return u'{0}/{1}'.format(address, junction)

def addresses(length):
    return [u''.join(letters) for letters in itertools.product(d.LETTERS, repeat=length)]

def sierpinski_vertex_count(n):
    return (3 ** n + 3) // 2

def side_path(address, level, a, b):
    """
    Vertices along the side of the sub-triangle at `address` (of level
    `level`) from its corner a to its corner b.
    """
    if a == b:
        raise ParameterError(u'a side needs two distinct corners')
    if level == 1:
        return [corner_id(address, a), corner_id(address, b)]
    (first, second) = d.SIDE_CHILDREN[frozenset([a, b])]
    # the side from the first child's corner to the second child's corner
    low  = d.CORNER_OF_LETTER[first]
    high = d.CORNER_OF_LETTER[second]
    path = (
        side_path(address + first, level - 1, low, high) +
        side_path(address + second, level - 1, low, high)[1:]
    )
    if a == low:
        return path
    return path[::-1]

def child_orientation(sigma, letter):
    if letter == u'L':
        return {u'l': sigma[u'l'], u'r': sigma[u't'], u't': sigma[u'r']}
    if letter == u'R':
        return {u'l': sigma[u't'], u'r': sigma[u'r'], u't': sigma[u'l']}
    return {u'l': sigma[u'r'], u'r': sigma[u'l'], u't': sigma[u't']}

def _corner_of_peg(sigma, peg):
    for corner in d.CORNERS:
        if sigma[corner] == peg:
            return corner
    raise ParameterError(u'peg {0} is not a three-peg index'.format(peg))

def hanoi_to_sierpinski(code, n):
    """
    Image of a configuration of H_3^n in S_n once every edge moving a disk
    other than the smallest is contracted.
    """
    pegs    = state_space.decode(code, 3, n)
    sigma   = d.TOP_ORIENTATION
    address = u''
    for disk in range(n - 1, 0, -1):
        letter   = d.LETTER_OF_CORNER[_corner_of_peg(sigma, pegs[disk])]
        address += letter
        sigma    = child_orientation(sigma, letter)
    return corner_id(address, _corner_of_peg(sigma, pegs[0]))

# =========================== body ============================================

class SierpinskiGraph(object):

    def __init__(self, n, graph):
        self.level   = n
        self.graph   = graph
        self.corners = dict((c, u'/' + c) for c in d.CORNERS)

    def junctions(self, address=u''):
        """the three junctions of the sub-triangle at address"""
        if self.level - len(address) < 2:
            raise ParameterError(u'a level-1 triangle has no junctions')
        return dict((j, junction_id(address, j)) for j in d.JUNCTIONS)

    def number_of_nodes(self):
        return self.graph.number_of_nodes()

def build_sierpinski(n):
    if n < 1:
        raise ParameterError(u'n must be at least 1 (got {0})'.format(n))
    GraphCore.check_materialization(sierpinski_vertex_count(n), u'sierpinski')

    g = GraphCore.new_graph(u'sierpinski', {u'n': n})
    for address in addresses(n - 1):
        triangle = [corner_id(address, c) for c in d.CORNERS]
        for v in triangle:
            g.add_node(v, label=v)
        for (u, v) in itertools.combinations(triangle, 2):
            g.add_edge(u, v)
    return SierpinskiGraph(n, GraphCore.announce(g))

#=== minor models

class MinorModel(object):
    """
    branch_sets:    pattern vertex -> frozenset of host vertices
    edge_witnesses: sorted pattern edge (u, v) -> host edge (a, b), a in
                    branch_sets[u] and b in branch_sets[v]
    """

    def __init__(self, host, pattern, branch_sets, edge_witnesses):
        self.host           = host
        self.pattern        = pattern
        self.branch_sets    = dict((k, frozenset(v)) for (k, v) in branch_sets.items())
        self.edge_witnesses = dict(edge_witnesses)

    def owner(self):
        """host vertex -> pattern vertex"""
        result = {}
        for (p, branch) in self.branch_sets.items():
            for v in branch:
                result[v] = p
        return result

    def to_json(self, host_index=None, pattern_index=None):
        hi = host_index or (lambda v: v)
        pi = pattern_index or (lambda v: v)
        return {
            u'branch_sets': [
                {u'pattern': pi(p), u'host': sorted(hi(v) for v in branch)}
                for (p, branch) in sorted(
                    self.branch_sets.items(), key=lambda kv: GraphCore.vertex_key(kv[0])
                )
            ],
            u'edge_witnesses': [
                {u'pattern': [pi(u), pi(v)], u'host': [hi(a), hi(b)]}
                for ((u, v), (a, b)) in sorted(self.edge_witnesses.items())
            ],
        }

    @classmethod
    def from_json(cls, data, host, pattern):
        branch_sets = dict(
            (item[u'pattern'], item[u'host']) for item in data[u'branch_sets']
        )
        edge_witnesses = dict(
            (tuple(item[u'pattern']), tuple(item[u'host'])) for item in data[u'edge_witnesses']
        )
        return cls(host, pattern, branch_sets, edge_witnesses)

def _edge_key(u, v):
    return tuple(sorted((u, v), key=GraphCore.vertex_key))

def verify_minor_model(m):
    """
    Checks the three minor-model conditions; violations are returned as data.
    """
    violations = []
    seen       = {}
    for p in GraphCore.sorted_vertices(m.pattern):
        branch = m.branch_sets.get(p)
        if not branch:
            violations.append(u'pattern vertex {0!r} has an empty branch set'.format(p))
            continue
        for v in sorted(branch, key=GraphCore.vertex_key):
            if not m.host.has_node(v):
                violations.append(u'branch set of {0!r} holds unknown host vertex {1!r}'.format(p, v))
            elif v in seen:
                violations.append(
                    u'host vertex {0!r} is shared by the branch sets of {1!r} and {2!r}'.format(
                        v, seen[v], p
                    )
                )
            else:
                seen[v] = p
        members = [v for v in branch if m.host.has_node(v)]
        if members and not GraphCore.is_connected(m.host, within=members):
            violations.append(u'branch set of {0!r} is disconnected'.format(p))

    for (u, v) in m.pattern.edges():
        key = _edge_key(u, v)
        witness = m.edge_witnesses.get(key) or m.edge_witnesses.get((key[1], key[0]))
        if witness is None:
            violations.append(u'pattern edge {0!r} has no witness'.format(key))
            continue
        (a, b) = witness
        ends = (m.branch_sets.get(key[0], ()), m.branch_sets.get(key[1], ()))
        if not ((a in ends[0] and b in ends[1]) or (a in ends[1] and b in ends[0])):
            violations.append(
                u'witness {0!r} of pattern edge {1!r} leaves the branch sets'.format((a, b), key)
            )
        elif not m.host.has_edge(a, b):
            violations.append(
                u'witness {0!r} of pattern edge {1!r} is not a host edge'.format((a, b), key)
            )

    BenchLog.BenchLog().log(
        BenchLog.LOG_VERIFY_RESULT,
        {u'kind': u'minor', u'passed': not violations, u'violations': violations[:20]}
    )
    return Verdict(not violations, None, violations)

def contract_boundary_edges(h):
    """
    Contract every edge of H_3^n that moves a disk other than the smallest.

    :returns: (SierpinskiGraph, MinorModel of S_n in h, branch sets of size <= 2)
    :raises ParameterError: h is not H_3^n
    """
    if h.number_of_nodes() == 0:
        raise ParameterError(u'empty graph')
    n = 0
    while 3 ** n < h.number_of_nodes():
        n += 1
    if n < 1 or 3 ** n != h.number_of_nodes():
        raise ParameterError(u'vertex count {0} is not a power of 3'.format(h.number_of_nodes()))
    for code in range(3 ** n):
        if not h.has_node(code) or set(h.neighbors(code)) != set(state_space.neighbor_codes(code, 3, n)):
            raise ParameterError(u'input is not H_3^{0} (vertex {1!r})'.format(n, code))

    s = build_sierpinski(n)

    branch_sets = {}
    for code in range(3 ** n):
        branch_sets.setdefault(hanoi_to_sierpinski(code, n), set()).add(code)

    edge_witnesses = {}
    quotient       = set()
    for (a, b) in h.edges():
        (x, y) = (hanoi_to_sierpinski(a, n), hanoi_to_sierpinski(b, n))
        if x == y:
            continue
        key = _edge_key(x, y)
        quotient.add(key)
        if key not in edge_witnesses:
            edge_witnesses[key] = (a, b) if key[0] == x else (b, a)

    expected = set(_edge_key(u, v) for (u, v) in s.graph.edges())
    if quotient != expected or set(branch_sets) != set(s.graph.nodes()):
        raise ParameterError(u'contraction of H_3^{0} does not match S_{0}'.format(n))

    return (s, MinorModel(h, s.graph, branch_sets, edge_witnesses))

def embed_hanoi_minor(s):
    """
    Model of H_3^(level-1) inside S_level.

    Built sub-triangle by sub-triangle: the three copies of H_3^(m-1) live in
    the children, each child keeps its corners free, and the branch set of the
    perfect state that sits at a corner reaches a neighbour of that corner. A
    junction shared by two children then joins one side's branch set and
    witnesses the edge to the other side.
    """
    n = s.level - 1
    if n < 1:
        raise ParameterError(u'the host needs level at least 2')
    pattern = state_space.build_hanoi(3, n)
    host    = s.graph

    def build(address, level, sigma):
        disks = level - 1
        if disks == 1:
            junction = {
                u'l': junction_id(address, u'lt'),
                u'r': junction_id(address, u'lr'),
                u't': junction_id(address, u'rt'),
            }
            branch = dict((sigma[c], set([junction[c]])) for c in d.CORNERS)
            edges  = {}
            for (c1, c2) in itertools.combinations(d.CORNERS, 2):
                key = tuple(sorted((sigma[c1], sigma[c2])))
                edges[key] = (junction[c1], junction[c2]) if key[0] == sigma[c1] \
                    else (junction[c2], junction[c1])
            return (branch, edges)

        weight   = 3 ** (disks - 1)
        branch   = {}
        edges    = {}
        children = {}
        for letter in d.LETTERS:
            child_sigma = child_orientation(sigma, letter)
            (cb, ce)    = build(address + letter, level - 1, child_sigma)
            offset      = sigma[d.CORNER_OF_LETTER[letter]] * weight
            children[letter] = (child_sigma, offset)
            for (code, vertices) in cb.items():
                branch[code + offset] = vertices
            for ((u, v), witness) in ce.items():
                edges[(u + offset, v + offset)] = witness

        # the junction where children X and Y meet carries the move of the
        # largest disk between their pegs, smaller disks on the third peg
        for (x, y, j) in ((u'L', u'R', u'lr'), (u'L', u'T', u'lt'), (u'R', u'T', u'rt')):
            third = [c for c in d.CORNERS if d.LETTER_OF_CORNER[c] not in (x, y)][0]
            rest  = state_space.encode((sigma[third],) * (disks - 1), 3)
            u     = rest + children[x][1]
            v     = rest + children[y][1]
            vertex = junction_id(address, j)
            branch[u].add(vertex)
            target = [w for w in host.neighbors(vertex) if w in branch[v]]
            assert target, u'junction {0} misses its neighbour copy'.format(vertex)
            key = (min(u, v), max(u, v))
            edges[key] = (vertex, target[0]) if key[0] == u else (target[0], vertex)
        return (branch, edges)

    (branch, edges) = build(u'', s.level, d.TOP_ORIENTATION)
    return MinorModel(host, pattern, branch, edges)

#=== octahedron subdivision

class SubdivisionWitness(object):
    """
    branch: six host vertices; octahedron vertices 2i and 2i+1 are opposite
    paths:  octahedron edge (i, j) -> host path from branch[i] to branch[j]
    """

    def __init__(self, branch, paths, level=None):
        self.branch = list(branch)
        self.paths  = dict((tuple(k), list(v)) for (k, v) in paths.items())
        self.level  = level

    def vertices(self):
        result = set(self.branch)
        for path in self.paths.values():
            result.update(path)
        return result

    def to_json(self):
        return {
            u'pattern': u'octahedron',
            u'level':   self.level,
            u'branch':  list(self.branch),
            u'paths':   [
                {u'edge': [i, j], u'path': list(self.paths[(i, j)])}
                for (i, j) in sorted(self.paths)
            ],
        }

    @classmethod
    def from_json(cls, data):
        if data.get(u'pattern', u'octahedron') != u'octahedron':
            raise ParameterError(u'unsupported pattern {0!r}'.format(data.get(u'pattern')))
        paths = dict((tuple(item[u'edge']), item[u'path']) for item in data[u'paths'])
        return cls(data[u'branch'], paths, data.get(u'level'))

    def relabel(self, mapping):
        return SubdivisionWitness(
            [mapping[v] for v in self.branch],
            dict((k, [mapping[v] for v in path]) for (k, path) in self.paths.items()),
            self.level,
        )

def load_witness(path):
    with open(path, u'r') as f:
        return SubdivisionWitness.from_json(json.load(f))

def save_witness(w, path):
    with open(path, u'w') as f:
        json.dump(w.to_json(), f, indent=2, sort_keys=True)
        f.write(u'\n')

def verify_subdivision(host, w):
    """
    Exact check of an octahedron subdivision in host (a SierpinskiGraph or
    any graph).
    """
    if isinstance(host, SierpinskiGraph):
        host = host.graph
    violations = []

    if len(w.branch) != 6 or len(set(w.branch)) != 6:
        violations.append(u'need six distinct branch vertices')
    for v in w.branch:
        if not host.has_node(v):
            violations.append(u'branch vertex {0!r} is not in the host'.format(v))

    expected = set(d.OCTAHEDRON_EDGES)
    for key in sorted(set(w.paths) - expected):
        violations.append(u'path for {0!r}, which is not an octahedron edge'.format(key))
    for key in sorted(expected - set(w.paths)):
        violations.append(u'octahedron edge {0!r} has no path'.format(key))

    branch_set = set(w.branch)
    owner      = {}
    for key in sorted(set(w.paths) & expected):
        path = w.paths[key]
        (i, j) = key
        if len(path) < 2 or len(w.branch) != 6 or \
                path[0] != w.branch[i] or path[-1] != w.branch[j]:
            violations.append(u'path {0!r} does not join its branch vertices'.format(key))
            continue
        if len(set(path)) != len(path):
            violations.append(u'path {0!r} repeats a vertex'.format(key))
        for (a, b) in zip(path, path[1:]):
            if not host.has_edge(a, b):
                violations.append(u'path {0!r}: {1!r}-{2!r} is not a host edge'.format(key, a, b))
        for v in path[1:-1]:
            if v in branch_set:
                violations.append(u'path {0!r} passes through branch vertex {1!r}'.format(key, v))
            elif v in owner and owner[v] != key:
                violations.append(
                    u'paths {0!r} and {1!r} share internal vertex {2!r}'.format(owner[v], key, v)
                )
            else:
                owner[v] = key

    BenchLog.BenchLog().log(
        BenchLog.LOG_VERIFY_RESULT,
        {u'kind': u'subdivision', u'passed': not violations, u'violations': violations[:20]}
    )
    return Verdict(not violations, None, violations)

def _hub(address):
    """branch vertices around the level-2 sub-triangle at address"""
    corner = dict((c, corner_id(address, c)) for c in d.CORNERS)
    inner  = dict((j, junction_id(address, j)) for j in d.JUNCTIONS)
    # each corner is opposite the junction it does not touch
    return [
        corner[u'l'], inner[u'rt'],
        corner[u'r'], inner[u'lt'],
        corner[u't'], inner[u'lr'],
    ]

def octahedron_witness(n):
    """
    Deterministic witness for n >= 5: the hub is the sub-triangle LRT of the
    level-5 copy at T..T, and the three outer paths run along sides of
    neighbouring sub-triangles around it.
    """
    if n < 5:
        raise ParameterError(u'S_{0} has no enclosed level-2 sub-triangle'.format(n))
    base   = u'T' * (n - 5)
    hub    = base + u'LRT'
    branch = _hub(hub)
    paths  = {}
    for (i, j) in d.OCTAHEDRON_EDGES:
        paths[(i, j)] = [branch[i], branch[j]]

    def side(suffix, level, a, b):
        return side_path(base + suffix, level, a, b)

    # hub left corner to hub right corner, under the hub
    outer_lr = side(u'LRL', 2, u't', u'r') + side(u'LRR', 2, u'l', u't')[1:]
    # hub right corner to hub top corner, around the central hole
    outer_rt = (
        side(u'LRR', 2, u't', u'r') +
        side(u'R', 4, u'l', u't')[1:] +
        side(u'T', 4, u'r', u'l')[1:] +
        side(u'LT', 3, u't', u'r')[1:]
    )
    # hub left corner to hub top corner, through the left copies
    outer_lt = (
        side(u'LRL', 2, u't', u'l') +
        side(u'LL', 3, u'r', u't')[1:] +
        side(u'LT', 3, u'l', u'r')[1:]
    )
    paths[(0, 2)] = outer_lr
    paths[(2, 4)] = outer_rt
    paths[(0, 4)] = outer_lt
    return SubdivisionWitness(branch, paths, level=n)

def find_octahedron_subdivision(s, budget=d.OCTAHEDRON_SEARCH_BUDGET):
    """
    Best-effort search: hubs are level-2 sub-triangles (all-three-letter
    addresses first, they cannot touch the outer face), the three outer
    paths are routed shortest-first with backtracking.

    :returns: (SubdivisionWitness or None, timed_out)
    """
    host     = s.graph
    explored = [0]

    if s.level < 2:
        return (None, False)
    candidates = addresses(s.level - 2)
    candidates.sort(key=lambda a: (len(set(a)) < 3, a))

    def route(pairs, blocked):
        if not pairs:
            return []
        (a, b) = pairs[0]
        allowed = [v for v in host.nodes() if v not in blocked or v in (a, b)]
        view    = host.subgraph(allowed)
        try:
            for path in nx.shortest_simple_paths(view, a, b):
                explored[0] += 1
                if explored[0] > budget:
                    return None
                if len(path) == 2:
                    continue
                rest = route(pairs[1:], blocked | set(path[1:-1]))
                if rest is not None:
                    return [path] + rest
                if explored[0] > budget:
                    return None
        except nx.NetworkXNoPath:
            pass
        return None

    for address in candidates:
        branch = _hub(address)
        if any(host.degree(v) < 4 for v in branch):
            continue
        pairs   = [(branch[0], branch[2]), (branch[2], branch[4]), (branch[0], branch[4])]
        outer   = route(pairs, set(branch))
        if outer is not None:
            paths = dict(((i, j), [branch[i], branch[j]]) for (i, j) in d.OCTAHEDRON_EDGES)
            paths[(0, 2)] = outer[0]
            paths[(2, 4)] = outer[1]
            paths[(0, 4)] = outer[2]
            BenchLog.BenchLog().log(
                BenchLog.LOG_SEARCH_FOUND,
                {u'search': u'octahedron', u'explored': explored[0]}
            )
            return (SubdivisionWitness(branch, paths, level=s.level), False)
        if explored[0] > budget:
            BenchLog.BenchLog().log(
                BenchLog.LOG_SEARCH_EXHAUSTED,
                {u'search': u'octahedron', u'budget': budget, u'explored': explored[0]}
            )
            return (None, True)

    BenchLog.BenchLog().log(
        BenchLog.LOG_SEARCH_EXHAUSTED,
        {u'search': u'octahedron', u'budget': budget, u'explored': explored[0]}
    )
    return (None, False)
