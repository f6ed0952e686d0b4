"""
Single-flip mutations of valid certificates.

Every mutation below breaks its certificate by construction (an uncovered
edge, a disconnected occurrence set, a shared vertex, ...); the verifiers
are expected to reject all of them.
"""
from __future__ import absolute_import

# =========================== imports =========================================

import collections
import copy

from . import GraphCore
from .Graphs import decomposition
from .Graphs import fractal
from .Graphs import separators

# =========================== defines =========================================

Mutation = collections.namedtuple(u'Mutation', [u'kind', u'description', u'graph', u'certificate'])

# =========================== helpers =========================================

def _pick(rng, items):
    items = list(items)
    if not items:
        return None
    return items[rng.randint(len(items))]

def _copy_decomposition(t):
    result = decomposition.TreeDecomposition()
    for (node, bag) in t.bags.items():
        result.bags[node]    = bag
        result.parents[node] = t.parents[node]
    return result

def _occurrences(t):
    where = collections.defaultdict(set)
    for (node, bag) in t.bags.items():
        for v in bag:
            where[v].add(node)
    return where

# =========================== body ============================================

#=== tree decompositions

def decomposition_mutations(g, t, rng):
    """
    - drop an endpoint from the only bag covering some edge
    - add a vertex to a bag that touches none of its bags
    - add an edge between two vertices sharing no bag
    """
    result = []
    where  = _occurrences(t)

    single = []
    for (u, v) in g.edges():
        shared = where[u] & where[v]
        if u != v and len(shared) == 1:
            single.append((u, v, list(shared)[0]))
    single.sort(key=lambda x: (GraphCore.vertex_key(x[0]), GraphCore.vertex_key(x[1])))
    choice = _pick(rng, single)
    if choice is not None:
        (u, v, node) = choice
        mutated = _copy_decomposition(t)
        mutated.bags[node] = mutated.bags[node] - set([u])
        result.append(Mutation(
            u'bag', u'drop {0!r} from bag {1}, the only cover of {0!r}-{2!r}'.format(u, node, v),
            g, mutated,
        ))

    kids = t.children()
    far  = []
    for v in GraphCore.sorted_vertices(g):
        touching = set(where[v])
        for node in where[v]:
            touching.update(kids[node])
            if t.parents[node] is not None:
                touching.add(t.parents[node])
        for node in t.bags:
            if node not in touching:
                far.append((v, node))
                break
    choice = _pick(rng, far)
    if choice is not None:
        (v, node) = choice
        mutated = _copy_decomposition(t)
        mutated.bags[node] = mutated.bags[node] | set([v])
        result.append(Mutation(
            u'bag', u'add {0!r} to bag {1}, away from its other bags'.format(v, node),
            g, mutated,
        ))

    nodes = GraphCore.sorted_vertices(g)
    pairs = []
    for (i, u) in enumerate(nodes):
        for v in nodes[i + 1:]:
            if not where[u] & where[v]:
                pairs.append((u, v))
                if len(pairs) >= 64:
                    break
        if len(pairs) >= 64:
            break
    choice = _pick(rng, pairs)
    if choice is not None:
        h = g.copy()
        h.add_edge(*choice)
        result.append(Mutation(
            u'edge', u'add edge {0!r}-{1!r}, which no bag covers'.format(*choice),
            h, t,
        ))
    return result

#=== separations

def separation_mutations(g, separation, rng):
    """
    - move a vertex of A with a neighbour left in A over to B
    - move a separator vertex with neighbours on both sides into A
    - add an edge between the two sides
    """
    result = []
    (x, a, b) = (separation.separator, separation.side_a, separation.side_b)

    movers = [v for v in a if any(w in a for w in g.neighbors(v))]
    choice = _pick(rng, sorted(movers, key=GraphCore.vertex_key))
    if choice is not None:
        result.append(Mutation(
            u'vertex', u'move {0!r} from A to B'.format(choice), g,
            separators.Separation(x, a - set([choice]), b | set([choice]), separation.c),
        ))

    bridges = [
        v for v in x
        if any(w in a for w in g.neighbors(v)) and any(w in b for w in g.neighbors(v))
    ]
    choice = _pick(rng, sorted(bridges, key=GraphCore.vertex_key))
    if choice is not None:
        result.append(Mutation(
            u'vertex', u'move separator vertex {0!r} into A'.format(choice), g,
            separators.Separation(x - set([choice]), a | set([choice]), b, separation.c),
        ))

    if a and b:
        u = _pick(rng, sorted(a, key=GraphCore.vertex_key))
        v = _pick(rng, sorted(b, key=GraphCore.vertex_key))
        h = g.copy()
        h.add_edge(u, v)
        result.append(Mutation(u'edge', u'add edge {0!r}-{1!r} across the sides'.format(u, v), h, separation))
    return result

#=== minor models

def minor_mutations(m, rng):
    """
    - copy a host vertex into a second branch set
    - point an edge witness outside its branch sets
    """
    result = []
    owner  = m.owner()
    keys   = sorted(m.branch_sets, key=GraphCore.vertex_key)
    if len(keys) >= 2:
        v      = _pick(rng, sorted(owner, key=GraphCore.vertex_key))
        others = [p for p in keys if p != owner[v]]
        target = _pick(rng, others)
        branch = dict(m.branch_sets)
        branch[target] = branch[target] | set([v])
        result.append(Mutation(
            u'witness', u'share {0!r} with the branch set of {1!r}'.format(v, target),
            m.host,
            fractal.MinorModel(m.host, m.pattern, branch, m.edge_witnesses),
        ))

    edges = sorted(m.edge_witnesses)
    key   = _pick(rng, edges)
    if key is not None:
        (a, b) = m.edge_witnesses[key]
        inside = m.branch_sets.get(key[0], frozenset()) | m.branch_sets.get(key[1], frozenset())
        outside = [v for v in GraphCore.sorted_vertices(m.host) if v not in inside]
        v = _pick(rng, outside)
        if v is not None:
            witnesses = dict(m.edge_witnesses)
            witnesses[key] = (v, b)
            result.append(Mutation(
                u'witness', u'witness of {0!r} starts at {1!r}'.format(key, v),
                m.host,
                fractal.MinorModel(m.host, m.pattern, m.branch_sets, witnesses),
            ))
    return result

#=== subdivisions

def subdivision_mutations(host, w, rng):
    """
    - route a path through another branch vertex
    - replace a branch vertex by a vertex outside the witness
    """
    if isinstance(host, fractal.SierpinskiGraph):
        host = host.graph
    result = []

    long_paths = [key for key in sorted(w.paths) if len(w.paths[key]) >= 3]
    key = _pick(rng, long_paths)
    if key is not None:
        (i, j) = key
        stranger = [k for k in range(len(w.branch)) if k not in (i, j)]
        k = _pick(rng, stranger)
        paths = copy.deepcopy(w.paths)
        path  = paths[key]
        path[1 + rng.randint(len(path) - 2)] = w.branch[k]
        result.append(Mutation(
            u'witness', u'path {0!r} runs through branch vertex {1}'.format(key, k),
            host, fractal.SubdivisionWitness(w.branch, paths, w.level),
        ))

    unused = [v for v in GraphCore.sorted_vertices(host) if v not in w.vertices()]
    v = _pick(rng, unused)
    if v is not None:
        i = rng.randint(len(w.branch))
        branch = list(w.branch)
        branch[i] = v
        result.append(Mutation(
            u'witness', u'branch vertex {0} replaced by {1!r}'.format(i, v),
            host, fractal.SubdivisionWitness(branch, w.paths, w.level),
        ))
    return result

def verify_mutation(kind, mutation):
    """run the verifier matching kind on a mutation; True when it is rejected"""
    if kind == u'decomposition':
        return not decomposition.validate(mutation.graph, mutation.certificate).ok
    if kind == u'separator':
        return not separators.check_separation(mutation.graph, mutation.certificate).ok
    if kind == u'minor':
        return not fractal.verify_minor_model(mutation.certificate).ok
    if kind == u'subdivision':
        return not fractal.verify_subdivision(mutation.graph, mutation.certificate).ok
    raise ValueError(u'unknown certificate kind "{0}"'.format(kind))
