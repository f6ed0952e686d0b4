"""
Set-system graphs on bitmasks: Kneser graphs Kn(n,k), disjoint subset graphs
Ds(n,r), tensor products, Kruskal-Katona shadows, and the randomized slice
experiments.

A subset of [n] is the bitmask with bit i set for element i+1.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy

from HanoiBench import BenchLog
from HanoiBench import BenchSettings
from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError, PreconditionError
from . import fractal
from . import pegsets
from . import state_space

# =========================== helpers =========================================

def _binomial(n, k):
    if k < 0 or k > n:
        return 0
    return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))

def subset_mask(elements):
    """mask of a set of 1-indexed elements"""
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask

def subset_members(mask):
    """1-indexed elements, ascending"""
    result = []
    i = 0
    while mask:
        if mask & 1:
            result.append(i + 1)
        mask >>= 1
        i += 1
    return result

def subset_label(mask):
    return u'{' + u','.join(str(e) for e in subset_members(mask)) + u'}'

def k_subsets(n, k):
    """masks of the k-subsets of [n], lexicographic in their members"""
    result = []
    for chosen in itertools.combinations(range(n), k):
        mask = 0
        for i in chosen:
            mask |= 1 << i
        result.append(mask)
    return result

def _check_ground(n):
    if not 1 <= n <= 63:
        raise ParameterError(u'ground set size must lie in [1, 63] (got {0})'.format(n))

# =========================== body ============================================

#=== Kneser and disjoint subset graphs

def kneser_diameter(n, k):
    """ceil((k-1)/(n-2k)) + 1, for n >= 2k+1"""
    if n < 2 * k + 1:
        raise ParameterError(u'Kn({0},{1}) is not connected'.format(n, k))
    return -(-(k - 1) // (n - 2 * k)) + 1

def build_kneser(n, k):
    _check_ground(n)
    if not 1 <= k <= n:
        raise ParameterError(u'k must lie in [1, n] (got {0})'.format(k))
    GraphCore.check_materialization(_binomial(n, k), u'kneser')
    g    = GraphCore.new_graph(u'kneser', {u'n': n, u'k': k})
    full = (1 << n) - 1
    for mask in k_subsets(n, k):
        g.add_node(mask, label=subset_label(mask))
    for mask in k_subsets(n, k):
        rest = subset_members(full & ~mask)
        for chosen in itertools.combinations(rest, k):
            other = subset_mask(chosen)
            if other > mask:
                g.add_edge(mask, other)
    return GraphCore.announce(g)

def ds_vertex_count(n, r):
    return sum(_binomial(n, k) for k in range(min(r, n) + 1))

def build_ds(n, r):
    """subsets of size <= r, the empty set included, joined when disjoint"""
    _check_ground(n)
    if r < 0:
        raise ParameterError(u'r must be nonnegative (got {0})'.format(r))
    GraphCore.check_materialization(ds_vertex_count(n, r), u'ds')
    g    = GraphCore.new_graph(u'ds', {u'n': n, u'r': r})
    full = (1 << n) - 1
    for k in range(min(r, n) + 1):
        for mask in k_subsets(n, k):
            g.add_node(mask, label=subset_label(mask))
    for mask in list(g.nodes()):
        rest = subset_members(full & ~mask)
        for k in range(min(r, len(rest)) + 1):
            for chosen in itertools.combinations(rest, k):
                other = subset_mask(chosen)
                if other > mask:
                    g.add_edge(mask, other)
    return GraphCore.announce(g)

def build_ds_default(n):
    """Ds(n, (n-1)/2), odd n"""
    if n % 2 == 0:
        raise ParameterError(u'Ds(n) needs odd n (got {0})'.format(n))
    return build_ds(n, (n - 1) // 2)

def slice_of(g, k):
    """vertices of cardinality k"""
    return [v for v in g.nodes() if GraphCore.popcount(v) == k]

#=== tensor products

def tensor_product(g, h):
    """(u,v)~(u',v') iff u~u' in g and v~v' in h"""
    BenchSettings.BenchSettings().check_cap(
        u'product', g.number_of_nodes() * h.number_of_nodes()
    )
    product = nx.tensor_product(g, h)
    product.graph[u'family'] = u'tensor'
    product.graph[u'params'] = {
        u'left':  g.graph.get(u'family'),
        u'right': h.graph.get(u'family'),
    }
    for (a, b) in product.nodes():
        product.nodes[(a, b)][u'label'] = u'({0};{1})'.format(
            GraphCore.label_of(g, a), GraphCore.label_of(h, b)
        )
    return GraphCore.announce(product)

def _named(graph, family, params):
    graph.graph[u'family'] = family
    graph.graph[u'params'] = params
    return graph

def factor_from_spec(spec):
    """
    Build a factor graph from 'family:arg[:arg]', e.g. complete:3,
    cycle:5, path:4, kneser:5:2, ds:5, hanoi:3:2, sierpinski:3.
    """
    fields = spec.split(u':')
    try:
        args = [int(x) for x in fields[1:]]
    except ValueError:
        raise ParameterError(u'malformed factor "{0}"'.format(spec))
    family = fields[0]
    arity  = {
        u'complete': 1, u'cycle': 1, u'path': 1, u'kneser': 2,
        u'ds': 1, u'hanoi': 2, u'sierpinski': 1,
    }
    if family not in arity:
        raise ParameterError(u'unknown factor family "{0}"'.format(family))
    if len(args) != arity[family]:
        raise ParameterError(u'factor "{0}" needs {1} argument(s)'.format(spec, arity[family]))
    if family == u'complete':
        return _named(nx.complete_graph(args[0]), u'complete', {u'n': args[0]})
    if family == u'cycle':
        return _named(nx.cycle_graph(args[0]), u'cycle', {u'n': args[0]})
    if family == u'path':
        return _named(nx.path_graph(args[0]), u'path', {u'n': args[0]})
    if family == u'kneser':
        return build_kneser(args[0], args[1])
    if family == u'ds':
        return build_ds_default(args[0])
    if family == u'hanoi':
        return state_space.build_hanoi(args[0], args[1])
    return fractal.build_sierpinski(args[0]).graph

#=== G_4^n versus Ds(n) x K_4

class G4IsomorphismReport(object):

    def __init__(self, n, vertices_g4, vertices_product, agreeing, only_g4, only_product, loop_reading):
        self.n                = n
        self.vertices_g4      = vertices_g4
        self.vertices_product = vertices_product
        self.agreeing         = agreeing
        self.only_g4          = only_g4
        self.only_product     = only_product
        self.loop_reading     = loop_reading

    @property
    def exact(self):
        return self.vertices_g4 == self.vertices_product and not self.only_g4 and not self.only_product

    def disagreement_classes(self):
        classes = set()
        for ((a, _), (b, _)) in self.only_g4 + self.only_product:
            classes.add(u'empty-empty' if a == 0 and b == 0 else u'other')
        return sorted(classes)

    def to_json(self):
        def render(pairs):
            return [
                [[subset_label(a), q + 1], [subset_label(b), r + 1]]
                for ((a, q), (b, r)) in pairs
            ]
        return {
            u'n':                     self.n,
            u'vertices_g4':           self.vertices_g4,
            u'vertices_product':      self.vertices_product,
            u'agreeing_edges':        self.agreeing,
            u'only_in_g4':            render(self.only_g4),
            u'only_in_product':       render(self.only_product),
            u'disagreement_classes':  self.disagreement_classes(),
            u'exact_with_empty_loop': self.loop_reading,
        }

def check_g4_isomorphism(n):
    """
    Compare G_4^n with Ds(n) x K_4 through (frozen peg, frozen disks) ->
    (disk mask, peg). The loop reading adds a loop at the empty set of Ds(n)
    and reports whether the two then agree exactly.
    """
    if n % 2 == 0:
        raise ParameterError(u'Ds(n) needs odd n (got {0})'.format(n))
    g4 = pegsets.build_g4(n)
    ds = build_ds_default(n)

    def image(ps):
        ((peg, disks),) = ps.frozen
        return (subset_mask(disk + 1 for disk in disks), peg)

    def key(a, b):
        return tuple(sorted((a, b)))

    g4_edges = set(
        key(image(g4.pegsets[u]), image(g4.pegsets[v])) for (u, v) in g4.graph.edges()
    )
    k4       = nx.complete_graph(4)
    product  = tensor_product(ds, k4)
    pr_edges = set(key(a, b) for (a, b) in product.edges())

    looped = ds.copy()
    looped.add_edge(0, 0)
    loop_edges = set(key(a, b) for (a, b) in nx.tensor_product(looped, k4).edges())

    return G4IsomorphismReport(
        n,
        g4.number_of_nodes(),
        product.number_of_nodes(),
        len(g4_edges & pr_edges),
        sorted(g4_edges - pr_edges),
        sorted(pr_edges - g4_edges),
        loop_edges == g4_edges and g4.number_of_nodes() == product.number_of_nodes(),
    )

#=== Kruskal-Katona

def shadow(family, l):
    """every l-subset of a member of the family"""
    result = set()
    for mask in family:
        members = subset_members(mask)
        for chosen in itertools.combinations(members, l):
            result.add(subset_mask(chosen))
    return result

def kk_check(family, k, l):
    """
    |shadow| >= C(m, l) for the largest m with C(m, k) <= |family|
    """
    if not 1 <= l < k:
        raise ParameterError(u'need 1 <= l < k (got k={0}, l={1})'.format(k, l))
    family = set(family)
    if not family:
        return True
    m = k
    while _binomial(m + 1, k) <= len(family):
        m += 1
    return len(shadow(family, l)) >= _binomial(m, l)

def kk_experiment(trials, max_n, seed):
    """random families of k-subsets; one row per trial"""
    rng  = numpy.random.RandomState(seed)
    log  = BenchLog.BenchLog()
    rows = []
    for trial in range(trials):
        n = int(rng.randint(3, max_n + 1))
        k = int(rng.randint(2, n))
        l = int(rng.randint(1, k))
        pool = k_subsets(n, k)
        size = int(rng.randint(1, len(pool) + 1))
        family = [pool[i] for i in sorted(rng.choice(len(pool), size, replace=False))]
        passed = kk_check(family, k, l)
        log.log(
            BenchLog.LOG_EXPERIMENT_TRIAL,
            {u'experiment': u'kk', u'trial': trial, u'seed': seed, u'result': passed}
        )
        rows.append({u'trial': trial, u'n': n, u'k': k, u'l': l, u'size': size, u'passed': passed})
    return rows

#=== central mass

def central_lower_index(n, beta):
    """smallest k with n/2 - k <= sqrt(n) / (2*sqrt(1-beta))"""
    beta  = Fraction(beta).limit_denominator(10 ** 9)
    half  = Fraction(n, 2)
    limit = Fraction(n) / (4 * (1 - beta))
    k = 0
    while half - k > 0 and (half - k) ** 2 > limit:
        k += 1
    return k

def central_mass_fraction(n, beta):
    """
    share of the subsets of size below n/2 whose size lies within
    sqrt(n)/(2*sqrt(1-beta)) of n/2; exact
    """
    if n % 2 == 0 or not 1 <= n <= 63:
        raise ParameterError(u'need odd n in [1, 63] (got {0})'.format(n))
    if not 0 <= beta < 1:
        raise ParameterError(u'beta must lie in [0, 1) (got {0})'.format(beta))
    top  = (n - 1) // 2
    low  = central_lower_index(n, beta)
    mass = sum(_binomial(n, k) for k in range(low, top + 1))
    return Fraction(mass, 2 ** (n - 1))

#=== slices

def slice_cross_edge(a_k, a_l, n, k, l, rng=None, attempts=200):
    """
    Look for a disjoint pair between two dense parts of the k- and l-slices.

    :returns: (witness pair or None, exhaustive) where exhaustive tells
              whether the answer came from the full scan
    :raises PreconditionError: a part holds half of its slice or less
    """
    a_k = set(a_k)
    a_l = set(a_l)
    for (part, size, name) in ((a_k, k, u'A_k'), (a_l, l, u'A_l')):
        if any(GraphCore.popcount(mask) != size or mask >> n for mask in part):
            raise PreconditionError(u'{0} holds a set outside the {1}-slice'.format(name, size))
        if 2 * len(part) <= _binomial(n, size):
            raise PreconditionError(
                u'{0} has density {1}/{2}, not above one half'.format(name, len(part), _binomial(n, size))
            )

    if rng is not None:
        left  = sorted(a_k)
        right = sorted(a_l)
        for _ in range(attempts):
            a = left[rng.randint(len(left))]
            b = right[rng.randint(len(right))]
            if a & b == 0:
                return ((a, b), False)

    full = (1 << n) - 1
    for a in sorted(a_k):
        rest = subset_members(full & ~a)
        for chosen in itertools.combinations(rest, l):
            b = subset_mask(chosen)
            if b in a_l:
                return ((a, b), True)
    return (None, True)

def _dense_part(rng, pool):
    size = len(pool) // 2 + 1 + int(rng.randint(0, len(pool) - len(pool) // 2))
    size = min(size, len(pool))
    return [pool[i] for i in sorted(rng.choice(len(pool), size, replace=False))]

def slice_experiment(n, k, l, trials, seed):
    """
    :returns: rows trial,seed,k,l,found_edge; trial t runs on seed+t
    """
    log  = BenchLog.BenchLog()
    rows = []
    for trial in range(trials):
        trial_seed = seed + trial
        rng  = numpy.random.RandomState(trial_seed)
        a_k  = _dense_part(rng, k_subsets(n, k))
        a_l  = _dense_part(rng, k_subsets(n, l))
        (witness, _) = slice_cross_edge(a_k, a_l, n, k, l, rng=rng)
        found = witness is not None
        log.log(
            BenchLog.LOG_EXPERIMENT_TRIAL,
            {u'experiment': u'slice', u'trial': trial, u'seed': trial_seed, u'result': found}
        )
        rows.append({u'trial': trial, u'seed': trial_seed, u'k': k, u'l': l, u'found_edge': int(found)})
    return rows
