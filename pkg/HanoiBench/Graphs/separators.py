"""
Balanced separators of Hanoi graphs, the fairness of the two-draw path game,
and the exhaustive f / r / s quantities of small graphs.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import itertools
import math
from fractions import Fraction

from HanoiBench import BenchLog
from HanoiBench import BenchSettings
from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError
from HanoiBench.GraphCore import Verdict
from . import GraphDefines as d
from . import state_space

# =========================== defines =========================================

STRATEGY_TWO_STATE   = u'two-state'
STRATEGY_THREE_STATE = u'three-state'
STRATEGY_LEVEL       = u'level'
STRATEGIES           = (STRATEGY_TWO_STATE, STRATEGY_THREE_STATE, STRATEGY_LEVEL)

# =========================== helpers =========================================

def _check_c(c):
    if not Fraction(1, 2) <= c < 1:
        raise ParameterError(u'c must lie in [1/2, 1) (got {0})'.format(c))

def _within_bound(size, c, total):
    if isinstance(c, Fraction):
        return size <= c * total
    return size <= c * total + 1e-12

def _balanced_split(sizes):
    """
    indices of the side whose total is the largest achievable value not
    above half; exact subset sum over the sizes
    """
    total  = sum(sizes)
    layers = [1]
    for s in sizes:
        layers.append(layers[-1] | (layers[-1] << s))
    target = total // 2
    reach  = layers[-1]
    while not reach >> target & 1:
        target -= 1
    chosen = []
    for i in range(len(sizes) - 1, -1, -1):
        if not layers[i] >> target & 1:
            chosen.append(i)
            target -= sizes[i]
    return set(chosen)

def _greedy_split(sizes):
    """largest first, each piece onto the lighter side (ties to A)"""
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    sides = ([], [])
    loads = [0, 0]
    for i in order:
        side = 0 if loads[0] <= loads[1] else 1
        sides[side].append(i)
        loads[side] += sizes[i]
    return sides

# =========================== body ============================================

class Separation(object):
    """separator X and sides A, B of a vertex set; max(|A|,|B|) <= c*total"""

    def __init__(self, separator, side_a, side_b, c):
        self.separator = frozenset(separator)
        self.side_a    = frozenset(side_a)
        self.side_b    = frozenset(side_b)
        self.c         = c

    @property
    def total(self):
        return len(self.separator) + len(self.side_a) + len(self.side_b)

    @property
    def max_side(self):
        return max(len(self.side_a), len(self.side_b))

    @property
    def balance(self):
        if self.total == 0:
            return Fraction(0)
        return Fraction(self.max_side, self.total)

    def to_json(self, index=None):
        index = index or (lambda v: v)
        return {
            u'separator': sorted(index(v) for v in self.separator),
            u'A':         sorted(index(v) for v in self.side_a),
            u'B':         sorted(index(v) for v in self.side_b),
            u'c':         float(self.c),
        }

    @classmethod
    def from_json(cls, data):
        return cls(data[u'separator'], data[u'A'], data[u'B'], data[u'c'])

def _log_verdict(violations):
    BenchLog.BenchLog().log(
        BenchLog.LOG_VERIFY_RESULT,
        {u'kind': u'separator', u'passed': not violations, u'violations': violations[:20]}
    )

def verify_c_separator(g, separator, c, within=None):
    """
    Pack the components of g - separator into two sides, largest first.

    :param within: vertex set to separate, all of g by default
    :returns: Verdict carrying the Separation when both sides fit in c*|V|
    """
    _check_c(c)
    pool       = set(g.nodes()) if within is None else set(within)
    separator  = set(separator)
    violations = []
    for v in sorted(separator - pool, key=GraphCore.vertex_key):
        violations.append(u'separator vertex {0!r} is not in the graph'.format(v))
    if violations:
        _log_verdict(violations)
        return Verdict(False, None, violations)

    comps = GraphCore.components(g, removed=separator, within=pool)
    (a, b) = _greedy_split([len(comp) for comp in comps])
    side_a = set().union(*[comps[i] for i in a]) if a else set()
    side_b = set().union(*[comps[i] for i in b]) if b else set()
    separation = Separation(separator, side_a, side_b, c)
    if not _within_bound(separation.max_side, c, len(pool)):
        violations.append(
            u'largest side has {0} vertices, over c*|V| = {1:.4f} (largest component {2})'.format(
                separation.max_side, float(c) * len(pool),
                max(len(comp) for comp in comps),
            )
        )
    _log_verdict(violations)
    if violations:
        return Verdict(False, separation, violations)
    return Verdict(True, separation, [])

def check_separation(g, separation, within=None):
    """exact check of a recorded (X, A, B) triple"""
    pool       = set(g.nodes()) if within is None else set(within)
    (x, a, b)  = (separation.separator, separation.side_a, separation.side_b)
    violations = []
    if x & a or x & b or a & b:
        violations.append(u'separator and sides overlap')
    if (x | a | b) != pool:
        violations.append(
            u'separator and sides miss {0} vertices or add {1}'.format(
                len(pool - (x | a | b)), len((x | a | b) - pool)
            )
        )
    for u in sorted(a, key=GraphCore.vertex_key):
        for w in g.neighbors(u):
            if w in b:
                violations.append(u'edge {0!r}-{1!r} joins the two sides'.format(u, w))
    if not _within_bound(separation.max_side, separation.c, len(pool)):
        violations.append(
            u'largest side has {0} vertices, over c*|V| = {1:.4f}'.format(
                separation.max_side, float(separation.c) * len(pool)
            )
        )
    _log_verdict(violations)
    return Verdict(not violations, separation if not violations else None, violations)

#=== Hanoi separators

def _level_digit(code, p, level):
    return (code // p ** level) % p

def _removed_endpoint(u, v, p, level):
    """
    endpoint of a move of disk `level` to drop: for p=3 the copies lose one
    endpoint each around the cycle 0->1->2->0, for p>3 the endpoint in the
    smaller-indexed copy goes
    """
    (i, j) = (_level_digit(u, p, level), _level_digit(v, p, level))
    if p == 3:
        if (i + 1) % 3 == j:
            return v
        return u
    return u if i < j else v

def hanoi_level_separator(p, n):
    """
    One endpoint of every edge moving the largest disk; removing it
    disconnects the p copies of H_p^(n-1).
    """
    state_space._check_params(p, n)
    GraphCore.check_materialization(p ** n, u'hanoi')
    return frozenset(
        _removed_endpoint(u, v, p, n - 1)
        for (u, v) in state_space.inter_copy_edges(p, n)
    )

def c_bound(p):
    return min(Fraction(int(math.ceil(p / 2)) + 1, p), Fraction(p - 1, p))

class SeparatorNode(object):
    """
    vertices:   the vertex set this node separates
    separation: None at a leaf
    level:      1 at the root; the node moves disk n-level
    bound:      C(p,2)*(p-2)**(n-level), the level's separator budget
    children:   connected pieces of the two sides
    """

    def __init__(self, vertices, level, bound, separation=None):
        self.vertices   = frozenset(vertices)
        self.level      = level
        self.bound      = bound
        self.separation = separation
        self.children   = []

    def walk(self):
        yield self
        for child in self.children:
            for node in child.walk():
                yield node

    def to_json(self):
        return {
            u'size':      len(self.vertices),
            u'level':     self.level,
            u'bound':     self.bound,
            u'separator': sorted(self.separation.separator) if self.separation else [],
            u'children':  [child.to_json() for child in self.children],
        }

class RecursiveSeparatorTree(object):

    def __init__(self, graph, p, n, root):
        self.graph = graph
        self.p     = p
        self.n     = n
        self.root  = root
        self.c     = c_bound(p)

    def nodes(self):
        return list(self.root.walk())

    def order(self):
        """largest separator per level"""
        result = {}
        for node in self.nodes():
            if node.separation is not None:
                result[node.level] = max(result.get(node.level, 0), len(node.separation.separator))
        return result

    def verify(self):
        violations = []
        for node in self.nodes():
            if node.separation is None:
                if len(node.vertices) > 1:
                    violations.append(u'leaf with {0} vertices'.format(len(node.vertices)))
                continue
            check = check_separation(self.graph, node.separation, within=node.vertices)
            violations.extend(
                u'level {0}: {1}'.format(node.level, v) for v in check.violations
            )
            if len(node.separation.separator) > node.bound:
                violations.append(
                    u'level {0}: separator of {1} over the bound {2}'.format(
                        node.level, len(node.separation.separator), node.bound
                    )
                )
            sides = node.separation.side_a | node.separation.side_b
            below = set()
            for child in node.children:
                below |= child.vertices
            if below != sides:
                violations.append(u'level {0}: children do not cover the sides'.format(node.level))
        return Verdict(not violations, self.order() if not violations else None, violations)

    def to_json(self):
        return {u'p': self.p, u'n': self.n, u'c': str(self.c), u'root': self.root.to_json()}

def _varying_disks(vertices, p):
    """smallest m such that every vertex agrees on the disks from m upwards"""
    m = 0
    while len(set(v // p ** m for v in vertices)) > 1:
        m += 1
    return m

def recursive_separator(p, n):
    """
    Separate each piece by the level separator of the smallest Hanoi copy
    holding it, group the resulting pieces into two sides of balanced size,
    and recurse into every piece.
    """
    state_space._check_params(p, n)
    g    = state_space.build_hanoi(p, n)
    c    = c_bound(p)
    log  = BenchLog.BenchLog()
    pairs = p * (p - 1) // 2

    def build(vertices):
        m = _varying_disks(vertices, p)
        level = n - m + 1
        if m == 0:
            return SeparatorNode(vertices, level, 0)
        bound = pairs * (p - 2) ** (m - 1)

        separator = set()
        for u in vertices:
            for w in g.neighbors(u):
                if w > u and w in vertices and _level_digit(u, p, m - 1) != _level_digit(w, p, m - 1):
                    separator.add(_removed_endpoint(u, w, p, m - 1))

        pieces = GraphCore.components(g, removed=separator, within=vertices)
        chosen = _balanced_split([len(piece) for piece in pieces])
        side_a = set()
        side_b = set()
        for (i, piece) in enumerate(pieces):
            (side_a if i in chosen else side_b).update(piece)
        if len(side_a) < len(side_b):
            (side_a, side_b) = (side_b, side_a)

        node = SeparatorNode(vertices, level, bound, Separation(separator, side_a, side_b, c))
        log.log(
            BenchLog.LOG_SEPARATOR_NODE,
            {
                u'level':     level,
                u'size':      len(vertices),
                u'separator': len(separator),
                u'bound':     bound,
                u'max_side':  node.separation.max_side,
            }
        )
        for piece in pieces:
            if len(piece) == 1:
                node.children.append(SeparatorNode(piece, level + 1, 0))
            else:
                node.children.append(build(frozenset(piece)))
        return node

    root = build(frozenset(g.nodes()))
    return RecursiveSeparatorTree(g, p, n, root)

#=== fairness

class FairnessReport(object):

    def __init__(self, removed, sizes, total, probability, threshold=d.FAIRNESS_THRESHOLD):
        self.removed     = frozenset(removed)
        self.sizes       = sorted(sizes, reverse=True)
        self.total       = total
        self.probability = probability
        self.threshold   = threshold

    @property
    def passed(self):
        return self.probability <= self.threshold

    def to_json(self, index=None):
        index = index or (lambda v: v)
        return {
            u'removed':         sorted(index(v) for v in self.removed),
            u'component_sizes': self.sizes,
            u'probability':     format_fraction(self.probability),
            u'passed':          self.passed,
        }

def format_fraction(value):
    """'num/den (0.xxxxxx)'"""
    value = Fraction(value)
    return u'{0}/{1} ({2:.6f})'.format(value.numerator, value.denominator, float(value))

def connection_probability(g, removed, without_replacement=False):
    """
    Exact probability that two uniform draws from V land in one component of
    g - removed. A draw hitting a removed vertex never connects.
    """
    removed = frozenset(removed)
    for v in removed:
        if not g.has_node(v):
            raise ParameterError(u'removed vertex {0!r} is not in the graph'.format(v))
    total = g.number_of_nodes()
    sizes = [len(comp) for comp in GraphCore.components(g, removed=removed)]
    if total == 0:
        return FairnessReport(removed, sizes, 0, Fraction(0))
    if without_replacement:
        if total < 2:
            probability = Fraction(0)
        else:
            probability = Fraction(sum(s * (s - 1) for s in sizes), total * (total - 1))
    else:
        probability = Fraction(sum(s * s for s in sizes), total * total)
    return FairnessReport(removed, sizes, total, probability)

def two_state_removal(n):
    """
    Largest disk on peg 1, the others together on peg 2 or together on peg 3:
    the two exits of copy 1 in H_3^n.
    """
    if n < 2:
        raise ParameterError(u'two-state removal needs n >= 2 (got {0})'.format(n))
    return frozenset(
        state_space.encode((peg,) * (n - 1) + (0,), 3) for peg in (1, 2)
    )

def three_state_removal(n):
    """one endpoint of each of the three edges moving the largest disk"""
    return hanoi_level_separator(3, n)

def removal_for(strategy, p, n):
    if strategy == STRATEGY_TWO_STATE:
        if p != 3:
            raise ParameterError(u'two-state removal is defined for p=3')
        return two_state_removal(n)
    if strategy == STRATEGY_THREE_STATE:
        if p != 3:
            raise ParameterError(u'three-state removal is defined for p=3')
        return three_state_removal(n)
    if strategy == STRATEGY_LEVEL:
        return hanoi_level_separator(p, n)
    raise ParameterError(u'unknown strategy "{0}", expected one of {1}'.format(strategy, STRATEGIES))

def fairness_table(p, n_values, strategy, without_replacement=False):
    """
    :returns: rows (n, removed, probability) for the convergence CSV
    """
    rows = []
    for n in n_values:
        removed = removal_for(strategy, p, n)
        report  = connection_probability(
            state_space.build_hanoi(p, n, implicit=True),
            removed,
            without_replacement=without_replacement,
        )
        rows.append(
            {
                u'n':                 n,
                u'removed':           len(removed),
                u'probability_num':   report.probability.numerator,
                u'probability_den':   report.probability.denominator,
                u'probability':       u'{0:.6f}'.format(float(report.probability)),
            }
        )
    return rows

#=== exhaustive quantities

def _subsets_by_size(n):
    """bitmasks over n bits, by size then lexicographic order of members"""
    for size in range(n + 1):
        for chosen in itertools.combinations(range(n), size):
            mask = 0
            for i in chosen:
                mask |= 1 << i
            yield (size, mask)

def _names(nodes, mask):
    return frozenset(nodes[i] for i in range(len(nodes)) if mask >> i & 1)

def brute_force_f(g):
    """
    Fewest removed vertices that bring the connection probability to at
    most one half.

    :returns: (size, lexicographically least witness)
    """
    BenchSettings.BenchSettings().check_cap(u'brute_f', g.number_of_nodes())
    (nodes, masks) = GraphCore.indexed_masks(g)
    n    = len(nodes)
    full = (1 << n) - 1
    for (size, mask) in _subsets_by_size(n):
        comps = GraphCore.mask_components(masks, full & ~mask)
        if 2 * sum(GraphCore.popcount(comp) ** 2 for comp in comps) <= n * n:
            return (size, _names(nodes, mask))
    raise AssertionError(u'removing every vertex always succeeds')

def _best_max_side(sizes):
    chosen = _balanced_split(sizes)
    a = sum(s for (i, s) in enumerate(sizes) if i in chosen)
    return max(a, sum(sizes) - a)

def brute_force_r(g, c=d.DEFAULT_C):
    """
    Smallest c-separator, sides packed optimally.

    :returns: (size, lexicographically least witness)
    """
    _check_c(c)
    BenchSettings.BenchSettings().check_cap(u'brute_r', g.number_of_nodes())
    (nodes, masks) = GraphCore.indexed_masks(g)
    n    = len(nodes)
    full = (1 << n) - 1
    for (size, mask) in _subsets_by_size(n):
        comps = GraphCore.mask_components(masks, full & ~mask)
        if _within_bound(_best_max_side([GraphCore.popcount(x) for x in comps]), c, n):
            return (size, _names(nodes, mask))
    raise AssertionError(u'removing every vertex always succeeds')

def brute_force_s(g, c=d.DEFAULT_C):
    """
    Recursive separator order: the least, over c-separations of the vertex
    set, of max(|X|, s(A), s(B)), with s = 0 on at most one vertex.
    """
    _check_c(c)
    BenchSettings.BenchSettings().check_cap(u'brute_s', g.number_of_nodes())
    (nodes, masks) = GraphCore.indexed_masks(g)
    memo = {}

    def members(mask):
        return [i for i in range(len(nodes)) if mask >> i & 1]

    def s(vertices):
        if GraphCore.popcount(vertices) <= 1:
            return 0
        if vertices in memo:
            return memo[vertices]
        total = GraphCore.popcount(vertices)
        best  = total
        pool  = members(vertices)
        for size in range(total):
            if size >= best:
                break
            for chosen in itertools.combinations(pool, size):
                x = 0
                for i in chosen:
                    x |= 1 << i
                comps = GraphCore.mask_components(masks, vertices & ~x)
                # the first component stays on side A
                for bits in range(1 << max(len(comps) - 1, 0)):
                    a = comps[0] if comps else 0
                    b = 0
                    for (j, comp) in enumerate(comps[1:]):
                        if bits >> j & 1:
                            b |= comp
                        else:
                            a |= comp
                    if not _within_bound(max(GraphCore.popcount(a), GraphCore.popcount(b)), c, total):
                        continue
                    if a == vertices:
                        continue
                    value = max(size, s(a), s(b))
                    if value < best:
                        best = value
                    if best <= size:
                        break
        memo[vertices] = best
        return best

    return s((1 << len(nodes)) - 1)

def vertex_expansion(g):
    """
    min |dS|/|S| over nonempty S with |S| <= |V|/2, dS the neighbours of S
    outside S; exact Fraction
    """
    BenchSettings.BenchSettings().check_cap(u'expansion', g.number_of_nodes())
    (nodes, masks) = GraphCore.indexed_masks(g)
    n = len(nodes)
    if n < 2:
        raise ParameterError(u'vertex expansion needs at least 2 vertices')
    half  = n // 2
    reach = [0] * (1 << n)
    best  = None
    for mask in range(1, 1 << n):
        low = mask & -mask
        reach[mask] = reach[mask ^ low] | masks[low.bit_length() - 1]
        size = GraphCore.popcount(mask)
        if size > half:
            continue
        value = Fraction(GraphCore.popcount(reach[mask] & ~mask), size)
        if best is None or value < best:
            best = value
    return best
