"""
Towers-of-Hanoi configurations and the Hanoi graph H_p^n.

A configuration of n disks on p pegs is stored as the peg of every disk,
smallest disk first, pegs 0-indexed. It is encoded as the mixed-radix
integer sum(peg_i * p**i), which is also its vertex id in H_p^n.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import itertools
import numbers

from HanoiBench import GraphCore
from HanoiBench.BenchErrors import DimensionError, ParameterError
from HanoiBench.GraphCore import bfs_distance, diameter  # noqa: F401
from . import GraphDefines as d

# =========================== helpers =========================================

def _check_params(p, n):
    if p < 3:
        raise ParameterError(u'p must be at least 3 (got {0})'.format(p))
    if n < 1:
        raise ParameterError(u'n must be at least 1 (got {0})'.format(n))

def encode(pegs, p):
    code = 0
    for peg in reversed(pegs):
        code = code * p + peg
    return code

def decode(code, p, n):
    pegs = []
    for _ in range(n):
        (code, peg) = divmod(code, p)
        pegs.append(peg)
    return tuple(pegs)

def neighbor_codes(code, p, n):
    """codes of the configurations one legal move away"""
    pegs = decode(code, p, n)
    tops = [None] * p
    for (disk, peg) in enumerate(pegs):
        if tops[peg] is None:
            tops[peg] = disk
    for a in range(p):
        disk = tops[a]
        if disk is None:
            continue
        weight = p ** disk
        for b in range(p):
            if b != a and (tops[b] is None or tops[b] > disk):
                yield code + (b - a) * weight

def hanoi_edge_count(p, n):
    return (p * (p - 1) // 2) * (p ** n - (p - 2) ** n) // 2

# =========================== body ============================================

class Configuration(object):
    """
    One game state. Pegs are 0-indexed in `pegs` and 1-indexed in str().
    """

    __slots__ = (u'pegs', u'p')

    def __init__(self, pegs, p):
        pegs = tuple(pegs)
        if not pegs:
            raise ParameterError(u'a configuration needs at least one disk')
        for peg in pegs:
            if not 0 <= peg < p:
                raise ParameterError(
                    u'peg {0} out of range for p={1}'.format(peg + 1, p)
                )
        self.pegs = pegs
        self.p    = p

    @classmethod
    def from_external(cls, pegs, p):
        """from 1-indexed pegs, e.g. (1, 3, 3)"""
        return cls([peg - 1 for peg in pegs], p)

    @classmethod
    def from_string(cls, text, p):
        return cls([d.PEG_DIGITS.index(c) for c in text], p)

    @classmethod
    def decode(cls, code, p, n):
        if not 0 <= code < p ** n:
            raise ParameterError(u'code {0} out of range'.format(code))
        return cls(decode(code, p, n), p)

    @property
    def n(self):
        return len(self.pegs)

    def encode(self):
        return encode(self.pegs, self.p)

    def external(self):
        return tuple(peg + 1 for peg in self.pegs)

    def disks_on(self, peg):
        return [disk for (disk, q) in enumerate(self.pegs) if q == peg]

    def __eq__(self, other):
        return (
            isinstance(other, Configuration) and
            self.p == other.p and
            self.pegs == other.pegs
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.p, self.pegs))

    def __str__(self):
        if self.p > len(d.PEG_DIGITS):
            raise ParameterError(u'digit strings support at most 9 pegs')
        return u''.join(d.PEG_DIGITS[peg] for peg in self.pegs)

    def __repr__(self):
        return u'Configuration({0}, p={1})'.format(self.external(), self.p)

def is_compatible(a, b):
    """
    True iff a and b are one legal move apart: they differ in exactly one
    disk, and no smaller disk sits on either the source or the target peg.
    """
    if a.p != b.p or a.n != b.n:
        raise DimensionError(
            u'configurations differ in shape: (p={0}, n={1}) vs (p={2}, n={3})'.format(
                a.p, a.n, b.p, b.n
            )
        )
    differing = [i for i in range(a.n) if a.pegs[i] != b.pegs[i]]
    if len(differing) != 1:
        return False
    moved = differing[0]
    ends  = (a.pegs[moved], b.pegs[moved])
    for smaller in range(moved):
        if a.pegs[smaller] in ends:
            return False
    return True

class HanoiGraph(GraphCore.ImplicitGraph):
    """H_p^n served through neighbor_codes()"""

    def __init__(self, p, n):
        _check_params(p, n)
        super(HanoiGraph, self).__init__(u'hanoi', {u'p': p, u'n': n}, p ** n)
        self.p = p
        self.n = n

    def neighbors(self, v):
        return neighbor_codes(v, self.p, self.n)

    def has_node(self, v):
        return isinstance(v, numbers.Integral) and 0 <= v < self.vertex_count

    def nodes(self):
        return range(self.vertex_count)

    def label(self, v):
        return Configuration.decode(v, self.p, self.n)

def build_hanoi(p, n, implicit=False):
    """
    H_p^n, vertex ids are configuration codes.

    :raises CapacityError: p**n over the materialization cap (use implicit)
    """
    _check_params(p, n)
    if implicit:
        return HanoiGraph(p, n)
    GraphCore.check_materialization(p ** n, u'hanoi')

    g = GraphCore.new_graph(u'hanoi', {u'p': p, u'n': n})
    for code in range(p ** n):
        g.add_node(code, label=Configuration.decode(code, p, n))
    for code in range(p ** n):
        for other in neighbor_codes(code, p, n):
            if other > code:
                g.add_edge(code, other)
    return GraphCore.announce(g)

def perfect_state(peg, p, n):
    return encode((peg,) * n, p)

def perfect_states(p, n):
    _check_params(p, n)
    return set(perfect_state(peg, p, n) for peg in range(p))

def traditional_perfect_pair(n):
    """all disks on peg 1 and all disks on peg 3 of H_3^n"""
    return (perfect_state(0, 3, n), perfect_state(2, 3, n))

def copy_index(code, p, n):
    """the copy of H_p^(n-1) holding code: the peg of the largest disk"""
    return code // p ** (n - 1)

def boundary_vertices(p, n):
    """
    Configurations where the largest disk can move: it is alone on its peg
    and some peg is empty.
    """
    _check_params(p, n)
    GraphCore.check_materialization(p ** n, u'hanoi')
    result = set()
    for code in range(p ** n):
        pegs    = decode(code, p, n)
        largest = pegs[-1]
        if largest in pegs[:-1]:
            continue
        if len(set(pegs)) < p:
            result.add(code)
    return result

def inter_copy_edges(p, n):
    """
    Edges moving the largest disk, as sorted (u, v) pairs. There are
    C(p,2)*(p-2)**(n-1) of them: the smaller disks avoid both ends.
    """
    _check_params(p, n)
    top   = p ** (n - 1)
    edges = []
    for (a, b) in itertools.combinations(range(p), 2):
        others = [q for q in range(p) if q not in (a, b)]
        for rest in itertools.product(others, repeat=n - 1):
            base = encode(rest, p) if rest else 0
            edges.append((base + a * top, base + b * top))
    edges.sort()
    return edges
