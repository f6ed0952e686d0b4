"""
Pegsets: families of Hanoi configurations obtained by freezing chosen disks
onto chosen pegs, and the graphs whose vertices they are.

A pegset freezes a set of pegs, each with its own set of disks. A
configuration belongs to it when every frozen disk sits on its peg and no
other disk sits on a frozen peg. Regular pegsets freeze p-3 pegs with
(n-1)/(p-2) disks each; their intersection graph is I_p^n. G_4^n relaxes this
to one frozen peg of p=4 holding at most (n-1)//2 disks.

Pegs and disks are 0-indexed here and 1-indexed in str() and JSON.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import collections
import itertools
import math

from HanoiBench import GraphCore
from HanoiBench.BenchErrors import ParameterError
from . import GraphDefines as d
from . import state_space

# =========================== defines =========================================

FAMILY_REGULAR = u'regular'
FAMILY_G4      = u'g4'

# =========================== helpers =========================================

def _binomial(n, k):
    if k < 0 or k > n:
        return 0
    return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))

def frozen_size(p, n):
    """disks per frozen peg of a regular pegset"""
    if p < 3:
        raise ParameterError(u'p must be at least 3 (got {0})'.format(p))
    if p == 3:
        return n - 1
    if (n - 1) % (p - 2) != 0:
        raise ParameterError(
            u'regular pegsets need n = 1 mod (p-2); n={0}, p={1} is unsupported'.format(n, p)
        )
    return (n - 1) // (p - 2)

# =========================== body ============================================

class Pegset(object):
    """
    frozen: sorted tuple of (peg, sorted tuple of disks), one entry per
            frozen peg; a frozen peg may hold no disk
    """

    __slots__ = (u'p', u'n', u'frozen')

    def __init__(self, p, n, frozen):
        state_space._check_params(p, n)
        items = []
        seen  = set()
        for (peg, disks) in (frozen.items() if isinstance(frozen, dict) else frozen):
            if not 0 <= peg < p:
                raise ParameterError(u'peg {0} out of range for p={1}'.format(peg + 1, p))
            disks = tuple(sorted(disks))
            for disk in disks:
                if not 0 <= disk < n:
                    raise ParameterError(u'disk {0} out of range for n={1}'.format(disk + 1, n))
                if disk in seen:
                    raise ParameterError(u'disk {0} frozen twice'.format(disk + 1))
                seen.add(disk)
            items.append((peg, disks))
        items.sort()
        if len(set(peg for (peg, _) in items)) != len(items):
            raise ParameterError(u'a peg is frozen twice')
        self.p      = p
        self.n      = n
        self.frozen = tuple(items)

    #=== derived

    @property
    def frozen_pegs(self):
        return frozenset(peg for (peg, _) in self.frozen)

    @property
    def frozen_disks(self):
        return frozenset(disk for (_, disks) in self.frozen for disk in disks)

    @property
    def unfrozen_disks(self):
        frozen = self.frozen_disks
        return [disk for disk in range(self.n) if disk not in frozen]

    @property
    def free_pegs(self):
        frozen = self.frozen_pegs
        return [peg for peg in range(self.p) if peg not in frozen]

    def rho(self):
        """disk -> peg, None for an unfrozen disk"""
        result = [None] * self.n
        for (peg, disks) in self.frozen:
            for disk in disks:
                result[disk] = peg
        return tuple(result)

    def disks_on(self, peg):
        for (q, disks) in self.frozen:
            if q == peg:
                return disks
        return None

    def allowed_pegs(self, disk):
        peg = self.rho()[disk]
        if peg is not None:
            return frozenset([peg])
        return frozenset(self.free_pegs)

    def is_regular(self):
        if self.p == 3:
            return not self.frozen
        if (self.n - 1) % (self.p - 2) != 0 or len(self.frozen) != self.p - 3:
            return False
        size = frozen_size(self.p, self.n)
        return all(len(disks) == size for (_, disks) in self.frozen)

    def contains(self, cfg):
        if cfg.p != self.p or cfg.n != self.n:
            return False
        rho    = self.rho()
        frozen = self.frozen_pegs
        for (disk, peg) in enumerate(cfg.pegs):
            if rho[disk] is None:
                if peg in frozen:
                    return False
            elif rho[disk] != peg:
                return False
        return True

    #=== identity

    def key(self):
        return (self.p, self.n, self.frozen)

    def __eq__(self, other):
        return isinstance(other, Pegset) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return u'|'.join(
            u'{0}:{{{1}}}'.format(peg + 1, u','.join(str(disk + 1) for disk in disks))
            for (peg, disks) in self.frozen
        ) or u'-'

    def __repr__(self):
        return u'Pegset(p={0}, n={1}, {2})'.format(self.p, self.n, self)

    def to_json(self):
        return {
            u'n':      self.n,
            u'p':      self.p,
            u'frozen': [
                {u'peg': peg + 1, u'disks': [disk + 1 for disk in disks]}
                for (peg, disks) in self.frozen
            ],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            data[u'p'], data[u'n'],
            [(item[u'peg'] - 1, [disk - 1 for disk in item[u'disks']]) for item in data[u'frozen']],
        )

class PegsetGraph(object):
    """I_p^n or G_4^n; vertex i of `graph` is pegsets[i]"""

    def __init__(self, family, p, n, pegsets, graph):
        self.family  = family
        self.p       = p
        self.n       = n
        self.pegsets = pegsets
        self.graph   = graph
        self.index   = dict((ps, i) for (i, ps) in enumerate(pegsets))

    def node_of(self, ps):
        return self.index[ps]

    def number_of_nodes(self):
        return self.graph.number_of_nodes()

#=== membership

def pegset_members(ps):
    """codes of the configurations in ps"""
    GraphCore.check_materialization(ps.p ** ps.n, u'hanoi')
    choices = [sorted(ps.allowed_pegs(disk)) for disk in range(ps.n)]
    return frozenset(
        state_space.encode(pegs, ps.p) for pegs in itertools.product(*choices)
    )

def shared_configuration(u, v):
    """
    A configuration in both pegsets (lowest peg per disk), None when they
    are disjoint. Disks are independent, so this decides intersection.
    """
    if (u.p, u.n) != (v.p, v.n):
        raise ParameterError(u'pegsets of different shapes')
    pegs = []
    for disk in range(u.n):
        common = u.allowed_pegs(disk) & v.allowed_pegs(disk)
        if not common:
            return None
        pegs.append(min(common))
    return state_space.Configuration(pegs, u.p)

def _check_regular(*pegsets):
    for ps in pegsets:
        if not ps.is_regular():
            raise ParameterError(u'{0!r} is not a regular pegset'.format(ps))

def regular_adjacent(u, v):
    """
    Regular pegsets intersect iff
    - a disk frozen by both is frozen onto the same peg,
    - a disk frozen only by u sits on a peg v leaves free,
    - a disk frozen only by v sits on a peg u leaves free,
    - if some disk is frozen by neither, some peg is frozen by neither.
    """
    _check_regular(u, v)
    if (u.p, u.n) != (v.p, v.n):
        raise ParameterError(u'pegsets of different shapes')
    if u == v:
        return False
    (ru, rv) = (u.rho(), v.rho())
    (fu, fv) = (u.frozen_pegs, v.frozen_pegs)
    for disk in range(u.n):
        if ru[disk] is not None and rv[disk] is not None and ru[disk] != rv[disk]:
            return False
    for disk in range(u.n):
        if ru[disk] is not None and rv[disk] is None and ru[disk] in fv:
            return False
    for disk in range(u.n):
        if rv[disk] is not None and ru[disk] is None and rv[disk] in fu:
            return False
    if any(ru[disk] is None and rv[disk] is None for disk in range(u.n)):
        if len(fu | fv) >= u.p:
            return False
    return True

#=== enumeration

def regular_pegset_count(p, n):
    """C(p, p-3) * n! / ((f!)^(p-3) * (f+1)!), f = (n-1)/(p-2)"""
    f = frozen_size(p, n)
    if p == 3:
        return 1
    return (
        _binomial(p, p - 3) * math.factorial(n) //
        (math.factorial(f) ** (p - 3) * math.factorial(n - (p - 3) * f))
    )

def enumerate_regular_pegsets(p, n):
    f = frozen_size(p, n)
    GraphCore.check_materialization(regular_pegset_count(p, n), u'ipn')
    result = []

    def assign(pegs, free, frozen):
        if not pegs:
            result.append(Pegset(p, n, frozen))
            return
        for disks in itertools.combinations(free, f):
            rest = [disk for disk in free if disk not in disks]
            assign(pegs[1:], rest, frozen + [(pegs[0], disks)])

    for pegs in itertools.combinations(range(p), p - 3):
        assign(list(pegs), list(range(n)), [])
    result.sort()
    return result

def _pegset_graph(family, p, n, pegsets, adjacent):
    g = GraphCore.new_graph(family, {u'p': p, u'n': n})
    for (i, ps) in enumerate(pegsets):
        g.add_node(i, label=ps)
    for i in range(len(pegsets)):
        for j in range(i + 1, len(pegsets)):
            if adjacent(pegsets[i], pegsets[j]):
                g.add_edge(i, j)
    return PegsetGraph(family, p, n, pegsets, GraphCore.announce(g))

def build_intersection_graph(p, n):
    """I_p^n"""
    return _pegset_graph(u'ipn', p, n, enumerate_regular_pegsets(p, n), regular_adjacent)

def g4_vertex_count(n):
    return 4 * sum(_binomial(n, k) for k in range((n - 1) // 2 + 1))

def g4_adjacent(u, v):
    """distinct frozen pegs, disjoint frozen disks"""
    return u.frozen_pegs != v.frozen_pegs and not (u.frozen_disks & v.frozen_disks)

def enumerate_g4_pegsets(n):
    if n < 3:
        raise ParameterError(u'G_4^n needs n >= 3 (got {0})'.format(n))
    GraphCore.check_materialization(g4_vertex_count(n), u'g4')
    result = []
    for peg in range(4):
        for size in range((n - 1) // 2 + 1):
            for disks in itertools.combinations(range(n), size):
                result.append(Pegset(4, n, [(peg, disks)]))
    result.sort()
    return result

def build_g4(n):
    """G_4^n, zero-disk freezes included"""
    return _pegset_graph(u'g4', 4, n, enumerate_g4_pegsets(n), g4_adjacent)

#=== automorphisms

def swap_automorphism(ps, i, j):
    """exchange the roles of disks i and j"""
    if not (0 <= i < ps.n and 0 <= j < ps.n):
        raise ParameterError(u'disk indices ({0}, {1}) out of range for n={2}'.format(i + 1, j + 1, ps.n))
    swap = {i: j, j: i}
    return Pegset(
        ps.p, ps.n,
        [(peg, [swap.get(disk, disk) for disk in disks]) for (peg, disks) in ps.frozen],
    )

def peg_relabel(ps, perm):
    """perm[q] is the new name of peg q"""
    if sorted(perm) != list(range(ps.p)):
        raise ParameterError(u'{0!r} is not a permutation of the pegs'.format(perm))
    return Pegset(ps.p, ps.n, [(perm[peg], disks) for (peg, disks) in ps.frozen])

def graph_map(pg, fn):
    """node -> node mapping induced on a PegsetGraph by a pegset map"""
    return dict((i, pg.node_of(fn(ps))) for (i, ps) in enumerate(pg.pegsets))

def is_automorphism(pg, mapping):
    if sorted(mapping.values()) != sorted(mapping):
        return False
    g = pg.graph
    if any(not g.has_edge(mapping[u], mapping[v]) for (u, v) in g.edges()):
        return False
    return g.number_of_edges() == len(set(
        tuple(sorted((mapping[u], mapping[v]))) for (u, v) in g.edges()
    ))

def orbit(ps):
    """closure of ps under every disk swap and every peg transposition"""
    seen  = set([ps])
    queue = collections.deque([ps])
    while queue:
        cur = queue.popleft()
        images = [swap_automorphism(cur, i, j) for (i, j) in itertools.combinations(range(cur.n), 2)]
        for (a, b) in itertools.combinations(range(cur.p), 2):
            perm = list(range(cur.p))
            (perm[a], perm[b]) = (b, a)
            images.append(peg_relabel(cur, perm))
        for image in images:
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen

#=== paths

def _move(cur, drop, peg, disks):
    """unfreeze `drop`, freeze `disks` (unfrozen by cur) onto the free `peg`"""
    frozen = [(q, ds) for (q, ds) in cur.frozen if q != drop]
    frozen.append((peg, tuple(disks)))
    return Pegset(cur.p, cur.n, frozen)

def _shortcut(start, walk):
    """jump ahead to the furthest later pegset adjacent to the current one"""
    result = []
    cur    = start
    i      = 0
    while i < len(walk):
        j = len(walk) - 1
        while j > i and not regular_adjacent(cur, walk[j]):
            j -= 1
        cur = walk[j]
        result.append(cur)
        i = j + 1
    return result

def pegset_path(u, v):
    """
    Walk from u to v in I_p^n, every step an edge.

    Frozen pegs are first matched one at a time. Then peg by peg, in
    increasing order, the disks v wants there are brought in: a disk left
    unfrozen by the current pegset is swapped in through a free auxiliary peg
    (two steps); a disk frozen on a later peg is first released from it (two
    more steps). Disks, auxiliary pegs and dropped disks are always the
    lowest eligible ones.

    :returns: list of pegsets after u, ending at v; empty when u == v
    """
    _check_regular(u, v)
    if (u.p, u.n) != (v.p, v.n):
        raise ParameterError(u'pegsets of different shapes')
    if u == v:
        return []
    if regular_adjacent(u, v):
        return [v]
    f    = frozen_size(u.p, u.n)
    walk = []
    cur  = u

    while cur.frozen_pegs != v.frozen_pegs:
        drop = min(cur.frozen_pegs - v.frozen_pegs)
        peg  = min(v.frozen_pegs - cur.frozen_pegs)
        cur  = _move(cur, drop, peg, cur.unfrozen_disks[:f])
        walk.append(cur)

    for q in sorted(v.frozen_pegs):
        target = set(v.disks_on(q))
        while set(cur.disks_on(q)) != target:
            rho     = cur.rho()
            current = set(cur.disks_on(q))
            missing = sorted(target - current)
            loose   = [disk for disk in missing if rho[disk] is None]
            aux     = min(cur.free_pegs)
            if loose:
                disk = loose[0]
                out  = min(current - target)
                cur  = _move(cur, q, aux, [x for x in cur.unfrozen_disks if x != disk])
                walk.append(cur)
                cur  = _move(cur, aux, q, sorted((current - set([out])) | set([disk])))
                walk.append(cur)
            else:
                disk  = missing[0]
                other = rho[disk]
                held  = set(cur.disks_on(other))
                spare = cur.unfrozen_disks[0]
                cur   = _move(cur, other, aux, cur.unfrozen_disks[1:])
                walk.append(cur)
                cur   = _move(cur, aux, other, sorted((held - set([disk])) | set([spare])))
                walk.append(cur)

    assert cur == v
    return _shortcut(u, walk)

def path_bound(n):
    return d.KAPPA * n

#=== configurations <-> pegsets

def pegsets_of_config(cfg, family=FAMILY_REGULAR):
    """
    Every pegset of the family holding cfg: a frozen peg must carry exactly
    the disks frozen onto it.
    """
    counts = dict((peg, cfg.disks_on(peg)) for peg in range(cfg.p))
    if family == FAMILY_REGULAR:
        f = frozen_size(cfg.p, cfg.n)
        candidates = [peg for peg in range(cfg.p) if len(counts[peg]) == f]
        return sorted(
            Pegset(cfg.p, cfg.n, [(peg, counts[peg]) for peg in pegs])
            for pegs in itertools.combinations(candidates, cfg.p - 3)
        )
    if family == FAMILY_G4:
        if cfg.p != 4:
            raise ParameterError(u'G_4^n pegsets need p=4')
        limit = (cfg.n - 1) // 2
        return sorted(
            Pegset(4, cfg.n, [(peg, counts[peg])])
            for peg in range(4) if len(counts[peg]) <= limit
        )
    raise ParameterError(u'unknown pegset family "{0}"'.format(family))

def configs_of_pegsets(pegsets):
    """union of the member codes"""
    result = set()
    for ps in pegsets:
        result |= pegset_members(ps)
    return frozenset(result)

def bounds_f(p, n):
    """
    Largest number of regular pegsets sharing one configuration: the most
    pegs that can each carry exactly f disks, choose p-3. This is p-2 once
    f >= 2 and C(p-1, 2) for f = 1.
    """
    f = frozen_size(p, n)
    if p == 3:
        return 1
    best = 0
    for m in range(p + 1):
        rest = n - m * f
        if rest < 0 or (rest > 0 and m == p):
            continue
        best = max(best, m)
    return _binomial(best, p - 3)
