#!/usr/bin/python
"""
\brief The acceptance battery: seventeen numbered criteria, each run in
isolation so that one failing (or crashing) criterion never hides the
others.

Every criterion is a function `criterion(quick)` returning (passed, detail).
`quick` shrinks the parameter ranges; QUICK_CRITERIA lists the criteria the
quick suite runs at all.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import collections
import multiprocessing
import os
import time
import traceback
from fractions import Fraction

import networkx as nx
import numpy

from . import BenchConfig
from . import BenchLog
from . import BenchSettings
from . import GraphCore
from .Graphs import GraphDefines as d
from .Graphs import corpus
from .Graphs import decomposition
from .Graphs import fractal
from .Graphs import pegsets
from .Graphs import separators
from .Graphs import setfamilies
from .Graphs import state_space

# =========================== defines =========================================

SUITE_PRIMARY  = u'primary'

QUICK_CRITERIA = (1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 16, 17)

MASS_BETA      = Fraction(3, 4)

CriterionResult = collections.namedtuple(
    u'CriterionResult', [u'number', u'name', u'passed', u'detail', u'seconds']
)

# =========================== helpers =========================================

def _first(failures, limit=3):
    return u'; '.join(str(f) for f in failures[:limit])

# =========================== criteria ========================================

def hanoi_counts(quick):
    limit    = 4096 if quick else 65536
    checked  = 0
    failures = []
    for p in (3, 4, 5):
        n = 1
        while p ** n <= limit:
            g = state_space.build_hanoi(p, n)
            edges = (p * (p - 1) // 2) * (p ** n - (p - 2) ** n) // 2
            if g.number_of_nodes() != p ** n or g.number_of_edges() != edges:
                failures.append(
                    u'H_{0}^{1}: {2} vertices, {3} edges'.format(
                        p, n, g.number_of_nodes(), g.number_of_edges()
                    )
                )
            checked += 1
            n += 1
    return (not failures, _first(failures) or u'{0} graphs match'.format(checked))

def three_peg_diameter(quick):
    top      = 8 if quick else 12
    failures = []
    for n in range(1, top + 1):
        g = state_space.build_hanoi(3, n, implicit=True)
        (a, b) = state_space.traditional_perfect_pair(n)
        dist   = GraphCore.bfs_distance(g, a, b)
        if dist != 2 ** n - 1:
            failures.append(u'n={0}: distance {1}'.format(n, dist))
    return (not failures, _first(failures) or u'2^n-1 for n <= {0}'.format(top))

def sierpinski_width(quick):
    top      = 6 if quick else 8
    failures = []
    for n in range(1, top + 1):
        t = decomposition.sierpinski_decomposition(n)
        verdict  = decomposition.validate(fractal.build_sierpinski(n).graph, t)
        expected = 2 if n == 1 else 4
        if not verdict.ok or verdict.value != expected or len(t) != decomposition.sierpinski_bag_count(n):
            failures.append(u'n={0}: {1}'.format(n, verdict.value if verdict.ok else verdict.violations[:2]))
    return (not failures, _first(failures) or u'width 4 for 3 <= n <= {0}'.format(top))

def octahedron_witness(quick):
    path    = os.path.join(BenchSettings.BenchSettings().witnessDirectory, u'octahedron_s5.json')
    witness = fractal.load_witness(path)
    verdict = fractal.verify_subdivision(fractal.build_sierpinski(5), witness)
    width   = decomposition.exact_treewidth(nx.octahedral_graph())
    passed  = verdict.ok and width == 4
    detail  = u'witness {0}, tw(octahedron)={1}'.format(
        u'verifies' if verdict.ok else u'rejected: ' + _first(verdict.violations), width
    )
    return (passed, detail)

def hanoi_width_pipeline(quick):
    failures = []
    widths   = []
    for n in range(1, (4 if quick else 6) + 1):
        s      = fractal.build_sierpinski(n + 1)
        model  = fractal.embed_hanoi_minor(s)
        lifted = decomposition.lift_through_minor(decomposition.sierpinski_decomposition(n + 1), model)
        verdict = decomposition.validate(model.pattern, lifted)
        if not verdict.ok or verdict.value > 4:
            failures.append(u'lift n={0}: {1}'.format(n, verdict.value if verdict.ok else verdict.violations[:2]))
        else:
            widths.append(verdict.value)
    for n in range(1, (5 if quick else 7) + 1):
        (s, model) = fractal.contract_boundary_edges(state_space.build_hanoi(3, n))
        if not fractal.verify_minor_model(model).ok:
            failures.append(u'contraction n={0}: model rejected'.format(n))
            continue
        if n <= 4:
            owner    = model.owner()
            quotient = nx.Graph()
            quotient.add_nodes_from(model.branch_sets)
            quotient.add_edges_from(
                (owner[a], owner[b]) for (a, b) in model.host.edges() if owner[a] != owner[b]
            )
            if not nx.is_isomorphic(quotient, fractal.build_sierpinski(n).graph):
                failures.append(u'contraction n={0}: not isomorphic to S_{0}'.format(n))
    return (not failures, _first(failures) or u'lifted widths {0}'.format(widths))

def separator_construction(quick):
    cases = [(4, 5), (5, 4)] if quick else [(4, 7), (5, 6)]
    failures = []
    for (p, top) in cases:
        for n in range(1, top + 1):
            tree    = separators.recursive_separator(p, n)
            verdict = tree.verify()
            if not verdict.ok:
                failures.append(u'p={0} n={1}: {2}'.format(p, n, _first(verdict.violations, 2)))
    return (not failures, _first(failures) or u'every node verifies within its level bound')

def game_endgame(quick):
    h3 = state_space.build_hanoi(3, 3)
    two   = separators.connection_probability(h3, separators.two_state_removal(3)).probability
    three = separators.connection_probability(h3, separators.three_state_removal(3)).probability
    h8 = state_space.build_hanoi(3, 8, implicit=True)
    two8   = separators.connection_probability(h8, separators.two_state_removal(8)).probability
    three8 = separators.connection_probability(h8, separators.three_state_removal(8)).probability
    passed = (
        two == Fraction(373, 729) and three == Fraction(192, 729) and
        abs(two8 - Fraction(5, 9)) <= Fraction(1, 100) and
        abs(three8 - Fraction(1, 3)) <= Fraction(1, 100)
    )
    detail = u'n=3: {0}, {1}; n=8: {2}, {3}'.format(
        separators.format_fraction(two), separators.format_fraction(three),
        separators.format_fraction(two8), separators.format_fraction(three8),
    )
    return (passed, detail)

def sandwich(quick):
    graphs   = corpus.small_graphs(max_vertices=9 if quick else 12)
    failures = []
    for (name, g) in graphs:
        r = separators.brute_force_r(g)[0]
        f = separators.brute_force_f(g)[0]
        s = separators.brute_force_s(g)
        if not r <= f <= 3 * s:
            failures.append(u'{0}: r={1} f={2} s={3}'.format(name, r, f, s))
    names  = [name for (name, _) in graphs]
    passed = not failures and len(graphs) >= 20 and u'hanoi_3_2' in names
    return (passed, _first(failures) or u'r <= f <= 3s on {0} graphs'.format(len(graphs)))

def regular_adjacency(quick):
    failures = []
    pairs    = 0
    for (p, n) in ((4, 3), (4, 5), (5, 4)):
        family  = pegsets.enumerate_regular_pegsets(p, n)
        members = [pegsets.pegset_members(ps) for ps in family]
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                pairs += 1
                oracle = bool(members[i] & members[j])
                if pegsets.regular_adjacent(family[i], family[j]) != oracle:
                    failures.append(u'{0} / {1}'.format(family[i], family[j]))
    return (not failures, _first(failures) or u'{0} pairs agree'.format(pairs))

def pegset_structure(quick):
    failures = []
    for (p, n) in ((4, 3), (4, 5), (4, 7), (5, 4), (6, 5)):
        count = len(pegsets.enumerate_regular_pegsets(p, n))
        if count != pegsets.regular_pegset_count(p, n):
            failures.append(u'I_{0}^{1}: {2} != {3}'.format(p, n, count, pegsets.regular_pegset_count(p, n)))
    pg = pegsets.build_intersection_graph(4, 5)
    for i in range(pg.n):
        for j in range(i + 1, pg.n):
            mapping = pegsets.graph_map(pg, lambda ps: pegsets.swap_automorphism(ps, i, j))
            if not pegsets.is_automorphism(pg, mapping):
                failures.append(u'disk swap ({0},{1}) is not an automorphism'.format(i + 1, j + 1))
    closure = pegsets.orbit(pg.pegsets[0])
    if closure != set(pg.pegsets):
        failures.append(u'orbit holds {0} of {1} pegsets'.format(len(closure), pg.number_of_nodes()))
    return (not failures, _first(failures) or u'counts match, I_4^5 is vertex-transitive')

def pegset_paths(quick):
    settings  = BenchSettings.BenchSettings()
    rng       = numpy.random.RandomState(settings.seed)
    sizes     = (5, 7) if quick else (5, 7, 9)
    trials    = 50 if quick else 200
    failures  = []
    diameters = collections.OrderedDict()
    for n in sizes:
        pg = pegsets.build_intersection_graph(4, n)
        for _ in range(trials):
            (i, j) = [int(x) for x in rng.randint(pg.number_of_nodes(), size=2)]
            (u, v) = (pg.pegsets[i], pg.pegsets[j])
            path   = pegsets.pegset_path(u, v)
            walk   = [u] + path
            if any(not pegsets.regular_adjacent(a, b) for (a, b) in zip(walk, walk[1:])):
                failures.append(u'n={0}: {1} -> {2} uses a non-edge'.format(n, u, v))
            elif walk[-1] != v:
                failures.append(u'n={0}: {1} -> {2} ends elsewhere'.format(n, u, v))
            elif len(path) > pegsets.path_bound(n):
                failures.append(u'n={0}: {1} steps over {2}'.format(n, len(path), pegsets.path_bound(n)))
            elif len(path) < GraphCore.bfs_distance(pg.graph, i, j):
                failures.append(u'n={0}: shorter than BFS'.format(n))
        # vertex-transitive: one eccentricity is the diameter
        diameters[n] = GraphCore.diameter(pg.graph, sources=[0])
    if any(diam > d.KAPPA * n for (n, diam) in diameters.items()):
        failures.append(u'diameters {0} grow faster than {1}n'.format(dict(diameters), d.KAPPA))
    detail = u'diameters ' + u', '.join(u'n={0}: {1}'.format(n, x) for (n, x) in diameters.items())
    return (not failures, _first(failures) or detail)

def kneser_diameter(quick):
    top      = 9 if quick else 12
    failures = []
    checked  = 0
    for n in range(3, top + 1):
        for k in range(1, (n - 1) // 2 + 1):
            g    = setfamilies.build_kneser(n, k)
            diam = GraphCore.diameter(g, sources=[min(g.nodes())])
            if diam != setfamilies.kneser_diameter(n, k):
                failures.append(u'Kn({0},{1}): {2}'.format(n, k, diam))
            checked += 1
    return (not failures, _first(failures) or u'{0} Kneser graphs match'.format(checked))

def kruskal_katona(quick):
    seed = BenchSettings.BenchSettings().seed
    rows = setfamilies.kk_experiment(100 if quick else 1000, 8 if quick else 12, seed)
    bad  = [row for row in rows if not row[u'passed']]
    return (not bad, _first(bad) or u'{0} families'.format(len(rows)))

def tensor_treewidth(quick):
    factors  = [(u'K3', nx.complete_graph(3)), (u'K4', nx.complete_graph(4)), (u'C5', nx.cycle_graph(5))]
    graphs   = corpus.connected_graphs(4 if quick else 5)
    failures = []
    for (i, g) in enumerate(graphs):
        width = decomposition.exact_treewidth(g)
        for (name, h) in factors:
            product = setfamilies.tensor_product(g, h)
            cap     = product.number_of_nodes()
            if decomposition.treewidth_at_most(product, width - 1, cap=cap):
                failures.append(u'graph {0} x {1}: width below {2}'.format(i, name, width))
    return (not failures, _first(failures) or u'{0} graphs x 3 factors'.format(len(graphs)))

def haven_treewidth(quick):
    graphs   = corpus.small_graphs(max_vertices=7 if quick else 10)
    failures = []
    for (name, g) in graphs:
        width = decomposition.exact_treewidth(g)
        for k in range(1, 7):
            query = decomposition.haven_order_at_least(g, k)
            if query.robber_wins != (width >= k - 1):
                failures.append(u'{0}: k={1} {2}, tw={3}'.format(name, k, query.outcome, width))
    return (not failures, _first(failures) or u'{0} graphs, k <= 6'.format(len(graphs)))

def mapping_bounds(quick):
    failures = []
    notes    = []
    for (p, n) in ((4, 5), (5, 4)):
        worst = 0
        for code in range(p ** n):
            cfg   = state_space.Configuration.decode(code, p, n)
            worst = max(worst, len(pegsets.pegsets_of_config(cfg)))
        bound = pegsets.bounds_f(p, n)
        if worst > bound:
            failures.append(u'H_{0}^{1}: {2} > {3}'.format(p, n, worst, bound))
        if bound == p - 2:
            notes.append(u'H_{0}^{1} max {2} <= p-2={3}'.format(p, n, worst, bound))
        else:
            # one frozen disk per peg lets more pegsets meet than p-2
            notes.append(
                u'H_{0}^{1} max {2} <= {3} from frozen-disk counting, not p-2={4}'.format(
                    p, n, worst, bound, p - 2
                )
            )
    worst = 0
    for code in range(4 ** 5):
        cfg   = state_space.Configuration.decode(code, 4, 5)
        worst = max(worst, len(pegsets.pegsets_of_config(cfg, family=pegsets.FAMILY_G4)))
    if worst > 4:
        failures.append(u'G_4^5: {0} > 4'.format(worst))
    notes.append(u'G_4^5 max {0}'.format(worst))
    return (not failures, _first(failures) or u', '.join(notes))

def central_mass(quick):
    values = collections.OrderedDict(
        (n, setfamilies.central_mass_fraction(n, MASS_BETA)) for n in range(1, 64, 2)
    )
    threshold = None
    for n in reversed(list(values)):
        if values[n] < MASS_BETA:
            break
        threshold = n
    passed = threshold is not None and values[41] >= MASS_BETA
    detail = u'holds for odd n >= {0}; n=41: {1}'.format(
        threshold, separators.format_fraction(values[41])
    )
    return (passed, detail)

CRITERIA = collections.OrderedDict([
    (1,  (u'hanoi counts',               hanoi_counts)),
    (2,  (u'three-peg diameter',         three_peg_diameter)),
    (3,  (u'sierpinski decomposition',   sierpinski_width)),
    (4,  (u'octahedron witness',         octahedron_witness)),
    (5,  (u'hanoi width pipeline',       hanoi_width_pipeline)),
    (6,  (u'separator construction',     separator_construction)),
    (7,  (u'game endgame',               game_endgame)),
    (8,  (u'r <= f <= 3s',               sandwich)),
    (9,  (u'regular adjacency',          regular_adjacency)),
    (10, (u'pegset counts and symmetry', pegset_structure)),
    (11, (u'pegset paths',               pegset_paths)),
    (12, (u'kneser diameter',            kneser_diameter)),
    (13, (u'kruskal-katona',             kruskal_katona)),
    (14, (u'tensor treewidth',           tensor_treewidth)),
    (15, (u'haven vs treewidth',         haven_treewidth)),
    (16, (u'mapping bounds',             mapping_bounds)),
    (17, (u'central mass',               central_mass)),
])

# =========================== body ============================================

def run_criterion(number, quick):
    """run one criterion; an exception is a failure, never a crash"""
    (name, function) = CRITERIA[number]
    start = time.time()
    try:
        (passed, detail) = function(quick)
    except Exception as err:
        passed = False
        detail = u'{0}: {1}'.format(type(err).__name__, err)
        traceback.print_exc()
    seconds = round(time.time() - start, 3)
    BenchLog.BenchLog().log(
        BenchLog.LOG_CRITERION_RESULT,
        {u'criterion': number, u'passed': bool(passed), u'detail': detail, u'seconds': seconds}
    )
    return CriterionResult(number, name, bool(passed), detail, seconds)

def _run_in_worker(params):
    """
    Pool entry point. A forked worker inherits the parent's singletons;
    they are replaced by fresh ones logging to a per-process file.
    """
    config = BenchConfig.BenchConfig(configdata=params[u'config_data'])
    BenchLog.BenchLog().destroy()
    BenchSettings.BenchSettings().destroy()

    settings = BenchSettings.BenchSettings(
        command=u'acceptance-pid{0}'.format(os.getpid()),
        **params[u'settings_kwargs']
    )
    settings.setLogDirectory(params[u'log_directory'])
    log = BenchLog.BenchLog()
    log.set_log_filters(config.logging)
    try:
        return run_criterion(params[u'number'], params[u'quick'])
    finally:
        log.destroy()
        settings.destroy()

def select(quick=False, only=None):
    numbers = list(CRITERIA)
    if quick:
        numbers = [n for n in numbers if n in QUICK_CRITERIA]
    if only:
        unknown = [n for n in only if n not in CRITERIA]
        if unknown:
            raise ValueError(u'unknown criteria {0}'.format(unknown))
        numbers = [n for n in numbers if n in only]
    return numbers

def run_suite(config, settings_kwargs, quick=False, only=None, threads=1):
    """
    :returns: CriterionResult list in criterion order, whatever the pool
              finishing order
    """
    numbers = select(quick, only)
    if threads <= 1 or len(numbers) <= 1:
        return [run_criterion(number, quick) for number in numbers]

    multiprocessing.freeze_support()
    pool = multiprocessing.Pool(min(threads, len(numbers)))
    try:
        async_result = pool.map_async(
            _run_in_worker,
            [
                {
                    u'number':          number,
                    u'quick':           quick,
                    u'config_data':     config.get_config_data(),
                    u'settings_kwargs': settings_kwargs,
                    u'log_directory':   config.get_log_directory_name(),
                }
                for number in numbers
            ],
            chunksize=1,
        )
        # get() raises an exception raised in a worker
        results = async_result.get()
    finally:
        pool.close()
        pool.join()
    return sorted(results, key=lambda r: r.number)

def format_result(result):
    return u'[{0}] {1:2d} {2:<28} {3:8.1f}s  {4}'.format(
        u'PASS' if result.passed else u'FAIL',
        result.number, result.name, result.seconds, result.detail,
    )
