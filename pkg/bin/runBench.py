#!/usr/bin/python
"""
\brief Entry point to the workbench: builds graphs, checks certificates, runs
the experiments and the acceptance battery.

Exit codes: 0 pass, 1 verification failure, 2 parameter error, 3 cap exceeded.

Examples:
    python runBench.py generate hanoi --pegs 3 --disks 4 --out h34
    python runBench.py verify decomposition s6.edgelist s6.td.json
    python runBench.py analyze fairness --pegs 3 --disks 3..9 --strategy two-state
    python runBench.py acceptance --suite primary --quick
"""
from __future__ import print_function

# =========================== adjust path =====================================

import os
import sys

if __name__ == '__main__':
    here = sys.path[0]
    sys.path.insert(0, os.path.join(here, '..'))

# =========================== imports =========================================

import argparse
import csv
import json
import logging
import subprocess
import traceback

import networkx as nx

from HanoiBench import Acceptance, \
                       BenchConfig, \
                       BenchErrors, \
                       BenchLog,    \
                       BenchSettings, \
                       GraphCore,   \
                       RunManifest
from HanoiBench.BenchErrors import ParameterError
from HanoiBench.Graphs import decomposition, \
                              fractal,       \
                              pegsets,       \
                              separators,    \
                              setfamilies,   \
                              state_space

# =========================== defines =========================================

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), u'config.json')

FAMILIES       = [u'hanoi', u'sierpinski', u'ipn', u'g4', u'kneser', u'ds', u'tensor']
KINDS          = [u'decomposition', u'separator', u'minor', u'subdivision']
ANALYSES       = [
    u'fairness', u'separators', u'diameter', u'expansion', u'kk', u'mass',
    u'transitivity', u'slice', u'g4',
]

log = logging.getLogger(u'runBench')

# =========================== helpers =========================================

def parse_range(text):
    """'3..9' -> [3, ..., 9]; '3,5,7' -> [3, 5, 7]; '4' -> [4]"""
    if text is None:
        return None
    try:
        if u'..' in text:
            (low, high) = text.split(u'..')
            return list(range(int(low), int(high) + 1))
        return [int(x) for x in text.split(u',') if x.strip()]
    except ValueError:
        raise ParameterError(u'malformed range "{0}" (use 3..9 or 3,5,7)'.format(text))

def _require(cliparams, *names):
    for name in names:
        if getattr(cliparams, name) is None:
            raise ParameterError(u'--{0} is required here'.format(name.replace(u'_', u'-')))

def _single(values, name):
    if values is None or len(values) != 1:
        raise ParameterError(u'--{0} takes a single value here'.format(name))
    return values[0]

def parseCliParams(argv=None):

    parser = argparse.ArgumentParser(
        description = u'Hanoi graph workbench.',
    )
    parser.add_argument(
        '--config',
        dest       = 'config',
        action     = 'store',
        default    = DEFAULT_CONFIG,
        help       = 'Location of the configuration file.',
    )
    parser.add_argument(
        '--seed',
        dest       = 'seed',
        type       = int,
        default    = None,
        help       = 'Seed of the randomized experiments (overrides config.json).',
    )
    parser.add_argument(
        '--threads',
        dest       = 'threads',
        type       = int,
        default    = None,
        help       = 'Worker processes (overrides config.json).',
    )
    parser.add_argument(
        '--manifest',
        dest       = 'manifest',
        default    = None,
        help       = 'Write a run manifest (JSON) to this path.',
    )
    commands = parser.add_subparsers(dest='command')

    #=== generate
    generate = commands.add_parser('generate', help='Write a graph as edge list and labels.')
    generate.add_argument('family', choices=FAMILIES)
    generate.add_argument('--pegs',  type=int, default=None)
    generate.add_argument('--disks', type=int, default=None)
    generate.add_argument('--n',     type=int, default=None)
    generate.add_argument('--k',     type=int, default=None)
    generate.add_argument('--r',     type=int, default=None)
    generate.add_argument('--left',  default=None, help='tensor factor, e.g. kneser:5:2')
    generate.add_argument('--right', default=None, help='tensor factor, e.g. complete:4')
    generate.add_argument('--out',   required=True, help='output prefix')
    generate.add_argument('--format', choices=[u'edgelist', u'json'], default=u'edgelist')
    generate.add_argument(
        '--decomposition', action='store_true',
        help='sierpinski: also write the width-4 tree decomposition',
    )
    generate.add_argument(
        '--minor', action='store_true',
        help='sierpinski: also write the H_3^(n-1) minor model',
    )
    generate.add_argument(
        '--witness', action='store_true',
        help='sierpinski (n >= 5): also write an octahedron subdivision',
    )
    generate.add_argument(
        '--separator', action='store_true',
        help='hanoi: also write the level separation',
    )

    #=== verify
    verify = commands.add_parser('verify', help='Check a certificate against a graph file.')
    verify.add_argument('kind', choices=KINDS)
    verify.add_argument('graph_file')
    verify.add_argument('witness_file')
    verify.add_argument('--c', type=float, default=None, help='separator balance override')

    #=== analyze
    analyze = commands.add_parser('analyze', help='Run an experiment, emit CSV.')
    analyze.add_argument('analysis', choices=ANALYSES)
    analyze.add_argument('--pegs',     type=int, default=3)
    analyze.add_argument('--disks',    default=None, help='3..9 or 3,5,7')
    analyze.add_argument('--n',        default=None, help='3..9 or 3,5,7')
    analyze.add_argument('--k',        type=int, default=None)
    analyze.add_argument('--l',        type=int, default=None)
    analyze.add_argument('--beta',     type=float, default=0.75)
    analyze.add_argument('--strategy', choices=list(separators.STRATEGIES), default=separators.STRATEGY_TWO_STATE)
    analyze.add_argument('--without-replacement', dest='without_replacement', action='store_true')
    analyze.add_argument('--family',   default=None)
    analyze.add_argument('--trials',   type=int, default=100)
    analyze.add_argument('--max-n',    dest='max_n', type=int, default=12)
    analyze.add_argument('--out',      default=None, help='CSV path, stdout by default')

    #=== acceptance
    acceptance = commands.add_parser('acceptance', help='Run the acceptance battery.')
    acceptance.add_argument('--suite', choices=[Acceptance.SUITE_PRIMARY], default=Acceptance.SUITE_PRIMARY)
    acceptance.add_argument('--quick', action='store_true')
    acceptance.add_argument('--only',  default=None, help='comma-separated criterion numbers')
    acceptance.add_argument('--out',   default=None, help='write the results as JSON')

    cliparams = parser.parse_args(argv)
    if cliparams.command is None:
        parser.error(u'a command is required')
    return cliparams

def write_csv(rows, columns, path, manifest):
    if path is None:
        writer = csv.DictWriter(sys.stdout, fieldnames=columns, lineterminator=u'\n')
        writer.writeheader()
        writer.writerows(rows)
        return
    with open(path, u'w') as f:
        writer = csv.DictWriter(f, fieldnames=columns, lineterminator=u'\n')
        writer.writeheader()
        writer.writerows(rows)
    manifest.add_output(path)
    log.info(u'wrote %d rows to %s', len(rows), path)

def write_json(data, path, manifest):
    with open(path, u'w') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write(u'\n')
    manifest.add_output(path)

def labels_path(graph_file):
    (stem, ext) = os.path.splitext(graph_file)
    if ext not in (u'.edgelist', u'.json'):
        stem = graph_file
    return stem + u'.labels.csv'

# =========================== commands ========================================

#=== generate

def _build(cliparams):
    family = cliparams.family
    if family == u'hanoi':
        _require(cliparams, u'pegs', u'disks')
        return state_space.build_hanoi(cliparams.pegs, cliparams.disks)
    if family == u'sierpinski':
        _require(cliparams, u'n')
        return fractal.build_sierpinski(cliparams.n).graph
    if family == u'ipn':
        _require(cliparams, u'pegs', u'disks')
        return pegsets.build_intersection_graph(cliparams.pegs, cliparams.disks).graph
    if family == u'g4':
        _require(cliparams, u'disks')
        return pegsets.build_g4(cliparams.disks).graph
    if family == u'kneser':
        _require(cliparams, u'n', u'k')
        return setfamilies.build_kneser(cliparams.n, cliparams.k)
    if family == u'ds':
        _require(cliparams, u'n')
        if cliparams.r is None:
            return setfamilies.build_ds_default(cliparams.n)
        return setfamilies.build_ds(cliparams.n, cliparams.r)
    _require(cliparams, u'left', u'right')
    return setfamilies.tensor_product(
        setfamilies.factor_from_spec(cliparams.left),
        setfamilies.factor_from_spec(cliparams.right),
    )

def run_generate(cliparams, config, manifest):
    g      = _build(cliparams)
    prefix = cliparams.out
    ext    = u'.edgelist' if cliparams.format == u'edgelist' else u'.json'
    index  = GraphCore.write_edgelist(g, prefix + ext, fmt=cliparams.format)
    manifest.add_output(prefix + ext)
    column = u'configuration' if cliparams.family == u'hanoi' else u'label'
    GraphCore.write_labels(g, prefix + u'.labels.csv', column=column)
    manifest.add_output(prefix + u'.labels.csv')

    if cliparams.decomposition or cliparams.minor or cliparams.witness:
        if cliparams.family != u'sierpinski':
            raise ParameterError(u'--decomposition, --minor and --witness need the sierpinski family')
    if cliparams.separator and cliparams.family != u'hanoi':
        raise ParameterError(u'--separator needs the hanoi family')

    if cliparams.decomposition:
        t = decomposition.sierpinski_decomposition(cliparams.n)
        write_json(t.to_json(index=index.get), prefix + u'.td.json', manifest)
        with open(prefix + u'.td', u'w') as f:
            f.write(t.to_pace(index, len(index)))
        manifest.add_output(prefix + u'.td')
    if cliparams.minor:
        model   = fractal.embed_hanoi_minor(fractal.SierpinskiGraph(cliparams.n, g))
        pindex  = GraphCore.export_index(model.pattern)
        data    = model.to_json(host_index=index.get, pattern_index=pindex.get)
        data[u'pattern'] = {
            u'family':   u'hanoi',
            u'params':   model.pattern.graph[u'params'],
            u'vertices': len(pindex),
            u'edges':    sorted(sorted((pindex[u], pindex[v])) for (u, v) in model.pattern.edges()),
        }
        write_json(data, prefix + u'.minor.json', manifest)
    if cliparams.witness:
        fractal.save_witness(fractal.octahedron_witness(cliparams.n), prefix + u'.witness.json')
        manifest.add_output(prefix + u'.witness.json')
    if cliparams.separator:
        p       = cliparams.pegs
        verdict = separators.verify_c_separator(
            g, separators.hanoi_level_separator(p, cliparams.disks), separators.c_bound(p)
        )
        if not verdict.ok:
            raise BenchErrors.VerificationError(verdict.violations)
        write_json(verdict.value.to_json(index=index.get), prefix + u'.separator.json', manifest)

    print(u'vertices={0} edges={1}'.format(g.number_of_nodes(), g.number_of_edges()))
    return BenchErrors.EXIT_PASS

#=== verify

def _minor_model(g, data):
    pattern = nx.Graph()
    pattern.add_nodes_from(range(1, data[u'pattern'][u'vertices'] + 1))
    pattern.add_edges_from(tuple(e) for e in data[u'pattern'][u'edges'])
    return fractal.MinorModel.from_json(data, g, pattern)

def run_verify(cliparams, config, manifest):
    g = GraphCore.read_edgelist(cliparams.graph_file)
    with open(cliparams.witness_file, u'r') as f:
        text = f.read()

    kind = cliparams.kind
    if kind == u'decomposition':
        if text.lstrip().startswith(u'{'):
            t = decomposition.TreeDecomposition.from_json(json.loads(text))
        else:
            t = decomposition.TreeDecomposition.from_pace(text)
        verdict = decomposition.validate(g, t)
        summary = u'width={0}'.format(verdict.value)
    elif kind == u'separator':
        separation = separators.Separation.from_json(json.loads(text))
        if cliparams.c is not None:
            separation.c = cliparams.c
        verdict = separators.check_separation(g, separation)
        summary = u'separator={0} A={1} B={2} balance={3}'.format(
            len(separation.separator), len(separation.side_a), len(separation.side_b),
            separators.format_fraction(separation.balance),
        )
    elif kind == u'minor':
        verdict = fractal.verify_minor_model(_minor_model(g, json.loads(text)))
        summary = u'minor model verifies'
    else:
        witness = fractal.SubdivisionWitness.from_json(json.loads(text))
        sidecar = labels_path(cliparams.graph_file)
        if os.path.exists(sidecar):
            ids     = dict((label, i) for (i, label) in GraphCore.read_labels(sidecar).items())
            witness = witness.relabel(dict((v, ids.get(v, v)) for v in witness.vertices()))
        verdict = fractal.verify_subdivision(g, witness)
        summary = u'octahedron subdivision verifies'

    if not verdict.ok:
        print(u'FAIL {0}: {1} violation(s)'.format(kind, len(verdict.violations)))
        for violation in verdict.violations:
            print(u'  - {0}'.format(violation))
        return BenchErrors.EXIT_VERIFICATION_FAILED
    print(summary)
    return BenchErrors.EXIT_PASS

#=== analyze

def _diameter_rows(cliparams):
    family = cliparams.family or u'ipn'
    rows   = []
    if family in (u'ipn', u'g4', u'hanoi'):
        _require(cliparams, u'disks')
        values = parse_range(cliparams.disks)
    else:
        _require(cliparams, u'n')
        values = parse_range(cliparams.n)
    for value in values:
        sources = None
        if family == u'ipn':
            g       = pegsets.build_intersection_graph(cliparams.pegs, value).graph
            params  = u'p={0} n={1}'.format(cliparams.pegs, value)
            sources = [0]
        elif family == u'g4':
            g      = pegsets.build_g4(value).graph
            params = u'n={0}'.format(value)
        elif family == u'hanoi':
            if cliparams.pegs != 3:
                raise ParameterError(u'hanoi diameters are offered for three pegs only')
            g      = state_space.build_hanoi(3, value, implicit=True)
            params = u'p=3 n={0}'.format(value)
        elif family == u'kneser':
            _require(cliparams, u'k')
            g       = setfamilies.build_kneser(value, cliparams.k)
            params  = u'n={0} k={1}'.format(value, cliparams.k)
            sources = [min(g.nodes())]
        elif family == u'sierpinski':
            g      = fractal.build_sierpinski(value).graph
            params = u'n={0}'.format(value)
        elif family == u'ds':
            g      = setfamilies.build_ds_default(value)
            params = u'n={0}'.format(value)
        else:
            raise ParameterError(u'unknown diameter family "{0}"'.format(family))
        rows.append(
            {
                u'family':   family,
                u'params':   params,
                u'n':        value,
                u'vertices': g.number_of_nodes(),
                u'diameter': GraphCore.diameter(g, sources=sources),
            }
        )
    return (rows, [u'family', u'params', u'n', u'vertices', u'diameter'])

def _expansion_graph(spec):
    if spec is None:
        raise ParameterError(u'--family is required, e.g. cycle:6 or ipn:4:3')
    if spec.startswith(u'ipn:'):
        try:
            (p, n) = [int(x) for x in spec.split(u':')[1:]]
        except ValueError:
            raise ParameterError(u'malformed family "{0}"'.format(spec))
        return pegsets.build_intersection_graph(p, n).graph
    return setfamilies.factor_from_spec(spec)

def run_analyze(cliparams, config, manifest):
    analysis = cliparams.analysis
    seed     = BenchSettings.BenchSettings().seed

    if analysis == u'fairness':
        _require(cliparams, u'disks')
        rows = separators.fairness_table(
            cliparams.pegs, parse_range(cliparams.disks), cliparams.strategy,
            without_replacement=cliparams.without_replacement,
        )
        columns = [u'n', u'removed', u'probability_num', u'probability_den', u'probability']
    elif analysis == u'separators':
        _require(cliparams, u'disks')
        rows = []
        p    = cliparams.pegs
        for n in parse_range(cliparams.disks):
            tree    = separators.recursive_separator(p, n)
            verdict = tree.verify()
            bounds  = {}
            for node in tree.nodes():
                if node.separation is not None:
                    bounds[node.level] = max(bounds.get(node.level, 0), node.bound)
            for (level, size) in sorted(tree.order().items()):
                rows.append(
                    {
                        u'p': p, u'n': n, u'level': level, u'max_separator': size,
                        u'bound': bounds[level], u'verified': int(verdict.ok),
                    }
                )
        columns = [u'p', u'n', u'level', u'max_separator', u'bound', u'verified']
    elif analysis == u'diameter':
        (rows, columns) = _diameter_rows(cliparams)
    elif analysis == u'expansion':
        g     = _expansion_graph(cliparams.family)
        value = separators.vertex_expansion(g)
        rows  = [
            {
                u'graph':           cliparams.family,
                u'vertices':        g.number_of_nodes(),
                u'expansion_num':   value.numerator,
                u'expansion_den':   value.denominator,
                u'expansion':       u'{0:.6f}'.format(float(value)),
            }
        ]
        columns = [u'graph', u'vertices', u'expansion_num', u'expansion_den', u'expansion']
    elif analysis == u'kk':
        rows    = setfamilies.kk_experiment(cliparams.trials, cliparams.max_n, seed)
        for row in rows:
            row[u'passed'] = int(row[u'passed'])
        columns = [u'trial', u'n', u'k', u'l', u'size', u'passed']
    elif analysis == u'mass':
        values = parse_range(cliparams.n) or list(range(1, 64, 2))
        rows   = []
        for n in values:
            mass = setfamilies.central_mass_fraction(n, cliparams.beta)
            rows.append(
                {
                    u'n':           n,
                    u'beta':        cliparams.beta,
                    u'lower_index': setfamilies.central_lower_index(n, cliparams.beta),
                    u'mass_num':    mass.numerator,
                    u'mass_den':    mass.denominator,
                    u'mass':        u'{0:.6f}'.format(float(mass)),
                }
            )
        columns = [u'n', u'beta', u'lower_index', u'mass_num', u'mass_den', u'mass']
    elif analysis == u'transitivity':
        _require(cliparams, u'disks')
        rows = []
        for n in parse_range(cliparams.disks):
            pg   = pegsets.build_intersection_graph(cliparams.pegs, n)
            swaps = all(
                pegsets.is_automorphism(
                    pg, pegsets.graph_map(pg, lambda ps: pegsets.swap_automorphism(ps, i, j))
                )
                for i in range(n) for j in range(i + 1, n)
            )
            rows.append(
                {
                    u'p':            cliparams.pegs,
                    u'n':            n,
                    u'vertices':     pg.number_of_nodes(),
                    u'orbit':        len(pegsets.orbit(pg.pegsets[0])),
                    u'automorphisms': int(swaps),
                }
            )
        columns = [u'p', u'n', u'vertices', u'orbit', u'automorphisms']
    elif analysis == u'slice':
        _require(cliparams, u'n', u'k', u'l')
        rows = setfamilies.slice_experiment(
            _single(parse_range(cliparams.n), u'n'), cliparams.k, cliparams.l, cliparams.trials, seed
        )
        columns = [u'trial', u'seed', u'k', u'l', u'found_edge']
    else:
        _require(cliparams, u'disks')
        rows = []
        for n in parse_range(cliparams.disks):
            data = setfamilies.check_g4_isomorphism(n).to_json()
            rows.append(
                {
                    u'n':                     n,
                    u'vertices_g4':           data[u'vertices_g4'],
                    u'vertices_product':      data[u'vertices_product'],
                    u'agreeing_edges':        data[u'agreeing_edges'],
                    u'only_in_g4':            len(data[u'only_in_g4']),
                    u'only_in_product':       len(data[u'only_in_product']),
                    u'exact_with_empty_loop': int(data[u'exact_with_empty_loop']),
                }
            )
        columns = [
            u'n', u'vertices_g4', u'vertices_product', u'agreeing_edges',
            u'only_in_g4', u'only_in_product', u'exact_with_empty_loop',
        ]

    write_csv(rows, columns, cliparams.out, manifest)
    return BenchErrors.EXIT_PASS

#=== acceptance

def run_acceptance(cliparams, config, manifest):
    settings = BenchSettings.BenchSettings()
    only     = parse_range(cliparams.only) if cliparams.only else None
    log.info(u'running the %s suite%s', cliparams.suite, u' (quick)' if cliparams.quick else u'')
    try:
        results = Acceptance.run_suite(
            config, config_settings(config, cliparams),
            quick=cliparams.quick, only=only, threads=settings.threads,
        )
    except ValueError as err:
        raise ParameterError(str(err))
    for result in results:
        print(Acceptance.format_result(result))
    if cliparams.out:
        write_json([result._asdict() for result in results], cliparams.out, manifest)

    passed = all(result.passed for result in results)
    print(u'{0}/{1} criteria passed'.format(sum(r.passed for r in results), len(results)))

    #=== post actions

    if passed and config.log_directory_name != u'hostname':
        for c in config.post:
            print(u'calling "{0}"'.format(c))
            rc = subprocess.call(c, shell=True)
            assert rc == 0

    return BenchErrors.EXIT_PASS if passed else BenchErrors.EXIT_VERIFICATION_FAILED

COMMANDS = {
    u'generate':   run_generate,
    u'verify':     run_verify,
    u'analyze':    run_analyze,
    u'acceptance': run_acceptance,
}

# =========================== main ============================================

def config_settings(config, cliparams):
    """BenchSettings keyword arguments: config.json, then the cli overrides"""
    kwargs = config.settings_kwargs()
    if cliparams.seed is not None:
        kwargs[u'seed'] = cliparams.seed
    if cliparams.threads is not None:
        kwargs[u'threads'] = cliparams.threads
    return kwargs

def print_crash(settings):
    output  = []
    output += [u'']
    output += [u'==============================']
    output += [u'']
    output += [u'CRASH in {0}!'.format(settings.command)]
    output += [u'']
    output += [traceback.format_exc()]
    output += [u'==============================']
    output += [u'']
    output += [u'The log file is {0}'.format(settings.getOutputFile())]
    output += [u'']
    output += [u'==============================']
    output += [u'config.json to reproduce:']
    output += [u'']
    output += [u'']
    output  = u'\n'.join(output)
    output += json.dumps(
        BenchConfig.BenchConfig.generate_config(
            settings_dict = settings.__dict__,
            seed          = settings.seed,
        ),
        indent = 4
    )
    output += u'\n\n==============================\n'
    sys.stderr.write(output)

def main(argv=None):

    logging.basicConfig(level=logging.INFO, format=u'%(levelname)s %(name)s: %(message)s')

    #=== initialize

    cliparams = parseCliParams(argv)
    try:
        config = BenchConfig.BenchConfig(configfile=cliparams.config)
    except (IOError, ValueError) as err:
        sys.stderr.write(u'error: cannot read {0}: {1}\n'.format(cliparams.config, err))
        return BenchErrors.EXIT_PARAMETER_ERROR

    settings = BenchSettings.BenchSettings(
        command=cliparams.command, **config_settings(config, cliparams)
    )
    settings.setLogDirectory(config.get_log_directory_name())
    benchlog = BenchLog.BenchLog()
    benchlog.set_log_filters(config.logging)
    benchlog.log(BenchLog.LOG_BENCH_STATE, {u'state': u'start', u'name': cliparams.command})
    benchlog.log(BenchLog.LOG_BENCH_SEED,  {u'value': settings.seed})

    parameters = dict(
        (k, v) for (k, v) in vars(cliparams).items()
        if k not in (u'config', u'manifest', u'seed', u'threads')
    )
    manifest = RunManifest.RunManifest(cliparams.command, parameters)

    #=== run

    try:
        rc = COMMANDS[cliparams.command](cliparams, config, manifest)
    except BenchErrors.BenchError as err:
        sys.stderr.write(u'error: {0}\n'.format(err))
        rc = err.exit_code
    except (IOError, ValueError, KeyError) as err:
        # unreadable or malformed input files
        sys.stderr.write(u'error: {0}: {1}\n'.format(type(err).__name__, err))
        rc = BenchErrors.EXIT_PARAMETER_ERROR
    except Exception:
        print_crash(settings)
        raise
    finally:
        benchlog.log(BenchLog.LOG_BENCH_STATE, {u'state': u'end', u'name': cliparams.command})
        benchlog.destroy()

    if cliparams.manifest:
        manifest.write(cliparams.manifest)
    settings.destroy()
    return rc

if __name__ == '__main__':
    sys.exit(main())
