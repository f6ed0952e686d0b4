"""
Tests for Hanoi separators, the fairness of the path game and the
exhaustive f / r / s quantities
"""
from __future__ import absolute_import

from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from HanoiBench.BenchErrors import CapacityError, ParameterError
from HanoiBench.Graphs import corpus, separators, state_space
from HanoiBench.Graphs.separators import Separation
from . import test_utils as u

#============================ fixtures ========================================

@pytest.fixture(params=[(3, 2), (3, 4), (3, 6), (4, 3), (4, 5), (5, 3), (5, 4)])
def hanoi_params(request):
    return request.param

#============================ tests ===========================================

def test_level_separator(hanoi_params):
    (p, n) = hanoi_params
    g = state_space.build_hanoi(p, n)
    x = separators.hanoi_level_separator(p, n)
    # one endpoint per inter-copy edge; for p > 3 edges may share it
    bound = (p * (p - 1) // 2) * (p - 2) ** (n - 1)
    assert len(x) <= bound
    if p == 3:
        assert len(x) == bound
    verdict = separators.verify_c_separator(g, x, separators.c_bound(p))
    assert verdict.ok, verdict.violations
    # no edge of g - x joins two copies
    for (a, b) in g.edges():
        if a in x or b in x:
            continue
        assert state_space.copy_index(a, p, n) == state_space.copy_index(b, p, n)
    assert separators.check_separation(g, verdict.value).ok

def test_c_bound():
    assert separators.c_bound(3) == Fraction(2, 3)
    assert separators.c_bound(4) == Fraction(3, 4)
    assert separators.c_bound(5) == Fraction(4, 5)
    assert separators.c_bound(6) == Fraction(4, 6)

def test_invalid_c():
    g = nx.path_graph(4)
    for c in (0.4, 1, 1.5):
        with pytest.raises(ParameterError):
            separators.verify_c_separator(g, [1], c)

def test_verify_c_separator():
    g = nx.path_graph(7)
    assert separators.verify_c_separator(g, [3], Fraction(1, 2)).ok
    verdict = separators.verify_c_separator(g, [1], Fraction(1, 2))
    assert not verdict.ok
    assert u'largest side has 5 vertices' in verdict.violations[0]
    verdict = separators.verify_c_separator(g, [9], Fraction(1, 2))
    assert not verdict.ok
    assert verdict.value is None

def test_check_separation_violations():
    g = nx.path_graph(5)
    crossing = Separation([2], [0, 1, 3], [4], Fraction(3, 4))
    verdict  = separators.check_separation(g, crossing)
    assert any(u'joins the two sides' in v for v in verdict.violations)

    missing  = Separation([2], [0, 1], [3], Fraction(3, 4))
    verdict  = separators.check_separation(g, missing)
    assert any(u'miss 1 vertices' in v for v in verdict.violations)

    heavy    = Separation([4], [0, 1, 2, 3], [], Fraction(1, 2))
    verdict  = separators.check_separation(g, heavy)
    assert any(u'largest side' in v for v in verdict.violations)

def test_separation_json():
    sep  = Separation([2], [0, 1], [3, 4], Fraction(1, 2))
    data = sep.to_json()
    assert data == {u'separator': [2], u'A': [0, 1], u'B': [3, 4], u'c': 0.5}
    assert separators.check_separation(nx.path_graph(5), Separation.from_json(data)).ok

@pytest.mark.parametrize('p,n', [(3, 3), (3, 5), (4, 3), (4, 4), (5, 3)])
def test_recursive_separator(p, n):
    tree    = separators.recursive_separator(p, n)
    verdict = tree.verify()
    assert verdict.ok, verdict.violations
    pairs = p * (p - 1) // 2
    assert verdict.value[1] <= pairs * (p - 2) ** (n - 1)
    for (level, size) in verdict.value.items():
        assert size <= pairs * (p - 2) ** (n - level)
    assert tree.to_json()[u'root'][u'size'] == p ** n

def test_recursive_separator_logs_nodes(bench):
    bench()
    separators.recursive_separator(3, 3)
    logs = u.read_log_file(filter=['separator.node'])
    assert logs[0]['level'] == 1
    assert logs[0]['size'] == 27
    assert logs[0]['separator'] == 3

def test_fairness_small_cases():
    two   = separators.connection_probability(
        state_space.build_hanoi(3, 3), separators.two_state_removal(3)
    )
    three = separators.connection_probability(
        state_space.build_hanoi(3, 3), separators.three_state_removal(3)
    )
    assert two.probability == Fraction(373, 729)
    assert three.probability == Fraction(192, 729)
    assert not two.passed
    assert three.passed
    assert three.sizes == [8, 8, 8]

def test_fairness_without_replacement():
    report = separators.connection_probability(
        state_space.build_hanoi(3, 3),
        separators.three_state_removal(3),
        without_replacement=True,
    )
    assert report.probability == Fraction(3 * 8 * 7, 27 * 26)

def test_fairness_limits():
    rows = separators.fairness_table(3, [8], separators.STRATEGY_TWO_STATE)
    value = Fraction(rows[0][u'probability_num'], rows[0][u'probability_den'])
    assert abs(value - Fraction(5, 9)) < Fraction(1, 100)
    rows = separators.fairness_table(3, [8], separators.STRATEGY_THREE_STATE)
    value = Fraction(rows[0][u'probability_num'], rows[0][u'probability_den'])
    assert abs(value - Fraction(1, 3)) < Fraction(1, 100)

def test_fairness_table_columns():
    rows = separators.fairness_table(4, [2, 3], separators.STRATEGY_LEVEL)
    assert [row[u'n'] for row in rows] == [2, 3]
    assert rows[0][u'removed'] == 8
    assert sorted(rows[0]) == sorted(
        [u'n', u'removed', u'probability_num', u'probability_den', u'probability']
    )

def test_removal_strategy_errors():
    with pytest.raises(ParameterError):
        separators.removal_for(separators.STRATEGY_TWO_STATE, 4, 3)
    with pytest.raises(ParameterError):
        separators.removal_for(u'random', 3, 3)
    with pytest.raises(ParameterError):
        separators.two_state_removal(1)
    with pytest.raises(ParameterError):
        separators.connection_probability(nx.path_graph(3), [7])

def test_format_fraction():
    assert separators.format_fraction(Fraction(1, 3)) == u'1/3 (0.333333)'

def test_brute_force_small_graphs():
    assert separators.brute_force_f(nx.complete_graph(2)) == (1, frozenset([0]))
    assert separators.brute_force_f(nx.path_graph(3)) == (1, frozenset([0]))
    assert separators.brute_force_r(nx.complete_graph(4)) == (2, frozenset([0, 1]))
    assert separators.brute_force_s(nx.complete_graph(4)) == 2
    assert separators.brute_force_s(nx.complete_graph(1)) == 0

def test_sandwich_on_corpus():
    for (name, g) in corpus.small_graphs(max_vertices=8):
        (f, _) = separators.brute_force_f(g)
        (r, _) = separators.brute_force_r(g)
        s = separators.brute_force_s(g)
        assert r <= f, name
        assert r <= s, name
        assert f <= 3 * s, name

def test_brute_force_caps():
    with pytest.raises(CapacityError):
        separators.brute_force_f(nx.path_graph(17))
    with pytest.raises(CapacityError):
        separators.brute_force_s(nx.path_graph(13))

def test_vertex_expansion():
    assert separators.vertex_expansion(nx.complete_graph(4)) == 1
    assert separators.vertex_expansion(nx.cycle_graph(6)) == Fraction(2, 3)
    assert separators.vertex_expansion(nx.path_graph(4)) == Fraction(1, 2)
    with pytest.raises(ParameterError):
        separators.vertex_expansion(nx.complete_graph(1))

@pytest.mark.parametrize('seed', range(1, 31))
def test_connection_probability_shrinks_with_removals(seed):
    rng   = np.random.RandomState(seed)
    g     = nx.gnp_random_graph(int(rng.randint(4, 13)), 0.3, seed=seed)
    order = [int(v) for v in rng.permutation(g.number_of_nodes())]
    cut   = int(rng.randint(0, len(order) + 1))
    x     = order[:int(rng.randint(0, cut + 1))]
    y     = order[:cut]
    for without_replacement in (False, True):
        px = separators.connection_probability(g, x, without_replacement).probability
        py = separators.connection_probability(g, y, without_replacement).probability
        assert py <= px

def test_hanoi_3_2_small_values():
    h = state_space.build_hanoi(3, 2)
    (f, witness) = separators.brute_force_f(h)
    assert f == 2
    assert witness == frozenset([1, 2])
    assert separators.brute_force_r(h)[0] == 2
    assert separators.brute_force_s(h) == 2
