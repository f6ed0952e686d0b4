"""
Tests for the seed setting: equal seeds, equal results and equal logs
"""
from __future__ import print_function
from __future__ import absolute_import

import hashlib

import pytest

from . import test_utils as u
from HanoiBench import Acceptance
from HanoiBench import BenchLog
from HanoiBench import BenchSettings
from HanoiBench.Graphs import setfamilies

#============================ helpers ==========================================

def run_experiments(bench, seed):
    settings = bench(seed=seed)
    rows = {
        u'kk':    setfamilies.kk_experiment(25, 8, settings.seed),
        u'slice': setfamilies.slice_experiment(9, 3, 2, 5, settings.seed),
    }
    logs = u.read_log_file(filter=[BenchLog.LOG_EXPERIMENT_TRIAL[u'type']])
    sha2 = hashlib.sha256()
    for log in logs:
        sha2.update(repr(sorted(log.items())).encode('utf-8'))
    return (rows, sha2.hexdigest())

#============================ fixtures =========================================

@pytest.fixture(params=[1, 10, 100])
def fixture_random_seed(request):
    return request.param

#============================ tests ============================================

def test_same_seed_same_results(bench, fixture_random_seed):
    results = [run_experiments(bench, fixture_random_seed) for _ in range(3)]
    for (rows, digest) in results[1:]:
        assert rows == results[0][0]
        assert digest == results[0][1]

def test_different_seeds_differ(bench):
    (rows_a, _) = run_experiments(bench, 1)
    (rows_b, _) = run_experiments(bench, 2)
    assert rows_a[u'kk'] != rows_b[u'kk']

def test_seed_feeds_the_path_criterion(bench):
    bench(seed=3)
    assert BenchSettings.BenchSettings().seed == 3
    first  = Acceptance.run_criterion(11, quick=True)
    second = Acceptance.run_criterion(11, quick=True)
    assert first.passed, first.detail
    assert first.detail == second.detail
