"""
Tests for the acceptance battery
"""
from __future__ import absolute_import

import pytest

from HanoiBench import Acceptance, BenchConfig, BenchLog, BenchSettings
from . import test_utils as u

#============================ tests ===========================================

def test_select():
    assert Acceptance.select() == list(range(1, 18))
    assert Acceptance.select(quick=True) == list(Acceptance.QUICK_CRITERIA)
    assert Acceptance.select(quick=True, only=[8, 9]) == [9]
    with pytest.raises(ValueError):
        Acceptance.select(only=[18])

@pytest.mark.parametrize('number', [1, 3, 7, 9, 12, 16, 17])
def test_quick_criterion_passes(bench, number):
    bench()
    result = Acceptance.run_criterion(number, quick=True)
    assert result.passed, result.detail
    assert result.number == number
    logs = u.read_log_file(filter=['acceptance.criterion'])
    assert [log['criterion'] for log in logs] == [number]

@pytest.mark.slow
@pytest.mark.parametrize('number', [8, 14, 15])
def test_exhaustive_criterion_passes(bench, number):
    bench()
    result = Acceptance.run_criterion(number, quick=True)
    assert result.passed, result.detail

def test_mapping_bounds_names_the_bound_used(bench):
    bench()
    result = Acceptance.run_criterion(16, quick=True)
    assert result.passed, result.detail
    assert u'<= p-2=2' in result.detail
    assert u'<= 6 from frozen-disk counting, not p-2=3' in result.detail

def test_failing_criterion_is_isolated(bench, tmpdir):
    settings = bench()
    settings.witnessDirectory = str(tmpdir.join('nowhere'))
    result = Acceptance.run_criterion(4, quick=True)
    assert not result.passed
    assert result.detail.startswith(u'IOError') or result.detail.startswith(u'FileNotFoundError')

def test_run_suite_in_order(bench):
    bench()
    config  = BenchConfig.BenchConfig(u.CONFIG_FILE_PATH)
    results = Acceptance.run_suite(config, config.settings_kwargs(), quick=True, only=[12, 1])
    assert [r.number for r in results] == [1, 12]
    assert all(r.passed for r in results)

def test_format_result():
    result = Acceptance.CriterionResult(7, u'game endgame', True, u'ok', 0.25)
    assert Acceptance.format_result(result).startswith(u'[PASS]  7 game endgame')
