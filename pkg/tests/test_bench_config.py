"""
Tests for BenchConfig and BenchSettings
"""
from __future__ import absolute_import

import json
import os

import pytest

from HanoiBench import BenchConfig, BenchSettings
from HanoiBench.BenchErrors import CapacityError
from . import test_utils as u

#============================ helpers =========================================

def load_default():
    with open(u.CONFIG_FILE_PATH, 'r') as f:
        return json.load(f)

#============================ tests ===========================================

def test_default_config():
    config = BenchConfig.BenchConfig(u.CONFIG_FILE_PATH)
    assert config.version == 0
    assert config.caps.exact_treewidth == BenchSettings.DEFAULT_CAPS[u'exact_treewidth']
    kwargs = config.settings_kwargs()
    assert kwargs[u'seed'] == BenchSettings.DEFAULT_SEED
    assert kwargs[u'witnessDirectory'] == os.path.join(u.ROOT_DIR, u'data')
    assert os.path.exists(os.path.join(kwargs[u'witnessDirectory'], u'octahedron_s5.json'))

def test_config_from_data():
    data = load_default()
    data[u'witnesses'] = u'witnesses'
    config = BenchConfig.BenchConfig(configdata=json.dumps(data))
    assert config.configfile is None
    assert config.settings_kwargs()[u'witnessDirectory'] == os.path.abspath(u'witnesses')

def test_unsupported_version():
    data = load_default()
    data[u'version'] = 1
    with pytest.raises(ValueError):
        BenchConfig.BenchConfig(configdata=json.dumps(data))
    with pytest.raises(ValueError):
        BenchConfig.BenchConfig()

def test_log_directory_name_is_shared():
    first  = BenchConfig.BenchConfig(u.CONFIG_FILE_PATH)
    second = BenchConfig.BenchConfig(u.CONFIG_FILE_PATH)
    assert first.get_log_directory_name() == second.get_log_directory_name()

def test_generate_config_reproduces_settings():
    settings = BenchSettings.BenchSettings(caps={u'brute_s': 9}, seed=17, threads=2)
    data = BenchConfig.BenchConfig.generate_config(settings.__dict__, settings.seed)
    config = BenchConfig.BenchConfig(configdata=json.dumps(data))
    kwargs = config.settings_kwargs()
    assert kwargs[u'seed'] == 17
    assert kwargs[u'threads'] == 2
    assert kwargs[u'caps'][u'brute_s'] == 9

def test_settings_caps():
    settings = BenchSettings.BenchSettings(caps={u'brute_f': 4})
    assert settings.cap(u'brute_f') == 4
    assert settings.cap(u'brute_r') == BenchSettings.DEFAULT_CAPS[u'brute_r']
    settings.check_cap(u'brute_f', 4)
    with pytest.raises(CapacityError) as excinfo:
        settings.check_cap(u'brute_f', 5)
    assert excinfo.value.exit_code == 3
    assert excinfo.value.limit == 4

def test_settings_reject_unknown_cap():
    with pytest.raises(ValueError):
        BenchSettings.BenchSettings(caps={u'colours': 3})
    # the failed construction leaves no half-built singleton behind
    assert BenchSettings.BenchSettings().caps == BenchSettings.DEFAULT_CAPS

def test_settings_threads_default():
    settings = BenchSettings.BenchSettings(threads=None)
    assert settings.threads >= 1

def test_output_file(tmpdir):
    settings = BenchSettings.BenchSettings(command=u'analyze', log_root_dir=str(tmpdir))
    assert settings.getOutputFile() is None
    settings.setLogDirectory(u'run')
    assert settings.getOutputFile() == os.path.join(str(tmpdir), u'run', u'analyze.log')
    assert os.path.isdir(str(tmpdir.join('run')))

def test_output_file_keeps_directory_name(tmpdir):
    settings = BenchSettings.BenchSettings(command=u'analyze', log_root_dir=str(tmpdir))
    settings.setLogDirectory(u"u'run'")
    assert settings.getOutputFile() == os.path.join(str(tmpdir), u"u'run'", u'analyze.log')
