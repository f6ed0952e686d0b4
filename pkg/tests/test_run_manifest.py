"""
Tests for the run manifest
"""
from __future__ import absolute_import

import hashlib
import json

from HanoiBench import RunManifest

#============================ tests ===========================================

def test_manifest(bench, tmpdir):
    bench(seed=42, diff_caps={'brute_s': 8})
    output = tmpdir.join('rows.csv')
    output.write('n,diameter\n3,7\n')

    manifest = RunManifest.RunManifest(u'analyze', {u'analysis': u'diameter'})
    manifest.add_output(str(output))
    manifest.add_output(str(output))
    manifest.add_output(str(tmpdir.join('never-written.csv')))

    path = str(tmpdir.join('manifest.json'))
    manifest.write(path)
    with open(path, 'r') as f:
        data = json.load(f)

    assert data[u'command'] == u'analyze'
    assert data[u'seed'] == 42
    assert data[u'caps'][u'brute_s'] == 8
    assert data[u'outputs'] == {
        u'rows.csv': hashlib.sha256(b'n,diameter\n3,7\n').hexdigest(),
    }
    assert data[u'wall_time_s'] >= 0
    assert data[u'memory_bytes'] > 0

def test_key_ignores_timing(bench):
    bench()
    first  = RunManifest.RunManifest(u'kk', {u'trials': 5})
    second = RunManifest.RunManifest(u'kk', {u'trials': 5})
    second.finish()
    assert first.key() == second.key()
