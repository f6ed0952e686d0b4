from __future__ import absolute_import
import itertools
import time

import pytest

from HanoiBench import BenchConfig,   \
                       BenchSettings, \
                       BenchLog
from . import test_utils as u

_bench_counter = itertools.count()

def pytest_configure(config):
    config.addinivalue_line(u'markers', u'slow: exhaustive criteria, deselect with -m "not slow"')

@pytest.fixture(autouse=True)
def fresh_singletons():
    # a module function called outside the bench fixture creates default
    # singletons; they must not leak into the next test
    yield
    BenchLog.BenchLog().destroy()
    BenchSettings.BenchSettings().destroy()
    BenchConfig.BenchConfig.reset()

@pytest.fixture(scope="function")
def bench(request, tmpdir):

    def create_bench(diff_caps={}, seed=None, log_filters=u'all'):

        settings  = None
        bench_log = None

        # add a finalizer
        def fin():
            if bench_log:
                bench_log.destroy()
            if settings:
                settings.destroy()
        request.addfinalizer(fin)

        # start from the defaults in bin/config.json
        BenchLog.BenchLog().destroy()
        BenchSettings.BenchSettings().destroy()
        config = BenchConfig.BenchConfig(u.CONFIG_FILE_PATH)
        kwargs = config.settings_kwargs()
        for (k, v) in diff_caps.items():
            assert k in kwargs[u'caps']
        kwargs[u'caps'].update(diff_caps)
        if seed is not None:
            kwargs[u'seed'] = seed
        kwargs[u'threads'] = 1

        # create bench settings
        settings = BenchSettings.BenchSettings(
            command      = u'test',
            log_root_dir = str(tmpdir),
            **kwargs
        )
        # several benches may start within the same millisecond
        settings.setLogDirectory(
            '{0}-{1:03d}-{2}'.format(
                time.strftime('%Y%m%d-%H%M%S'),
                int(round(time.time() * 1000)) % 1000,
                next(_bench_counter),
            )
        )

        # create bench log
        bench_log = BenchLog.BenchLog()
        bench_log.set_log_filters(log_filters)

        return settings

    return create_bench
