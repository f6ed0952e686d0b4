#!/usr/bin/python
"""
\brief Holds the overall configuration of a workbench run.

Configuration is read from a configuration file, and accessible in dotted
notation:

   benchconfig.caps.exact_treewidth

The same configuration feeds every command of bin/runBench.py; command-line
flags (--seed, --threads) override the matching fields.
"""
from __future__ import absolute_import

# =========================== imports =========================================

import copy
import glob
import json
import os
import platform
import sys
import time

from . import BenchSettings

# =========================== defines =========================================

CONFIG_VERSION = 0

# =========================== body ============================================

class DotableDict(dict):

    __getattr__= dict.__getitem__

    def __init__(self, d):
        self.update(**dict((k, self.parse(v))
                           for k, v in d.items()))

    @classmethod
    def parse(cls, v):
        if isinstance(v, dict):
            return cls(v)
        elif isinstance(v, list):
            return [cls.parse(i) for i in v]
        else:
            return v

class BenchConfig(dict):

    # class variables, which are shared among all the instances
    _startTime          = None
    _log_directory_name = None

    def __init__(self, configfile=None, configdata=None):

        if BenchConfig._startTime is None:
            BenchConfig._startTime = time.time()

        if   configfile is not None:
            self.configfile = configfile

            if configfile == u'-':
                self._raw_data = sys.stdin.read()
            else:
                with open(self.configfile, u'r') as f:
                    self._raw_data = f.read()
        elif configdata is not None:
            self.configfile = None
            self._raw_data  = configdata
        else:
            raise ValueError(u'either configfile or configdata is required')

        self.config = DotableDict(json.loads(self._raw_data))

        if self.config.get(u'version') != CONFIG_VERSION:
            raise ValueError(
                u'unsupported config version {0}'.format(self.config.get(u'version'))
            )

        if BenchConfig._log_directory_name is None:
            self._decide_log_directory_name()

    def __getattr__(self, name):
        return getattr(self.config, name)

    def get_config_data(self):
        return self._raw_data

    def get_log_directory_name(self):
        return BenchConfig._log_directory_name

    def settings_kwargs(self):
        """
        Keyword arguments for BenchSettings out of this configuration.
        """
        kwargs = {
            u'caps':    dict(self.config.get(u'caps', {})),
            u'seed':    self.config.execution.seed,
            u'threads': self.config.execution.threads,
        }
        if self.config.get(u'witnesses'):
            # relative to the configuration file
            base = u'.'
            if self.configfile not in (None, u'-'):
                base = os.path.dirname(os.path.abspath(self.configfile))
            kwargs[u'witnessDirectory'] = os.path.abspath(
                os.path.join(base, self.config.witnesses)
            )
        return kwargs

    @classmethod
    def get_startTime(cls):
        return cls._startTime

    @classmethod
    def reset(cls):
        cls._startTime          = None
        cls._log_directory_name = None

    @staticmethod
    def generate_config(settings_dict, seed):
        """
        Build the config.json that reproduces a run with the given settings.
        """
        settings_dict = copy.deepcopy(settings_dict)
        config_json = {
            u'version':            CONFIG_VERSION,
            u'execution': {
                u'threads':        settings_dict.get(u'threads', 1),
                u'seed':           seed,
            },
            u'caps':               settings_dict[u'caps'],
            u'logging':            u'all',
            u'log_directory_name': u'startTime',
            u'post':               [],
        }
        return config_json

    def _decide_log_directory_name(self):

        assert BenchConfig._log_directory_name is None

        if   self.log_directory_name == u'startTime':
            log_directory_name = u'{0}-{1:03d}'.format(
                time.strftime(
                    "%Y%m%d-%H%M%S",
                    time.localtime(int(BenchConfig._startTime))
                ),
                int(round(BenchConfig._startTime * 1000)) % 1000
            )
        elif self.log_directory_name == u'hostname':
            hostname = platform.uname()[1]
            log_directory_path = os.path.join(
                BenchSettings.BenchSettings.DEFAULT_LOG_ROOT_DIR,
                hostname
            )
            # add suffix if there is a directory having the same hostname
            if os.path.exists(log_directory_path):
                index = len(glob.glob(log_directory_path + u'*'))
                log_directory_name = u'_'.join((hostname, str(index)))
            else:
                log_directory_name = hostname
        else:
            raise NotImplementedError(
                u'log_directory_name "{0}" is not supported'.format(
                    self.log_directory_name
                )
            )

        BenchConfig._log_directory_name = log_directory_name
