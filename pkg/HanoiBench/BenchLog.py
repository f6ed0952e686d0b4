"""
This module defines the available logs

Usage:
    BenchLog.BenchLog().log(
        BenchLog.LOG_GRAPH_BUILT,
        {
            u'family':   u'hanoi',
            u'params':   {u'p': 3, u'n': 4},
            u'vertices': 81,
            u'edges':    120,
        }
    )
"""
from __future__ import print_function
from __future__ import absolute_import

# ========================== imports =========================================

import copy
import json
import traceback

from . import BenchSettings

# =========================== defines =========================================

# === bench
LOG_BENCH_STATE                = {u'type': u'bench.state',            u'keys': [u'state', u'name']}
LOG_BENCH_SEED                 = {u'type': u'bench.seed',             u'keys': [u'value']}

# === graphs
LOG_GRAPH_BUILT                = {u'type': u'graph.built',            u'keys': [u'family', u'params', u'vertices', u'edges']}
LOG_CAP_EXCEEDED               = {u'type': u'graph.cap_exceeded',     u'keys': [u'cap', u'limit', u'requested']}

# === verifiers
LOG_VERIFY_RESULT              = {u'type': u'verify.result',          u'keys': [u'kind', u'passed', u'violations']}

# === searches
LOG_SEARCH_EXHAUSTED           = {u'type': u'search.exhausted',       u'keys': [u'search', u'budget', u'explored']}
LOG_SEARCH_FOUND               = {u'type': u'search.found',           u'keys': [u'search', u'explored']}

# === separators
LOG_SEPARATOR_NODE             = {u'type': u'separator.node',         u'keys': [u'level', u'size', u'separator', u'bound', u'max_side']}

# === experiments
LOG_EXPERIMENT_TRIAL           = {u'type': u'experiment.trial',       u'keys': [u'experiment', u'trial', u'seed', u'result']}

# === acceptance
LOG_CRITERION_RESULT           = {u'type': u'acceptance.criterion',   u'keys': [u'criterion', u'passed', u'detail', u'seconds']}

# ============================ BenchLog =======================================

class BenchLog(object):

    # ==== start singleton
    _instance      = None
    _init          = False

    def __new__(cls, *args, **kwargs):
        if not cls._instance:
            cls._instance = super(BenchLog, cls).__new__(cls)
        return cls._instance
    # ==== end singleton

    def __init__(self, failIfNotInit=False):

        if failIfNotInit and not self._init:
            raise EnvironmentError(u'BenchLog singleton not initialized.')

        # ==== start singleton
        cls = type(self)
        if cls._init:
            return
        cls._init = True
        # ==== end singleton

        try:
            # get singletons
            self.settings    = BenchSettings.BenchSettings()

            # local variables
            self.log_filters = []
            self.seq         = 0

            # open log file; without a log directory lines are checked and
            # discarded
            output_file = self.settings.getOutputFile()
            if output_file is None:
                self.log_output_file = None
            else:
                self.log_output_file = open(output_file, u'a')

                config_line = copy.deepcopy(self.settings.__dict__)
                config_line[u'_type'] = u'config'
                json_string = json.dumps(config_line, sort_keys=True)
                self.log_output_file.write(json_string + u'\n')
        except:
            # destroy the singleton
            cls._instance = None
            cls._init = False
            raise

    def log(self, benchlog, content):
        """
        :param dict benchlog: one of the LOG_* definitions
        :param dict content:
        """

        # if a key is passed but is not listed in the log definition, raise error
        if (u'keys' in benchlog) and (sorted(benchlog[u'keys']) != sorted(content.keys())):
            raise Exception(
                "Wrong keys passed to log() function for type {0}!\n    - expected {1}\n    - got      {2}".format(
                    benchlog[u'type'],
                    sorted(benchlog[u'keys']),
                    sorted(content.keys()),
                )
            )

        # ignore types that are not listed in the config
        if (self.log_filters != u'all') and (benchlog[u'type'] not in self.log_filters):
            return

        if self.log_output_file is None:
            return

        self.seq += 1
        content = dict(content)
        content.update(
            {
                u'_seq':      self.seq,
                u'_type':     benchlog[u'type'],
                u'_command':  self.settings.command,
            }
        )

        try:
            json_string = json.dumps(content, sort_keys=True)
            self.log_output_file.write(json_string + u'\n')
        except Exception as err:
            output  = []
            output += [u'----------------------']
            output += [u'']
            output += [u'log() FAILED for content']
            output += [str(content)]
            output += [u'']
            output += [str(err)]
            output += [u'']
            output += [traceback.format_exc()]
            output += [u'']
            output += [u'----------------------']
            output  = u'\n'.join(output)
            print(output)
            raise

    def flush(self):
        if self.log_output_file is not None:
            assert not self.log_output_file.closed
            self.log_output_file.flush()

    def set_log_filters(self, log_filters):
        self.log_filters = log_filters

    def destroy(self):
        if self.log_output_file is not None and not self.log_output_file.closed:
            self.log_output_file.close()

        cls = type(self)
        cls._instance       = None
        cls._init           = False
