#!/usr/bin/python
"""
\brief Container for the settings of a workbench run: caps, seed, threads and
where logs and witnesses live.
"""
from __future__ import absolute_import
from __future__ import division

# =========================== imports =========================================

import copy
import os

import psutil

from .BenchErrors import CapacityError

# =========================== defines =========================================

# default caps; every one can be overridden from config.json
DEFAULT_CAPS = {
    u'materialization':  2 ** 20,   # vertices of a materialized graph
    u'exact_treewidth':  22,        # vertices for the full subset search
    u'haven_vertices':   10,
    u'haven_order':      6,
    u'brute_f':          16,
    u'brute_r':          16,
    u'brute_s':          12,
    u'expansion':        20,
    u'product':          2 ** 16,   # |V(G)|*|V(H)|
}

DEFAULT_SEED = 20190827

# =========================== body ============================================

class BenchSettings(object):

    # ==== class attributes / definitions
    DEFAULT_LOG_ROOT_DIR = u'benchData'
    DEFAULT_WITNESS_DIR  = os.path.join(
        os.path.dirname(os.path.abspath(__file__)), u'..', u'data'
    )

    # ==== start singleton
    _instance = None
    _init     = False

    def __new__(cls, *args, **kwargs):
        if not cls._instance:
            cls._instance = super(BenchSettings, cls).__new__(cls)
        return cls._instance
    # ==== end singleton

    def __init__(
            self,
            command=None,
            failIfNotInit=False,
            log_root_dir=DEFAULT_LOG_ROOT_DIR,
            **kwargs
        ):

        if failIfNotInit and not self._init:
            raise EnvironmentError(u'BenchSettings singleton not initialized.')

        # ==== start singleton
        cls = type(self)
        if cls._init:
            return
        cls._init = True
        # ==== end singleton

        try:
            # store params
            self.command              = command
            self.logRootDirectoryPath = os.path.abspath(log_root_dir)
            self.logDirectory         = None
            self.witnessDirectory     = os.path.abspath(self.DEFAULT_WITNESS_DIR)
            self.seed                 = DEFAULT_SEED
            self.threads              = psutil.cpu_count(logical=True) or 1
            self.caps                 = copy.deepcopy(DEFAULT_CAPS)

            caps = kwargs.pop(u'caps', None)
            if caps:
                for (name, value) in caps.items():
                    if name not in DEFAULT_CAPS:
                        raise ValueError(u'unknown cap "{0}"'.format(name))
                    self.caps[name] = int(value)

            if kwargs:
                self.__dict__.update(kwargs)

            if self.threads is None or self.threads < 1:
                self.threads = psutil.cpu_count(logical=True) or 1
        except:
            # destroy the singleton
            cls._instance = None
            cls._init     = False
            raise

    def setLogDirectory(self, log_directory_name):
        self.logDirectory = log_directory_name

    def getOutputFile(self):
        if self.logDirectory is None:
            return None

        dirname = os.path.join(self.logRootDirectoryPath, self.logDirectory)
        if not os.path.exists(dirname):
            try:
                os.makedirs(dirname)
            except OSError:
                # another worker made it first
                if not os.path.isdir(dirname):
                    raise

        return os.path.join(dirname, u'{0}.log'.format(self.command or u'bench'))

    def cap(self, name):
        return self.caps[name]

    def check_cap(self, name, requested, hint=None):
        """
        :raises CapacityError: when requested is over the named cap
        """
        limit = self.caps[name]
        if requested > limit:
            raise CapacityError(name, limit, requested, hint)

    def destroy(self):
        cls = type(self)
        cls._instance = None
        cls._init     = False
