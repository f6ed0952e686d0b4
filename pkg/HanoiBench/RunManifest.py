#!/usr/bin/python
"""
\brief Record of one bin/runBench.py invocation.

The manifest names the command, its parameters, the seed and the caps, and
lists a sha256 digest per output file. Two runs with equal `key()` write
byte-identical outputs; wall time and memory are informative only.
"""
from __future__ import absolute_import

# =========================== imports =========================================

import hashlib
import json
import os
import time

import psutil

from . import BenchSettings

# =========================== helpers =========================================

def sha256_file(path):
    h = hashlib.sha256()
    with open(path, u'rb') as f:
        for chunk in iter(lambda: f.read(8192), b''):
            h.update(chunk)
    return h.hexdigest()

# =========================== body ============================================

class RunManifest(object):

    def __init__(self, command, parameters):
        settings = BenchSettings.BenchSettings()

        self.command    = command
        self.parameters = dict(parameters)
        self.seed       = settings.seed
        self.caps       = dict(settings.caps)
        self.outputs    = []
        self.startTime  = time.time()
        self.wall_time  = None
        self.memory     = None

    def add_output(self, path):
        if path not in self.outputs:
            self.outputs.append(path)

    def finish(self):
        self.wall_time = time.time() - self.startTime
        self.memory    = psutil.Process(os.getpid()).memory_info().rss

    def digests(self):
        return dict(
            (os.path.basename(path), sha256_file(path))
            for path in sorted(self.outputs) if os.path.exists(path)
        )

    def key(self):
        """the fields that determine the outputs"""
        return {
            u'command':    self.command,
            u'parameters': self.parameters,
            u'seed':       self.seed,
            u'caps':       self.caps,
        }

    def to_json(self):
        data = self.key()
        data.update(
            {
                u'outputs':      self.digests(),
                u'wall_time_s':  None if self.wall_time is None else round(self.wall_time, 3),
                u'memory_bytes': self.memory,
            }
        )
        return data

    def write(self, path):
        if self.wall_time is None:
            self.finish()
        with open(path, u'w') as f:
            json.dump(self.to_json(), f, indent=4, sort_keys=True)
            f.write(u'\n')
