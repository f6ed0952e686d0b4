#!/usr/bin/python
"""
\brief Error categories raised by the workbench.

Each category maps onto one exit code of bin/runBench.py.
"""
from __future__ import absolute_import

# =========================== defines =========================================

EXIT_PASS                 = 0
EXIT_VERIFICATION_FAILED  = 1
EXIT_PARAMETER_ERROR      = 2
EXIT_CAP_EXCEEDED         = 3

# =========================== body ============================================

class BenchError(Exception):
    exit_code = EXIT_PARAMETER_ERROR

class DimensionError(BenchError, ValueError):
    """Two configurations (or pegsets) do not share n and p."""
    pass

class ParameterError(BenchError, ValueError):
    pass

class PreconditionError(BenchError, ValueError):
    pass

class CapacityError(BenchError):
    exit_code = EXIT_CAP_EXCEEDED

    def __init__(self, cap_name, limit, requested, hint=None):
        self.cap_name  = cap_name
        self.limit     = limit
        self.requested = requested
        message = u'{0} cap exceeded: {1} > {2}'.format(cap_name, requested, limit)
        if hint:
            message += u' ({0})'.format(hint)
        super(CapacityError, self).__init__(message)

class VerificationError(BenchError):
    exit_code = EXIT_VERIFICATION_FAILED

    def __init__(self, violations):
        self.violations = list(violations)
        super(VerificationError, self).__init__(u'; '.join(self.violations))
