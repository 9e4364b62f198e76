"""Endpoint extraction for mpmath intervals at full working precision.

``iv.mpf`` endpoints are degenerate intervals; converting through
``mpmath.mpf`` at a precision >= the interval precision is exact, so no
rounding direction is lost.

mpmath's precision settings are process-global, so callers that adjust
them hold PRECISION_LOCK.  Interval results stay certified at any
precision; the lock only protects the promised digit counts.
"""

import threading

import mpmath
from mpmath import mp

PRECISION_LOCK = threading.RLock()


def lower(x) -> mpmath.mpf:
    with mp.workprec(mpmath.iv.prec + 8):
        return mpmath.mpf(x.a)


def upper(x) -> mpmath.mpf:
    with mp.workprec(mpmath.iv.prec + 8):
        return mpmath.mpf(x.b)
