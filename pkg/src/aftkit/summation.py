"""Compensated summation helpers.

Everything here routes through :func:`math.fsum`, which returns the
correctly rounded sum of its inputs.  A correctly rounded sum does not
depend on the order of the terms, so any partition of the work across
threads reproduces the single-threaded result bit for bit.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def csum(values):
    """Correctly rounded sum of real or complex values.

    Returns a ``float`` when every input is real, otherwise a ``complex``
    whose real and imaginary parts are each correctly rounded.
    """
    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0
    arr = arr.ravel()
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real), math.fsum(arr.imag))
    return math.fsum(arr)


def cumulative_csum(values):
    """Running partial sums with Neumaier compensation.

    Each entry carries an error of a few ulps of the running magnitude,
    independent of the number of terms, unlike ``np.cumsum``.
    """
    arr = np.asarray(values, dtype=float).ravel()
    out = np.empty_like(arr)
    s = 0.0
    comp = 0.0
    for i, x in enumerate(arr.tolist()):
        t = s + x
        if abs(s) >= abs(x):
            comp += (s - t) + x
        else:
            comp += (x - t) + s
        s = t
        out[i] = s + comp
    return out


def map_ordered(fn, items, workers=None):
    """``[fn(x) for x in items]``, optionally on a thread pool.

    Output order always matches input order.
    """
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
