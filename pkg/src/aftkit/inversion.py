"""Möbius inversion of folded sequences.

Given ``b_n = sum_{k>=1} c_{kn}``, the original sequence comes back as
``c_n = sum_{k>=1} mu(k) b_{kn}`` provided ``c`` decays fast enough.
Every sum here is truncated at an explicit ``K``; choosing ``K`` is the
caller's business.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError
from .numtheory import omega
from .summation import csum


@dataclass(frozen=True)
class SequenceEvaluator:
    """Index -> value map for ``c_1, c_2, ...``.

    ``decay_hint = (A, r)`` certifies ``|c_k| <= A r^k`` with ``0 < r < 1``;
    it is what :func:`wintner_condition_report` uses to decide which
    sufficient conditions hold for the full infinite series.
    """

    eval: Callable[[int], complex]
    decay_hint: Optional[tuple] = None

    def __post_init__(self):
        if self.decay_hint is not None:
            A, r = self.decay_hint
            if A < 0 or not 0 < r < 1:
                raise InvalidArgumentError("decay_hint must be (A >= 0, 0 < r < 1)")

    def __call__(self, k):
        return self.eval(k)

    @classmethod
    def from_values(cls, values, decay_hint=None):
        """``c_k = values[k-1]`` for ``k <= len(values)``, zero beyond."""
        vals = tuple(values)

        def ev(k):
            return vals[k - 1] if k <= len(vals) else 0.0

        return cls(ev, decay_hint)

    @classmethod
    def fold_of(cls, c, K):
        """The sequence ``b_n = sum_{k<=K} c_{kn}`` as an evaluator."""
        return cls(lambda n: fold_b(c, n, K))


def fold_b(c, n, K):
    """``sum_{k=1}^{K} c(k n)``."""
    if n < 1 or K < 1:
        raise InvalidArgumentError("fold_b needs n >= 1 and K >= 1")
    return csum(np.array([c(k * n) for k in range(1, K + 1)]))


def invert(b, n, K, table):
    """``sum_{k=1}^{K} mu(k) b(k n)``, recovering ``c_n`` from its fold."""
    if n < 1 or K < 1:
        raise InvalidArgumentError("invert needs n >= 1 and K >= 1")
    if K * n > table.limit:
        raise OutOfRangeError(f"K*n = {K * n} exceeds sieve limit {table.limit}")
    ks, signs = table.squarefree(K)
    return csum(np.array([s * b(k * n) for k, s in zip(ks.tolist(), signs.tolist())]))


@dataclass(frozen=True)
class WintnerReport:
    """Partial sums of the three decay measures up to ``K``.

    ``abs_sum`` is ``sum |c_k|``, ``weighted_sum`` is ``sum k |c_k|`` and
    ``divisor_sum`` is ``sum 2^omega(k) |c_k|``.  The ``*_certified`` flags
    say whether the decay hint proves the infinite version finite.
    ``abs_sufficient`` is always False: summability of ``|c_k|`` alone does
    not license inversion.
    """

    K: int
    abs_sum: float
    weighted_sum: float
    divisor_sum: float
    abs_certified: bool
    weighted_certified: bool
    divisor_certified: bool
    abs_sufficient: bool = False

    @property
    def inversion_certified(self):
        return self.weighted_certified or self.divisor_certified


def wintner_condition_report(c, K, table=None):
    if K < 1:
        raise InvalidArgumentError("K must be >= 1")
    k = np.arange(1, K + 1)
    mags = np.array([abs(c(int(i))) for i in k])
    w = np.array([2.0 ** omega(int(i), table) for i in k])
    # geometric decay dominates any polynomial or 2^omega weight
    certified = c.decay_hint is not None
    return WintnerReport(
        K=K,
        abs_sum=csum(mags),
        weighted_sum=csum(k * mags),
        divisor_sum=csum(w * mags),
        abs_certified=certified,
        weighted_certified=certified,
        divisor_certified=certified,
    )
