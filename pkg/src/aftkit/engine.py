"""Shared machinery for the outer Möbius sum of every AFT variant.

All of the extraction formulas in this package have the shape

    value = sum_{k=1}^{K} mu(k) * A(k * n)

where ``A(N)`` is the mean of ``N`` equispaced samples of some function.
:func:`mobius_sum` evaluates that shape once, given a callable that
returns ``A(N)``, and handles truncation, bookkeeping and op counts.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import ConvergenceError, InvalidArgumentError, OutOfRangeError
from .summation import csum, map_ordered

ADAPTIVE_MIN_K = 16


@dataclass(frozen=True)
class TruncationPolicy:
    """How many terms of the outer Möbius sum to take.

    ``fixed(K)`` always stops at ``K``.  ``adaptive(tol, K_max)`` stops at
    the first ``K >= 16`` at which the change contributed by the latest
    nonzero Möbius term is below ``tol``; terms with ``mu(k) = 0`` leave
    the partial sum unchanged and are not counted as evidence.
    """

    K: Optional[int] = None
    tol: Optional[float] = None
    K_max: Optional[int] = None

    def __post_init__(self):
        if self.K is not None:
            if self.tol is not None or self.K_max is not None:
                raise InvalidArgumentError("a policy is either fixed(K) or adaptive(tol, K_max)")
            if self.K < 1:
                raise InvalidArgumentError(f"K must be >= 1, got {self.K}")
        else:
            if self.tol is None or self.K_max is None:
                raise InvalidArgumentError("adaptive policy needs both tol and K_max")
            if not self.tol > 0:
                raise InvalidArgumentError(f"tol must be positive, got {self.tol}")
            if self.K_max < 4:
                raise InvalidArgumentError(f"K_max must be >= 4, got {self.K_max}")

    @classmethod
    def fixed(cls, K):
        return cls(K=int(K))

    @classmethod
    def adaptive(cls, tol, K_max):
        return cls(tol=float(tol), K_max=int(K_max))

    @property
    def is_adaptive(self):
        return self.K is None

    @property
    def max_terms(self):
        return self.K if self.K is not None else self.K_max


def as_policy(policy):
    if isinstance(policy, TruncationPolicy):
        return policy
    return TruncationPolicy.fixed(policy)


@dataclass(frozen=True)
class CoefficientResult:
    """One extracted coefficient.

    ``bound`` is the ``C / (n^2 K)`` truncation cap and is only filled in
    when the caller supplied a Lipschitz constant ``C``.  ``approximate``
    marks values that relied on interpolated samples; ``mean_adjustment``
    records any mean that was subtracted before extraction.
    """

    n: int
    value: Union[float, complex]
    K_used: int
    bound: Optional[float] = None
    additions: int = 0
    multiplications: int = 0
    approximate: bool = False
    mean_adjustment: Optional[Union[float, complex]] = None
    partials: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.K_used < 1:
            raise InvalidArgumentError("K_used must be >= 1")
        if self.additions < 0 or self.multiplications < 0:
            raise InvalidArgumentError("operation counts are nonnegative")


def truncation_bound(C, n, K):
    """``C / (n^2 K)``: cap on the error of stopping the outer sum at ``K``."""
    if C <= 0 or n < 1 or K < 1:
        raise InvalidArgumentError("truncation_bound needs C > 0 and n, K >= 1")
    return C / (n * n * K)


@dataclass
class MobiusSum:
    value: Union[float, complex]
    K_used: int
    additions: int
    multiplications: int
    partials: tuple


def mobius_sum(average, n, policy, table, *, workers=None):
    """``sum_{k <= K} mu(k) * average(k * n)`` under a truncation policy.

    ``average(N)`` must return the mean of ``N`` samples; it is charged
    ``N - 1`` additions and one multiplication (the ``1/N`` scaling).  The
    Möbius sign costs one addition per nonzero term after the first.
    ``workers`` parallelizes fixed-``K`` sums; the compensated reduction
    makes the result independent of the worker count.
    """
    policy = as_policy(policy)
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    K = policy.max_terms
    if K * n > table.limit:
        raise OutOfRangeError(f"K*n = {K * n} exceeds sieve limit {table.limit}")
    ks, signs = table.squarefree(K)
    pairs = list(zip(ks.tolist(), signs.tolist()))

    if not policy.is_adaptive:
        terms = map_ordered(lambda ks_: ks_[1] * average(ks_[0] * n), pairs, workers)
        adds, mults = _counts(ks, n)
        return MobiusSum(csum(terms), K, adds, mults, (csum(terms[:-1]), csum(terms)))

    terms = []
    prev = cur = 0.0
    for k, s in pairs:
        terms.append(s * average(k * n))
        prev, cur = cur, csum(terms)
        if k >= ADAPTIVE_MIN_K and abs(cur - prev) < policy.tol:
            adds, mults = _counts(ks[ks <= k], n)
            return MobiusSum(cur, k, adds, mults, (prev, cur))
    raise ConvergenceError(
        f"outer sum for n={n} did not settle below tol={policy.tol} by K={K}",
        partials=(prev, cur),
        K_used=K,
        n=n,
    )


def _counts(ks, n):
    samples = ks * n
    adds = int(np.sum(samples - 1)) + max(len(ks) - 1, 0)
    return adds, len(ks)
