"""Integer kernel: Möbius function, Mertens sums, distinct-prime counts.

The sieve computes the smallest prime factor of every integer up to the
limit, then derives ``mu`` and ``omega`` from the recurrences

    mu(n)    = 0 if p^2 | n else -mu(n / p)
    omega(n) = omega(n / p) + [p does not divide n / p]

with ``p`` the smallest prime factor of ``n``.  Since ``n / p <= n / 2``,
all integers in ``[2^j, 2^(j+1))`` depend only on smaller blocks and can
be resolved with one vectorized pass per block.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError
from .summation import csum

MAX_SIEVE_LIMIT = 10**8


@dataclass(frozen=True)
class MobiusTable:
    """Sieved ``mu``, ``omega`` and Mertens prefix sums for ``1..limit``.

    Arrays are indexed directly by ``n``; slot 0 is unused and holds 0.
    The arrays are marked read-only so a table can be shared freely.
    """

    limit: int
    mu: np.ndarray = field(repr=False)
    mertens: np.ndarray = field(repr=False)
    omega: np.ndarray = field(repr=False)

    def __getitem__(self, n):
        self.check(n)
        return int(self.mu[n])

    def check(self, n):
        if n < 1 or n > self.limit:
            raise OutOfRangeError(f"index {n} outside sieved range 1..{self.limit}")

    def squarefree(self, K):
        """Indices ``k <= K`` with ``mu(k) != 0`` and their signs."""
        self.check(K)
        k = np.flatnonzero(self.mu[1 : K + 1]) + 1
        return k, self.mu[k].astype(np.int64)


def _smallest_prime_factor(limit):
    spf = np.zeros(limit + 1, dtype=np.int32 if limit < 2**31 else np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            tail = spf[p * p :: p]
            tail[tail == 0] = p
    idx = np.arange(limit + 1, dtype=spf.dtype)
    primes = (spf == 0) & (idx >= 2)
    spf[primes] = idx[primes]
    return spf


def build_mobius_table(limit):
    """Sieve ``mu(n)``, ``omega(n)`` and ``M(n)`` for ``1 <= n <= limit``."""
    if isinstance(limit, bool) or not isinstance(limit, (int, np.integer)):
        raise InvalidArgumentError(f"limit must be an integer, got {limit!r}")
    limit = int(limit)
    if limit < 1 or limit > MAX_SIEVE_LIMIT:
        raise InvalidArgumentError(f"limit must lie in [1, {MAX_SIEVE_LIMIT}], got {limit}")

    spf = _smallest_prime_factor(limit)
    mu = np.zeros(limit + 1, dtype=np.int8)
    omega = np.zeros(limit + 1, dtype=np.int8)
    mu[1] = 1
    lo = 2
    while lo <= limit:
        hi = min(2 * lo, limit + 1)
        n = np.arange(lo, hi, dtype=spf.dtype)
        p = spf[lo:hi]
        m = n // p
        repeated = (spf[m] == p) & (m > 1)
        mu[lo:hi] = np.where(repeated, 0, -mu[m])
        omega[lo:hi] = omega[m] + (~repeated)
        lo = hi

    mertens = np.cumsum(mu, dtype=np.int64)
    for arr in (mu, omega, mertens):
        arr.setflags(write=False)
    return MobiusTable(limit=limit, mu=mu, mertens=mertens, omega=omega)


def mobius_via_primitive_roots(n):
    """Sum of the primitive ``n``-th roots of unity, which equals ``mu(n)``."""
    if n < 1 or n > 10**6:
        raise InvalidArgumentError(f"n must lie in [1, 10**6], got {n}")
    k = np.arange(1, n + 1)
    k = k[np.gcd(k, n) == 1]
    # reduce k/n to [-1/2, 1/2) before scaling by 2*pi to keep phases exact-ish
    frac = k / n
    frac = frac - np.round(frac)
    return csum(np.exp(2j * np.pi * frac))


def _divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return small + [n // d for d in reversed(small) if d * d != n]


def divisor_mu_sum(n, table=None):
    """``sum_{d | n} mu(d)``: 1 at ``n = 1`` and 0 for every larger ``n``."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if table is None or n > table.limit:
        from .oracle import brute_mobius

        return sum(brute_mobius(d) for d in _divisors(n))
    return int(sum(int(table.mu[d]) for d in _divisors(n)))


def omega(n, table=None):
    """Number of distinct primes dividing ``n``."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if table is not None and n <= table.limit:
        return int(table.omega[n])
    count = 0
    p = 2
    while p * p <= n:
        if n % p == 0:
            count += 1
            while n % p == 0:
                n //= p
        p += 1
    return count + (n > 1)


INTEGER_TOL = 1e-12


def bernoulli_frac(t):
    """First Bernoullian function: ``t - floor(t) - 1/2``, or 0 at integers.

    Accepts a scalar or an array.  Arguments within ``1e-12`` of an integer
    count as integers.
    """
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("bernoulli_frac needs finite input")
    nearest = np.round(arr)
    out = np.where(np.abs(arr - nearest) < INTEGER_TOL, 0.0, arr - np.floor(arr) - 0.5)
    if out.ndim == 0:
        return float(out)
    return out


def mu_over_n_partial(table, x):
    """Compensated partial sum ``sum_{n <= x} mu(n) / n``."""
    table.check(x)
    n = np.arange(1, x + 1, dtype=float)
    return csum(table.mu[1 : x + 1] / n)


@dataclass(frozen=True)
class MertensGrowth:
    x: int
    mertens: int
    ratio: float  # |M(x)| / sqrt(x)


def mertens_growth(table, checkpoints=None):
    """``|M(x)| / sqrt(x)`` at each checkpoint; reported, never thresholded."""
    if checkpoints is None:
        checkpoints = [10**j for j in range(1, 20) if 10**j <= table.limit]
    out = []
    for x in checkpoints:
        table.check(x)
        m = int(table.mertens[x])
        out.append(MertensGrowth(x=x, mertens=m, ratio=abs(m) / math.sqrt(x)))
    return out

