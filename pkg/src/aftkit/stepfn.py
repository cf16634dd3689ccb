"""Even step functions, the Davenport series, and the PNT diagnostic.

An even step function on ``[-pi, pi]`` is stored by its breakpoints in
``(0, pi)`` and the level on each piece of ``[0, pi]``.  At a breakpoint
the value is the average of the two one-sided limits.

For the indicator ``g_b`` of ``|theta| < b`` minus its mean ``b/pi``,
the equispaced sample sum obeys ``F_N = -2 {b N / 2 pi}``, with ``{.}``
the first Bernoullian function.  Combined with the Davenport series

    sum_k mu(k)/k {k theta} = -sin(2 pi theta) / pi

this makes the AFT exact for step functions in the limit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .engine import CoefficientResult
from .errors import InvalidArgumentError, OutOfRangeError, PreconditionError
from .numtheory import bernoulli_frac, mu_over_n_partial
from .summation import csum, cumulative_csum

BREAKPOINT_TOL = 1e-12


@dataclass(frozen=True)
class EvenStepFunction:
    breakpoints: tuple
    levels: tuple
    normalized: bool = False

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        lv = tuple(float(v) for v in self.levels)
        if len(lv) != len(bp) + 1:
            raise InvalidArgumentError("need exactly one more level than breakpoints")
        if any(not 0 < b < math.pi for b in bp):
            raise InvalidArgumentError("breakpoints must lie strictly inside (0, pi)")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise InvalidArgumentError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "levels", lv)

    @classmethod
    def indicator(cls, b):
        """``g_b``: 1 on ``|theta| < b``, 1/2 at ``+-b``, 0 elsewhere."""
        if not 0 < b <= math.pi:
            raise InvalidArgumentError(f"b must lie in (0, pi], got {b}")
        if b == math.pi:
            return cls((), (1.0,))
        return cls((b,), (1.0, 0.0))

    def mean(self):
        """``(1 / 2 pi) int_{-pi}^{pi} f``, exact from the pieces."""
        edges = (0.0,) + self.breakpoints + (math.pi,)
        return math.fsum(v * (hi - lo) for v, lo, hi in zip(self.levels, edges, edges[1:])) / math.pi

    def scaled(self, alpha):
        return EvenStepFunction(self.breakpoints, tuple(alpha * v for v in self.levels), self.normalized)

    def __add__(self, other):
        bp = tuple(sorted(set(self.breakpoints) | set(other.breakpoints)))
        mids = _piece_midpoints(bp)
        levels = tuple(self._level_at(m) + other._level_at(m) for m in mids)
        return EvenStepFunction(bp, levels, self.normalized and other.normalized)

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def _level_at(self, theta):
        i = int(np.searchsorted(self.breakpoints, theta, side="right"))
        return self.levels[i]

    def eval(self, theta):
        """Value at ``theta`` (any real), period ``2 pi``."""
        t = np.asarray(theta, dtype=float)
        a = np.abs(np.mod(t + np.pi, 2 * np.pi) - np.pi)
        return self._eval_reduced(a)

    __call__ = eval

    def _eval_reduced(self, a):
        """Evaluate at ``a`` already reduced to ``[0, pi]``."""
        bp = np.asarray(self.breakpoints)
        lv = np.asarray(self.levels)
        idx = np.searchsorted(bp, a, side="right")
        out = lv[idx]
        if bp.size:
            near = np.abs(a[..., None] - bp) < BREAKPOINT_TOL
            hit = near.any(axis=-1)
            if np.any(hit):
                j = np.argmax(near, axis=-1)
                mid = 0.5 * (lv[j] + lv[j + 1])
                out = np.where(hit, mid, out)
        return out if out.ndim else float(out)


def _piece_midpoints(bp):
    edges = (0.0,) + tuple(bp) + (math.pi,)
    return [0.5 * (lo + hi) for lo, hi in zip(edges, edges[1:])]


def normalize_step(g):
    """Subtract the mean so that ``int_{-pi}^{pi} f = 0``."""
    if g.normalized:
        return g
    a0 = g.mean()
    return EvenStepFunction(g.breakpoints, tuple(v - a0 for v in g.levels), normalized=True)


def _sample_angles(N):
    # |theta_m| for theta_m = 2 pi m / N, formed from min(m, N - m) / N
    m = np.arange(N)
    return 2 * np.pi * np.minimum(m, N - m) / N


def _sample_sum_direct(f, N):
    return csum(f._eval_reduced(_sample_angles(N)))


def _lattice_counts(b, N):
    """(# of m in [0, N) with |theta_m| < b, # with |theta_m| == b)."""
    x = b * N / (2 * math.pi)
    r = round(x)
    if r >= 1 and abs(x - r) * 2 * math.pi / N < BREAKPOINT_TOL:
        return 2 * r - 1, 2
    return 2 * math.floor(x) + 1, 0


def _sample_sum_count(f, N):
    terms = []
    below_prev, hit_prev = 0, 0
    for i, b in enumerate(f.breakpoints):
        below, hit = _lattice_counts(b, N)
        inside = below - below_prev - hit_prev
        terms.append(inside * f.levels[i])
        if hit:
            terms.append(hit * 0.5 * (f.levels[i] + f.levels[i + 1]))
        below_prev, hit_prev = below, hit
    terms.append((N - below_prev - hit_prev) * f.levels[-1])
    return math.fsum(terms)


def sample_sum_F_N(f, N, method="count"):
    """``sum_{m=0}^{N-1} f(2 pi m / N)``.

    ``method="count"`` counts lattice points in each piece (cost independent
    of ``N``); ``method="direct"`` evaluates every sample.
    """
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    if method == "count":
        return _sample_sum_count(f, N)
    if method == "direct":
        return _sample_sum_direct(f, N)
    raise InvalidArgumentError(f"unknown method {method!r}")


def bernoulli_identity_check(b, N):
    """``|F_N(f_b) + 2 {b N / 2 pi}|`` with ``F_N`` summed sample by sample."""
    f = normalize_step(EvenStepFunction.indicator(b))
    lhs = sample_sum_F_N(f, N, method="direct")
    rhs = -2.0 * bernoulli_frac(b * N / (2 * math.pi))
    return abs(lhs - rhs)


def _davenport_terms(theta, K, table):
    table.check(K)
    k = np.arange(1, K + 1)
    return table.mu[1 : K + 1] / k * bernoulli_frac(k * theta)


def davenport_partial(theta, K, table):
    """``sum_{k<=K} mu(k)/k {k theta}``; the limit is ``-sin(2 pi theta)/pi``."""
    return csum(_davenport_terms(theta, K, table))


def davenport_target(theta):
    return -math.sin(2 * math.pi * theta) / math.pi


def davenport_checkpoints(theta, Ks, table):
    """``[(K, partial)]`` for each ``K`` in ``Ks``, from one compensated pass."""
    Ks = sorted(int(K) for K in Ks)
    if not Ks:
        return []
    traj = cumulative_csum(_davenport_terms(theta, Ks[-1], table))
    return [(K, float(traj[K - 1])) for K in Ks]


def davenport_trajectory(theta, K, table):
    """Every partial sum for ``1..K``."""
    return cumulative_csum(_davenport_terms(theta, K, table))


def step_cosine_coeff(f, n, K, table):
    """``sum_{k<=K} mu(k)/(kn) F_{kn}(f)`` approximating ``a_n`` of ``f``.

    Sample sums use lattice counting, so the cost per ``k`` does not grow
    with ``kn``.  Additions count ``kn - 1`` per sample sum as if the sum
    were done sample by sample.
    """
    if not f.normalized:
        raise PreconditionError("step function must be normalized first (normalize_step)")
    if n < 1 or K < 1:
        raise InvalidArgumentError("n and K must be >= 1")
    if K * n > table.limit:
        raise OutOfRangeError(f"K*n = {K * n} exceeds sieve limit {table.limit}")
    ks, signs = table.squarefree(K)
    F = np.array([sample_sum_F_N(f, int(k) * n) for k in ks])
    terms = signs * F / (ks * n)
    return CoefficientResult(
        n=n,
        value=csum(terms),
        K_used=K,
        additions=int(np.sum(ks * n - 1)) + max(len(ks) - 1, 0),
        multiplications=len(ks),
        partials=(csum(terms[:-1]), csum(terms)),
    )


def indicator_trajectory(b, n, K, table):
    """Partial sums of the step AFT for ``f_b`` at every ``K' <= K``.

    Uses ``F_N = -2 {b N / 2 pi}`` so the whole trajectory costs one
    vectorized pass; :func:`step_cosine_coeff` remains the sample-based
    path.
    """
    table.check(K * n)
    k = np.arange(1, K + 1)
    F = -2.0 * bernoulli_frac(b * k * n / (2 * math.pi))
    return cumulative_csum(table.mu[1 : K + 1] * F / (k * n))


def indicator_cosine_exact(b, n):
    """``(2 / (n pi)) sin(n b)``."""
    return 2.0 / (n * math.pi) * math.sin(n * b)


@dataclass(frozen=True)
class PNTChainReport:
    """Quantities along the Davenport -> PNT argument at one ``(K, theta)``.

    ``eps`` is ``|target - partial|``.  In the small-angle regime every
    ``{k theta}`` equals ``k theta - 1/2``, so the partial sum splits as
    ``theta M(K) - (1/2) sum mu(k)/k`` and ``half_mu_over_n`` must stay
    below ``|partial| + theta sum |mu(k)|``, the reconstructed bound.
    """

    K: int
    theta: float
    davenport_partial: float
    davenport_target: float
    eps: float
    small_angle_regime: bool
    linearized_fraction_count: int
    mertens: int
    half_mu_over_n: float
    reconstructed_bound: float
    mu_over_n: float

    @property
    def bound_holds(self):
        return self.half_mu_over_n <= self.reconstructed_bound + 1e-12


def pnt_chain_report(table, K, theta_small):
    table.check(K)
    partial = davenport_partial(theta_small, K, table)
    target = davenport_target(theta_small)
    k = np.arange(1, K + 1)
    kt = k * theta_small
    linear = int(np.count_nonzero(np.isclose(bernoulli_frac(kt), kt - 0.5, rtol=0, atol=1e-12)))
    mon = mu_over_n_partial(table, K)
    abs_mu = int(np.count_nonzero(table.mu[1 : K + 1]))
    return PNTChainReport(
        K=K,
        theta=theta_small,
        davenport_partial=partial,
        davenport_target=target,
        eps=abs(target - partial),
        small_angle_regime=bool(0 < K * theta_small < 1),
        linearized_fraction_count=linear,
        mertens=int(table.mertens[K]),
        half_mu_over_n=0.5 * abs(mon),
        reconstructed_bound=abs(partial) + theta_small * abs_mu,
        mu_over_n=mon,
    )
