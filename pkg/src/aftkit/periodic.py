"""Fourier coefficients of real period-1 functions from sample averages.

With ``s_n(x)`` the mean of ``f`` over the ``n`` points ``x + m/n``, the
combination

    S_n(x) = sum_k mu(k) s_{kn}(x) = a_n cos(2 pi n x) + b_n sin(2 pi n x)

isolates the ``n``-th harmonic of a zero-mean ``f``.  Evaluating at
``x = 0`` gives ``a_n``; evaluating at ``x = 1/(4n)`` gives ``b_n``.

The second half of the module sums over multiples of an irrational
phase instead of equispaced grids; those series need no zero-mean
normalization but converge slowly.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .engine import CoefficientResult, as_policy, mobius_sum, truncation_bound
from .errors import InvalidArgumentError, PreconditionError
from .summation import csum

MEAN_NODES = 2**16
MEAN_TOL = 1e-9
TRIG_BLOCK = 4096

IRRATIONALS = {
    "golden": (math.sqrt(5.0) - 1.0) / 2.0,
    "sqrt2": math.sqrt(2.0) - 1.0,
    "ln2": math.log(2.0),
}


def irrational(name_or_value):
    """Look up a catalog irrational; plain floats pass through.

    Every float is rational, so a user-supplied value only approximates
    the irrational-sampling formulas; catalog entries are badly
    approximable numbers chosen to keep resonance with small
    denominators low.
    """
    if isinstance(name_or_value, str):
        try:
            return IRRATIONALS[name_or_value]
        except KeyError:
            raise InvalidArgumentError(
                f"unknown irrational {name_or_value!r}; choose from {sorted(IRRATIONALS)}"
            ) from None
    return float(name_or_value)


def _trig_eval(x, cos_coeffs, sin_coeffs, const=0.0):
    x = np.asarray(x, dtype=float)
    flat = np.mod(x.ravel(), 1.0)
    a = np.asarray(cos_coeffs, dtype=float)
    b = np.asarray(sin_coeffs, dtype=float)
    keep = np.flatnonzero((a != 0) | (b != 0))
    n = keep + 1.0
    out = np.full(flat.shape, float(const))
    for lo in range(0, flat.size, TRIG_BLOCK):
        # reduce n*x mod 1 before scaling so large n keep their phase
        phase = 2 * np.pi * np.mod(np.outer(flat[lo : lo + TRIG_BLOCK], n), 1.0)
        out[lo : lo + TRIG_BLOCK] += np.cos(phase) @ a[keep] + np.sin(phase) @ b[keep]
    return out.reshape(x.shape) if x.ndim else float(out[0])


@dataclass(frozen=True)
class PeriodicSignal:
    """A real function of period 1 plus a note on where it came from.

    ``source`` is ``"catalog"``, ``"harmonic_list"`` or ``"sample_grid"``.
    ``lipschitz`` is a Lipschitz constant for ``f'`` (i.e. a bound on
    ``|f''|`` in the period-1 variable) when one is known.  ``grid`` holds
    the raw samples ``f(j/G)`` for grid sources.
    """

    func: Callable = field(repr=False)
    source: str = "catalog"
    name: str = ""
    params: tuple = ()
    mean_removed: bool = False
    lipschitz: Optional[float] = None
    grid: Optional[np.ndarray] = field(default=None, repr=False)
    mean_adjustment: float = 0.0

    def eval(self, x):
        return self.func(x)

    __call__ = eval

    def exact_at(self, N):
        """True when every ``m/N`` lands on a stored sample."""
        if self.grid is None:
            return True
        return self.grid.size % N == 0

    # --- constructors -------------------------------------------------

    @classmethod
    def from_trig(cls, cos_coeffs=(), sin_coeffs=(), const=0.0, name="trigpoly"):
        """``const + sum_n a_n cos(2 pi n x) + b_n sin(2 pi n x)``, ``n >= 1``."""
        D = max(len(cos_coeffs), len(sin_coeffs))
        a = np.zeros(D)
        b = np.zeros(D)
        a[: len(cos_coeffs)] = cos_coeffs
        b[: len(sin_coeffs)] = sin_coeffs
        lip = float(np.sum((2 * np.pi * np.arange(1, D + 1)) ** 2 * (np.abs(a) + np.abs(b))))
        return cls(
            func=lambda x: _trig_eval(x, a, b, const),
            source="harmonic_list",
            name=name,
            params=(tuple(a), tuple(b), float(const)),
            mean_removed=const == 0.0,
            lipschitz=lip if lip > 0 else None,
        )

    @classmethod
    def from_harmonics(cls, amplitudes, phases):
        """``sum_n A_n cos(2 pi n x + phi_n)`` for ``n = 1..len(amplitudes)``."""
        A = np.asarray(amplitudes, dtype=float)
        phi = np.asarray(phases, dtype=float)
        if A.shape != phi.shape:
            raise InvalidArgumentError("amplitudes and phases must have equal length")
        sig = cls.from_trig(A * np.cos(phi), -A * np.sin(phi), name="harmonic")
        return replace(sig, params=(tuple(A), tuple(phi)))

    @classmethod
    def from_samples(cls, values):
        """Samples ``f(j/G)``, ``j = 0..G-1``, read back by linear interpolation."""
        vals = np.asarray(values, dtype=float).ravel()
        if vals.size < 2:
            raise InvalidArgumentError("a sample grid needs at least two values")
        if not np.all(np.isfinite(vals)):
            raise InvalidArgumentError("sample grid contains non-finite values")
        vals.setflags(write=False)
        return cls(
            func=lambda x: _grid_eval(vals, x),
            source="sample_grid",
            name="grid",
            params=(vals.size,),
            grid=vals,
        )

    @classmethod
    def from_callable(cls, func, *, name="callable", mean_removed=False, lipschitz=None):
        return cls(func=func, name=name, mean_removed=mean_removed, lipschitz=lipschitz)

    @classmethod
    def point_indicator(cls, x0, tol=1e-12):
        """1 at ``x0`` (mod 1) and 0 elsewhere."""
        x0 = float(x0) % 1.0

        def func(x):
            d = np.abs(np.mod(np.asarray(x, dtype=float) - x0 + 0.5, 1.0) - 0.5)
            return np.where(d < tol, 1.0, 0.0)

        return cls(func=func, name="point_indicator", params=(x0,))

    def remove_mean(self):
        """Subtract the mean: trapezoid on 2^16 nodes, or the exact grid mean."""
        if self.mean_removed:
            return self
        if self.grid is not None:
            mean = math.fsum(self.grid) / self.grid.size
            centered = self.grid - mean
            sig = PeriodicSignal.from_samples(centered)
            return replace(sig, mean_removed=True, mean_adjustment=mean)
        t = np.arange(MEAN_NODES) / MEAN_NODES
        mean = math.fsum(np.asarray(self.func(t), dtype=float)) / MEAN_NODES
        base = self.func
        return replace(
            self,
            func=lambda x: base(x) - mean,
            mean_removed=True,
            mean_adjustment=mean,
        )


def _grid_eval(vals, x):
    x = np.asarray(x, dtype=float)
    G = vals.size
    u = np.mod(x, 1.0) * G
    i = np.floor(u)
    w = u - i
    snap = np.abs(w - np.round(w)) < 1e-9
    i = np.where(snap, np.round(u), i).astype(np.int64) % G
    w = np.where(snap, 0.0, w)
    out = vals[i] * (1.0 - w) + vals[(i + 1) % G] * w
    return out if out.ndim else float(out)


def catalog(name, *params):
    """Named period-1 test signals.

    ``cos``/``sin`` are ``cos(2 pi x)``/``sin(2 pi x)``; ``cosk k`` is
    ``cos(2 pi k x)``; ``trigpoly`` takes cosine and sine coefficient
    sequences (and an optional constant); ``geom_disk rho`` is the real
    part of ``rho z / (1 - rho z)`` on the unit circle, whose cosine
    coefficients are ``rho^n``.
    """
    if name == "cos":
        return replace(PeriodicSignal.from_trig([1.0]), source="catalog", name="cos")
    if name == "sin":
        return replace(PeriodicSignal.from_trig([], [1.0]), source="catalog", name="sin")
    if name == "cosk":
        (k,) = params
        k = int(k)
        if k < 1:
            raise InvalidArgumentError("cosk needs k >= 1")
        sig = PeriodicSignal.from_trig([0.0] * (k - 1) + [1.0])
        return replace(sig, source="catalog", name="cosk", params=(k,))
    if name == "trigpoly":
        sig = PeriodicSignal.from_trig(*params)
        return replace(sig, source="catalog")
    if name == "geom_disk":
        (rho,) = params
        rho = float(rho)
        if not 0 < rho < 1:
            raise InvalidArgumentError("geom_disk needs 0 < rho < 1")

        def func(x):
            z = rho * np.exp(2j * np.pi * np.mod(np.asarray(x, dtype=float), 1.0))
            return np.real(z / (1 - z))

        lip = (2 * np.pi) ** 2 * rho * (1 + rho) / (1 - rho) ** 3
        return PeriodicSignal(
            func=func, name="geom_disk", params=(rho,), mean_removed=True, lipschitz=lip
        )
    raise InvalidArgumentError(f"unknown periodic catalog signal {name!r}")


# --- equispaced averages ---------------------------------------------------


def _points(x, n):
    # m/n formed from integers, then shifted
    return x + np.arange(1, n + 1) / n


def average_s_n(f, x, n):
    """Mean of ``f`` over ``x + m/n``, ``m = 1..n``."""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    return csum(np.asarray(f.eval(_points(x, n)), dtype=float)) / n


def harmonic_S_n(f, x, n, policy, table, *, workers=None):
    """``sum_k mu(k) s_{kn}(x)``, the ``n``-th harmonic of ``f`` at ``x``."""
    res = mobius_sum(lambda N: average_s_n(f, x, N), n, policy, table, workers=workers)
    return res.value


def _extract(f, x, n, policy, table, lipschitz, workers):
    if not f.mean_removed:
        raise PreconditionError("signal mean must be removed first (call remove_mean())")
    policy = as_policy(policy)
    res = mobius_sum(lambda N: average_s_n(f, x, N), n, policy, table, workers=workers)
    ks, _ = table.squarefree(res.K_used)
    approximate = not all(f.exact_at(int(k) * n) for k in ks)
    C = f.lipschitz if lipschitz is None else lipschitz
    return CoefficientResult(
        n=n,
        value=float(res.value),
        K_used=res.K_used,
        bound=truncation_bound(C, n, res.K_used) if C else None,
        additions=res.additions,
        multiplications=res.multiplications,
        approximate=approximate,
        mean_adjustment=f.mean_adjustment or None,
        partials=res.partials,
    )


def aft_cosine(f, n, policy, table, *, lipschitz=None, workers=None):
    """Cosine coefficient ``a_n`` from sample sums at ``m/(kn)``."""
    return _extract(f, 0.0, n, policy, table, lipschitz, workers)


def aft_sine(f, n, policy, table, *, lipschitz=None, workers=None):
    """Sine coefficient ``b_n``: the same sum shifted to ``x = 1/(4n)``."""
    return _extract(f, 1.0 / (4 * n), n, policy, table, lipschitz, workers)


def proposition1_bound(C, n):
    """``C / n^2``: uniform cap on ``|int f - s_n(x)|`` when ``f'`` is ``C``-Lipschitz."""
    if C <= 0:
        raise InvalidArgumentError("Lipschitz constant must be positive")
    return C / (n * n)


# --- irrational sampling ---------------------------------------------------


@dataclass(frozen=True)
class IrrationalSum:
    """Partial sums of an irrational-sampling series at ``N // 2`` and ``N``."""

    value: complex
    half_value: complex
    N: int
    x: float


def _divisor_convolution(g, N, table):
    """``T[n] = sum_{d | n} mu(d) g[n/d]`` for ``n = 1..N`` (index 0 unused)."""
    table.check(N)
    T = np.zeros(N + 1, dtype=g.dtype)
    ds, signs = table.squarefree(N)
    for d, s in zip(ds.tolist(), signs.tolist()):
        m = N // d
        if s > 0:
            T[d : d * m + 1 : d] += g[1 : m + 1]
        else:
            T[d : d * m + 1 : d] -= g[1 : m + 1]
    return T


def _irrational_series(g, x, N, table):
    if N < 2:
        raise InvalidArgumentError("N must be >= 2")
    T = _divisor_convolution(g, N, table)
    terms = T[1:] / np.arange(1, N + 1)
    return IrrationalSum(value=csum(terms), half_value=csum(terms[: N // 2]), N=N, x=x)


def _phases(x, N):
    j = np.arange(N + 1, dtype=float)
    return np.mod(j * x, 1.0)


def wintner_integral_irrational(f, x, N, table):
    """``sum_{n<=N} (1/n) sum_{d|n} mu(d) f(n x / d)``, approximating ``int f``.

    ``x`` is a catalog name (``golden``, ``sqrt2``, ``ln2``) or a float.
    """
    x = irrational(x)
    g = np.asarray(f.eval(_phases(x, N)), dtype=float)
    return _irrational_series(g, x, N, table)


def wintner_coeff_irrational(f, kk, x, N, table):
    """Same series with ``f(t) exp(-2 pi i kk t)``, approximating ``c_kk``."""
    x = irrational(x)
    t = _phases(x, N)
    g = np.asarray(f.eval(t), dtype=float) * np.exp(-2j * np.pi * np.mod(kk * t, 1.0))
    return _irrational_series(g, x, N, table)
