"""Taylor and inverse Z-transform coefficients from samples on a circle.

For ``f(z) = sum_{j>=1} c_j z^j`` the mean of ``f`` over the ``N``-th
roots of unity is ``sum_k c_{kN}``, a folded sequence.  Möbius inversion
of that fold gives ``c_n`` using nothing but sample sums.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .engine import CoefficientResult, as_policy, mobius_sum, truncation_bound
from .errors import InvalidArgumentError, PreconditionError
from .summation import csum

NORMALIZATION_TOL = 1e-8
NORMALIZATION_NODES = 4096
SERIES_TOL = 1e-18


def _unit_angles(n, theta0=0.0):
    # 2 pi m / n with m/n reduced into [-1/2, 1/2) first
    frac = np.arange(1, n + 1) / n
    frac = frac - np.round(frac)
    return theta0 + 2 * np.pi * frac


@dataclass(frozen=True)
class BoundaryFunction:
    """Complex function sampled on the circle ``|z| = radius``.

    ``func`` maps complex ``z`` (arrays welcome) to complex values;
    :meth:`eval` takes angles.  ``shift = k`` multiplies by ``z^k``, which
    moves a coefficient at index ``n`` to ``n + k``.  ``lipschitz`` is a
    Lipschitz constant of ``d/dtheta f(e^{i theta})`` when known.
    """

    func: Callable = field(repr=False)
    radius: float = 1.0
    shift: int = 0
    source: str = "catalog"
    name: str = ""
    params: tuple = ()
    lipschitz: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.radius <= 1:
            raise InvalidArgumentError(f"radius must lie in (0, 1], got {self.radius}")

    def eval(self, theta):
        theta = np.asarray(theta, dtype=float)
        z = self.radius * np.exp(1j * theta)
        vals = np.asarray(self.func(z), dtype=complex)
        if self.shift:
            vals = vals * z**self.shift
        return vals if vals.ndim else complex(vals)

    __call__ = eval

    def at_radius(self, r):
        return replace(self, radius=float(r))

    def shifted(self, k):
        return replace(self, shift=self.shift + int(k))

    @classmethod
    def from_power_series(cls, coeffs, name="power_series"):
        """``sum_j coeffs[j] z^j`` (``coeffs[0]`` is the constant term)."""
        c = np.asarray(coeffs, dtype=complex)
        mags = np.abs(c)
        keep = np.flatnonzero(mags >= SERIES_TOL)
        c = c[: keep[-1] + 1] if keep.size else c[:1] * 0
        j = np.arange(c.size)
        lip = float(np.sum(j**2 * np.abs(c)))

        def func(z):
            z = np.asarray(z, dtype=complex)
            acc = np.zeros_like(z)
            for cj in c[::-1]:
                acc = acc * z + cj
            return acc

        return cls(func=func, source="power_series", name=name, params=tuple(c), lipschitz=lip or None)

    @classmethod
    def from_callable(cls, func, *, name="callable", lipschitz=None):
        return cls(func=func, source="callable", name=name, lipschitz=lipschitz)


def catalog(name, *params):
    """Named analytic test functions.

    ``monomial d``: ``z^d``.  ``geom_disk rho``: ``rho z / (1 - rho z)``,
    Taylor coefficients ``rho^n`` (``rho = 1/2`` is ``z / (2 - z)``).
    ``expm1``: ``e^z - 1``, coefficients ``1/n!``.  ``zero``: 0.
    """
    if name == "monomial":
        (d,) = params
        d = int(d)
        return BoundaryFunction(
            func=lambda z: np.asarray(z, dtype=complex) ** d,
            name="monomial", params=(d,), lipschitz=float(d * d) or None,
        )
    if name == "geom_disk":
        (rho,) = params
        rho = float(rho)
        if not 0 < rho < 1:
            raise InvalidArgumentError("geom_disk needs 0 < rho < 1")

        def func(z):
            w = rho * np.asarray(z, dtype=complex)
            return w / (1 - w)

        return BoundaryFunction(
            func=func, name="geom_disk", params=(rho,),
            lipschitz=rho * (1 + rho) / (1 - rho) ** 3,
        )
    if name == "expm1":
        return BoundaryFunction(
            func=lambda z: np.expm1(np.asarray(z, dtype=complex)),
            name="expm1", lipschitz=2 * math.e,
        )
    if name == "zero":
        return BoundaryFunction(func=lambda z: np.zeros_like(np.asarray(z, dtype=complex)), name="zero")
    raise InvalidArgumentError(f"unknown analytic catalog function {name!r}")


def roots_of_unity_average(f, n, theta0=0.0):
    """Mean of ``f`` at angles ``theta0 + 2 pi m / n``, ``m = 1..n``."""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    return csum(f.eval(_unit_angles(n, theta0))) / n


def _circle_mean(f, conjugate=False):
    theta = 2 * np.pi * np.arange(NORMALIZATION_NODES) / NORMALIZATION_NODES
    if conjugate:
        theta = -theta
    return csum(f.eval(theta)) / NORMALIZATION_NODES


def _extract(f, n, policy, table, *, conjugate, scale, auto_subtract, lipschitz, workers):
    policy = as_policy(policy)
    c0 = _circle_mean(f, conjugate)
    if abs(c0) > NORMALIZATION_TOL:
        if not auto_subtract:
            raise PreconditionError(
                f"constant term {c0:.3g} is not zero; pass auto_subtract=True to remove it"
            )
    else:
        c0 = 0.0
    sign = -1.0 if conjugate else 1.0

    def average(N):
        return csum(f.eval(sign * _unit_angles(N))) / N - c0

    res = mobius_sum(average, n, policy, table, workers=workers)
    C = f.lipschitz if lipschitz is None else lipschitz
    return CoefficientResult(
        n=n,
        value=complex(res.value) / scale,
        K_used=res.K_used,
        bound=truncation_bound(C, n, res.K_used) if C else None,
        additions=res.additions,
        multiplications=res.multiplications + (scale != 1.0),
        mean_adjustment=c0 if c0 else None,
        partials=tuple(complex(p) / scale for p in res.partials),
    )


def taylor_coeff_unit(f, n, policy, table, *, auto_subtract=True, lipschitz=None, workers=None):
    """Taylor coefficient ``c_n`` from samples at roots of unity on ``|z| = 1``."""
    if f.radius != 1.0:
        raise InvalidArgumentError("taylor_coeff_unit samples the unit circle; use taylor_coeff_radius")
    return _extract(f, n, policy, table, conjugate=False, scale=1.0,
                    auto_subtract=auto_subtract, lipschitz=lipschitz, workers=workers)


def taylor_coeff_radius(f, n, r, policy, table, *, auto_subtract=True, workers=None):
    """``c_n`` from samples on ``|z| = r < 1``, rescaled by ``r^-n``.

    No truncation bound is attached: the Lipschitz constant of the
    rescaled data is not the one of the boundary data.
    """
    if not 0 < r < 1:
        raise InvalidArgumentError(f"r must lie in (0, 1), got {r}")
    g = f.at_radius(r)
    return _extract(g, n, policy, table, conjugate=False, scale=r**n,
                    auto_subtract=auto_subtract, lipschitz=0.0, workers=workers)


def inverse_z(X, n, policy, table, *, roc_radius, auto_subtract=True, lipschitz=None, workers=None):
    """Coefficient ``c_n`` of ``X(z) = sum_j c_j z^-j`` from samples at ``e^{-2 pi i m/(kn)}``.

    ``X`` is a :class:`BoundaryFunction` whose ``func`` evaluates ``X(z)``.
    ``roc_radius`` is the radius ``r < 1`` outside which the series
    converges.
    """
    if not roc_radius < 1:
        raise InvalidArgumentError(f"region of convergence must be |z| > r with r < 1, got r={roc_radius}")
    if X.radius != 1.0:
        raise InvalidArgumentError("inverse_z samples the unit circle")
    return _extract(X, n, policy, table, conjugate=True, scale=1.0,
                    auto_subtract=auto_subtract, lipschitz=lipschitz, workers=workers)


def corollary3_bound(C, n, N):
    """``C / (n^2 N)``."""
    return truncation_bound(C, n, N)
