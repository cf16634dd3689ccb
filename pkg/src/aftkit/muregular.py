"""Coefficients of mu-regular (Yukawan) functions.

A mu-regular function on the closed unit disk expands as

    f(r e^{i theta}) = sum_{n in Z} c_n I_|n|(mu r) e^{i n theta},
    c_{-n} = conj(c_{n-1}),

with ``I_n`` the modified Bessel function of the first kind.  On the unit
circle the AFT fold at index ``n`` picks up both ``c_n I_n(mu)`` and the
mirror term ``conj(c_{n-1}) I_n(mu)``, which gives the recursion

    c_n = AFT_n / I_n(mu) - conj(c_{n-1}),    c_0 = 0.

Throughout, ``mobius`` refers to the number-theoretic weight and
``mu_param`` to the Yukawa parameter.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic import BoundaryFunction, taylor_coeff_unit
from .engine import as_policy, truncation_bound
from .errors import DegenerateWeightError, InvalidArgumentError, PreconditionError
from .summation import csum

BESSEL_MAX_ORDER = 64
BESSEL_MAX_ARG = 50.0
MAX_MODES = 64
WEIGHT_FLOOR = 1e-300
NORMALIZATION_TOL = 1e-8


def bessel_i(n, x):
    """``I_n(x)`` from its power series, for ``0 <= n <= 64``, ``0 <= x <= 50``.

    Terms are added until one drops below ``1e-18`` of the running sum.
    """
    if not isinstance(n, (int, np.integer)) or n < 0 or n > BESSEL_MAX_ORDER:
        raise InvalidArgumentError(f"order must be an integer in [0, {BESSEL_MAX_ORDER}], got {n}")
    x = float(x)
    if not 0 <= x <= BESSEL_MAX_ARG:
        raise InvalidArgumentError(f"argument must lie in [0, {BESSEL_MAX_ARG}], got {x}")
    half = x / 2
    lead = 1.0
    for i in range(1, n + 1):
        lead *= half / i
    if lead == 0.0:
        return 0.0
    q = half * half
    term = 1.0
    total = 1.0
    j = 0
    while True:
        j += 1
        term *= q / (j * (n + j))
        total += term
        if term < 1e-18 * total:
            break
    return lead * total


@dataclass(frozen=True)
class MuRegularSpec:
    """Yukawa parameter and nonnegative-index coefficients ``c_0..c_M``.

    Negative indices are never stored; they follow from
    ``c_{-n} = conj(c_{n-1})``.
    """

    mu_param: float
    coeffs: tuple

    def __post_init__(self):
        if not self.mu_param > 0:
            raise InvalidArgumentError("mu_param must be positive")
        if len(self.coeffs) == 0:
            raise InvalidArgumentError("need at least c_0")
        if len(self.coeffs) - 1 > MAX_MODES:
            raise InvalidArgumentError(f"at most {MAX_MODES} modes are supported")
        if abs(self.coeffs[0]) != 0:
            raise InvalidArgumentError("c_0 must be 0 (normalization f(0) = 0)")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def M(self):
        return len(self.coeffs) - 1

    def coefficient(self, n):
        """``c_n`` for any integer ``n``, applying the conjugate rule below 0."""
        if n >= 0:
            return self.coeffs[n] if n <= self.M else 0j
        m = -n - 1
        return self.coeffs[m].conjugate() if m <= self.M else 0j


def synthesize_boundary(spec, r, theta):
    """``sum_{n=-M-1}^{M} c_n I_|n|(mu r) e^{i n theta}``."""
    if not 0 < r <= 1:
        raise InvalidArgumentError(f"r must lie in (0, 1], got {r}")
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape, dtype=complex)
    x = spec.mu_param * r
    for n in range(-spec.M - 1, spec.M + 1):
        c = spec.coefficient(n)
        if c == 0:
            continue
        out = out + c * bessel_i(abs(n), x) * np.exp(1j * n * theta)
    return out if out.ndim else complex(out)


def muregular_function(spec):
    """``z -> f(z)`` over the closed disk, built from a spec."""

    def func(z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        r = np.where((r > 1) & (r < 1 + 1e-12), 1.0, r)
        if z.ndim and z.size and r.min() > 0 and np.ptp(r) <= 1e-15:
            # a ring of samples: one set of Bessel weights serves every angle
            return synthesize_boundary(spec, float(r.flat[0]), np.angle(z))
        flat = [
            synthesize_boundary(spec, ri, ti) if ri > 0 else spec.coeffs[0]
            for ri, ti in zip(r.ravel().tolist(), np.angle(z).ravel().tolist())
        ]
        out = np.array(flat, dtype=complex).reshape(z.shape)
        return out if z.ndim else complex(out)

    return func


@dataclass(frozen=True)
class MuRegularResult:
    """Recovered ``c_1..c_n_max`` (index 0 of ``coeffs`` is ``c_0 = 0``).

    ``error_budget[n]`` accumulates the truncation estimate of each AFT
    sum scaled by ``1/I_j(mu)`` for ``j <= n``; the recursion passes
    errors on through the conjugate term without damping them.
    """

    mu_param: float
    coeffs: tuple
    weights: tuple
    error_budget: tuple
    K_used: tuple

    def spec(self):
        return MuRegularSpec(self.mu_param, self.coeffs)


def mean_value_check(f, mu_param, rho, nodes=4096):
    """``|f(0) - (1 / (2 pi I_0(mu rho))) int f(rho e^{i theta}) d theta|``."""
    if not 0 < rho < 1:
        raise InvalidArgumentError(f"rho must lie in (0, 1), got {rho}")
    theta = 2 * np.pi * np.arange(nodes) / nodes
    ring = csum(np.asarray(f(rho * np.exp(1j * theta)), dtype=complex)) / nodes
    centre = complex(np.asarray(f(np.zeros(1, dtype=complex)))[0])
    return abs(centre - ring / bessel_i(0, mu_param * rho))


def muregular_coeffs_recursive(f, mu_param, n_max, policy, table, *,
                               lipschitz=None, check_normalization=True, workers=None):
    """Recover ``c_1..c_n_max`` from samples of ``f`` on the unit circle.

    ``f`` maps complex ``z`` in the closed disk to complex values.  With
    ``check_normalization`` the ring mean at radius 1e-3 must vanish,
    i.e. ``c_0 = 0``.
    """
    if not mu_param > 0:
        raise InvalidArgumentError("mu_param must be positive")
    if n_max < 1 or n_max > MAX_MODES:
        raise InvalidArgumentError(f"n_max must lie in [1, {MAX_MODES}]")
    policy = as_policy(policy)
    if check_normalization:
        rho = 1e-3
        theta = 2 * np.pi * np.arange(256) / 256
        c0 = csum(np.asarray(f(rho * np.exp(1j * theta)), dtype=complex)) / 256
        c0 /= bessel_i(0, mu_param * rho)
        if abs(c0) > NORMALIZATION_TOL:
            raise PreconditionError(f"f(0) must be 0; ring mean gives c_0 ~ {c0:.3g}")

    boundary = BoundaryFunction.from_callable(f, name="muregular")
    coeffs = [0j]
    weights = [bessel_i(0, mu_param)]
    budget = [0.0]
    K_used = [0]
    for n in range(1, n_max + 1):
        w = bessel_i(n, mu_param)
        if w < WEIGHT_FLOOR:
            raise DegenerateWeightError(f"I_{n}({mu_param}) = {w:.3g} is below {WEIGHT_FLOOR}")
        res = taylor_coeff_unit(boundary, n, policy, table, auto_subtract=False,
                                lipschitz=lipschitz, workers=workers)
        coeffs.append(res.value / w - coeffs[-1].conjugate())
        if lipschitz:
            err = truncation_bound(lipschitz, n, res.K_used)
        else:
            err = abs(res.partials[1] - res.partials[0]) if len(res.partials) == 2 else 0.0
        budget.append(budget[-1] + err / w)
        weights.append(w)
        K_used.append(res.K_used)
    return MuRegularResult(
        mu_param=float(mu_param),
        coeffs=tuple(coeffs),
        weights=tuple(weights),
        error_budget=tuple(budget),
        K_used=tuple(K_used),
    )


def analytic_limit_coeffs(result):
    """``c_n I_n(mu)``: the boundary Fourier weights, which tend to the
    Taylor coefficients of the same data as ``mu -> 0``."""
    return tuple(c * w for c, w in zip(result.coeffs, result.weights))


__all__ = [
    "MuRegularResult",
    "MuRegularSpec",
    "analytic_limit_coeffs",
    "bessel_i",
    "mean_value_check",
    "muregular_coeffs_recursive",
    "muregular_function",
    "synthesize_boundary",
]
