"""Brute-force reference computations.

These are written for auditability, not speed: classical integral
definitions by periodic trapezoid quadrature, an O(L^2) DFT, direct
power-series evaluation, and trial-division number theory.  Nothing in
here calls into the AFT machinery.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite trapezoid rule on ``nodes`` equispaced points of a period.

    For smooth periodic integrands this rule converges faster than any
    power of ``1/nodes``, which is what the test tolerances rely on.
    """

    nodes: int = 4096

    def __post_init__(self):
        n = self.nodes
        if n < 64 or n & (n - 1):
            raise InvalidArgumentError(f"nodes must be a power of two >= 64, got {n}")


def _evaluate(f, x):
    return np.asarray(f(x) if callable(f) else f.eval(x))


def quadrature_fourier(f, n, spec=QuadratureSpec()):
    """Trapezoid estimates of ``2 int_0^1 f cos(2 pi n t)`` and the sine twin.

    ``f`` is a period-1 callable (or anything with an ``eval`` method).
    For ``n = 0`` the cosine entry is ``2 * mean``, matching the usual
    ``a_0 / 2`` convention.
    """
    if spec.nodes < 8 * abs(n):
        raise InvalidArgumentError(f"{spec.nodes} nodes cannot resolve harmonic {n}")
    j = np.arange(spec.nodes)
    t = j / spec.nodes
    vals = _evaluate(f, t).astype(float)
    # angles reduced through the integer product n*j mod nodes
    phase = 2 * np.pi * ((n * j) % spec.nodes) / spec.nodes
    a = 2.0 * math.fsum(vals * np.cos(phase)) / spec.nodes
    b = 2.0 * math.fsum(vals * np.sin(phase)) / spec.nodes
    return a, b


def quadrature_mean(f, spec=QuadratureSpec()):
    t = np.arange(spec.nodes) / spec.nodes
    return math.fsum(_evaluate(f, t).astype(float)) / spec.nodes


def circle_coefficient(func, n, radius=1.0, nodes=4096):
    """``(1/2pi) int f(r e^{i theta}) e^{-i n theta} d theta`` by trapezoid."""
    j = np.arange(nodes)
    theta = 2 * np.pi * j / nodes
    vals = np.asarray(func(radius * np.exp(1j * theta)), dtype=complex)
    phase = np.exp(-2j * np.pi * ((n * j) % nodes) / nodes)
    prod = vals * phase
    return complex(math.fsum(prod.real), math.fsum(prod.imag)) / nodes


def naive_dft(samples, ledger=None):
    """Direct ``X[n] = sum_j x[j] exp(-2 pi i n j / L)``.

    Twiddle factors come from a precomputed table and are not counted.
    Each output costs ``L`` complex multiplies (4 real multiplications and
    2 real additions each) and ``L - 1`` complex additions (2 real
    additions each).
    """
    x = np.asarray(samples, dtype=complex).ravel()
    L = x.size
    if L < 1:
        raise InvalidArgumentError("naive_dft needs at least one sample")
    j = np.arange(L)
    twiddle = np.exp(-2j * np.pi * np.arange(L) / L)
    out = np.empty(L, dtype=complex)
    for n in range(L):
        out[n] = np.sum(x * twiddle[(n * j) % L])
    if ledger is not None:
        ledger.multiplications += 4 * L * L
        ledger.additions += 2 * L * L + 2 * L * (L - 1)
        ledger.samples_used += L
    return out


def naive_idft(spectrum):
    X = np.asarray(spectrum, dtype=complex).ravel()
    L = X.size
    j = np.arange(L)
    twiddle = np.exp(2j * np.pi * np.arange(L) / L)
    return np.array([np.sum(X * twiddle[(n * j) % L]) for n in range(L)]) / L


def power_series(coeffs, z):
    """Horner evaluation of ``sum_j coeffs[j] z^j``."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in reversed(list(coeffs)):
        acc = acc * z + c
    return acc


def factorize(n):
    """Trial-division factorization as ``{prime: exponent}``."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def brute_mobius(n):
    if n > 10**7:
        raise InvalidArgumentError(f"brute_mobius is capped at 10**7, got {n}")
    exps = factorize(n)
    if any(e > 1 for e in exps.values()):
        return 0
    return -1 if len(exps) % 2 else 1


def brute_omega(n):
    return len(factorize(n))


__all__ = [
    "QuadratureSpec",
    "brute_mobius",
    "brute_omega",
    "circle_coefficient",
    "factorize",
    "naive_dft",
    "naive_idft",
    "power_series",
    "quadrature_fourier",
    "quadrature_mean",
]
