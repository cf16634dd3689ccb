"""Delay-line filter bank for band-limited periodic signals.

Filter ``k`` averages ``k`` delayed copies of the input,

    s_k(t) = (1/k) sum_{m=0}^{k-1} F(t - m/k),

and the ``n``-th harmonic comes back as ``sum_k mu(k) s_{kn}(t)``.  When
``F`` has no harmonics above ``N``, ``s_k`` vanishes for ``k > N`` and
the sum stops after ``floor(N/n)`` terms.  Apart from one ``1/k`` scale
per filter, everything is additions and subtractions.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .counting import OpCountLedger
from .errors import InvalidArgumentError
from .oracle import naive_dft
from .summation import csum

AMPLITUDE_FLOOR = 1e-13
MAX_BAND = 4096


class OutOfBandWarning(UserWarning):
    """A harmonic above the signal's band was requested; the result is 0."""


@dataclass(frozen=True)
class HarmonicSignal:
    """``F(t) = sum_{n=1}^{N} A_n cos(2 pi n t + theta_n)``, period 1."""

    amplitudes: tuple
    phases: tuple
    _a: np.ndarray = field(init=False, repr=False, compare=False)
    _b: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        A = tuple(float(a) for a in self.amplitudes)
        ph = tuple(float(p) for p in self.phases)
        if len(A) != len(ph) or not A:
            raise InvalidArgumentError("need equal, nonzero numbers of amplitudes and phases")
        if any(not -math.pi <= p < math.pi for p in ph):
            raise InvalidArgumentError("phases must lie in [-pi, pi)")
        object.__setattr__(self, "amplitudes", A)
        object.__setattr__(self, "phases", ph)
        object.__setattr__(self, "_a", np.array(A) * np.cos(ph))
        object.__setattr__(self, "_b", -np.array(A) * np.sin(ph))

    @property
    def N_band(self):
        return len(self.amplitudes)

    @classmethod
    def random(cls, N_band, rng, amplitude_range=(0.1, 2.0)):
        A = rng.uniform(*amplitude_range, size=N_band)
        ph = rng.uniform(-math.pi, math.pi, size=N_band)
        return cls(tuple(A), tuple(ph))

    def eval(self, t):
        t = np.asarray(t, dtype=float)
        flat = np.mod(t.ravel(), 1.0)
        out = np.zeros(flat.shape)
        for n, (a, b) in enumerate(zip(self._a, self._b), start=1):
            ph = 2 * np.pi * np.mod(n * flat, 1.0)
            out += a * np.cos(ph) + b * np.sin(ph)
        return out.reshape(t.shape) if t.ndim else float(out[0])

    __call__ = eval

    def harmonic(self, n, t):
        """``A_n cos(2 pi n t + theta_n)`` evaluated directly."""
        if n > self.N_band:
            return 0.0 * np.asarray(t, dtype=float)
        A, ph = self.amplitudes[n - 1], self.phases[n - 1]
        return A * np.cos(2 * np.pi * np.mod(n * np.asarray(t, dtype=float), 1.0) + ph)

    def cos_sin(self, n):
        """``(alpha_n, beta_n)`` with ``F = sum alpha_n cos + beta_n sin``."""
        return float(self._a[n - 1]), float(self._b[n - 1])


def delay_filter_output(F, k, t, ledger=None):
    """``(1/k) sum_{m=0}^{k-1} F(t - m/k)``."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    pts = t - np.arange(k) / k
    out = csum(F.eval(pts)) / k
    if ledger is not None:
        ledger.add(additions=k - 1, multiplications=1)
        ledger.record_points(pts)
    return out


def _combine(outputs, signs, ledger):
    if ledger is not None:
        ledger.add(additions=max(len(outputs) - 1, 0))
    return csum(np.asarray(signs, dtype=float) * np.asarray(outputs, dtype=float))


def finite_aft_harmonic(F, n, t, table, ledger=None, bank=None):
    """``sum_{k <= N/n} mu(k) s_{kn}(t) = A_n cos(2 pi n t + theta_n)``.

    ``bank`` may map ``k -> s_k(t)`` for filters already run at this
    ``t``; those are reused without being recounted.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    if n > F.N_band:
        warnings.warn(f"harmonic {n} is above the band N={F.N_band}", OutOfBandWarning, stacklevel=2)
        return 0.0
    kmax = F.N_band // n
    ks, signs = table.squarefree(kmax)
    outs = []
    for k in ks.tolist():
        N = k * n
        if bank is not None and N in bank:
            outs.append(bank[N])
        else:
            outs.append(delay_filter_output(F, N, t, ledger))
    return _combine(outs, signs, ledger)


def filter_bank(F, t, ledger=None):
    """Run all ``N`` filters at one ``t``: ``{k: s_k(t)}``."""
    return {k: delay_filter_output(F, k, t, ledger) for k in range(1, F.N_band + 1)}


class AmplitudePhase(NamedTuple):
    amplitude: float
    phase: float
    degenerate: bool


def recover_amplitude_phase(F, n, table, ledger=None):
    """``(A_n, theta_n)`` from the harmonic at ``t = 0`` and ``t = 1/(4n)``.

    ``a_n(0) = A cos(theta)`` and ``a_n(1/(4n)) = -A sin(theta)``.  The
    final ``hypot`` is charged two multiplications and one addition.
    """
    x = finite_aft_harmonic(F, n, 0.0, table, ledger)
    y = finite_aft_harmonic(F, n, 1.0 / (4 * n), table, ledger)
    if ledger is not None:
        ledger.add(additions=1, multiplications=2)
    A = math.hypot(x, y)
    if A < AMPLITUDE_FLOOR:
        return AmplitudePhase(0.0, 0.0, True)
    phase = math.atan2(-y, x)
    if phase >= math.pi:
        phase -= 2 * math.pi
    return AmplitudePhase(A, phase, False)


@dataclass(frozen=True)
class BenchmarkReport:
    """Finite AFT against a naive O(L^2) DFT on the same signal.

    Both methods produce the cosine/sine pair ``(alpha_n, beta_n)`` for
    every ``n <= N_band``.  ``max_deviation`` is the largest disagreement
    between them; ``max_error`` compares each against the signal's own
    coefficients.
    """

    N_band: int
    aft: OpCountLedger
    dft: OpCountLedger
    dft_length: int
    max_deviation: float
    aft_max_error: float
    dft_max_error: float
    aft_coeffs: tuple = field(repr=False)
    dft_coeffs: tuple = field(repr=False)
    baseline: str = "naive DFT, O(L^2) direct sum (not an FFT)"

    @property
    def multiplication_ratio(self):
        return self.dft.multiplications / max(self.aft.multiplications, 1)


def divisor_pair_count(N):
    """Number of ``(n, k)`` with ``k n <= N``."""
    return sum(N // n for n in range(1, N + 1))


def aft_cos_sin(F, table, ledger=None):
    """``(alpha_n, beta_n)`` for every ``n <= N_band`` by the finite AFT.

    The cosine parts share one filter bank run at ``t = 0``; the sine
    part of harmonic ``n`` needs its own filters at ``t = 1/(4n)``.
    """
    bank = filter_bank(F, 0.0, ledger)
    out = []
    for n in range(1, F.N_band + 1):
        alpha = finite_aft_harmonic(F, n, 0.0, table, ledger, bank=bank)
        beta = finite_aft_harmonic(F, n, 1.0 / (4 * n), table, ledger)
        out.append((alpha, beta))
    return out


def dft_cos_sin(F, L, ledger=None):
    """``(alpha_n, beta_n)`` for ``n <= N_band`` from an ``L``-point naive DFT."""
    if L < 2 * F.N_band + 1:
        raise InvalidArgumentError(f"L={L} aliases a band of {F.N_band}")
    samples = F.eval(np.arange(L) / L)
    X = naive_dft(samples, ledger)
    out = []
    for n in range(1, F.N_band + 1):
        out.append((2 * X[n].real / L, -2 * X[n].imag / L))
    if ledger is not None:
        ledger.add(multiplications=2 * F.N_band)
    return out


def benchmark_vs_dft(F, table, dft_length=None):
    """Operation counts and agreement of finite AFT vs naive DFT.

    The DFT runs on ``dft_length`` uniform samples, by default
    ``2 N + 1``, the fewest that resolve ``N`` harmonics without aliasing.
    """
    if F.N_band > MAX_BAND:
        raise InvalidArgumentError(f"N_band must be <= {MAX_BAND}")
    L = 2 * F.N_band + 1 if dft_length is None else int(dft_length)
    aft_ledger = OpCountLedger()
    dft_ledger = OpCountLedger()
    aft = aft_cos_sin(F, table, aft_ledger)
    dft = dft_cos_sin(F, L, dft_ledger)
    truth = [F.cos_sin(n) for n in range(1, F.N_band + 1)]

    def maxdiff(u, v):
        return max(max(abs(p[0] - q[0]), abs(p[1] - q[1])) for p, q in zip(u, v))

    return BenchmarkReport(
        N_band=F.N_band,
        aft=aft_ledger,
        dft=dft_ledger,
        dft_length=L,
        max_deviation=maxdiff(aft, dft),
        aft_max_error=maxdiff(aft, truth),
        dft_max_error=maxdiff(dft, truth),
        aft_coeffs=tuple(aft),
        dft_coeffs=tuple(dft),
    )
