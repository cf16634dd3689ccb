"""Arithmetic operation ledger."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class OpCountLedger:
    """Running count of real additions and multiplications.

    Möbius weights are in {-1, 0, 1}; applying one is a choice between
    adding and subtracting, so it shows up as an addition only.
    ``samples_used`` counts distinct evaluation points (period-1 phases
    rounded to 1e-12).
    """

    additions: int = 0
    multiplications: int = 0
    samples_used: int = 0
    _points: set = field(default_factory=set, repr=False, compare=False)

    def add(self, additions=0, multiplications=0):
        self.additions += int(additions)
        self.multiplications += int(multiplications)

    def record_points(self, t):
        """Register period-1 sample phases and refresh ``samples_used``."""
        keys = np.round(np.mod(np.asarray(t, dtype=float), 1.0) * 1e12).astype(np.int64)
        keys %= 10**12
        self._points.update(keys.tolist())
        self.samples_used = len(self._points)

    def merge(self, other):
        self.additions += other.additions
        self.multiplications += other.multiplications
        if other._points:
            self._points |= other._points
            self.samples_used = len(self._points)
        else:
            self.samples_used += other.samples_used

    def as_dict(self):
        return {
            "additions": self.additions,
            "multiplications": self.multiplications,
            "samples_used": self.samples_used,
        }
