import math

import numpy as np
import pytest

from aftkit.analytic import (
    BoundaryFunction,
    catalog,
    corollary3_bound,
    inverse_z,
    roots_of_unity_average,
    taylor_coeff_radius,
    taylor_coeff_unit,
)
from aftkit.errors import InvalidArgumentError, PreconditionError
from aftkit.oracle import circle_coefficient


def monomial(d):
    return catalog("monomial", d)


def z_geometric(r):
    """``X(z) = r / (z - r) = sum_j r^j z^-j``."""
    return BoundaryFunction.from_callable(lambda z: r / (np.asarray(z, dtype=complex) - r))


class TestRootsAverage:
    def test_examples(self):
        assert roots_of_unity_average(monomial(1), 1) == 1
        assert abs(roots_of_unity_average(monomial(1), 2)) < 1e-15
        assert abs(roots_of_unity_average(monomial(2), 2) - 1) < 1e-14


class TestTaylorUnit:
    def test_examples(self, small_table):
        assert abs(taylor_coeff_unit(monomial(3), 3, 10, small_table).value - 1) < 1e-12
        assert abs(taylor_coeff_unit(monomial(3), 1, 10, small_table).value) < 1e-12
        g = catalog("geom_disk", 0.5)
        assert abs(taylor_coeff_unit(g, 2, 40, small_table).value - 0.25) < 1e-9

    @pytest.mark.parametrize("d", [1, 2, 5, 9])
    def test_monomial_exactness(self, small_table, d):
        for n in range(1, 2 * d + 1):
            expected = 1.0 if n == d else 0.0
            assert abs(taylor_coeff_unit(monomial(d), n, d, small_table).value - expected) < 1e-11

    def test_auto_subtract(self, small_table):
        f = BoundaryFunction.from_power_series([2.0, 0.5, 0.25])
        res = taylor_coeff_unit(f, 1, 10, small_table)
        assert abs(res.value - 0.5) < 1e-12
        assert abs(res.mean_adjustment - 2.0) < 1e-12
        with pytest.raises(PreconditionError):
            taylor_coeff_unit(f, 1, 10, small_table, auto_subtract=False)

    def test_shift_reaches_negative_index(self, small_table):
        # z^2 f(z) moves c_{-1} = 3 to index 1 and c_1 = 1 to index 3
        f = BoundaryFunction.from_callable(lambda z: 3.0 / np.asarray(z, dtype=complex) + np.asarray(z))
        g = f.shifted(2)
        assert abs(taylor_coeff_unit(g, 1, 10, small_table).value - 3.0) < 1e-12
        assert abs(taylor_coeff_unit(g, 3, 10, small_table).value - 1.0) < 1e-12

    def test_radius_consistency(self, small_table):
        for f in (catalog("expm1"), BoundaryFunction.from_power_series([0, 1, -0.5, 0.25, 0.1, 0, 0, 0.3])):
            for n in range(1, 9):
                u = taylor_coeff_unit(f, n, 40, small_table).value
                r = taylor_coeff_radius(f, n, 0.9, 40, small_table).value
                assert abs(u - r) < 1e-7

    def test_bound_compliance(self, small_table):
        for f in (catalog("geom_disk", 0.5), catalog("geom_disk", 0.3), catalog("expm1")):
            for n in range(1, 7):
                truth = circle_coefficient(f.func, n, radius=0.5) / 0.5**n
                for K in (5, 10, 20, 40):
                    res = taylor_coeff_unit(f, n, K, small_table)
                    assert abs(res.value - truth) <= res.bound


class TestTaylorRadius:
    def test_examples(self, small_table):
        assert abs(taylor_coeff_radius(monomial(2), 2, 0.5, 20, small_table).value - 1) < 1e-10
        assert abs(taylor_coeff_radius(catalog("expm1"), 3, 0.7, 30, small_table).value - 1 / 6) < 1e-8
        assert taylor_coeff_radius(catalog("zero"), 4, 0.5, 10, small_table).value == 0

    @pytest.mark.parametrize("r", [0.0, 1.0, 1.2])
    def test_bad_radius(self, small_table, r):
        with pytest.raises(InvalidArgumentError):
            taylor_coeff_radius(monomial(1), 1, r, 10, small_table)


class TestInverseZ:
    def test_examples(self, small_table):
        inv = BoundaryFunction.from_callable(lambda z: 1.0 / np.asarray(z, dtype=complex))
        assert abs(inverse_z(inv, 1, 10, small_table, roc_radius=0.0).value - 1) < 1e-12
        X = z_geometric(0.4)
        assert abs(inverse_z(X, 2, 40, small_table, roc_radius=0.4).value - 0.16) < 1e-9
        assert abs(inverse_z(X, 1, 40, small_table, roc_radius=0.4).value - 0.4) < 1e-9

    def test_rejects_roc(self, small_table):
        with pytest.raises(InvalidArgumentError):
            inverse_z(z_geometric(0.4), 1, 10, small_table, roc_radius=1.0)

    def test_duality(self, small_table):
        F = catalog("expm1")
        X = BoundaryFunction.from_callable(lambda z: F.func(1.0 / np.asarray(z, dtype=complex)))
        for n in range(1, 7):
            t = taylor_coeff_unit(F, n, 30, small_table).value
            z = inverse_z(X, n, 30, small_table, roc_radius=0.0).value
            assert abs(t - z) < 1e-12


class TestDiskBound:
    @pytest.mark.parametrize("C, n, N, expected", [(1, 1, 1, 1.0), (3, 2, 25, 0.03), (1, 4, 100, 6.25e-4)])
    def test_values(self, C, n, N, expected):
        assert corollary3_bound(C, n, N) == pytest.approx(expected, rel=1e-15)

    def test_expm1_coefficients(self, small_table):
        for n in range(1, 7):
            assert abs(taylor_coeff_unit(catalog("expm1"), n, 30, small_table).value - 1 / math.factorial(n)) < 1e-12
