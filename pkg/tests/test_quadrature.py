import math

import numpy as np
import pytest

from halfplanepot import NumericalFailure
from halfplanepot.quadrature import _gk15, integrate, one_shot


class TestRuleExactness:
    @pytest.mark.parametrize("deg", range(0, 21))
    def test_kronrod_exact_on_polynomials(self, deg):
        # K15 integrates polynomials up to degree 22 exactly (rule constants
        # carry ~15 digits, so ask for 5e-14 relative)
        val, _err = _gk15(lambda x: x**deg, 0.0, 1.0)
        exact = 1.0 / (deg + 1)
        assert math.isclose(val, exact, rel_tol=5e-14)

    def test_gauss_error_estimate_zero_for_low_degree(self):
        # G7 exact through degree 13, so |K - G| collapses to the noise of
        # the 15-digit rule constants for a cubic
        _val, err = _gk15(lambda x: x**3 - 2 * x + 1, -1.0, 2.0)
        assert err < 1e-13


class TestAdaptivity:
    def test_integrable_endpoint_singularity(self):
        res = integrate(lambda x: x**-0.5, [0.0, 1.0], abs_tol=1e-8, max_depth=60)
        assert abs(res.value - 2.0) < 1e-8

    def test_poisson_peak_against_arctan(self):
        y = 1e-3
        f = lambda x: y / (math.pi * (x * x + y * y))
        exact = 2 * math.atan(1.0 / y) / math.pi
        res = integrate(f, [-1.0, 0.0, 1.0], abs_tol=1e-10, max_depth=60)
        assert abs(res.value - exact) < 1e-10

    def test_error_estimate_covers_true_error(self):
        # dense-trapezoid oracle; the engine must land within its own estimate
        rng = np.random.default_rng(0)
        for _ in range(10):
            a, b, c = rng.uniform(0.5, 3.0, 3)
            f = lambda x: math.exp(-a * x * x) * math.cos(b * x) + c / (1 + x * x)
            xs = np.linspace(-8, 8, 400001)
            ys = np.array([f(x) for x in xs])
            oracle = float(np.trapezoid(ys, xs))
            res = integrate(f, [-8.0, 0.0, 8.0], abs_tol=1e-9, max_depth=40)
            assert abs(res.value - oracle) < 1e-7  # trapezoid oracle's own limit
            assert res.error <= 1e-9

    def test_budget_honesty_halving(self):
        # halving the tolerance moves the value by at most the reported error
        f = lambda x: 1.0 / (1.0 + x * x) + math.cos(5 * x) * math.exp(-abs(x))
        pts = [-20.0, -1.0, 0.0, 1.0, 20.0]
        tol = 1e-4
        prev = integrate(f, pts, abs_tol=tol, max_depth=50)
        for _ in range(12):
            tol /= 2
            cur = integrate(f, pts, abs_tol=tol, max_depth=50)
            assert abs(cur.value - prev.value) <= prev.error * (1 + 1e-9) + 1e-15
            prev = cur

    def test_max_depth_exhaustion_raises_with_payload(self):
        # a kink cannot be resolved at depth 8 to 1e-14
        f = lambda x: abs(x - 1 / 3) ** 0.1
        with pytest.raises(NumericalFailure) as exc:
            integrate(f, [0.0, 1.0], abs_tol=1e-14, max_depth=8)
        assert math.isfinite(exc.value.value)
        assert exc.value.estimate > 1e-14

    def test_one_shot_magnitude(self):
        v = one_shot(lambda x: 1.0, [0.0, 0.25, 1.0])
        assert math.isclose(v, 1.0, rel_tol=1e-14)

    def test_relative_tolerance_path(self):
        f = lambda x: 1e6 / (1.0 + x * x)
        res = integrate(f, [-100.0, 0.0, 100.0], abs_tol=1e-300, rel_tol=1e-9, max_depth=50)
        exact = 1e6 * 2 * math.atan(100.0)
        assert abs(res.value - exact) <= 1e-8 * exact
