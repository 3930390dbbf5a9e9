import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfplanepot import (
    Ball,
    CoverParams,
    DiscreteMeasure,
    GrowthExponent,
    HalfPlanePoint,
    IndicatorDensity,
    KernelOrder,
    PowerDensity,
    QuadratureSpec,
    TabulatedDensity,
    UpperPoint,
    validate_scenario,
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


class TestHalfPlanePoint:
    @given(finite, st.floats(min_value=1e-300, max_value=1e300))
    def test_accepts_interior(self, x, y):
        p = HalfPlanePoint(x, y)
        assert p.z == complex(x, y)

    @given(finite, st.floats(max_value=0.0, allow_nan=False))
    def test_rejects_boundary_and_below(self, x, y):
        with pytest.raises(ValueError):
            HalfPlanePoint(x, y)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            HalfPlanePoint(math.nan, 1.0)
        with pytest.raises(ValueError):
            HalfPlanePoint(0.0, math.inf)


class TestUpperPoint:
    def test_boundary_allowed(self):
        assert UpperPoint(3.0, 0.0).zeta == 3.0 + 0j

    def test_negative_eta_rejected(self):
        with pytest.raises(ValueError):
            UpperPoint(0.0, -1e-12)


class TestOrderAndExponent:
    @pytest.mark.parametrize("m", [0, 1, 16, 32])
    def test_order_ok(self, m):
        assert KernelOrder(m).m == m

    @pytest.mark.parametrize("m", [-1, 33, 2.0, True])
    def test_order_bad(self, m):
        with pytest.raises(ValueError):
            KernelOrder(m)

    def test_alpha_range(self):
        assert GrowthExponent(2.0).alpha == 2.0
        for bad in (0.0, -1.0, 2.0001):
            with pytest.raises(ValueError):
                GrowthExponent(bad)


class TestDensities:
    def test_indicator(self):
        f = IndicatorDensity(-1.0, 1.0, 2.0)
        assert f.value(0.0) == 2.0
        assert f.value(1.0) == 2.0
        assert f.value(1.0000001) == 0.0
        assert f.support_radius() == 1.0
        with pytest.raises(ValueError):
            IndicatorDensity(1.0, -1.0)

    def test_indicator_empty_range_is_zero(self):
        f = IndicatorDensity(0.0, 0.0, 5.0)
        assert f.value(0.1) == 0.0 and f.value(-0.1) == 0.0

    def test_tabulated_interpolation(self):
        f = TabulatedDensity(((0.0, 0.0), (1.0, 2.0), (3.0, 2.0)))
        assert f.value(0.5) == 1.0
        assert f.value(2.0) == 2.0
        assert f.value(-0.1) == 0.0
        assert f.value(3.1) == 0.0

    def test_tabulated_needs_increasing_knots(self):
        with pytest.raises(ValueError):
            TabulatedDensity(((0.0, 1.0), (0.0, 2.0)))
        with pytest.raises(ValueError):
            TabulatedDensity(((1.0, 1.0),))

    def test_power_norm_window(self):
        assert PowerDensity(1.5).norm_finite(1)[0]
        assert not PowerDensity(2.0).norm_finite(1)[0]  # s >= m+1
        assert not PowerDensity(-1.0).norm_finite(1)[0]  # origin divergence
        assert PowerDensity(123.0, scale=0.0).norm_finite(0)[0]

    def test_power_value(self):
        f = PowerDensity(0.5, scale=3.0)
        assert f.value(4.0) == 6.0
        assert f.value(-4.0) == 6.0
        assert f.value(0.0) == 0.0
        assert PowerDensity(0.0).value(0.0) == 1.0
        assert PowerDensity(-0.5).value(0.0) == math.inf


class TestDiscreteMeasure:
    def test_rejects_bad_atoms(self):
        with pytest.raises(ValueError):
            DiscreteMeasure.from_triples([(0.0, 0.0, 1.0)])  # eta = 0
        with pytest.raises(ValueError):
            DiscreteMeasure.from_triples([(0.0, 1.0, -1.0)])  # negative weight

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=-50, max_value=50),
                st.floats(min_value=1e-3, max_value=50),
                st.floats(min_value=0, max_value=10),
            ),
            max_size=8,
        ),
        st.integers(min_value=0, max_value=4),
    )
    def test_mass_functional_is_the_hand_sum(self, triples, m):
        mu = DiscreteMeasure.from_triples(triples)
        hand = math.fsum(
            w * eta / (1 + math.hypot(xi, eta) ** (2 + m)) for xi, eta, w in triples
        )
        assert math.isclose(mu.mass_functional(m), hand, rel_tol=1e-15, abs_tol=1e-300)

    def test_concat(self):
        a = DiscreteMeasure.from_triples([(0.0, 1.0, 1.0)])
        b = DiscreteMeasure.from_triples([(1.0, 2.0, 3.0)])
        assert a.concat(b).total_mass == 4.0


class TestBallAndParams:
    def test_ball_positive_radius(self):
        with pytest.raises(ValueError):
            Ball(0.0, 0.0, 0.0)
        assert Ball(1.0, 2.0, 0.5).contains(1.1 + 2.1j)

    def test_cover_params(self):
        with pytest.raises(ValueError):
            CoverParams(beta=-0.1, lam=1.0)
        with pytest.raises(ValueError):
            CoverParams(beta=1.0, lam=0.0)

    def test_quadrature_spec(self):
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_depth=7)


class TestValidateScenario:
    def test_accepts_power_below_window(self):
        res = validate_scenario(PowerDensity(1.5), DiscreteMeasure.empty(), 1, 1.0)
        assert res.ok

    def test_rejects_divergent_power(self):
        res = validate_scenario(PowerDensity(3.0), DiscreteMeasure.empty(), 1, 1.0)
        assert not res.ok
        assert "divergent" in res.failures[0]

    def test_rejects_alpha_two_with_measure(self):
        mu = DiscreteMeasure.from_triples([(0.0, 1.0, 1.0)])
        res = validate_scenario(IndicatorDensity(-1.0, 1.0, 1.0), mu, 0, 2.0)
        assert not res.ok
        assert "alpha" in res.failures[0]

    def test_alpha_two_fine_without_measure(self):
        res = validate_scenario(IndicatorDensity(-1.0, 1.0, 1.0), DiscreteMeasure.empty(), 0, 2.0)
        assert res.ok
