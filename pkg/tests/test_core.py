"""Closed-form AoI expressions and the welfare objective."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aoi_secrecy import (
    AoiPair,
    DomainError,
    SystemParams,
    TradeoffWeight,
    aoi_pair,
    avg_aoi_mm1,
    bergson_objective,
    utilities,
)

# hand evaluation: 1 + 1/0.25 + 0.25^2/0.75 = 61/12
DELTA_AT_QUARTER = 61.0 / 12.0

loads = st.floats(min_value=1e-4, max_value=1.0 - 1e-4,
                  allow_nan=False, allow_infinity=False)
rates = st.floats(min_value=1e-3, max_value=1e3,
                  allow_nan=False, allow_infinity=False)
captures = st.floats(min_value=1e-3, max_value=1.0,
                     allow_nan=False, allow_infinity=False)


class TestAvgAoi:
    def test_half_load_unit_rate(self):
        assert avg_aoi_mm1(0.5, 1.0) == 3.5

    def test_rate_rescaling(self):
        assert avg_aoi_mm1(0.5, 2.0) == 1.75

    def test_quarter_load(self):
        assert avg_aoi_mm1(0.25, 1.0) == pytest.approx(DELTA_AT_QUARTER, rel=1e-15)

    def test_diverges_at_poles(self):
        assert avg_aoi_mm1(1e-9, 1.0) > 1e8
        assert avg_aoi_mm1(1.0 - 1e-9, 1.0) > 1e8

    @pytest.mark.parametrize("rho", [0.0, -0.3, 1.0, 1.5])
    def test_load_domain(self, rho):
        with pytest.raises(DomainError):
            avg_aoi_mm1(rho, 1.0)

    @pytest.mark.parametrize("mu", [0.0, -2.0])
    def test_rate_domain(self, mu):
        with pytest.raises(DomainError):
            avg_aoi_mm1(0.5, mu)

    @given(rho=loads, mu=rates)
    @settings(max_examples=100, deadline=None)
    def test_scale_law(self, rho, mu):
        scaled = avg_aoi_mm1(rho, mu)
        assert scaled == pytest.approx(avg_aoi_mm1(rho, 1.0) / mu, rel=1e-12)


class TestSystemParams:
    def test_from_load_roundtrip(self):
        params = SystemParams.from_load(0.5, 2.0, 0.25)
        assert params.lam == 1.0
        assert params.rho == 0.5
        assert params.rho_e == 0.125

    @pytest.mark.parametrize(
        "lam,mu,beta",
        [(0.0, 1.0, 0.5), (-1.0, 1.0, 0.5), (1.0, 0.0, 0.5),
         (1.0, 1.0, 0.5), (2.0, 1.0, 0.5), (0.5, 1.0, -0.1), (0.5, 1.0, 1.1)],
    )
    def test_invalid(self, lam, mu, beta):
        with pytest.raises(DomainError):
            SystemParams(lam=lam, mu=mu, beta=beta)

    def test_weight_domain(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(DomainError):
                TradeoffWeight(bad)


class TestAoiPair:
    def test_full_capture_degenerates(self):
        pair = aoi_pair(SystemParams.from_load(0.5, 1.0, 1.0))
        assert pair == AoiPair(3.5, 3.5)

    def test_half_capture(self):
        pair = aoi_pair(SystemParams.from_load(0.5, 1.0, 0.5))
        assert pair.delta_b == 3.5
        assert pair.delta_e == pytest.approx(DELTA_AT_QUARTER, rel=1e-15)

    def test_no_capture_sentinel(self):
        pair = aoi_pair(SystemParams.from_load(0.5, 1.0, 0.0))
        assert pair.delta_b == 3.5
        assert pair.delta_e == math.inf

    @given(rho=loads, mu=rates, beta=captures)
    @settings(max_examples=100, deadline=None)
    def test_composition_identity(self, rho, mu, beta):
        params = SystemParams.from_load(rho, mu, beta)
        pair = aoi_pair(params)
        # identical floating-point path, not merely approximate
        assert pair.delta_e == avg_aoi_mm1(beta * params.rho, mu)

    @given(rho=loads, mu=rates)
    @settings(max_examples=100, deadline=None)
    def test_full_capture_bitwise(self, rho, mu):
        pair = aoi_pair(SystemParams.from_load(rho, mu, 1.0))
        assert pair.delta_e == pair.delta_b

    @given(rho=loads, mu=rates, beta=st.one_of(st.just(0.0), captures))
    @settings(max_examples=100, deadline=None)
    def test_lower_bound(self, rho, mu, beta):
        pair = aoi_pair(SystemParams.from_load(rho, mu, beta))
        assert pair.delta_b >= 2.0 / mu
        assert pair.delta_e >= 2.0 / mu


class TestUtilities:
    def test_half_capture(self):
        u1, u2 = utilities(SystemParams.from_load(0.5, 1.0, 0.5))
        assert u1 == pytest.approx(1.0 / 3.5, rel=1e-15)
        assert u2 == pytest.approx(DELTA_AT_QUARTER, rel=1e-15)

    def test_full_capture(self):
        u1, u2 = utilities(SystemParams.from_load(0.5, 1.0, 1.0))
        assert (u1, u2) == (1.0 / 3.5, 3.5)

    def test_no_capture(self):
        u1, u2 = utilities(SystemParams.from_load(0.5, 1.0, 0.0))
        assert u1 == 1.0 / 3.5
        assert u2 == math.inf


class TestBergsonObjective:
    def test_full_capture_inverse_power(self):
        params = SystemParams.from_load(0.5, 1.0, 1.0)
        f = bergson_objective(params, TradeoffWeight(1.0))
        assert f == pytest.approx(1.0 / 3.5, rel=1e-12)

    def test_vanishing_weight_ignores_receiver(self):
        params = SystemParams.from_load(0.5, 1.0, 1.0)
        f = bergson_objective(params, TradeoffWeight(1e-12))
        assert f == pytest.approx(1.0, abs=1e-9)

    def test_half_capture(self):
        params = SystemParams.from_load(0.5, 1.0, 0.5)
        f = bergson_objective(params, TradeoffWeight(1.0))
        assert f == pytest.approx(DELTA_AT_QUARTER / 3.5**2, rel=1e-12)

    def test_rejects_no_eavesdropper(self):
        params = SystemParams.from_load(0.5, 1.0, 0.0)
        with pytest.raises(DomainError):
            bergson_objective(params, TradeoffWeight(1.0))

    def test_large_weight_stays_finite(self):
        # 3.5**501 overflows, so a direct ratio would collapse to 0.0; the
        # log-space path keeps the genuinely tiny positive value
        params = SystemParams.from_load(0.5, 1.0, 0.5)
        f = bergson_objective(params, TradeoffWeight(500.0))
        assert f > 0.0 and math.isfinite(f)
        assert f == pytest.approx(math.exp(
            math.log(DELTA_AT_QUARTER) - 501.0 * math.log(3.5)), rel=1e-9)

    @pytest.mark.parametrize("beta", [0.2, 0.5, 1.0])
    @pytest.mark.parametrize("a", [1.0, 2.0, 5.0])
    def test_vanishes_at_full_load(self, beta, a):
        params = SystemParams.from_load(1.0 - 1e-6, 1.0, beta)
        assert bergson_objective(params, TradeoffWeight(a)) < 1e-3

    def test_positive_on_grid(self):
        for rho in (0.01, 0.25, 0.5, 0.75, 0.99):
            for beta in (0.05, 0.3, 0.6, 1.0):
                for a in (0.01, 0.5, 1.0, 5.0, 10.0):
                    params = SystemParams.from_load(rho, 1.0, beta)
                    assert bergson_objective(params, TradeoffWeight(a)) > 0.0
