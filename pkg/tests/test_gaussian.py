import math
from fractions import Fraction

import numpy as np
import pytest

from icnf.fm import closed_form_values
from icnf.gaussian import (
    LOG_2PIE, CodingPoint, GaussParams, SEventPair, a_values, classify_events, coding_grid, event_predicates,
    from_coefficients, inner_bound_values, inner_region, kappa_values, outer_bound_values, outer_region,
    rho_max, theta_gaussian,
)
from icnf.geometry import boundary_samples, contains_many, ray_extent, within_units


def half_log(x):
    return 0.5 * math.log2(x)


def test_params_validation_and_db():
    with pytest.raises(ValueError):
        GaussParams(0, 1, 1, 1)
    with pytest.raises(ValueError):
        GaussParams(1, 1, 1, 1, -1, 0)
    with pytest.raises(ValueError):
        GaussParams(1, 1, float("inf"), 1)
    p = GaussParams.from_db(20, 10, 0, 30)
    assert p.as_tuple() == pytest.approx((100, 10, 1, 1000, 0, 0))


def test_from_coefficients():
    snr1, snr2, inr12, inr21, fb1, fb2 = from_coefficients(2, 1, 1, 0, 1, 0)
    assert (snr1, snr2, inr12, inr21) == (4, 1, 1, 0)
    assert fb1 == 1 * (4 + 4 + 1 + 1) and fb2 == 0


def test_rho_max():
    assert rho_max(GaussParams(10, 10, 4, 2)) == pytest.approx(0.5)
    assert rho_max(GaussParams(10, 10, 0.5, 20)) == 0.0


def test_a_values_hand_point():
    # rho = 0, mu = 0: no feedback contribution, private power 1/INR
    p = GaussParams(100, 100, 10, 10, 50, 50)
    a = a_values(p, CodingPoint(0.0, 0.0, 0.0))
    assert a[1, 1] == pytest.approx(half_log(2 + 100 / 10) - 0.5)
    assert a[2, 1] == pytest.approx(half_log(100 + 10 + 1) - 0.5)
    assert a[3, 1] == pytest.approx(0.0)
    assert a[4, 1] == pytest.approx(half_log(10 - 1 + 2) - 0.5)


def test_theta_gaussian_closed_form_equals_inner_bounds():
    rng = np.random.default_rng(21)
    for _ in range(200):
        p = GaussParams(*(10 ** rng.uniform(0, 6, 6)))
        c = CodingPoint(rng.uniform(0, rho_max(p)), rng.uniform(), rng.uniform())
        cf = closed_form_values(theta_gaussian(p, c))
        got = inner_bound_values(p, c.rho, c.mu1, c.mu2)
        want = [max(cf[k], 0.0) for k in ((1, 0), (0, 1), (1, 1), (2, 1), (1, 2))]
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)


def test_gaussian_theta_satisfies_structure():
    rng = np.random.default_rng(22)
    for _ in range(200):
        p = GaussParams(*(10 ** rng.uniform(0, 6, 6)))
        th = theta_gaussian(p, CodingPoint(rng.uniform(0, rho_max(p)), rng.uniform(), rng.uniform()))
        for i in (1, 2):
            assert th(5, i) >= th(3, i) - 1e-12 and th(5, i) >= th(4, i) - 1e-12
            assert th(7, i) >= th(6, i) - 1e-12 >= th(4, i) - 2e-12


def test_coding_point_checks():
    p = GaussParams(10, 10, 4, 2)
    with pytest.raises(ValueError):
        CodingPoint(0.9, 0, 0).check(p)
    with pytest.raises(ValueError):
        CodingPoint(0, 1.5, 0).check(p)
    assert CodingPoint(0.2, 0.5, 0.5).power_split(p, 1) == pytest.approx((0.8 - 0.5, 0.5))


def test_coding_grid_collapses_rho():
    assert set(coding_grid(GaussParams(10, 10, 0.5, 20), 8, 4)[:, 0]) == {0.0}
    with pytest.raises(ValueError):
        coding_grid(GaussParams(10, 10, 2, 2), 1, 4)


def test_events_exclusive_when_inrs_at_least_one():
    rng = np.random.default_rng(23)
    for _ in range(500):
        p = GaussParams(*(10 ** rng.uniform(0, 6, 6)))
        for i in (1, 2):
            assert sum(event_predicates(p, i)) == 1
        classify_events(p)


def test_event_overlap_below_unit_inr_uses_first_match():
    p = GaussParams(6, 6, 10, 0.5)
    assert sum(event_predicates(p, 2)) > 1
    assert classify_events(p).l2 == event_predicates(p, 2).index(True) + 1


def test_impossible_event_pairs():
    with pytest.raises(ValueError):
        SEventPair(2, 2)
    with pytest.raises(ValueError):
        SEventPair(3, 3)


def test_kappa_hand_values_at_zero_rho():
    p = GaussParams(100, 50, 10, 20, 0, 0)
    k = kappa_values(p, 0.0)
    assert k["k1", 1] == pytest.approx(half_log(100 + 10 + 1))
    # no feedback: the third single-user bound collapses to log(1 + SNR)
    assert k["k3", 1] == pytest.approx(half_log(101))
    assert k["k4"] == pytest.approx(half_log(1 + 100 / 21) + half_log(50 + 20 + 1))


def test_outer_contains_inner_and_stays_close():
    rng = np.random.default_rng(24)
    for _ in range(5):
        p = GaussParams(*(10 ** rng.uniform(0, 6, 6)))
        inner, outer = inner_region(p, 16, 8), outer_region(p, 64)
        assert contains_many(outer, boundary_samples(inner, 64), 1e-6).all()
        assert within_units(inner, outer, 4.4)


def test_swap_symmetry_of_regions():
    p = GaussParams(200, 30, 50, 8, 100, 5)
    a = ray_extent(inner_region(p, 16, 8), (2, 1))
    b = ray_extent(inner_region(p.swapped(), 16, 8), (1, 2))
    assert a == pytest.approx(b, rel=1e-12)
    a = ray_extent(outer_region(p), (2, 1))
    b = ray_extent(outer_region(p.swapped()), (1, 2))
    assert a == pytest.approx(b, rel=1e-12)


def test_outer_values_non_negative_and_constant_present():
    p = GaussParams(2, 2, 1.5, 1.5, 0, 0)
    vals = outer_bound_values(p, np.linspace(0, 1, 5))
    assert (vals >= 0).all()
    assert LOG_2PIE == pytest.approx(math.log2(2 * math.pi * math.e))
