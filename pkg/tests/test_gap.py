import json

import numpy as np
import pytest

from icnf.gap import (
    COMPONENTS, GapReport, classify_case, combine, delta, mu1_star, mu2_star, parse_range, symmetric_gap_surface,
)
from icnf.gaussian import GaussParams


def test_mu_star_formula_and_clipping():
    p = GaussParams(100, 100, 10, 10, 50, 50)
    want = 10 ** 2 * 50 / ((10 - 1) * (10 * 50 + 100))
    assert mu1_star(p) == pytest.approx(want)
    assert mu2_star(p) == pytest.approx(want)
    assert mu1_star(GaussParams(100, 100, 10, 0.5, 50, 50)) == 0.0
    assert mu1_star(GaussParams(100, 100, 10, 1.0, 50, 50)) == 1.0
    assert mu1_star(GaussParams(100, 100, 10, 1.0, 0, 0)) == 0.0
    assert 0.0 <= mu1_star(GaussParams(100, 100, 10, 1.001, 1e9, 1e9)) <= 1.0


@pytest.mark.parametrize("params,label,mus", [
    ((10, 10, 100, 100, 5, 5), "1.1", (0.0, 0.0)),
    ((10, 10, 100, 100, 50, 50), "1.2", (1.0, 1.0)),
    ((10, 10, 100, 100, 50, 5), "1.3", (0.0, 1.0)),
    ((10, 10, 100, 100, 5, 50), "1.4", (1.0, 0.0)),
    ((1000, 1000, 10, 10, 1, 1), "2.4", (0.0, 0.0)),
    ((1000, 1000, 100, 100, 1, 1), "2.1", (0.0, 0.0)),
])
def test_case_labels(params, label, mus):
    got = classify_case(GaussParams(*params))
    assert got[0] == label and got[1] == 0.0 and got[2:] == mus


def test_every_label_is_well_formed():
    rng = np.random.default_rng(31)
    seen = set()
    for _ in range(2000):
        lab, rho, m1, m2 = classify_case(GaussParams(*(10 ** rng.uniform(0, 6, 6))))
        seen.add(lab)
        assert rho == 0.0 and 0.0 <= m1 <= 1.0 and 0.0 <= m2 <= 1.0
    assert {l.split(".")[0] for l in seen} == {"1", "2", "3", "4"}


def test_mirror_cases():
    p = GaussParams(50, 80, 500, 20, 30, 400)
    q = p.swapped()
    a, b = classify_case(p), classify_case(q)
    assert a[0].split(".")[0] in "34" and b[0].split(".")[0] in "34" and a[0][0] != b[0][0]
    assert (a[2], a[3]) == (b[3], b[2])


def test_combine_weights():
    assert combine([0.5, 0.2, 2.0, 0.3, 0.3]) == pytest.approx(1.0)
    assert combine([0.1, 0.1, 0.1, 6.0, 0.0]) == pytest.approx(2.0)


def test_delta_report_fields():
    rep = delta(GaussParams(1e6, 1e6, 10 ** 6.3, 10 ** 6.3, 10 ** 7.2, 10 ** 7.2))
    assert isinstance(rep, GapReport)
    assert rep.case_label == "1.2"
    comps = rep.components()
    assert len(comps) == len(COMPONENTS) and (comps >= 0).all()
    assert rep.delta == pytest.approx(combine(comps))
    assert json.loads(json.dumps(rep.to_dict()))["case_label"] == "1.2"
    assert all(0.0 <= r <= 1.0 for r in rep.argsup)


def test_delta_below_gap_bound_on_random_draws():
    rng = np.random.default_rng(32)
    for _ in range(40):
        d = delta(GaussParams(*(10 ** rng.uniform(0, 6, 6)))).delta
        assert 0.0 <= d <= 4.4


def test_refinement_never_below_grid():
    p = GaussParams(1e5, 1e5, 1e4, 1e4, 1e3, 1e3)
    assert delta(p, grid=256).delta >= delta(p, grid=32).delta - 1e-9


def test_parse_range():
    np.testing.assert_allclose(parse_range("0:1:0.25"), [0, 0.25, 0.5, 0.75, 1.0])
    np.testing.assert_allclose(parse_range("1.05:1.05:1"), [1.05])
    np.testing.assert_allclose(parse_range("0.6,0.8,1.2"), [0.6, 0.8, 1.2])
    assert len(parse_range("0:3:0.05")) == 61
    with pytest.raises(ValueError):
        parse_range("0:1:0")
    with pytest.raises(ValueError):
        parse_range("1:0:0.1")


def test_surface_shape_and_serial_equals_parallel():
    a, b = np.array([0.5, 1.0]), np.array([0.0, 1.2])
    s1 = symmetric_gap_surface(1e4, a, b, grid=32, threads=1)
    s2 = symmetric_gap_surface(1e4, a, b, grid=32, threads=2)
    assert s1.shape == (2, 2)
    np.testing.assert_array_equal(s1, s2)
    with pytest.raises(ValueError):
        symmetric_gap_surface(1e4, [-0.1], [0.0])
