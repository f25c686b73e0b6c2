from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from icnf.fm import (
    LinearSystem, closed_form_region, eliminate, full_sum_rate, ld_grid, ld_projection_agrees, normalize_row,
    project_rate_region, projected_rows, rate_split_system, simplified_sum_rate,
)
from icnf.geometry import vertex_set
from icnf.ld_channel import LdParams
from icnf.ld_region import ThetaVector, ld_capacity_region, theta_ld


def test_normalize_row_coprime():
    a, b = normalize_row((F(1, 2), F(3, 2)), (F(5, 2),))
    assert a == (1, 3) and b == (5,)


def test_eliminate_small_system():
    # x + y <= 4, -y <= 0, y - x <= 1, -x <= 0  ->  eliminating y gives x <= 4 and -x <= 1 (trivial drop)
    sys = LinearSystem(("x", "y"), (((1, 1), (4,)), ((0, -1), (0,)), ((-1, 1), (1,)), ((-1, 0), (0,))))
    out = eliminate(sys, "y")
    rows = {(a, b) for a, b in out.rows}
    assert ((1,), (4,)) in rows
    assert ((-1,), (0,)) in rows


def _lp_support(theta: ThetaVector, direction) -> float:
    sys = rate_split_system().substitute([float(x) for x in theta.flat()])
    A = np.array([[float(c) for c in a] for a, _ in sys.rows])
    b = np.array([float(r[0]) for _, r in sys.rows])
    c = np.zeros(A.shape[1])
    c[:2] = -np.asarray(direction, float)
    res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * A.shape[1], method="highs")
    assert res.status == 0
    return -res.fun


def test_projection_matches_lp_oracle():
    rng = np.random.default_rng(11)
    for _ in range(15):
        th = ThetaVector.from_flat(int(x) for x in rng.integers(0, 10, 14))
        reg = project_rate_region(th)
        for d in ((1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (1, 4)):
            pts = np.array([[float(x), float(y)] for x, y in vertex_set(reg)])
            assert (pts @ np.array(d, float)).max() == pytest.approx(_lp_support(th, d), abs=1e-7)


def test_symbolic_equals_numeric_elimination():
    rng = np.random.default_rng(12)
    for _ in range(3):
        th = ThetaVector.from_flat(int(x) for x in rng.integers(0, 8, 14))
        assert vertex_set(project_rate_region(th, symbolic=True)) == vertex_set(project_rate_region(th, symbolic=False))


def test_negative_theta_rejected():
    with pytest.raises(ValueError):
        projected_rows(ThetaVector.from_flat([-1] + [0] * 13))


def test_golden_ld_projection():
    p = LdParams(7, 5, 3, 4, 6, 4)
    assert vertex_set(project_rate_region(theta_ld(p))) == vertex_set(ld_capacity_region(p))


def test_grid_check_small():
    assert ld_projection_agrees(ld_grid(2)).all()


def test_unstructured_theta_can_break_closed_form():
    # theta7 below theta6 caps R1 below every closed-form R1 term
    vals = [3, 3, 5, 5, 0, 0, 2, 2, 4, 4, 6, 6, 1, 1]
    th = ThetaVector.from_flat(vals)
    assert th(7, 1) < th(6, 1)
    assert vertex_set(project_rate_region(th)) != vertex_set(closed_form_region(th))


def test_structured_theta_matches_closed_form():
    from icnf.acceptance import structured_theta
    rng = np.random.default_rng(13)
    for _ in range(30):
        th = structured_theta(rng)
        assert vertex_set(project_rate_region(th)) == vertex_set(closed_form_region(th))


def test_ld_sum_rate_simplification():
    rng = np.random.default_rng(14)
    for _ in range(300):
        th = theta_ld(LdParams(*(int(x) for x in rng.integers(0, 13, 6))))
        assert simplified_sum_rate(th) == full_sum_rate(th)
