import numpy as np
import pytest

from icnf.ld_channel import (
    LdParams, feedback_len, influence, influence_map, ld_feedback, ld_output, shift, signal_dims,
    simulated_dims, user_dims,
)


def test_shift_moves_bits_down():
    x = np.array([1, 0, 1, 1], dtype=np.uint8)
    assert shift(x, 0).tolist() == [1, 0, 1, 1]
    assert shift(x, 1).tolist() == [0, 1, 0, 1]
    assert shift(x, 4).tolist() == [0, 0, 0, 0]


def test_output_hand_example():
    # q = 3; receiver 1 sees the top 3 levels of x1 and the top level of x2, added mod 2
    p = LdParams(3, 2, 1, 2)
    x1 = np.array([1, 1, 0], dtype=np.uint8)
    x2 = np.array([1, 0, 0], dtype=np.uint8)
    assert ld_output(p, x1, x2, 1).tolist() == [1, 1, 1]
    # receiver 2: x2 shifted by 1, x1 shifted by 1
    assert ld_output(p, x1, x2, 2).tolist() == [0, 0, 1]


def test_feedback_keeps_top_levels():
    p = LdParams(3, 2, 1, 2, 2, 0)
    assert feedback_len(p, 1) == 2
    y = np.array([1, 0, 1], dtype=np.uint8)
    fb = ld_feedback(p, y, 1)
    assert fb.sum() == 1  # the lowest level is lost


def test_params_validation():
    with pytest.raises(ValueError):
        LdParams(-1, 0, 0, 0)
    with pytest.raises(ValueError):
        LdParams(1.5, 0, 0, 0)
    assert LdParams(3, 2, 1, 4, 0, 5).swapped() == LdParams(2, 3, 4, 1, 5, 0)


def test_single_bit_influence():
    p = LdParams(2, 2, 1, 1)
    inf = influence(p, 1, 0)  # top bit of x1 lands on both receivers
    assert inf[("y", 1)] and inf[("y", 2)]
    inf = influence(p, 1, 1)  # bottom bit of x1 only reaches its own receiver
    assert inf[("y", 1)] and not inf[("y", 2)]


@pytest.mark.parametrize("params", [(7, 5, 3, 4, 6, 4), (3, 2, 1, 2, 2, 0), (0, 0, 0, 0, 0, 0), (4, 4, 6, 6, 9, 9)])
def test_dims_match_simulation(params):
    p = LdParams(*params)
    for i in (1, 2):
        d = user_dims(p, i)
        assert {k: getattr(d, k) for k in simulated_dims(p, i)} == simulated_dims(p, i)


def test_dims_invariants_over_grid():
    for params in np.ndindex(*(4,) * 6):
        p = LdParams(*params)
        for i, d in zip((1, 2), signal_dims(p)):
            nii, nji = p.direct(i), p.cross(3 - i, i)
            assert d.dim_C + d.dim_P == nii or d.dim_C + d.dim_D == nji
            assert d.dim_P == 0 or d.dim_D == 0
            assert d.dim_DF + d.dim_DG == d.dim_D and d.dim_CF + d.dim_CG == d.dim_C
            assert d.q1 + d.q2 + d.q3 == max(nii, nji)


def test_influence_map_text():
    text = influence_map(LdParams(3, 2, 1, 2, 2, 0)).splitlines()
    assert text[0].startswith("q=3")
    assert len(text) == 2 + 6
    assert text[2].split() == ["x1[1]", "1", "2", "1", "-"]
