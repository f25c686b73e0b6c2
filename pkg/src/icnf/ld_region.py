"""Exact capacity region of the linear deterministic channel and its rate-split bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import ConvexRateRegion, LinearBound
from .ld_channel import LdParams, pos


@dataclass(frozen=True)
class ThetaVector:
    """``t[l-1][i-1]`` is the right-hand side of rate-split constraint l for user i."""

    t: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.t)
        if len(rows) != 7 or any(len(r) != 2 for r in rows):
            raise ValueError("theta needs 7 rows of 2 entries")
        object.__setattr__(self, "t", rows)

    def __call__(self, l: int, i: int):
        return self.t[l - 1][i - 1]

    def flat(self) -> tuple:
        """Order (1,1),(1,2),(2,1),...,(7,2)."""
        return tuple(v for row in self.t for v in row)

    @classmethod
    def from_flat(cls, vals) -> "ThetaVector":
        vals = list(vals)
        return cls(tuple((vals[2 * k], vals[2 * k + 1]) for k in range(7)))

    def map(self, f) -> "ThetaVector":
        return ThetaVector(tuple((f(a), f(b)) for a, b in self.t))

    def swapped(self) -> "ThetaVector":
        return ThetaVector(tuple((b, a) for a, b in self.t))


def _theta_user(p: LdParams, i: int) -> tuple:
    j = 3 - i
    nii, njj = p.direct(i), p.direct(j)
    nij, nji = p.cross(i, j), p.cross(j, i)
    fii, fjj = p.fb(i), p.fb(j)
    hid_i = pos(max(nii, nij) - fii)  # levels of receiver i missing from its feedback
    hid_j = pos(max(njj, nji) - fjj)
    t1 = pos(nij - hid_i)
    t2 = max(nii, nij)
    t3 = min(nij, hid_i)
    t4 = pos(nii - nji)
    t5 = max(t4, t3)
    ha = min(nji, hid_j) - min(pos(nji - nii), hid_j)
    t6 = ha + t4
    t7 = max(t3, t6)
    return t1, t2, t3, t4, t5, t6, t7


def theta_ld(p: LdParams) -> ThetaVector:
    a, b = _theta_user(p, 1), _theta_user(p, 2)
    return ThetaVector(tuple(zip(a, b)))


def theta_ld_array(params: np.ndarray) -> np.ndarray:
    """Vectorized theta for an (n, 6) integer array; returns (n, 14) in flat order."""
    P = np.asarray(params, dtype=np.int64)
    n11, n22, n12, n21, f11, f22 = P.T
    z = np.zeros_like(n11)

    def user(nii, njj, nij, nji, fii, fjj):
        hid_i = np.maximum(np.maximum(nii, nij) - fii, z)
        hid_j = np.maximum(np.maximum(njj, nji) - fjj, z)
        t1 = np.maximum(nij - hid_i, z)
        t2 = np.maximum(nii, nij)
        t3 = np.minimum(nij, hid_i)
        t4 = np.maximum(nii - nji, z)
        t5 = np.maximum(t4, t3)
        ha = np.minimum(nji, hid_j) - np.minimum(np.maximum(nji - nii, z), hid_j)
        t6 = ha + t4
        t7 = np.maximum(t3, t6)
        return (t1, t2, t3, t4, t5, t6, t7)

    u1 = user(n11, n22, n12, n21, f11, f22)
    u2 = user(n22, n11, n21, n12, f22, f11)
    return np.stack([x for pair in zip(u1, u2) for x in pair], axis=1)


def _bounds_user(p: LdParams, i: int):
    j = 3 - i
    nii, njj = p.direct(i), p.direct(j)
    nij, nji = p.cross(i, j), p.cross(j, i)
    fjj = p.fb(j)
    r_plain = min(max(nii, nji), max(nii, nij))
    r_fb = min(max(nii, nji), max(nii, fjj - pos(njj - nji)))
    w = max(nii, nji) + pos(nii - nij) + max(pos(njj - nji), nij, njj - pos(max(njj, nji) - fjj))
    return r_plain, r_fb, w


def capacity_bound_values(p: LdParams) -> dict:
    """The eight bound values keyed by a short name."""
    n11, n22, n12, n21, f11, f22 = p.as_tuple()
    r1, r1f, w1 = _bounds_user(p, 1)
    r2, r2f, w2 = _bounds_user(p, 2)
    s1 = min(max(n22, n12) + pos(n11 - n12), max(n11, n21) + pos(n22 - n21))
    s2 = (max(pos(n11 - n12), n21, n11 - pos(max(n11, n12) - f11))
          + max(pos(n22 - n21), n12, n22 - pos(max(n22, n21) - f22)))
    return {"R1": r1, "R2": r2, "R1_fb": r1f, "R2_fb": r2f,
            "sum": s1, "sum_fb": s2, "2R1+R2": w1, "R1+2R2": w2}


_LAYOUT = (("R1", 1, 0), ("R2", 0, 1), ("R1_fb", 1, 0), ("R2_fb", 0, 1),
           ("sum", 1, 1), ("sum_fb", 1, 1), ("2R1+R2", 2, 1), ("R1+2R2", 1, 2))


def ld_capacity_region(p: LdParams) -> ConvexRateRegion:
    vals = capacity_bound_values(p)
    return ConvexRateRegion(tuple(LinearBound(c1, c2, Fraction(vals[k])) for k, c1, c2 in _LAYOUT), exact=True)


def capacity_family_array(params: np.ndarray) -> np.ndarray:
    """Vectorized tightest value per family, columns (1,0),(0,1),(1,1),(2,1),(1,2)."""
    P = np.asarray(params, dtype=np.int64)
    n11, n22, n12, n21, f11, f22 = P.T
    z = np.zeros_like(n11)
    pp = lambda x: np.maximum(x, z)  # noqa: E731

    def user(nii, njj, nij, nji, fjj):
        r = np.minimum(np.maximum(nii, nji), np.maximum(nii, nij))
        rf = np.minimum(np.maximum(nii, nji), np.maximum(nii, fjj - pp(njj - nji)))
        w = (np.maximum(nii, nji) + pp(nii - nij)
             + np.maximum(np.maximum(pp(njj - nji), nij), njj - pp(np.maximum(njj, nji) - fjj)))
        return np.minimum(r, rf), w

    a1, w1 = user(n11, n22, n12, n21, f22)
    a2, w2 = user(n22, n11, n21, n12, f11)
    s1 = np.minimum(np.maximum(n22, n12) + pp(n11 - n12), np.maximum(n11, n21) + pp(n22 - n21))
    s2 = (np.maximum(np.maximum(pp(n11 - n12), n21), n11 - pp(np.maximum(n11, n12) - f11))
          + np.maximum(np.maximum(pp(n22 - n21), n12), n22 - pp(np.maximum(n22, n21) - f22)))
    return np.stack([a1, a2, np.minimum(s1, s2), w1, w2], axis=1)


def no_feedback_region(p: LdParams) -> ConvexRateRegion:
    """Region without feedback written with output entropies of uniform inputs.

    With V_i the part of x_i seen at the other receiver, the bounds are
    H(Y_i|V_j), H(Y_i) + H(Y_j|V_i,V_j), H(Y_1|V_1) + H(Y_2|V_2) and
    H(Y_i) + H(Y_i|V_i,V_j) + H(Y_j|V_j); feedback counts are ignored.
    """
    n11, n22, n12, n21 = p.n11_fwd, p.n22_fwd, p.n12, p.n21
    h_y = {1: max(n11, n12), 2: max(n22, n21)}
    # receiver i given the part of x_i that also reaches receiver j
    h_y_own = {1: max(pos(n11 - n21), n12), 2: max(pos(n22 - n12), n21)}
    h_y_both = {1: pos(n11 - n21), 2: pos(n22 - n12)}
    bounds = [
        (1, 0, n11), (0, 1, n22),
        (1, 1, min(h_y[1] + h_y_both[2], h_y[2] + h_y_both[1], h_y_own[1] + h_y_own[2])),
        (2, 1, h_y[1] + h_y_both[1] + h_y_own[2]),
        (1, 2, h_y[2] + h_y_both[2] + h_y_own[1]),
    ]
    return ConvexRateRegion(tuple(LinearBound(a, b, Fraction(v)) for a, b, v in bounds), exact=True)


def is_perfect_feedback(p: LdParams) -> bool:
    return p.n11_fb >= max(p.n11_fwd, p.n12) and p.n22_fb >= max(p.n22_fwd, p.n21)


def reduce_special_case(p: LdParams) -> str:
    n11, n22, n12, n21, f11, f22 = p.as_tuple()
    symmetric_fwd = n11 == n22 and n12 == n21
    if f11 == 0 and f22 == 0:
        return "no-feedback"
    if is_perfect_feedback(p):
        return "perfect-feedback"
    if symmetric_fwd and f11 == f22:
        return "symmetric-NF"
    pf1, pf2 = f11 >= max(n11, n12), f22 >= max(n22, n21)
    if symmetric_fwd and ((pf1 and f22 == 0) or (pf2 and f11 == 0)):
        return "one-sided-PF"
    return "general"
