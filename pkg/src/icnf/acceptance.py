"""Acceptance suite shared by the test runner and ``icnf selfcheck``.

Each criterion function returns a list of :class:`Check` results. A check
flagged ``known_failure`` is computed and reported like any other; the flag
only tells the pytest wrapper to expect the failure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fm import closed_form_region, full_sum_rate, ld_grid, ld_projection_agrees, project_rate_region, simplified_sum_rate
from .gap import classify_case, delta, symmetric_gap_surface
from .gaussian import CodingPoint, GaussParams, inner_bound_values, inner_region, outer_region, rho_max, theta_gaussian
from .gdof import GdofQuery, gdof_curves, gdof_estimate
from .geometry import (RatePair, contains, contains_many, member_corners, merge_families, pareto_front, vertex_set,
                       within_units)
from .ld_channel import LdParams, simulated_dims, user_dims
from .ld_region import ThetaVector, ld_capacity_region, no_feedback_region, theta_ld_array

SEED = 20240917


@dataclass(frozen=True)
class Check:
    criterion: str
    name: str
    passed: bool
    detail: str
    known_failure: bool = False

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.criterion}] {self.name}: {self.detail}"


def _log_uniform_params(rng, lo_db=0.0, hi_db=60.0) -> GaussParams:
    return GaussParams(*(10.0 ** (rng.uniform(lo_db, hi_db, 6) / 10.0)))


# ---------------------------------------------------------------- 1

def criterion_1() -> list:
    t = time.perf_counter()
    fb = ld_capacity_region(LdParams(7, 5, 3, 4, 6, 4))
    nf = ld_capacity_region(LdParams(7, 5, 3, 4, 0, 0))
    inside = [contains(fb, RatePair(Fraction(a), Fraction(b))) for a, b in ((2, 5), (4, 4), (7, 1))]
    outside = [not contains(nf, RatePair(Fraction(a), Fraction(b))) for a, b in ((2, 5), (4, 4))]
    dt = time.perf_counter() - t
    return [
        Check("1", "feedback region contains (2,5),(4,4),(7,1)", all(inside), f"{inside}"),
        Check("1", "no-feedback region excludes (2,5),(4,4)", all(outside), f"{outside}"),
        Check("1", "runtime < 1 s", dt < 1.0, f"{dt:.3f} s"),
    ]


# ---------------------------------------------------------------- 2

def criterion_2(grid_max: int = 8, samples: int = 500, sample_max: int = 20) -> list:
    t = time.perf_counter()
    grid = ld_grid(grid_max)
    ok_grid = ld_projection_agrees(grid)
    rng = np.random.default_rng(SEED + 2)
    ok_rand = ld_projection_agrees(rng.integers(0, sample_max + 1, size=(samples, 6)))
    dt = time.perf_counter() - t
    return [
        Check("2", f"FM equals capacity region on grid 0..{grid_max}", bool(ok_grid.all()),
              f"{int(ok_grid.sum())}/{len(ok_grid)}"),
        Check("2", f"FM equals capacity region on {samples} draws up to {sample_max}", bool(ok_rand.all()),
              f"{int(ok_rand.sum())}/{len(ok_rand)}"),
        Check("2", "runtime <= 300 s", dt <= 300.0, f"{dt:.1f} s"),
    ]


# ---------------------------------------------------------------- 3

def structured_theta(rng, hi: int = 12, den: int = 4) -> ThetaVector:
    """Random rational theta obeying theta5 >= theta3, theta4 and theta7 >= theta6 >= theta4 per user."""
    def r():
        return Fraction(int(rng.integers(0, hi * den + 1)), den)

    users = []
    for _ in range(2):
        t1, t2, t3, t4 = r(), r(), r(), r()
        t5 = max(t3, t4) + r()
        t6 = t4 + r()
        t7 = t6 + r()
        users.append((t1, t2, t3, t4, t5, t6, t7))
    return ThetaVector(tuple(zip(*users)))


def _ld_sum_rate_terms(theta: np.ndarray):
    t = lambda l, i: theta[:, 2 * (l - 1) + (i - 1)]  # noqa: E731
    simple = np.minimum.reduce([t(2, 1) + t(4, 2), t(4, 1) + t(2, 2), t(1, 1) + t(5, 1) + t(1, 2) + t(5, 2)])
    full = np.minimum.reduce([
        t(2, 1) + t(4, 2), t(2, 1) + t(6, 2), t(4, 1) + t(2, 2), t(6, 1) + t(2, 2),
        t(1, 1) + t(3, 1) + t(4, 1) + t(1, 2) + t(5, 2),
        t(1, 1) + t(7, 1) + t(1, 2) + t(5, 2),
        t(1, 1) + t(4, 1) + t(1, 2) + t(7, 2),
        t(1, 1) + t(5, 1) + t(1, 2) + t(3, 2) + t(4, 2),
        t(1, 1) + t(5, 1) + t(1, 2) + t(5, 2),
        t(1, 1) + t(7, 1) + t(1, 2) + t(4, 2),
    ])
    return simple, full


def criterion_3(samples: int = 500, gauss_samples: int = 500) -> list:
    rng = np.random.default_rng(SEED + 3)
    same = 0
    for _ in range(samples):
        th = structured_theta(rng)
        same += vertex_set(project_rate_region(th)) == vertex_set(closed_form_region(th))
    simple, full = _ld_sum_rate_terms(theta_ld_array(ld_grid(8)))
    ld_same = int((simple == full).sum())
    g_same = g_five = 0
    for _ in range(gauss_samples):
        p = _log_uniform_params(rng)
        c = CodingPoint(rng.uniform(0.0, rho_max(p)), rng.uniform(), rng.uniform())
        th = theta_gaussian(p, c).map(Fraction)
        g_same += simplified_sum_rate(th) == full_sum_rate(th)
        five = inner_bound_values(p, c.rho, c.mu1, c.mu2)[2]
        g_five += bool(abs(five - float(full_sum_rate(th))) <= 1e-9 * (1 + abs(five)))
    return [
        Check("3", f"FM equals closed form on {samples} structured random theta", same == samples,
              f"{same}/{samples}"),
        Check("3", "3-term sum rate equals 10-term min for LD theta (grid 0..8)", ld_same == len(simple),
              f"{ld_same}/{len(simple)}"),
        Check("3", "3-term sum rate equals 10-term min for Gaussian theta", g_same == gauss_samples,
              f"{g_same}/{gauss_samples} (5-term Gaussian sum-rate form matches in {g_five}/{gauss_samples})",
              known_failure=True),
    ]


# ---------------------------------------------------------------- 4

def _family_values(reg) -> dict:
    return {(b.c1, b.c2): b.v for b in merge_families(reg).bounds}


def _same_region(a, b) -> bool:
    return _family_values(a) == _family_values(b) or vertex_set(a) == vertex_set(b)


def criterion_4(grid_max: int = 8) -> list:
    nf_ok = pf_ok = total = 0
    rng4 = range(grid_max + 1)
    for n11 in rng4:
        for n22 in rng4:
            for n12 in rng4:
                for n21 in rng4:
                    total += 1
                    p0 = LdParams(n11, n22, n12, n21, 0, 0)
                    nf_ok += _same_region(ld_capacity_region(p0), no_feedback_region(p0))
                    f1, f2 = max(n11, n12), max(n22, n21)
                    pf_ok += _same_region(ld_capacity_region(LdParams(n11, n22, n12, n21, f1, f2)),
                                          ld_capacity_region(LdParams(n11, n22, n12, n21, 10 * f1, 10 * f2)))
    return [
        Check("4", "zero feedback equals no-feedback specialization", nf_ok == total, f"{nf_ok}/{total}"),
        Check("4", "perfect-feedback saturation", pf_ok == total, f"{pf_ok}/{total}"),
    ]


# ---------------------------------------------------------------- 5

def _inner_sample(inner, points: int, rng) -> np.ndarray:
    """Up to ``points`` member corners, Pareto-front corners of the union first."""
    corners = member_corners(inner)
    front = pareto_front(corners)
    if len(front) >= points:
        return front[np.linspace(0, len(front) - 1, points).astype(int)]
    extra = corners[rng.choice(len(corners), size=min(points - len(front), len(corners)), replace=False)]
    return np.vstack([front, extra])


def criterion_5(draws: int = 200, points: int = 1000, xi: float = 4.4, tol: float = 1e-6) -> list:
    rng = np.random.default_rng(SEED + 5)
    t = time.perf_counter()
    sandwich = inclusion = 0
    for _ in range(draws):
        p = _log_uniform_params(rng)
        inner, outer = inner_region(p), outer_region(p)
        sandwich += within_units(inner, outer, xi, tol=tol)
        pts = _inner_sample(inner, points, rng)
        inclusion += bool(contains_many(outer, pts, tol).all())
    dt = time.perf_counter() - t
    return [
        Check("5", f"inner within {xi} bits of outer", sandwich == draws, f"{sandwich}/{draws}"),
        Check("5", "inner inside outer at sampled boundary points", inclusion == draws, f"{inclusion}/{draws}"),
        Check("5", "runtime <= 600 s", dt <= 600.0, f"{dt:.1f} s"),
    ]


# ---------------------------------------------------------------- 6

def criterion_6(threads: int | None = None) -> list:
    alphas = np.round(np.arange(0.0, 3.0 + 1e-9, 0.05), 10)
    betas = np.round(np.arange(0.0, 2.0 + 1e-9, 0.05), 10)
    t = time.perf_counter()
    s60 = symmetric_gap_surface(1e6, alphas, betas, threads=threads)
    s80 = symmetric_gap_surface(1e8, alphas, betas, threads=threads)
    dt = time.perf_counter() - t
    i, j = np.unravel_index(np.argmax(s60), s60.shape)
    m60, m80 = float(s60.max()), float(s80.max())
    at = float(s60[np.argmin(abs(alphas - 1.05)), np.argmin(abs(betas - 1.2))])
    where = (float(alphas[i]), float(betas[j]))
    return [
        Check("6", "maximum gap in [0.9, 1.3] bits", 0.9 <= m60 <= 1.3,
              f"max {m60:.3f} bits; value at (1.05, 1.2) is {at:.3f}", known_failure=True),
        Check("6", "maximum within 0.1 of (1.05, 1.2)",
              abs(where[0] - 1.05) <= 0.1 + 1e-9 and abs(where[1] - 1.2) <= 0.1 + 1e-9,
              f"argmax at {where}", known_failure=True),
        Check("6", "gap everywhere <= 4.4 bits", float(max(m60, m80)) <= 4.4, f"max {max(m60, m80):.3f}"),
        Check("6", "80 dB maximum within 0.1 bits of 60 dB maximum", abs(m80 - m60) < 0.1,
              f"{m60:.3f} vs {m80:.3f}", known_failure=True),
        Check("6", "runtime <= 900 s", dt <= 900.0, f"{dt:.1f} s"),
    ]


# ---------------------------------------------------------------- 7

def criterion_7(draws: int = 50, bound: float = 1.5, tol: float = 1e-6) -> list:
    rng = np.random.default_rng(SEED + 7)
    worst, n = -np.inf, 0
    while n < draws:
        p = _log_uniform_params(rng)
        if classify_case(p)[0] != "1.1":
            continue
        n += 1
        worst = max(worst, delta(p).delta)
    return [Check("7", f"case 1.1 gap <= {bound}", worst <= bound + tol, f"worst {worst:.4f} over {draws} draws")]


# ---------------------------------------------------------------- 8

def criterion_8(tol: float = 0.05, threads: int | None = None) -> list:
    t = time.perf_counter()
    alphas = np.round(np.arange(0.1, 2.9 + 1e-9, 0.2), 10)
    betas = np.round(np.arange(0.0, 1.6 + 1e-9, 0.2), 10)
    curves = gdof_curves(alphas, betas, threads=threads)
    b0, b04 = curves[:, 0], curves[:, list(np.round(betas, 10)).index(0.4)]
    diff = float(np.abs(b04 - b0).max())
    bounded = [(a, gdof_estimate(GdofQuery.from_db(a, 1.2))) for a in (2.5, 3.0)]
    bound_ok = all(g <= min(a / 2, 1.2) + tol for a, g in bounded)
    drop = float(-np.diff(curves, axis=1).min())
    dt = time.perf_counter() - t
    return [
        Check("8", "feedback exponent 0.4 matches no feedback", diff < tol, f"max |diff| {diff:.4f}"),
        Check("8", "estimate <= min(alpha/2, beta) + 0.05 at beta 1.2", bound_ok,
              ", ".join(f"alpha {a}: {g:.4f} <= {min(a / 2, 1.2) + tol:.2f}" for a, g in bounded)),
        Check("8", "non-decreasing in beta (within 0.05)", drop <= tol, f"largest decrease {max(drop, 0.0):.4f}"),
        Check("8", "runtime <= 300 s", dt <= 300.0, f"{dt:.1f} s"),
    ]


# ---------------------------------------------------------------- 9

def criterion_9(draws: int = 1000, max_dim: int = 12) -> list:
    rng = np.random.default_rng(SEED + 9)
    t = time.perf_counter()
    match = q_ok = 0
    for _ in range(draws):
        p = LdParams(*(int(x) for x in rng.integers(0, max_dim + 1, 6)))
        good = q_good = True
        for i in (1, 2):
            d = user_dims(p, i)
            good &= all(getattr(d, k) == v for k, v in simulated_dims(p, i).items())
            q_good &= d.q1 + d.q2 + d.q3 == max(p.direct(i), p.cross(3 - i, i))
        match += good
        q_ok += q_good
    dt = time.perf_counter() - t
    return [
        Check("9", "influence simulation matches signal dims", match == draws, f"{match}/{draws}"),
        Check("9", "q1 + q2 + q3 equals the top received level", q_ok == draws, f"{q_ok}/{draws}"),
        Check("9", "runtime < 30 s", dt < 30.0, f"{dt:.1f} s"),
    ]


CRITERIA = {
    "1": criterion_1, "2": criterion_2, "3": criterion_3, "4": criterion_4, "5": criterion_5,
    "6": criterion_6, "7": criterion_7, "8": criterion_8, "9": criterion_9,
}


def run(selected=None, out=print) -> list:
    results = []
    for key in selected or CRITERIA:
        for c in CRITERIA[key]():
            out(c.line())
            results.append(c)
    return results
