"""Constant-gap calculus between the Gaussian inner and outer regions.

For a fixed coding point the gap along each bound family is the tightest
outer value at correlation rho' minus the achievable value, maximised over
rho' in [0, 1]. The outer value is the support of the outer polytope in the
family's direction, so bounds that never touch the region do not count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .gaussian import FAMILY_COEFFS, GaussParams, classify_events, inner_bound_values, outer_bound_values
from .geometry import support_values

COMPONENTS = ("R1", "R2", "2R", "3R1", "3R2")
WEIGHTS = np.array([1.0, 1.0, 2.0, 3.0, 3.0])
SUP_GRID = 256
SUP_XTOL = 1e-6


def _mu_star(inr: float, fb: float, snr: float) -> float:
    """Split fraction driven by the other user's feedback, clipped to [0, 1]."""
    if inr <= 1.0:
        # the formula diverges to +inf as INR falls to 1 and turns negative below it
        return 1.0 if inr == 1.0 and fb > 0 else 0.0
    v = inr ** 2 * fb / ((inr - 1.0) * (inr * fb + snr))
    return float(min(max(v, 0.0), 1.0))


def mu1_star(p: GaussParams) -> float:
    return _mu_star(p.inr21, p.snr2_fb, p.snr2_fwd)


def mu2_star(p: GaussParams) -> float:
    return _mu_star(p.inr12, p.snr1_fb, p.snr1_fwd)


def _fb_high(p: GaussParams, i: int) -> tuple:
    """(strong feedback at user i, INR product exceeds SNR_i) for a low-interference user."""
    j = 3 - i
    prod = p.inr12 * p.inr21
    above = prod > p.snr(i)  # equality goes to the product-below branch
    if above:
        return p.fb(i) > p.inr(j, i), above
    return p.fb(i) * p.inr(i, j) > p.snr(i), above


def classify_case(p: GaussParams) -> tuple:
    """(label, rho, mu1, mu2) of the prescribed coding point."""
    hir1, hir2 = p.inr12 > p.snr1_fwd, p.inr21 > p.snr2_fwd
    if hir1 and hir2:
        s1, s2 = p.snr1_fb > p.snr2_fwd, p.snr2_fb > p.snr1_fwd
        label, mus = {(False, False): ("1.1", (0.0, 0.0)), (True, True): ("1.2", (1.0, 1.0)),
                      (True, False): ("1.3", (0.0, 1.0)), (False, True): ("1.4", (1.0, 0.0))}[s1, s2]
        return (label, 0.0) + mus
    if not hir1 and not hir2:
        f1, above1 = _fb_high(p, 1)
        f2, above2 = _fb_high(p, 2)
        sub = {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}[above1, above2]
        base, mus = {(False, False): (0, (0.0, 0.0)), (True, True): (4, (mu1_star(p), mu2_star(p))),
                     (True, False): (8, (0.0, mu2_star(p))), (False, True): (12, (mu1_star(p), 0.0))}[f1, f2]
        return (f"2.{base + sub}", 0.0) + mus
    if hir1:
        f2, above2 = _fb_high(p, 2)
        sub = (3 if f2 else 1) + (0 if above2 else 1)
        return (f"3.{sub}", 0.0, 1.0 if f2 else 0.0, 0.0)
    f1, above1 = _fb_high(p, 1)
    sub = (3 if f1 else 1) + (0 if above1 else 1)
    return (f"4.{sub}", 0.0, 0.0, 1.0 if f1 else 0.0)


@dataclass(frozen=True)
class GapReport:
    case_label: str
    rho: float
    mu1: float
    mu2: float
    delta_R1: float
    delta_R2: float
    delta_2R: float
    delta_3R1: float
    delta_3R2: float
    delta: float
    argsup: tuple

    def components(self) -> np.ndarray:
        return np.array([self.delta_R1, self.delta_R2, self.delta_2R, self.delta_3R1, self.delta_3R2])

    def to_dict(self) -> dict:
        return asdict(self)


def combine(components) -> float:
    d = np.asarray(components, dtype=float)
    return float(np.max(d / WEIGHTS))


def _gap_curve(p: GaussParams, rho_p, achievable: np.ndarray, events) -> np.ndarray:
    rho_p = np.atleast_1d(np.asarray(rho_p, dtype=float))
    outer = outer_bound_values(p, rho_p, events)
    return support_values(FAMILY_COEFFS, outer, FAMILY_COEFFS) - achievable[None, :]


def delta(p: GaussParams, grid: int = SUP_GRID, xtol: float = SUP_XTOL) -> GapReport:
    label, rho, mu1, mu2 = classify_case(p)
    ev = classify_events(p)
    ach = inner_bound_values(p, rho, mu1, mu2)
    rs = np.linspace(0.0, 1.0, grid)
    curve = _gap_curve(p, rs, ach, ev)
    comps, where = [], []
    for k in range(len(COMPONENTS)):
        g = int(np.argmax(curve[:, k]))
        best, arg = float(curve[g, k]), float(rs[g])
        lo, hi = rs[max(g - 1, 0)], rs[min(g + 1, grid - 1)]
        if hi > lo:
            res = minimize_scalar(lambda r: -float(_gap_curve(p, r, ach, ev)[0, k]),
                                  bounds=(lo, hi), method="bounded", options={"xatol": xtol})
            if -res.fun > best:
                best, arg = float(-res.fun), float(res.x)
        comps.append(best)
        where.append(arg)
    return GapReport(label, rho, mu1, mu2, *comps, delta=combine(comps), argsup=tuple(where))


# ------------------------------------------------------------ gap surface

def parse_range(spec: str) -> np.ndarray:
    """'start:stop:step' inclusive of stop (within half a step), or a comma list."""
    if ":" in spec:
        a, b, s = (float(x) for x in spec.split(":"))
        if s <= 0:
            raise ValueError("step must be positive")
        if b < a:
            raise ValueError(f"range stop {b} is below start {a}")
        n = int(math.floor((b - a) / s + 0.5)) + 1
        return np.round(a + s * np.arange(max(n, 1)), 12)
    return np.array([float(x) for x in spec.split(",") if x.strip()])


def default_workers(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("ICNF_THREADS", "0") or 0)
    return max(1, threads or (os.cpu_count() or 1))


def _surface_row(args) -> list:
    snr, a, betas, grid = args
    return [delta(GaussParams.symmetric(snr, snr ** a, snr ** b), grid).delta for b in betas]


def symmetric_gap_surface(snr_fwd: float, alphas, betas, grid: int = SUP_GRID,
                          threads: int | None = None) -> np.ndarray:
    """Entry (i, j) is the combined gap at INR = SNR^alpha_i and feedback SNR = SNR^beta_j."""
    alphas, betas = np.asarray(alphas, dtype=float), np.asarray(betas, dtype=float)
    if alphas.min() < 0 or betas.min() < 0:
        raise ValueError("alpha and beta must be non-negative")
    jobs = [(float(snr_fwd), float(a), tuple(betas), grid) for a in alphas]
    workers = min(default_workers(threads), len(jobs))
    if workers == 1:
        rows = [_surface_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_surface_row, jobs))
    return np.array(rows)
