"""Generalized degrees of freedom estimated from finite-SNR symmetric rates."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gap import default_workers
from .gaussian import INNER_MU_GRID, INNER_RHO_GRID, OUTER_RHO_GRID, GaussParams, inner_region, outer_region
from .geometry import ray_extent

DEFAULT_LADDER_DB = (40.0, 60.0, 80.0)


@dataclass(frozen=True)
class GdofQuery:
    alpha: float
    beta: float
    snr_ladder: tuple
    mode: str = "inner"

    def __post_init__(self):
        ladder = tuple(float(s) for s in self.snr_ladder)
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if len(ladder) < 2 or any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError("SNR ladder needs at least two strictly increasing values")
        if ladder[0] <= 1:
            raise ValueError("ladder SNRs must exceed 1 (0 dB)")
        if self.mode not in ("inner", "outer"):
            raise ValueError("mode must be 'inner' or 'outer'")
        object.__setattr__(self, "snr_ladder", ladder)

    @classmethod
    def from_db(cls, alpha, beta, ladder_db=DEFAULT_LADDER_DB, mode="inner") -> "GdofQuery":
        return cls(alpha, beta, tuple(10.0 ** (d / 10.0) for d in ladder_db), mode)


def symmetric_rate(p: GaussParams, mode: str = "inner", rho_grid: int | None = None,
                   mu_grid: int = INNER_MU_GRID) -> float:
    """Largest R with (R, R) in the inner or outer region."""
    if mode == "inner":
        reg = inner_region(p, rho_grid or INNER_RHO_GRID, mu_grid)
    elif mode == "outer":
        reg = outer_region(p, rho_grid or OUTER_RHO_GRID)
    else:
        raise ValueError("mode must be 'inner' or 'outer'")
    return float(ray_extent(reg, (1.0, 1.0)))


def gdof_estimate(q: GdofQuery, **grids) -> float:
    """Intercept of a linear fit of R / (0.5 log2 SNR) against 1 / (0.5 log2 SNR).

    A single-user link without interference gives 1, so the constant offset
    of any finite-SNR rate drops out in the intercept.
    """
    units = np.array([0.5 * math.log2(s) for s in q.snr_ladder])
    rates = np.array([
        symmetric_rate(GaussParams.symmetric(s, s ** q.alpha, s ** q.beta), q.mode, **grids)
        for s in q.snr_ladder
    ])
    slope, intercept = np.polyfit(1.0 / units, rates / units, 1)
    return float(intercept)


def _curve_row(args):
    alpha, betas, ladder, mode = args
    return [gdof_estimate(GdofQuery(alpha, b, ladder, mode)) for b in betas]


def gdof_curves(alphas, betas, ladder_db=DEFAULT_LADDER_DB, mode: str = "inner",
                threads: int | None = None) -> np.ndarray:
    """Estimates indexed [alpha, beta]."""
    ladder = tuple(10.0 ** (d / 10.0) for d in ladder_db)
    jobs = [(float(a), tuple(float(b) for b in betas), ladder, mode) for a in alphas]
    workers = min(default_workers(threads), len(jobs))
    if workers == 1:
        rows = [_curve_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_curve_row, jobs))
    return np.array(rows)
