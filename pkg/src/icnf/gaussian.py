"""Gaussian interference channel with noisy feedback: parameters, bound functions and regions.

All quantities are linear-scale; logarithms are base 2. Every bound function
accepts numpy arrays for its correlation/split arguments and broadcasts.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import RegionUnion
from .ld_region import ThetaVector

LOG_2PIE = math.log2(2 * math.pi * math.e)
FAMILY_COEFFS = np.array([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)], dtype=float)
INNER_RHO_GRID = 64
INNER_MU_GRID = 32
OUTER_RHO_GRID = 128


def _log(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise ValueError(f"log argument must be positive, got min {np.nanmin(x)!r}")
    return np.log2(x)


def _half_log(x):
    return 0.5 * _log(x)


def _min(terms):
    return functools.reduce(np.minimum, terms)


@dataclass(frozen=True)
class GaussParams:
    """Forward SNRs, cross INRs (``inr12``: transmitter 2 seen at receiver 1) and feedback SNRs."""

    snr1_fwd: float
    snr2_fwd: float
    inr12: float
    inr21: float
    snr1_fb: float = 0.0
    snr2_fb: float = 0.0

    def __post_init__(self):
        for name in ("snr1_fwd", "snr2_fwd", "inr12", "inr21", "snr1_fb", "snr2_fb"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v!r}")
            if v == 0 and not name.endswith("_fb"):
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, v)

    def snr(self, i: int) -> float:
        return self.snr1_fwd if i == 1 else self.snr2_fwd

    def inr(self, i: int, j: int) -> float:
        """Interference from transmitter j at receiver i."""
        return self.inr12 if (i, j) == (1, 2) else self.inr21

    def fb(self, i: int) -> float:
        return self.snr1_fb if i == 1 else self.snr2_fb

    def as_tuple(self) -> tuple:
        return (self.snr1_fwd, self.snr2_fwd, self.inr12, self.inr21, self.snr1_fb, self.snr2_fb)

    def swapped(self) -> "GaussParams":
        return GaussParams(self.snr2_fwd, self.snr1_fwd, self.inr21, self.inr12, self.snr2_fb, self.snr1_fb)

    @classmethod
    def symmetric(cls, snr: float, inr: float, fb: float = 0.0) -> "GaussParams":
        return cls(snr, snr, inr, inr, fb, fb)

    @classmethod
    def from_db(cls, snr1, snr2, inr12, inr21, fb1=None, fb2=None) -> "GaussParams":
        lin = lambda x: 0.0 if x is None else 10.0 ** (x / 10.0)  # noqa: E731
        return cls(lin(snr1), lin(snr2), lin(inr12), lin(inr21), lin(fb1), lin(fb2))


def from_coefficients(h11_fwd, h22_fwd, h12, h21, h11_fb, h22_fb) -> tuple:
    """Six channel gains to (SNR1, SNR2, INR12, INR21, fbSNR1, fbSNR2).

    Returned as a plain tuple because zero gains are allowed here while
    ``GaussParams`` needs positive forward SNRs and INRs.
    """
    vals = (h11_fwd, h22_fwd, h12, h21, h11_fb, h22_fb)
    if any(v < 0 for v in vals):
        raise ValueError("channel coefficients must be non-negative")
    snr1, snr2 = h11_fwd ** 2, h22_fwd ** 2
    inr12, inr21 = h12 ** 2, h21 ** 2
    fb1 = h11_fb ** 2 * (h11_fwd ** 2 + 2 * h11_fwd * h12 + h12 ** 2 + 1)
    fb2 = h22_fb ** 2 * (h22_fwd ** 2 + 2 * h22_fwd * h21 + h21 ** 2 + 1)
    return (snr1, snr2, inr12, inr21, fb1, fb2)


# -------------------------------------------------------------- coding point

def rho_max(p: GaussParams) -> float:
    return max(0.0, 1.0 - max(1.0 / p.inr12, 1.0 / p.inr21))


@dataclass(frozen=True)
class CodingPoint:
    rho: float
    mu1: float
    mu2: float

    def mu(self, i: int) -> float:
        return self.mu1 if i == 1 else self.mu2

    def check(self, p: GaussParams) -> "CodingPoint":
        if not (0.0 <= self.rho <= rho_max(p) + 1e-12):
            raise ValueError(f"rho={self.rho} outside [0, {rho_max(p)}]")
        if not (0.0 <= self.mu1 <= 1.0 and 0.0 <= self.mu2 <= 1.0):
            raise ValueError("mu values must lie in [0, 1]")
        return self

    def power_split(self, p: GaussParams, i: int) -> tuple:
        """(common, private) power fractions of transmitter i."""
        lam_p = min(1.0 / p.inr(3 - i, i), 1.0)
        return 1.0 - self.rho - lam_p, lam_p


# ----------------------------------------------------------------- b-functions

def b1(p: GaussParams, i: int, rho):
    j = 3 - i
    return p.snr(i) + 2 * np.asarray(rho) * math.sqrt(p.snr(i) * p.inr(i, j)) + p.inr(i, j)


def b2(p: GaussParams, i: int, rho):
    return (1 - np.asarray(rho)) * p.inr(i, 3 - i) - 1


def b3(p: GaussParams, i: int) -> float:
    j = 3 - i
    return p.snr(i) - 2 * math.sqrt(p.snr(i) * p.inr(j, i)) + p.inr(j, i)


def b4(p: GaussParams, i: int, rho):
    return (1 - np.asarray(rho) ** 2) * p.snr(i)


def b5(p: GaussParams, i: int, rho):
    return (1 - np.asarray(rho) ** 2) * p.inr(i, 3 - i)


def b6(p: GaussParams, i: int, rho):
    j = 3 - i
    s, x, y = p.snr(i), p.inr(i, j), p.inr(j, i)
    return (s + x + 2 * np.asarray(rho) * math.sqrt(x) * (math.sqrt(s) - math.sqrt(y))
            + x * math.sqrt(y) / s * (math.sqrt(y) - 2 * math.sqrt(s)))


# ----------------------------------------------------------------- a-functions
# Raw forms; ``mu`` is whichever split fraction the caller's convention selects.

def a1(p: GaussParams, i: int):
    return _half_log(2 + p.snr(i) / p.inr(3 - i, i)) - 0.5


def a2(p: GaussParams, i: int, rho):
    return _half_log(b1(p, i, rho) + 1) - 0.5


def a3(p: GaussParams, i: int, rho, mu):
    fb, c = p.fb(i), b1(p, i, 1.0) + 1
    bb = b2(p, i, rho)
    return _half_log((fb * (bb + 2) + c) / (fb * ((1 - np.asarray(mu)) * bb + 2) + c))


def a4(p: GaussParams, i: int, rho, mu):
    return _half_log((1 - np.asarray(mu)) * b2(p, i, rho) + 2) - 0.5


def a5(p: GaussParams, i: int, rho, mu):
    return _half_log(2 + p.snr(i) / p.inr(3 - i, i) + (1 - np.asarray(mu)) * b2(p, i, rho)) - 0.5


def a6(p: GaussParams, i: int, rho, mu):
    j = 3 - i
    return _half_log(p.snr(i) / p.inr(j, i) * ((1 - np.asarray(mu)) * b2(p, j, rho) + 1) + 2) - 0.5


def a7(p: GaussParams, i: int, rho, mu1, mu2):
    j = 3 - i
    mu_i, mu_j = (mu1, mu2) if i == 1 else (mu2, mu1)
    return _half_log(p.snr(i) / p.inr(j, i) * ((1 - np.asarray(mu_i)) * b2(p, j, rho) + 1)
                     + (1 - np.asarray(mu_j)) * b2(p, i, rho) + 2) - 0.5


def _a_table(p: GaussParams, rho, mu1, mu2) -> dict:
    """All fourteen values keyed (l, i), each clamped at zero."""
    mus = {1: mu1, 2: mu2}
    out = {}
    for i in (1, 2):
        j = 3 - i
        out[(1, i)] = a1(p, i)
        out[(2, i)] = a2(p, i, rho)
        out[(3, i)] = a3(p, i, rho, mus[j])
        out[(4, i)] = a4(p, i, rho, mus[j])
        out[(5, i)] = a5(p, i, rho, mus[j])
        out[(6, i)] = a6(p, i, rho, mus[i])
        out[(7, i)] = a7(p, i, rho, mu1, mu2)
    return {k: np.maximum(np.asarray(v, dtype=float), 0.0) for k, v in out.items()}


def a_values(p: GaussParams, c: CodingPoint) -> dict:
    """Fourteen achievability constants at one coding point, keyed (l, i)."""
    return {k: float(v) for k, v in _a_table(p, c.rho, c.mu1, c.mu2).items()}


def theta_gaussian(p: GaussParams, c: CodingPoint) -> ThetaVector:
    """Rate-split right-hand sides produced by the Gaussian coding scheme."""
    a = a_values(p, c)
    order = (3, 2, 4, 1, 5, 6, 7)  # theta row l is the a-function order[l-1]
    return ThetaVector(tuple((a[(l, 1)], a[(l, 2)]) for l in order))


def inner_bound_values(p: GaussParams, rho, mu1, mu2) -> np.ndarray:
    """Bound values (..., 5) in family order (1,0),(0,1),(1,1),(2,1),(1,2)."""
    a = _a_table(p, rho, mu1, mu2)
    r1 = _min([a[2, 1], a[6, 1] + a[3, 2], a[1, 1] + a[3, 2] + a[4, 2]])
    r2 = _min([a[2, 2], a[3, 1] + a[6, 2], a[3, 1] + a[4, 1] + a[1, 2]])
    s = _min([
        a[2, 1] + a[1, 2],
        a[1, 1] + a[2, 2],
        a[3, 1] + a[1, 1] + a[3, 2] + a[7, 2],
        a[3, 1] + a[5, 1] + a[3, 2] + a[5, 2],
        a[3, 1] + a[7, 1] + a[3, 2] + a[1, 2],
    ])
    w1 = _min([
        a[2, 1] + a[1, 1] + a[3, 2] + a[7, 2],
        a[3, 1] + a[1, 1] + a[7, 1] + 2 * a[3, 2] + a[5, 2],
        a[2, 1] + a[1, 1] + a[3, 2] + a[5, 2],
    ])
    w2 = _min([
        a[3, 1] + a[5, 1] + a[2, 2] + a[1, 2],
        a[3, 1] + a[7, 1] + a[2, 2] + a[1, 2],
        2 * a[3, 1] + a[5, 1] + a[3, 2] + a[1, 2] + a[7, 2],
    ])
    return np.maximum(np.stack(np.broadcast_arrays(r1, r2, s, w1, w2), axis=-1), 0.0)


def coding_grid(p: GaussParams, rho_grid: int = INNER_RHO_GRID, mu_grid: int = INNER_MU_GRID) -> np.ndarray:
    """(M, 3) array of (rho, mu1, mu2); rho collapses to {0} when its range is a point."""
    if rho_grid < 2 or mu_grid < 2:
        raise ValueError("grid resolutions must be at least 2")
    top = rho_max(p)
    rhos = np.linspace(0.0, top, rho_grid) if top > 0 else np.zeros(1)
    mus = np.linspace(0.0, 1.0, mu_grid)
    r, m1, m2 = np.meshgrid(rhos, mus, mus, indexing="ij")
    return np.stack([r.ravel(), m1.ravel(), m2.ravel()], axis=1)


def inner_region(p: GaussParams, rho_grid: int = INNER_RHO_GRID, mu_grid: int = INNER_MU_GRID) -> RegionUnion:
    pts = coding_grid(p, rho_grid, mu_grid)
    vals = inner_bound_values(p, pts[:, 0], pts[:, 1], pts[:, 2])
    return RegionUnion(FAMILY_COEFFS.copy(), vals, pts, ("rho", "mu1", "mu2"))


# ------------------------------------------------------------------- S-events

def _event(p: GaussParams, i: int) -> int:
    j = 3 - i
    s, x_ij, x_ji = p.snr(j), p.inr(i, j), p.inr(j, i)
    if s < min(x_ij, x_ji):
        return 1
    if x_ji <= s < x_ij:
        return 2
    if x_ij <= s < x_ji:
        return 3
    if max(x_ij, x_ji) <= s < x_ij * x_ji:
        return 4
    if s >= x_ij * x_ji:
        return 5
    # only reachable when an INR is below one and the orderings overlap
    raise ValueError(f"no event matches user {i} at {p}")


def event_predicates(p: GaussParams, i: int) -> tuple:
    """Truth value of each of the five orderings for user i."""
    j = 3 - i
    s, x_ij, x_ji = p.snr(j), p.inr(i, j), p.inr(j, i)
    return (
        s < min(x_ij, x_ji),
        x_ji <= s < x_ij,
        x_ij <= s < x_ji,
        max(x_ij, x_ji) <= s < x_ij * x_ji,
        s >= x_ij * x_ji,
    )


@dataclass(frozen=True)
class SEventPair:
    l1: int
    l2: int

    def __post_init__(self):
        if (self.l1, self.l2) in ((2, 2), (3, 3)):
            raise ValueError(f"event pair {(self.l1, self.l2)} cannot occur")

    def of(self, i: int) -> int:
        return self.l1 if i == 1 else self.l2


def classify_events(p: GaussParams) -> SEventPair:
    """First matching ordering per user; the orderings are disjoint whenever both INRs are at least 1."""
    return SEventPair(_event(p, 1), _event(p, 2))


# ----------------------------------------------------------------- converse

def _fb_gain(p: GaussParams, i: int, rho):
    """1 + b5_i * fbSNR_i / (b1_i(1) + 1)."""
    return 1 + b5(p, i, rho) * p.fb(i) / (b1(p, i, 1.0) + 1)


def _k6_pieces(p: GaussParams, rho):
    # shared terms of the four sum-rate variants
    t = {}
    cross = b5(p, 1, rho) * p.inr21
    for i in (1, 2):
        t["plain", i] = _half_log(b1(p, i, rho) + cross)
        t["fb", i] = _half_log(_fb_gain(p, i, rho))
        t["inr", i] = _half_log(1 + p.inr(i, 3 - i))
        t["b6", i] = _half_log(b6(p, i, rho) + cross / p.snr(i) * (p.snr(i) + b3(p, i)))
        t["mix", i] = _half_log(1 + b5(p, i, rho) / p.snr(i)
                                * (p.inr(3 - i, i) + b3(p, i) * p.fb(i) / (b1(p, i, 1.0) + 1)))
        t["den", i] = _half_log(1 + cross / p.snr(i))
    return t


def kappa6_variants(p: GaussParams, rho) -> tuple:
    t = _k6_pieces(p, rho)
    k61 = (t["plain", 1] - t["inr", 1] + t["fb", 2] + t["plain", 2] - t["inr", 2] + t["fb", 1] + LOG_2PIE)
    k62 = (t["b6", 2] - t["inr", 1] + t["fb", 1] + t["plain", 1] - t["inr", 2] + t["mix", 2] - t["den", 2]
           + LOG_2PIE)
    k63 = (t["b6", 1] - t["inr", 1] + t["fb", 2] + t["plain", 2] - t["inr", 2] + t["mix", 1] - t["den", 1]
           + LOG_2PIE)
    k64 = (t["b6", 1] - t["inr", 1] - t["inr", 2] + t["mix", 2] - t["den", 2] - t["den", 1] + t["b6", 2]
           + t["mix", 1] + LOG_2PIE)
    return k61, k62, k63, k64


def kappa7_variants(p: GaussParams, i: int, rho) -> tuple:
    j = 3 - i
    rho = np.asarray(rho, dtype=float)
    head = (_half_log(b1(p, i, rho) + 1) - _half_log(1 + p.inr(i, j))
            + _half_log(1 + b4(p, i, rho) + b5(p, j, rho)) - _half_log(1 + b5(p, j, rho)))
    cross = b5(p, i, rho) * p.inr(j, i)
    k1 = head + _half_log(_fb_gain(p, j, rho)) + _half_log(b1(p, j, rho) + cross) + 2 * LOG_2PIE
    k2 = (head
          + _half_log(1 + (1 - rho ** 2) * p.inr(j, i) / p.snr(j)
                      * (p.inr(i, j) + b3(p, j) * p.fb(j) / (b1(p, j, 1.0) + 1)))
          - _half_log(1 + cross / p.snr(j))
          + _half_log(b6(p, j, rho) + cross / p.snr(j) * (p.snr(j) + b3(p, j)))
          + 2 * LOG_2PIE)
    return k1, k2


def _low_group(l: int) -> bool:
    return l in (1, 2, 5)


def kappa_values(p: GaussParams, rho, events: SEventPair | None = None) -> dict:
    """Converse functions at ``rho`` with the sum and weighted variants chosen by the event pair.

    Keys: ("k1", i), ("k2", i), ("k3", i), "k4", "k5", "k6", ("k7", i).
    """
    ev = classify_events(p) if events is None else events
    rho = np.asarray(rho, dtype=float)
    out = {}
    for i in (1, 2):
        j = 3 - i
        out["k1", i] = _half_log(b1(p, i, rho) + 1)
        out["k2", i] = _half_log(1 + b5(p, j, rho)) + _half_log(1 + b4(p, i, rho) / (1 + b5(p, j, rho)))
        out["k3", i] = (_half_log((b4(p, i, rho) + b5(p, j, rho) + 1) * p.fb(j)
                                  / ((b1(p, j, 1.0) + 1) * (b4(p, i, rho) + 1)) + 1)
                        + _half_log(b4(p, i, rho) + 1))
        k71, k72 = kappa7_variants(p, i, rho)
        out["k7", i] = k71 if _low_group(ev.of(i)) else k72
    out["k4"] = _half_log(1 + b4(p, 1, rho) / (1 + b5(p, 2, rho))) + _half_log(b1(p, 2, rho) + 1)
    out["k5"] = _half_log(1 + b4(p, 2, rho) / (1 + b5(p, 1, rho))) + _half_log(b1(p, 1, rho) + 1)
    k6 = kappa6_variants(p, rho)
    idx = {(True, True): 0, (True, False): 1, (False, True): 2, (False, False): 3}
    out["k6"] = k6[idx[_low_group(ev.l2), _low_group(ev.l1)]]
    return out


def outer_bound_values(p: GaussParams, rho, events: SEventPair | None = None) -> np.ndarray:
    k = kappa_values(p, rho, events)
    vals = np.stack(np.broadcast_arrays(
        _min([k["k1", 1], k["k2", 1], k["k3", 1]]),
        _min([k["k1", 2], k["k2", 2], k["k3", 2]]),
        _min([k["k4"], k["k5"], k["k6"]]),
        k["k7", 1],
        k["k7", 2],
    ), axis=-1)
    return np.maximum(vals, 0.0)


def outer_region(p: GaussParams, rho_grid: int = OUTER_RHO_GRID) -> RegionUnion:
    if rho_grid < 2:
        raise ValueError("rho grid needs at least 2 points")
    rhos = np.linspace(0.0, 1.0, rho_grid)
    vals = outer_bound_values(p, rhos)
    return RegionUnion(FAMILY_COEFFS.copy(), vals, rhos[:, None], ("rho",))
