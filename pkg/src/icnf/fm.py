"""Fourier-Motzkin elimination over exact rationals.

A :class:`LinearSystem` row is ``a . x <= b . (1, s_1, ..., s_m)`` where the
right-hand side is an affine form in optional non-negative symbols.  With no
symbols this is the ordinary numeric system.  Because FM pairs rows by the
sign of the eliminated coefficient only, running it once with symbolic
right-hand sides gives a row list valid for every non-negative symbol value.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geometry import ConvexRateRegion, LinearBound, prune_redundant, support_values, vertex_set
from .ld_channel import LdParams
from .ld_region import ThetaVector, ld_capacity_region, capacity_family_array, theta_ld, theta_ld_array

Row = tuple  # (coeffs: tuple[Fraction], rhs: tuple[Fraction])


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def normalize_row(coeffs: Sequence, rhs: Sequence) -> Row:
    """Scale so the coefficients are coprime integers (rhs scaled alike)."""
    coeffs = [Fraction(c) for c in coeffs]
    rhs = [Fraction(r) for r in rhs]
    nz = [c for c in coeffs if c != 0]
    if not nz:
        return tuple(coeffs), tuple(rhs)
    den = functools.reduce(_lcm, (c.denominator for c in nz), 1)
    ints = [int(c * den) for c in coeffs]
    g = functools.reduce(math.gcd, (abs(v) for v in ints if v), 0)
    scale = Fraction(den, g)
    return tuple(Fraction(v, g) for v in ints), tuple(r * scale for r in rhs)


@dataclass(frozen=True)
class LinearSystem:
    """Rows ``a . x <= rhs``; ``history[k]`` is a bitmask of the original rows combined into row k."""

    variables: tuple
    rows: tuple
    symbols: tuple = ()
    history: tuple = None
    eliminated: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        width = 1 + len(self.symbols)
        rows = []
        for a, b in self.rows:
            if len(a) != len(self.variables):
                raise ValueError("coefficient vector does not match the variable list")
            b = tuple(b) if isinstance(b, (tuple, list)) else (b,)
            if len(b) != width:
                raise ValueError("right-hand side does not match the symbol list")
            rows.append((tuple(Fraction(x) for x in a), tuple(Fraction(x) for x in b)))
        object.__setattr__(self, "rows", tuple(rows))
        if self.history is None:
            object.__setattr__(self, "history", tuple(1 << k for k in range(len(rows))))
        elif len(self.history) != len(rows):
            raise ValueError("history does not match the rows")

    def rhs_value(self, rhs: tuple, values: Sequence = ()) -> Fraction:
        return rhs[0] + sum(r * Fraction(v) for r, v in zip(rhs[1:], values))

    def substitute(self, values: Sequence) -> "LinearSystem":
        """Numeric system obtained by fixing the symbols."""
        rows = [(a, (self.rhs_value(b, values),)) for a, b in self.rows]
        return LinearSystem(self.variables, tuple(rows), (), self.history, self.eliminated)

    def feasible_at(self, point: dict, values: Sequence = ()) -> bool:
        x = [Fraction(point[v]) for v in self.variables]
        return all(sum(c * xi for c, xi in zip(a, x)) <= self.rhs_value(b, values) for a, b in self.rows)


def _trivial(a: tuple, b: tuple) -> bool:
    # 0 <= b holds for every non-negative symbol value
    return all(c == 0 for c in a) and b[0] >= 0 and all(r >= 0 for r in b[1:])


def _minimal_rhs(rhs: list) -> list:
    """Indices of right-hand sides not dominated entry-wise by another one (first copy kept)."""
    den = functools.reduce(_lcm, (x.denominator for r in rhs for x in r), 1)
    M = np.array([[int(x * den) for x in r] for r in rhs], dtype=object)
    if max(abs(int(v)) for v in M.ravel()) < 2 ** 62:
        M = M.astype(np.int64)
    order = sorted(range(len(rhs)), key=lambda k: (sum(M[k]), k))
    kept: list = []
    for k in order:
        if kept and (M[kept] <= M[k]).all(axis=1).any():
            continue
        kept.append(k)
    return sorted(kept)


def _dedup(rows: list, hist: list, symbolic: bool) -> tuple:
    """Among rows with the same left side keep only the non-dominated right sides.

    Symbols are non-negative, so an entry-wise smaller right side is tighter.
    """
    by_lhs: dict = {}
    for k, (a, _) in enumerate(rows):
        by_lhs.setdefault(a, []).append(k)
    keep = []
    for a, idx in by_lhs.items():
        rhs = [rows[k][1] for k in idx]
        if symbolic:
            keep += [idx[m] for m in _minimal_rhs(rhs)]
        else:
            keep.append(idx[min(range(len(idx)), key=lambda m: (rhs[m][0], m))])
    keep.sort()
    return [rows[k] for k in keep], [hist[k] for k in keep]


def _history_prune(rows: list, hist: list, eliminated: int) -> tuple:
    """Drop rows whose history is too large or contains another row's history.

    Both tests depend only on which original rows were combined, so they are
    valid whatever values the right-hand sides take.
    """
    sizes = [bin(h).count("1") for h in hist]
    order = sorted((k for k in range(len(hist)) if sizes[k] <= eliminated + 1), key=lambda k: sizes[k])
    kept: list = []
    for k in order:
        h = hist[k]
        if any(hist[m] & h == hist[m] and hist[m] != h for m in kept):
            continue
        kept.append(k)
    kept.sort()
    return [rows[k] for k in kept], [hist[k] for k in kept]


def eliminate(sys: LinearSystem, var: str, prune: bool = True) -> LinearSystem:
    """Remove ``var`` by pairing rows with opposite-sign coefficients."""
    k = sys.variables.index(var)
    pos_rows, neg_rows, out, out_hist = [], [], [], []
    for (a, b), h in zip(sys.rows, sys.history):
        if a[k] > 0:
            pos_rows.append((a, b, h))
        elif a[k] < 0:
            neg_rows.append((a, b, h))
        else:
            out.append((a, b))
            out_hist.append(h)
    for ap, bp, hp in pos_rows:
        for an, bn, hn in neg_rows:
            wp, wn = -an[k], ap[k]  # positive multipliers cancelling x_k
            out.append((tuple(wp * x + wn * y for x, y in zip(ap, an)),
                        tuple(wp * x + wn * y for x, y in zip(bp, bn))))
            out_hist.append(hp | hn)
    variables = sys.variables[:k] + sys.variables[k + 1:]
    rows, hist = [], []
    for (a, b), h in zip(out, out_hist):
        a = a[:k] + a[k + 1:]
        a, b = normalize_row(a, b)
        if _trivial(a, b):
            continue
        rows.append((a, b))
        hist.append(h)
    rows, hist = _dedup(rows, hist, bool(sys.symbols))
    eliminated = sys.eliminated + 1
    if prune:
        rows, hist = _history_prune(rows, hist, eliminated)
    return LinearSystem(variables, tuple(rows), sys.symbols, tuple(hist), eliminated)


def eliminate_all(sys: LinearSystem, order: Sequence[str], prune: bool = True) -> LinearSystem:
    for v in order:
        sys = eliminate(sys, v, prune)
    return sys


# ---------------------------------------------------------- rate-split system

SPLITS = ("R1C1", "R2C1", "R1C2", "R2C2", "R1P", "R2P")
VARIABLES = ("R1", "R2") + SPLITS
ELIMINATION_ORDER = SPLITS
THETA_SYMBOLS = tuple(f"t{l}{i}" for l in range(1, 8) for i in (1, 2))


def _user_rows(i: int):
    """(terms, l) pairs meaning sum(terms) <= theta_{l,i}, as listed in the decoding analysis."""
    j = 3 - i
    Ri, Rj = f"R{i}", f"R{j}"
    iC1, iC2, iP = f"R{i}C1", f"R{i}C2", f"R{i}P"
    jC1, jC2 = f"R{j}C1", f"R{j}C2"
    iC, jC = (iC1, iC2), (jC1, jC2)
    rows = [
        ((jC1,), 1),
        ((Ri,) + jC, 2),
        ((jC2,), 3),
        ((iP,), 4),
        ((iP, jC2), 5),
        ((iC2, iP), 6),
        ((iC2, iP, jC2), 7),
        ((iC2,), 6),
        ((iC2, jC2), 7),
    ]
    # every error event decoded against the full output mutual information
    for terms in [
        (jC1,), jC, (jC1, iP), jC + (iP,), (jC1, iC2), jC + (iC2,), (jC1, iC2, iP), jC + (iC2, iP),
        (iC1,), (iC1, jC2), (iC1, iP), (iC1, iP, jC2), iC, iC + (jC2,), (Ri,), (Ri, jC2),
        (iC1, jC1), (iC1,) + jC, (iC1, jC1, iP), (iC1,) + jC + (iP,), iC + (jC1,), iC + jC,
        (Ri, jC1), (Ri,) + jC,
    ]:
        rows.append((terms, 2))
    return rows


def rate_split_system() -> LinearSystem:
    """The rate-split constraints with theta kept symbolic."""
    nv, ns = len(VARIABLES), len(THETA_SYMBOLS)
    rows = []
    for i in (1, 2):
        for terms, l in _user_rows(i):
            a = [0] * nv
            for t in terms:
                a[VARIABLES.index(t)] += 1
            b = [0] * (1 + ns)
            b[1 + THETA_SYMBOLS.index(f"t{l}{i}")] = 1
            rows.append((tuple(a), tuple(b)))
    zero = (0,) * (1 + ns)
    for s in SPLITS:
        a = [0] * nv
        a[VARIABLES.index(s)] = -1
        rows.append((tuple(a), zero))
    for i in (1, 2):
        a = [0] * nv
        a[VARIABLES.index(f"R{i}")] = 1
        for s in (f"R{i}C1", f"R{i}C2", f"R{i}P"):
            a[VARIABLES.index(s)] = -1
        rows.append((tuple(a), zero))
        rows.append((tuple(-x for x in a), zero))
    return LinearSystem(VARIABLES, tuple(rows), THETA_SYMBOLS)


@functools.lru_cache(maxsize=4)
def symbolic_projection(order: tuple = ELIMINATION_ORDER) -> LinearSystem:
    """Rate-split system projected onto (R1, R2) once, right-hand sides still symbolic."""
    return eliminate_all(rate_split_system(), order)


def _as_fraction(x) -> Fraction:
    # floats convert through their exact binary value
    return Fraction(x)


def _system_to_region(rows, exact: bool = True) -> ConvexRateRegion:
    """Turn projected (R1, R2) rows into a region; sign rows become the quadrant."""
    bounds = []
    infeasible = False
    for (c1, c2), v in rows:
        if c1 <= 0 and c2 <= 0:
            if v < 0:
                infeasible = True
            continue
        if c1 < 0 or c2 < 0:
            raise ValueError(f"projection produced a mixed-sign row {(c1, c2)}")
        bounds.append(LinearBound(int(c1), int(c2), v))
    if infeasible:
        bounds = [LinearBound(1, 0, Fraction(-1)), LinearBound(0, 1, Fraction(-1))]
    return ConvexRateRegion(tuple(bounds), exact=exact)


def projected_rows(theta: ThetaVector, symbolic: bool = True, order: Sequence[str] = ELIMINATION_ORDER) -> list:
    """(R1, R2) rows of the projection at one theta, before redundancy removal."""
    vals = [_as_fraction(x) for x in theta.flat()]
    if any(v < 0 for v in vals):
        raise ValueError("theta entries must be non-negative")
    if symbolic:
        proj = symbolic_projection(tuple(order))
        return [(a, proj.rhs_value(b, vals)) for a, b in proj.rows]
    numeric = rate_split_system().substitute(vals)
    proj = eliminate_all(numeric, order)
    return [(a, b[0]) for a, b in proj.rows]


def project_rate_region(theta: ThetaVector, symbolic: bool = True,
                        order: Sequence[str] = ELIMINATION_ORDER) -> ConvexRateRegion:
    """Exact projection of the rate-split system onto (R1, R2), redundant rows removed."""
    reg = _system_to_region(projected_rows(theta, symbolic, order))
    if not reg.bounds:
        return reg
    return prune_redundant(reg)


def closed_form_values(theta: ThetaVector) -> dict:
    t = theta
    r1 = min(t(2, 1), t(6, 1) + t(1, 2), t(4, 1) + t(1, 2) + t(3, 2))
    r2 = min(t(2, 2), t(1, 1) + t(6, 2), t(1, 1) + t(3, 1) + t(4, 2))
    s = min(
        t(2, 1) + t(4, 2), t(2, 1) + t(6, 2), t(4, 1) + t(2, 2), t(6, 1) + t(2, 2),
        t(1, 1) + t(3, 1) + t(4, 1) + t(1, 2) + t(5, 2),
        t(1, 1) + t(7, 1) + t(1, 2) + t(5, 2),
        t(1, 1) + t(4, 1) + t(1, 2) + t(7, 2),
        t(1, 1) + t(5, 1) + t(1, 2) + t(3, 2) + t(4, 2),
        t(1, 1) + t(5, 1) + t(1, 2) + t(5, 2),
        t(1, 1) + t(7, 1) + t(1, 2) + t(4, 2),
    )
    w1 = min(
        t(2, 1) + t(4, 1) + t(1, 2) + t(7, 2),
        t(1, 1) + t(4, 1) + t(7, 1) + 2 * t(1, 2) + t(5, 2),
        t(2, 1) + t(4, 1) + t(1, 2) + t(5, 2),
    )
    w2 = min(
        t(1, 1) + t(5, 1) + t(2, 2) + t(4, 2),
        t(1, 1) + t(7, 1) + t(2, 2) + t(4, 2),
        2 * t(1, 1) + t(5, 1) + t(1, 2) + t(4, 2) + t(7, 2),
    )
    return {(1, 0): r1, (0, 1): r2, (1, 1): s, (2, 1): w1, (1, 2): w2}


def closed_form_region(theta: ThetaVector) -> ConvexRateRegion:
    vals = closed_form_values(theta.map(_as_fraction))
    return ConvexRateRegion(tuple(LinearBound(c1, c2, v) for (c1, c2), v in vals.items()), exact=True)


def simplified_sum_rate(theta: ThetaVector):
    t = theta
    return min(t(2, 1) + t(4, 2), t(4, 1) + t(2, 2), t(1, 1) + t(5, 1) + t(1, 2) + t(5, 2))


def full_sum_rate(theta: ThetaVector):
    return closed_form_values(theta)[(1, 1)]


# ------------------------------------------------------------ grid sweeps

def projection_matrix(order: tuple = ELIMINATION_ORDER):
    """Projected rows as arrays: lhs (r, 2), rhs (r, 15) over (1, theta flat)."""
    proj = symbolic_projection(order)
    lhs = np.array([[int(c) for c in a] for a, _ in proj.rows], dtype=np.int64)
    rhs = np.array([[b for b in bb] for _, bb in proj.rows], dtype=object)
    if all(x.denominator == 1 for x in rhs.ravel()):
        rhs = rhs.astype(np.int64)
    return lhs, rhs


_LD_FAMILIES = np.array([[1, 0], [0, 1], [1, 1], [2, 1], [1, 2]], dtype=np.int64)


@functools.lru_cache(maxsize=None)
def _integer_projection():
    """Projected rows scaled to integer right-hand sides: lhs, rhs, scale."""
    lhs, rhs = projection_matrix()
    scale = np.array([functools.reduce(_lcm, (Fraction(x).denominator for x in row), 1) for row in rhs],
                     dtype=np.int64)
    rhs_int = np.array([[int(Fraction(x) * s) for x in row] for row, s in zip(rhs, scale)], dtype=np.int64)
    return lhs, rhs_int, scale


def ld_projection_agrees(params: np.ndarray, chunk: int = 20000) -> np.ndarray:
    """Per parameter row, whether the FM projection of theta_ld equals the LD capacity region.

    A vectorized two-sided inclusion test settles most rows; any row it
    cannot confirm is compared exactly through vertex sets.
    """
    P = np.atleast_2d(np.asarray(params, dtype=np.int64))
    lhs, rhs, scale = _integer_projection()
    dirs, inverse = np.unique(lhs, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    fam_rows = [np.flatnonzero((lhs == f).all(axis=1)) for f in _LD_FAMILIES]
    ok = np.zeros(len(P), dtype=bool)
    for start in range(0, len(P), chunk):
        sl = slice(start, start + chunk)
        theta = theta_ld_array(P[sl])
        vals = rhs[:, 0][None, :] + theta @ rhs[:, 1:].T  # scaled row values (n, rows)
        fam = capacity_family_array(P[sl])
        # capacity region inside the projection: its support never exceeds a projected row
        sup = support_values(_LD_FAMILIES.astype(float), fam.astype(float), dirs)[:, inverse]
        inner = (sup * scale[None, :] <= vals + 1e-7).all(axis=1)
        # projection inside the capacity region: each family is matched by a projected row
        outer = np.ones(len(fam), dtype=bool)
        for k, rows in enumerate(fam_rows):
            if len(rows) == 0:
                outer[:] = False
                break
            outer &= (vals[:, rows] <= fam[:, [k]] * scale[rows][None, :]).any(axis=1)
        ok[sl] = inner & outer
    for idx in np.flatnonzero(~ok):
        p = LdParams(*(int(x) for x in P[idx]))
        ok[idx] = vertex_set(project_rate_region(theta_ld(p))) == vertex_set(ld_capacity_region(p))
    return ok


def ld_grid(grid_max: int) -> np.ndarray:
    """All parameter rows with every entry in 0..grid_max."""
    axes = [np.arange(grid_max + 1)] * 6
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 6)
