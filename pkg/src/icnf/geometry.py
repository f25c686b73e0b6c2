"""Two-dimensional rate-polytope primitives.

A region is the set of non-negative pairs (R1, R2) satisfying a list of
constraints ``c1*R1 + c2*R2 <= v``.  Regions built from integer data use
exact :class:`fractions.Fraction` arithmetic; regions built from logarithms
use floats with a small slack.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, Fraction, float]

FAMILIES = frozenset({(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)})

STRUCT_EPS = 1e-9
GEOM_EPS = 1e-6
DEFAULT_RAYS = 256


class UnboundedRegionError(ValueError):
    pass


@dataclass(frozen=True)
class RatePair:
    r1: Number
    r2: Number

    def __post_init__(self):
        for v in (self.r1, self.r2):
            if not math.isfinite(float(v)) or v < 0:
                raise ValueError(f"rates must be finite and non-negative, got {v!r}")

    def __iter__(self):
        yield self.r1
        yield self.r2


@dataclass(frozen=True)
class LinearBound:
    """``c1*R1 + c2*R2 <= v``."""

    c1: int
    c2: int
    v: Number

    def __post_init__(self):
        # FAMILIES lists the shapes final regions use; intermediate projections may carry others
        if self.c1 < 0 or self.c2 < 0 or (self.c1 == 0 and self.c2 == 0):
            raise ValueError(f"bound coefficients must be non-negative and not both zero, got {(self.c1, self.c2)}")

    @property
    def family(self) -> tuple:
        return (self.c1, self.c2)

    def slack(self, r1, r2):
        return self.v - (self.c1 * r1 + self.c2 * r2)


@dataclass(frozen=True)
class ConvexRateRegion:
    bounds: tuple
    exact: bool = True
    eps: float = STRUCT_EPS

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    def value(self, c1: int, c2: int):
        """Tightest value among bounds of one family, or None."""
        vals = [b.v for b in self.bounds if (b.c1, b.c2) == (c1, c2)]
        return min(vals) if vals else None

    def family_values(self) -> dict:
        out = {}
        for b in self.bounds:
            key = (b.c1, b.c2)
            out[key] = b.v if key not in out else min(out[key], b.v)
        return out

    def arrays(self):
        c = np.array([(b.c1, b.c2) for b in self.bounds], dtype=float).reshape(-1, 2)
        v = np.array([float(b.v) for b in self.bounds], dtype=float)
        return c, v


def region(bounds: Iterable[tuple], exact: bool = True, eps: float = STRUCT_EPS) -> ConvexRateRegion:
    """Build a region from ``(c1, c2, v)`` triples."""
    conv = Fraction if exact else float
    return ConvexRateRegion(tuple(LinearBound(c1, c2, conv(v)) for c1, c2, v in bounds), exact, eps)


@dataclass(frozen=True)
class RegionUnion:
    """Union of convex regions sharing one list of bound families.

    ``values[m, k]`` is the right-hand side of family ``coeffs[k]`` for
    member ``m``; ``params[m]`` is the parameter tuple that produced it.
    """

    coeffs: np.ndarray
    values: np.ndarray
    params: np.ndarray
    param_names: tuple = ()
    eps: float = STRUCT_EPS
    exact: bool = field(default=False)

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[0] == 0:
            raise ValueError("a union needs at least one member")
        if self.values.shape[1] != self.coeffs.shape[0]:
            raise ValueError("values and coeffs disagree on the number of bounds")

    def __len__(self):
        return self.values.shape[0]

    @property
    def mode(self) -> str:
        return "float"

    def member(self, m: int) -> ConvexRateRegion:
        return ConvexRateRegion(
            tuple(LinearBound(int(c1), int(c2), float(v)) for (c1, c2), v in zip(self.coeffs, self.values[m])),
            exact=False,
            eps=self.eps,
        )

    @property
    def members(self):
        return [(tuple(self.params[m]), self.member(m)) for m in range(len(self))]

    @classmethod
    def from_members(cls, members: Sequence[tuple], param_names=()) -> "RegionUnion":
        if not members:
            raise ValueError("a union needs at least one member")
        modes = {r.exact for _, r in members}
        if len(modes) != 1:
            raise ValueError("members must share an arithmetic mode")
        fams = sorted({(b.c1, b.c2) for _, r in members for b in r.bounds})
        vals = np.full((len(members), len(fams)), np.inf)
        for m, (_, r) in enumerate(members):
            for k, fam in enumerate(fams):
                v = r.value(*fam)
                if v is not None:
                    vals[m, k] = float(v)
        params = np.array([tuple(p) for p, _ in members], dtype=float)
        if params.ndim == 1:
            params = params.reshape(len(members), -1)
        return cls(np.array(fams, dtype=float), vals, params, tuple(param_names), members[0][1].eps)


AnyRegion = Union[ConvexRateRegion, RegionUnion]


# ---------------------------------------------------------------- membership

def contains(reg: AnyRegion, p, tol: float | None = None) -> bool:
    r1, r2 = p
    if r1 < 0 or r2 < 0:
        return False
    if isinstance(reg, RegionUnion):
        return bool(contains_many(reg, np.array([[float(r1), float(r2)]]), tol)[0])
    if reg.exact and tol is None:
        return all(b.slack(r1, r2) >= 0 for b in reg.bounds)
    eps = reg.eps if tol is None else tol
    return all(float(b.slack(r1, r2)) >= -eps for b in reg.bounds)


def contains_many(reg: AnyRegion, pts: np.ndarray, tol: float | None = None, chunk: int = 4096) -> np.ndarray:
    """Vectorized float membership for an (n, 2) array of points."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    eps = reg.eps if tol is None else tol
    ok_quadrant = (pts >= -eps).all(axis=1)
    if isinstance(reg, ConvexRateRegion):
        c, v = reg.arrays()
        if len(v) == 0:
            return ok_quadrant
        return ok_quadrant & ((pts @ c.T) <= v + eps).all(axis=1)
    out = np.zeros(len(pts), dtype=bool)
    lhs = pts @ reg.coeffs.T  # (n, K)
    vals = reg.values
    for s in range(0, len(vals), chunk):
        block = vals[s:s + chunk]  # (m, K)
        ok = (lhs[:, None, :] <= block[None, :, :] + eps).all(axis=2).any(axis=1)
        out |= ok
        if out.all():
            break
    return out & ok_quadrant


# ------------------------------------------------------------------ vertices

def _lines(reg: ConvexRateRegion):
    # each line a*R1 + b*R2 = c; the two axes come first
    zero = Fraction(0) if reg.exact else 0.0
    lines = [(1, 0, zero), (0, 1, zero)]
    lines += [(b.c1, b.c2, b.v) for b in reg.bounds]
    return lines


def _feasible(reg: ConvexRateRegion, r1, r2) -> bool:
    if reg.exact:
        return r1 >= 0 and r2 >= 0 and all(b.slack(r1, r2) >= 0 for b in reg.bounds)
    eps = reg.eps
    return r1 >= -eps and r2 >= -eps and all(b.slack(r1, r2) >= -eps for b in reg.bounds)


def _ccw_key(a, b):
    # counterclockwise around the origin starting on the R1 axis; origin last
    a_zero = a[0] == 0 and a[1] == 0
    b_zero = b[0] == 0 and b[1] == 0
    if a_zero or b_zero:
        return int(a_zero) - int(b_zero)
    cross = a[0] * b[1] - a[1] * b[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return -1 if a[0] ** 2 + a[1] ** 2 > b[0] ** 2 + b[1] ** 2 else 1


def vertices(reg: ConvexRateRegion) -> list:
    if not _feasible(reg, 0, 0):
        # every region here is downward closed, so an infeasible origin means empty
        return []
    fams = {(b.c1, b.c2) for b in reg.bounds}
    if (1, 0) not in fams or (0, 1) not in fams:
        raise UnboundedRegionError("region needs both an R1 and an R2 bound to be bounded")
    lines = _lines(reg)
    pts = []
    for i in range(len(lines)):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, len(lines)):
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            if reg.exact:
                x = Fraction(c1 * b2 - c2 * b1) / det
                y = Fraction(a1 * c2 - a2 * c1) / det
            else:
                x = (c1 * b2 - c2 * b1) / det
                y = (a1 * c2 - a2 * c1) / det
            if _feasible(reg, x, y):
                pts.append((x, y))
    uniq = []
    for x, y in pts:
        if not reg.exact:
            x, y = max(x, 0.0), max(y, 0.0)
        if reg.exact:
            dup = (x, y) in uniq
        else:
            dup = any(abs(x - u) <= reg.eps and abs(y - w) <= reg.eps for u, w in uniq)
        if not dup:
            uniq.append((x, y))
    uniq.sort(key=functools.cmp_to_key(_ccw_key))
    return [RatePair(x, y) for x, y in uniq]


def vertex_set(reg: ConvexRateRegion) -> frozenset:
    return frozenset((v.r1, v.r2) for v in vertices(reg))


def merge_families(reg: ConvexRateRegion) -> ConvexRateRegion:
    """Keep only the tightest bound of each coefficient family."""
    vals = reg.family_values()
    return ConvexRateRegion(tuple(LinearBound(c1, c2, v) for (c1, c2), v in vals.items()), reg.exact, reg.eps)


def _on_line(b: LinearBound, p: RatePair, exact: bool, eps: float) -> bool:
    s = b.slack(p.r1, p.r2)
    return s == 0 if exact else abs(s) <= eps


def prune_redundant(reg: ConvexRateRegion) -> ConvexRateRegion:
    """Drop bounds whose removal leaves the vertex set unchanged."""
    reg = merge_families(reg)
    verts = vertices(reg)
    if len(verts) >= 3:
        # full-dimensional polygon: a bound matters iff its line carries an edge
        # single-rate bounds always stay so the region keeps reading as bounded
        kept = [b for b in reg.bounds
                if b.family in ((1, 0), (0, 1)) or sum(_on_line(b, v, reg.exact, reg.eps) for v in verts) >= 2]
        return ConvexRateRegion(tuple(kept), reg.exact, reg.eps)
    target = frozenset((v.r1, v.r2) for v in verts)
    kept = list(reg.bounds)
    for b in list(reg.bounds):
        if b.family in ((1, 0), (0, 1)):
            continue
        trial = [x for x in kept if x is not b]
        cand = ConvexRateRegion(tuple(trial), reg.exact, reg.eps)
        try:
            if vertex_set(cand) == target:
                kept = trial
        except UnboundedRegionError:
            pass
    return ConvexRateRegion(tuple(kept), reg.exact, reg.eps)


# ------------------------------------------------------------ ray geometry

def _as_direction(direction, exact: bool):
    d1, d2 = direction
    if d1 < 0 or d2 < 0 or (d1 == 0 and d2 == 0):
        raise ValueError("direction must be a non-zero vector in the first quadrant")
    if exact:
        return Fraction(d1), Fraction(d2)
    return float(d1), float(d2)


def ray_extent(reg: AnyRegion, direction) -> float | Fraction:
    """Largest t with t*direction in the region (closed form for polytopes)."""
    if isinstance(reg, RegionUnion):
        d = np.asarray(direction, dtype=float)
        proj = reg.coeffs @ d
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(proj > 0, reg.values / proj, np.inf)
        t = np.where(reg.values < 0, -np.inf, t)
        return float(t.min(axis=1).max())
    d1, d2 = _as_direction(direction, reg.exact)
    best = None
    for b in reg.bounds:
        if b.v < 0:
            return None
        proj = b.c1 * d1 + b.c2 * d2
        if proj > 0:
            t = b.v / proj
            best = t if best is None else min(best, t)
    if best is None:
        raise UnboundedRegionError("region is unbounded along the requested direction")
    return best


def ray_extents(reg: RegionUnion, directions, chunk: int = 4096) -> np.ndarray:
    """Vectorized ray extent of a union for each row of ``directions``."""
    dirs = np.asarray(directions, dtype=float).reshape(-1, 2)
    proj = dirs @ reg.coeffs.T  # (ndir, K)
    best = np.full(len(dirs), -np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        for s in range(0, len(reg.values), chunk):
            v = reg.values[s:s + chunk]
            t = np.where(proj[None] > 0, v[:, None, :] / proj[None], np.inf).min(axis=2)
            t = np.where((v < 0).any(axis=1)[:, None], -np.inf, t)
            best = np.maximum(best, t.max(axis=0))
    return best


def boundary_point(reg: AnyRegion, direction) -> RatePair:
    """Farthest feasible point from the origin along ``direction``."""
    t = ray_extent(reg, direction)
    if t is None or t < 0:
        raise ValueError("region is empty")
    if isinstance(reg, RegionUnion) or not reg.exact:
        d1, d2 = (float(x) for x in direction)
        return RatePair(max(t * d1, 0.0), max(t * d2, 0.0))
    d1, d2 = _as_direction(direction, True)
    return RatePair(t * d1, t * d2)


def ray_directions(n_rays: int = DEFAULT_RAYS) -> np.ndarray:
    ang = np.linspace(0.0, np.pi / 2, n_rays)
    d = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    d[0] = (1.0, 0.0)
    d[-1] = (0.0, 1.0)
    return d


def boundary_samples(reg: AnyRegion, n_rays: int = DEFAULT_RAYS) -> np.ndarray:
    """Ray boundary points of every member plus its exact corners, as (n, 2)."""
    dirs = ray_directions(n_rays)
    if isinstance(reg, ConvexRateRegion):
        c, v = reg.arrays()
        c, v = c[None], v[None]
    else:
        c, v = reg.coeffs[None], reg.values
    proj = dirs @ c[0].T  # (rays, K)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(proj[None] > 0, v[:, None, :] / proj[None], np.inf).min(axis=2)  # (m, rays)
    t = np.where((v < 0).any(axis=1)[:, None], np.nan, t)
    pts = (t[:, :, None] * dirs[None]).reshape(-1, 2)
    corners = _corner_samples(c[0], v)
    pts = np.vstack([pts, corners])
    return pts[np.isfinite(pts).all(axis=1)]


def _corner_samples(c: np.ndarray, v: np.ndarray) -> np.ndarray:
    # pairwise intersections of every member's bound lines, filtered for feasibility
    lines_c = np.vstack([[1.0, 0.0], [0.0, 1.0], c])
    out = []
    K = len(lines_c)
    vv = np.hstack([np.zeros((len(v), 2)), v])
    for i in range(K):
        for j in range(i + 1, K):
            a = np.array([lines_c[i], lines_c[j]])
            det = np.linalg.det(a)
            if abs(det) < 1e-12:
                continue
            sol = np.linalg.solve(a, vv[:, [i, j]].T).T  # (m, 2)
            ok = (sol >= -STRUCT_EPS).all(axis=1) & ((sol @ c.T) <= v + 1e-9 * (1 + np.abs(v))).all(axis=1)
            out.append(np.clip(sol[ok], 0.0, None))
    return np.vstack(out) if out else np.zeros((0, 2))


def member_corners(reg: AnyRegion) -> np.ndarray:
    """Vertices of every member polygon stacked as (n, 2)."""
    if isinstance(reg, ConvexRateRegion):
        c, v = reg.arrays()
        return _corner_samples(c, v[None])
    return _corner_samples(reg.coeffs, reg.values)


def support_values(coeffs: np.ndarray, values: np.ndarray, directions) -> np.ndarray:
    """max d.x over each member polytope, shape (members, directions).

    ``values`` is (m, K) against ``coeffs`` (K, 2); the optimum sits on a
    corner, so every feasible pairwise line intersection is scored.
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    dirs = np.asarray(directions, dtype=float).reshape(-1, 2)
    lines = np.vstack([[1.0, 0.0], [0.0, 1.0], coeffs])
    rhs = np.hstack([np.zeros((len(values), 2)), values])
    best = np.full((len(values), len(dirs)), -np.inf)
    slack = 1e-9 * (1 + np.abs(values))
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a = lines[[i, j]]
            if abs(np.linalg.det(a)) < 1e-12:
                continue
            x = np.linalg.solve(a, rhs[:, [i, j]].T).T
            ok = (x >= -STRUCT_EPS).all(axis=1) & ((x @ coeffs.T) <= values + slack).all(axis=1)
            best = np.maximum(best, np.where(ok[:, None], x @ dirs.T, -np.inf))
    return best


def pareto_front(pts: np.ndarray) -> np.ndarray:
    """Points not weakly dominated by another point."""
    if len(pts) == 0:
        return pts
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    best = -np.inf
    keep = []
    for k in order:
        if pts[k, 1] > best:
            keep.append(k)
            best = pts[k, 1]
    return pts[keep]


def within_units(inner: AnyRegion, outer: AnyRegion, xi: float, n_rays: int = DEFAULT_RAYS,
                 tol: float = GEOM_EPS) -> bool:
    """Shifted-membership test: ((t1-xi)^+, (t2-xi)^+) in inner for sampled t in outer.

    All regions here are downward closed, so only the Pareto front of the
    sampled outer boundary needs checking.
    """
    if xi < 0:
        raise ValueError("xi must be non-negative")
    pts = pareto_front(boundary_samples(outer, n_rays))
    shifted = np.clip(pts - xi, 0.0, None)
    return bool(contains_many(inner, shifted, tol).all())


# ------------------------------------------------------------ serialization

def _fmt_value(v) -> str | float:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return f"{v}/1"
    return float(v)


def _parse_value(v, exact: bool):
    if exact:
        return Fraction(v)
    return float(v)


def to_json(reg: ConvexRateRegion) -> str:
    return json.dumps(
        {"mode": reg.mode, "bounds": [{"c1": b.c1, "c2": b.c2, "v": _fmt_value(b.v)} for b in reg.bounds]},
        indent=2,
    )


def from_json(text: str) -> ConvexRateRegion:
    doc = json.loads(text)
    exact = doc["mode"] == "exact"
    return region([(b["c1"], b["c2"], _parse_value(b["v"], exact)) for b in doc["bounds"]], exact=exact)


def fmt_num(v) -> str:
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (Fraction, int)):
        return str(int(v))
    return f"{float(v):.9g}"


def vertices_csv(reg: ConvexRateRegion) -> str:
    lines = ["r1,r2"]
    lines += [f"{fmt_num(p.r1)},{fmt_num(p.r2)}" for p in vertices(reg)]
    return "\n".join(lines) + "\n"
