"""Binary linear deterministic interference channel with noisy output feedback.

Bit-vectors are numpy uint8 arrays of length q stored most-significant
first: index 0 is the top level, index q-1 the level closest to the noise.
The lower shift S moves every entry one level down, so ``S^s x`` places
input bit k at output position k + s and discards anything pushed past q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True)
class LdParams:
    """Bit-pipe counts. ``n12`` is the cross link from transmitter 2 to receiver 1."""

    n11_fwd: int
    n22_fwd: int
    n12: int
    n21: int
    n11_fb: int = 0
    n22_fb: int = 0

    def __post_init__(self):
        for name in ("n11_fwd", "n22_fwd", "n12", "n21", "n11_fb", "n22_fb"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def q(self) -> int:
        return max(self.n11_fwd, self.n22_fwd, self.n12, self.n21)

    def as_tuple(self) -> tuple:
        return (self.n11_fwd, self.n22_fwd, self.n12, self.n21, self.n11_fb, self.n22_fb)

    def direct(self, i: int) -> int:
        return self.n11_fwd if i == 1 else self.n22_fwd

    def cross(self, i: int, j: int) -> int:
        """Pipes from transmitter j to receiver i."""
        return {(1, 2): self.n12, (2, 1): self.n21}[(i, j)]

    def fb(self, i: int) -> int:
        return self.n11_fb if i == 1 else self.n22_fb

    def swapped(self) -> "LdParams":
        return LdParams(self.n22_fwd, self.n11_fwd, self.n21, self.n12, self.n22_fb, self.n11_fb)


def _other(i: int) -> int:
    if i not in (1, 2):
        raise ValueError("user index must be 1 or 2")
    return 3 - i


def shift(x: np.ndarray, s: int) -> np.ndarray:
    """Apply S^s: move bits s levels toward the noise floor."""
    q = len(x)
    out = np.zeros(q, dtype=np.uint8)
    if s < q:
        out[s:] = x[: q - s]
    return out


def _check(x, q: int, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (q,):
        raise ValueError(f"{name} must have length q={q}, got shape {x.shape}")
    return x & 1


def ld_output(p: LdParams, x1, x2, i: int) -> np.ndarray:
    """Channel output at receiver i for inputs x1, x2."""
    j = _other(i)
    q = p.q
    xs = {1: _check(x1, q, "x1"), 2: _check(x2, q, "x2")}
    return shift(xs[i], q - p.direct(i)) ^ shift(xs[j], q - p.cross(i, j))


def feedback_len(p: LdParams, i: int) -> int:
    return min(p.fb(i), max(p.direct(i), p.cross(i, _other(i))))


def ld_feedback(p: LdParams, y_prev, i: int) -> np.ndarray:
    """Signal at transmitter i: the least significant bits of the shifted output."""
    j = _other(i)
    y = _check(y_prev, p.q, "y_prev")
    active = max(p.direct(i), p.cross(i, j))
    shifted = shift(y, pos(active - p.fb(i)))
    n = feedback_len(p, i)
    return shifted[len(shifted) - n:].copy() if n else np.zeros(0, dtype=np.uint8)


@dataclass(frozen=True)
class LdSignalDims:
    dim_C: int
    dim_P: int
    dim_D: int
    dim_DF: int
    dim_DG: int
    dim_CF: int
    dim_CG: int
    dim_U: int
    dim_fbY: int
    dim_gY: int
    q1: int
    q2: int
    q3: int


def user_dims(p: LdParams, i: int) -> LdSignalDims:
    j = _other(i)
    nii, njj = p.direct(i), p.direct(j)
    nij, nji = p.cross(i, j), p.cross(j, i)
    fii, fjj = p.fb(i), p.fb(j)

    c = min(nii, nji)
    pp = pos(nii - nji)
    d = pos(nji - nii)
    df = min(pos(nji - nii), pos(fjj - nii - min(pos(njj - nji), nij) - pos(pos(njj - nij) - nji)))
    cf_df = pos(min(fjj, max(njj, nji)) - pos(njj - nji))
    cf = cf_df - df
    u = min(njj, nij) - min(pos(njj - nji), nij) + pos(nji - njj)
    fb_y = min(fii, max(nii, nij))
    g_y = pos(max(nii, nij) - fii)
    hidden = pos(max(njj, nji) - fjj)
    return LdSignalDims(
        dim_C=c, dim_P=pp, dim_D=d,
        dim_DF=df, dim_DG=d - df,
        dim_CF=cf, dim_CG=c - cf,
        dim_U=u, dim_fbY=fb_y, dim_gY=g_y,
        q1=pos(nji - hidden), q2=min(nji, hidden), q3=pos(nii - nji),
    )


def signal_dims(p: LdParams) -> tuple:
    return user_dims(p, 1), user_dims(p, 2)


# ------------------------------------------------------------- influence maps

def influence(p: LdParams, i: int, k: int) -> dict:
    """Output and feedback coordinates changed by flipping bit k of x_i alone.

    The channel is linear over GF(2), so flipping one bit from the all-zero
    input isolates its footprint.
    """
    q = p.q
    x = {1: np.zeros(q, dtype=np.uint8), 2: np.zeros(q, dtype=np.uint8)}
    x[i][k] = 1
    out = {}
    for r in (1, 2):
        y = ld_output(p, x[1], x[2], r)
        out[("y", r)] = frozenset(np.flatnonzero(y).tolist())
        out[("fb", r)] = frozenset(np.flatnonzero(ld_feedback(p, y, r)).tolist())
    return out


def influence_map(p: LdParams) -> str:
    """Aligned text table: for every input level, where it lands at each receiver."""
    q = p.q
    lines = [f"q={q}  n11={p.n11_fwd} n22={p.n22_fwd} n12={p.n12} n21={p.n21} "
             f"fb11={p.n11_fb} fb22={p.n22_fb}",
             f"{'input':>8} {'->Y1':>6} {'->Y2':>6} {'->FB1':>6} {'->FB2':>6}"]
    for i in (1, 2):
        for k in range(q):
            inf = influence(p, i, k)
            cells = []
            for key in (("y", 1), ("y", 2), ("fb", 1), ("fb", 2)):
                s = inf[key]
                cells.append(str(min(s) + 1) if s else "-")
            lines.append(f"{f'x{i}[{k + 1}]':>8} " + " ".join(f"{c:>6}" for c in cells))
    return "\n".join(lines)


def simulated_dims(p: LdParams, i: int) -> dict:
    """Signal-part sizes of x_i counted from single-bit influence footprints."""
    j = _other(i)
    q = p.q
    own = [influence(p, i, k) for k in range(q)]
    # levels at receiver j carrying x_j bits that never reach receiver i
    private_j = set()
    for k in range(q):
        f = influence(p, j, k)
        if f[("y", j)] and not f[("y", i)]:
            private_j |= f[("y", j)]
    c = pp = d = cf = df = u = 0
    for f in own:
        at_i, at_j, fed_back = bool(f[("y", i)]), bool(f[("y", j)]), bool(f[("fb", j)])
        if at_i and at_j:
            c += 1
            cf += fed_back
        elif at_i:
            pp += 1
        elif at_j:
            d += 1
            df += fed_back
        if at_j and not (f[("y", j)] & private_j):
            u += 1
    return {"dim_C": c, "dim_P": pp, "dim_D": d, "dim_CF": cf, "dim_DF": df, "dim_U": u}
