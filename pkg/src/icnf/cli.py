"""Command-line front end: ``icnf <subcommand> ...``.

Exit status is 0 on success, 2 on invalid input and 1 on an internal failure
(including a failed check in ``fm-check`` or ``selfcheck``).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from .fm import ld_grid, ld_projection_agrees
from .gap import delta, parse_range, symmetric_gap_surface
from .gaussian import INNER_MU_GRID, INNER_RHO_GRID, OUTER_RHO_GRID, GaussParams, inner_region, outer_region, rho_max
from .gdof import gdof_curves
from .geometry import boundary_point, fmt_num, ray_directions, ray_extent, to_json, vertices, vertices_csv
from .ld_channel import LdParams, influence_map
from .ld_region import ld_capacity_region


class InputError(ValueError):
    pass


def _num(x) -> str:
    return f"{float(x):.9g}"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from e


def _threads(args) -> int | None:
    t = getattr(args, "threads", None)
    if t is not None and t < 1:
        raise InputError("--threads must be at least 1")
    return t


def _range(spec: str, name: str) -> np.ndarray:
    try:
        vals = parse_range(spec)
    except ValueError as e:
        raise InputError(f"--{name}: {e}") from e
    if len(vals) == 0:
        raise InputError(f"--{name} is empty")
    if (vals < 0).any():
        raise InputError(f"--{name} values must be non-negative")
    return vals


# ---------------------------------------------------------------- LD

def _add_ld(p):
    for name in ("n11", "n22", "n12", "n21"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--fb11", type=int, default=0)
    p.add_argument("--fb22", type=int, default=0)


def _ld_params(args) -> LdParams:
    return LdParams(args.n11, args.n22, args.n12, args.n21, args.fb11, args.fb22)


def cmd_ld_region(args) -> int:
    reg = ld_capacity_region(_ld_params(args))
    for b in reg.bounds:
        print(f"{b.c1}*R1 + {b.c2}*R2 <= {fmt_num(b.v)}")
    print("vertices: " + " ".join(f"({fmt_num(v.r1)},{fmt_num(v.r2)})" for v in vertices(reg)))
    if args.vertices:
        _write(args.vertices, vertices_csv(reg))
    if args.json:
        _write(args.json, to_json(reg) + "\n")
    return 0


def cmd_ld_trace(args) -> int:
    print(influence_map(_ld_params(args)))
    return 0


def cmd_fm_check(args) -> int:
    if args.samples is not None:
        if args.samples < 1:
            raise InputError("--samples must be positive")
        rng = np.random.default_rng(args.seed)
        params = rng.integers(0, args.max_value + 1, size=(args.samples, 6))
    else:
        if args.grid_max < 0:
            raise InputError("--grid-max must be non-negative")
        params = ld_grid(args.grid_max)
    ok = ld_projection_agrees(params)
    print(f"passed {int(ok.sum())}/{len(ok)}")
    for row in params[~ok][:10]:
        print("mismatch: " + ",".join(str(int(x)) for x in row))
    return 0 if ok.all() else 1


# ---------------------------------------------------------------- Gaussian

GAUSS_FLAGS = (("snr1", "snr1_fwd"), ("snr2", "snr2_fwd"), ("inr12", "inr12"), ("inr21", "inr21"),
               ("fb1", "snr1_fb"), ("fb2", "snr2_fb"))


def _add_gauss(p, required: bool = True):
    for flag, _ in GAUSS_FLAGS:
        fb = flag.startswith("fb")
        p.add_argument(f"--{flag}-db", dest=flag, type=float, required=required and not fb, default=None,
                       help="linear value with --linear" if not fb else "omit for no feedback")
    p.add_argument("--linear", action="store_true", help="read parameter values as linear ratios, not dB")


def _gauss_params(args) -> GaussParams:
    vals = {}
    for flag, field in GAUSS_FLAGS:
        v = getattr(args, flag)
        if v is None:
            if flag.startswith("fb"):
                vals[field] = 0.0
                continue
            raise InputError(f"--{flag}-db is required")
        vals[field] = float(v) if args.linear else 10.0 ** (float(v) / 10.0)
    return GaussParams(**vals)


def cmd_g_region(args) -> int:
    p = _gauss_params(args)
    if args.kind == "inner":
        if args.rho_grid is not None and args.rho_grid > 1 and rho_max(p) == 0.0:
            raise InputError("rho-grid requested but valid rho interval is the single point 0 "
                             "(needs both INRs above 1)")
        reg = inner_region(p, args.rho_grid or INNER_RHO_GRID, args.mu_grid or INNER_MU_GRID)
    else:
        if args.mu_grid is not None:
            raise InputError("--mu-grid applies to the inner region only")
        reg = outer_region(p, args.rho_grid or OUTER_RHO_GRID)
    print(f"{args.kind} region: {len(reg)} members")
    print(f"symmetric rate: {_num(ray_extent(reg, (1.0, 1.0)))}")
    print(f"max R1: {_num(ray_extent(reg, (1.0, 0.0)))}  max R2: {_num(ray_extent(reg, (0.0, 1.0)))}")
    if args.boundary:
        if args.rays < 2:
            raise InputError("--rays must be at least 2")
        lines = ["angle_rad,r1,r2"]
        for d in ray_directions(args.rays):
            pt = boundary_point(reg, tuple(d))
            lines.append(f"{_num(math.atan2(d[1], d[0]))},{_num(pt.r1)},{_num(pt.r2)}")
        _write(args.boundary, "\n".join(lines) + "\n")
    return 0


def cmd_gap(args) -> int:
    threads = _threads(args)
    if args.point:
        rep = delta(_gauss_params(args))
        print(json.dumps(rep.to_dict(), indent=2))
        return 0
    if args.snr_db is None:
        raise InputError("gap needs --snr-db for a surface, or --point with the six parameters")
    snr = float(args.snr_db) if args.linear else 10.0 ** (float(args.snr_db) / 10.0)
    if snr <= 1.0:
        raise InputError("forward SNR must exceed 1 (0 dB)")
    alphas, betas = _range(args.alpha, "alpha"), _range(args.beta, "beta")
    surf = symmetric_gap_surface(snr, alphas, betas, threads=threads)
    lines = ["alpha,beta,delta_bits"]
    for i, a in enumerate(alphas):
        for j, b in enumerate(betas):
            lines.append(f"{_num(a)},{_num(b)},{_num(surf[i, j])}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_gdof(args) -> int:
    threads = _threads(args)
    alphas, betas = _range(args.alpha, "alpha"), _range(args.beta, "beta")
    try:
        ladder = [float(x) for x in args.snr_db.split(",") if x.strip()]
    except ValueError as e:
        raise InputError(f"--snr-db: {e}") from e
    if len(ladder) < 2 or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise InputError("--snr-db needs at least two strictly increasing values")
    if ladder[0] <= 0:
        raise InputError("--snr-db values must exceed 0 dB")
    est = gdof_curves(alphas, betas, tuple(ladder), args.mode, threads)
    lines = ["alpha,beta,gdof"]
    for j, b in enumerate(betas):
        for i, a in enumerate(alphas):
            lines.append(f"{_num(a)},{_num(b)},{_num(est[i, j])}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_selfcheck(args) -> int:
    keys = args.only.split(",") if args.only else list(acceptance.CRITERIA)
    unknown = [k for k in keys if k not in acceptance.CRITERIA]
    if unknown:
        raise InputError(f"unknown criteria: {', '.join(unknown)}")
    results = acceptance.run(keys)
    failed = [c for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 0 if not failed else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="icnf", description="Rate regions of the two-user interference "
                                 "channel with noisy output feedback.")
    ap.add_argument("--threads", type=int, default=None, help="worker cap (default: ICNF_THREADS or CPU count)")
    sub = ap.add_subparsers(dest="command", required=True)
    # --threads is also accepted after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    p = sub.add_parser("ld-region", help="exact capacity region of the deterministic channel")
    _add_ld(p)
    p.add_argument("--vertices", help="CSV output of the vertices")
    p.add_argument("--json", help="JSON output of the bounds")
    p.set_defaults(func=cmd_ld_region)

    p = sub.add_parser("ld-trace", help="per-level influence map of the deterministic channel")
    _add_ld(p)
    p.set_defaults(func=cmd_ld_trace)

    p = sub.add_parser("fm-check", parents=[common], help="compare the FM projection with the capacity region")
    p.add_argument("--grid-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=None, help="random draws instead of the full grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-value", type=int, default=20, help="largest pipe count in random draws")
    p.set_defaults(func=cmd_fm_check)

    p = sub.add_parser("g-region", parents=[common], help="Gaussian inner or outer region")
    p.add_argument("kind", choices=("inner", "outer"))
    _add_gauss(p)
    p.add_argument("--rho-grid", type=int, default=None)
    p.add_argument("--mu-grid", type=int, default=None)
    p.add_argument("--rays", type=int, default=256)
    p.add_argument("--boundary", help="CSV output of boundary points along rays")
    p.set_defaults(func=cmd_g_region)

    p = sub.add_parser("gap", parents=[common], help="gap surface over (alpha, beta), or one report with --point")
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--alpha", default="0:3:0.05")
    p.add_argument("--beta", default="0:2:0.05")
    p.add_argument("--out", default=None)
    p.add_argument("--point", action="store_true", help="report for one parameter set as JSON")
    _add_gauss(p, required=False)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("gdof", parents=[common], help="GDoF estimates over (alpha, beta)")
    p.add_argument("--alpha", default="0:3:0.02")
    p.add_argument("--beta", default="0,0.4")
    p.add_argument("--snr-db", default="40,60,80")
    p.add_argument("--mode", choices=("inner", "outer"), default="inner")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gdof)

    p = sub.add_parser("selfcheck", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", default=None, help="comma list of criterion numbers")
    p.set_defaults(func=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            ap.error("--threads must be at least 1")
        os.environ["ICNF_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
