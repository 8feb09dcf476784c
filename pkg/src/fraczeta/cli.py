"""fraczeta command line: deterministic CSV/JSON artifacts for spectra,
heat traces, Weyl ratios, zeta grids, poles, and the acceptance suite.

Exit codes: 0 success, 1 acceptance-check failure, 2 configuration error,
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import acceptance
from . import artifacts as art
from .errors import ConfigError, ConvergenceError
from .partition import fit_tower_profiles, partition_grid, partition_value, weyl_ratio
from .spectrum import default_batch, load_preset, preset_names
from .zeta import build_context, locate_poles, predicted_poles, zeta_continued


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"{what} must look like lo:hi, got {text!r}")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc
    if not lo < hi:
        raise ConfigError(f"{what}: need lo < hi, got {text!r}")
    return lo, hi


def _parse_axis(text: str, what: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{what} must look like lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc
    if step <= 0 or hi < lo:
        raise ConfigError(f"{what}: need lo <= hi and step > 0, got {text!r}")
    n = int(round((hi - lo) / step)) + 1
    vals = [lo + k * step for k in range(n)]
    while vals and vals[-1] > hi + 1e-9:
        vals.pop()
    return vals


def _parse_grid(text: str) -> tuple[list[float], list[float]]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(
            f"--grid must look like re_lo:re_hi:re_step,im_lo:im_hi:im_step, got {text!r}"
        )
    return _parse_axis(parts[0], "--grid real axis"), _parse_axis(parts[1], "--grid imag axis")


def _parse_region(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"--grid region must look like re_lo:re_hi,im_lo:im_hi, got {text!r}")
    re_lo, re_hi = _parse_pair(parts[0], "--grid real range")
    im_lo, im_hi = _parse_pair(parts[1], "--grid imag range")
    return re_lo, re_hi, im_lo, im_hi


def _emit(out_dir: str, name: str, data: bytes) -> None:
    path = art.write_artifact(out_dir, name, data)
    print(f"wrote {path}")


# ------------------------------------------------------------------ commands


def cmd_dims(args) -> int:
    bundle = load_preset(args.config)
    m = bundle.model
    print(f"model = {m.name}")
    print(f"N = {m.N}")
    print(f"rho_F = {art.fnum(m.rho_F)}")
    print(f"tau = {art.fnum(m.tau)}")
    print(f"d_S = {art.fnum(m.d_S)}")
    print(f"d_f = {art.fnum(m.d_f)}")
    print(f"d_w = {art.fnum(m.d_w)}")
    print(f"d_boundary = {art.fnum(m.d_boundary)}")
    print(f"lattice_spacing = {art.fnum(m.lattice_spacing)}")
    return 0


def cmd_spectrum(args) -> int:
    bundle = load_preset(args.config)
    batch = default_batch(bundle)
    name = bundle.model.name
    _emit(args.out, f"{name}_spectrum.csv", art.spectrum_csv(batch))
    if batch.certificates:
        _emit(
            args.out,
            f"{name}_spectrum_certificates.json",
            art.spectrum_certificates_json(batch),
        )
    print(f"{len(batch)} distinct eigenvalues, total multiplicity {batch.count}")
    return 0


def cmd_partition(args) -> int:
    bundle = load_preset(args.config)
    batch = default_batch(bundle)
    lo, hi = _parse_pair(args.window, "--window") if args.window else (1e-5, 20.0)
    if lo <= 0:
        raise ConfigError("--window times must be positive")
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), args.points))
    samples = partition_grid(batch, grid)
    _emit(args.out, f"{bundle.model.name}_partition.csv", art.partition_csv(samples))
    rejected = sum(1 for s in samples if not s.accepted)
    if rejected:
        print(f"warning: {rejected}/{len(samples)} samples exceed the 1e-6 truncation target")
    return 0


def cmd_weyl(args) -> int:
    bundle = load_preset(args.config)
    batch = default_batch(bundle)
    m = bundle.model
    params = dict(bundle.continuation_params)
    if args.window:
        lo, hi = _parse_pair(args.window, "--window")
        if abs(hi - m.tau * lo) > 1e-9 * hi:
            raise ConfigError(
                f"--window must span exactly one period (t_hi = tau*t_lo = {m.tau * lo:.6g})"
            )
        windows = params.get("windows")
        if windows:
            params["windows"] = [lo] + [float(w) for w in windows[1:]]
        else:
            params["windows"] = [lo]
    ctx = build_context(batch, m, params)
    w0, w1 = ctx.profiles[0].fit_window
    ts = np.exp(np.linspace(math.log(w0), math.log(w1), args.points))
    ws_vals = np.array([weyl_ratio(batch, float(t)) for t in ts])
    truncs = np.array([partition_value(batch, float(t)).truncation_error for t in ts])
    _emit(args.out, f"{m.name}_weyl.json", art.weyl_json(m.name, ts, ws_vals, truncs, ctx.profiles))
    for prof in ctx.profiles:
        if prof.warning:
            print(f"warning (tower {prof.k_index}): {prof.warning}")
    return 0


def cmd_zeta_grid(args) -> int:
    bundle = load_preset(args.config)
    batch = default_batch(bundle)
    m = bundle.model
    if not args.grid:
        raise ConfigError("zeta-grid requires --grid re_lo:re_hi:re_step,im_lo:im_hi:im_step")
    res, ims = _parse_grid(args.grid)
    ctx = build_context(batch, m, bundle.continuation_params)
    pad = args.pole_exclusion
    region = (min(res) - pad, max(res) + pad, min(ims) - pad, max(ims) + pad)
    candidates = [p.position for p in predicted_poles(m, region, args.gamma, args.mode)]
    points = []
    excluded = 0
    for re in res:
        for im in ims:
            s = complex(re, im)
            if any(abs(s - p) < pad for p in candidates):
                excluded += 1
                continue
            points.append(zeta_continued(batch, m, s, gamma=args.gamma, mode=args.mode, context=ctx))
    _emit(args.out, f"{m.name}_zeta_grid.csv", art.zeta_csv(points))
    print(f"{len(points)} grid points ({excluded} excluded within {pad:g} of predicted poles)")
    return 0


def cmd_poles(args) -> int:
    bundle = load_preset(args.config)
    m = bundle.model
    if args.grid:
        region = _parse_region(args.grid)
    else:
        half_band = 1.6 * m.lattice_spacing
        region = (m.d_S - 0.5, m.d_S + 0.5, -half_band, half_band)
    predicted = predicted_poles(m, region, args.gamma, args.mode)
    note = None
    located = []
    if bundle.spectrum_params.get("source") is None:
        note = "parameter-only model: no spectrum source, located poles unavailable"
    else:
        batch = default_batch(bundle)
        ctx = build_context(batch, m, bundle.continuation_params)
        located = locate_poles(batch, m, region, gamma=args.gamma, mode=args.mode, context=ctx)
    _emit(
        args.out,
        f"{m.name}_poles.json",
        art.poles_json(predicted, located, region, args.gamma, args.mode, note=note),
    )
    print(f"{len(predicted)} predicted, {len(located)} located")
    return 0


def cmd_check(args) -> int:
    numbers = None
    if args.config:
        bundle = load_preset(args.config)
        numbers = acceptance.subset_for(bundle.model.name)
    results = acceptance.run(numbers, out_dir=args.out, on_result=lambda r: print(r.line))
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} criteria failed")
        return 1
    print(f"all {len(results)} criteria passed")
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraczeta",
        description="Spectral zeta functions of Laplacians on self-similar sets: "
        "spectra, heat traces, meromorphic continuation, pole lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument(
            "--config",
            required=config_required,
            help=f"preset name ({', '.join(preset_names())}) or TOML path",
        )
        p.add_argument("--out", default=".", help="artifact output directory (default: .)")

    p = sub.add_parser("dims", help="print the model's dimension data")
    common(p)
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("spectrum", help="emit the eigenvalue CSV")
    common(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("partition", help="emit the heat-trace CSV over a log grid")
    common(p)
    p.add_argument("--window", help="t_lo:t_hi (default 1e-5:20)")
    p.add_argument("--points", type=int, default=200)
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("weyl", help="emit Weyl-ratio samples and fitted oscillation JSON")
    common(p)
    p.add_argument("--window", help="one-period fit window t_lo:t_hi for the leading tower")
    p.add_argument("--points", type=int, default=64)
    p.set_defaults(fn=cmd_weyl)

    p = sub.add_parser("zeta-grid", help="emit continued zeta over a rectangular grid")
    common(p)
    p.add_argument("--grid", help="re_lo:re_hi:re_step,im_lo:im_hi:im_step")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--mode", choices=("lemma", "expbounds"), default="expbounds")
    p.add_argument(
        "--pole-exclusion",
        type=float,
        default=0.05,
        help="skip grid points within this distance of a predicted pole (default 0.05)",
    )
    p.set_defaults(fn=cmd_zeta_grid)

    p = sub.add_parser("poles", help="emit predicted and located poles JSON")
    common(p)
    p.add_argument("--grid", help="region re_lo:re_hi,im_lo:im_hi (default: band around d_S)")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--mode", choices=("lemma", "expbounds"), default="expbounds")
    p.set_defaults(fn=cmd_poles)

    p = sub.add_parser("check", help="run the acceptance suite (all criteria, or a preset subset)")
    common(p, config_required=False)
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
