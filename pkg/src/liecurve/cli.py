"""Command-line interface: ``liecurve analyze | synthesize | derive``.

Exit codes: 0 success, 1 error (malformed input, non-unit speed, partial
degeneracy, ...), 2 degenerate classification under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .derived_curves import (
    binormal_indicatrix,
    involute,
    normal_indicatrix,
    sign_definite_windows,
    tangent_indicatrix,
)
from .errors import GeodesicDegeneracy, LieCurveError
from .frenet import FrenetData, SampledCurve, frenet_apparatus, interior_slice
from .invariants import Classification, ConstancyTolerances, InvariantReport, classify, constancy
from .io import read_curve_file, write_algebra_curve_file, write_curve_file, write_plot_csv, write_report
from .lie_core import GROUPS, group_spec
from .synthesis import (
    Profile,
    circular_profile,
    general_helix_profile,
    geodesic_profile,
    integrate_frenet,
    slant_helix_profile,
)

TOL_ENV = "LIECURVE_TOL_CONST"
DEFAULT_TOL_CONST = 1e-3


def default_tol_const() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL_CONST
    try:
        return float(raw)
    except ValueError:
        raise SystemExit(f"error: {TOL_ENV}={raw!r} is not a number") from None


def _tolerances(args) -> ConstancyTolerances:
    tol = args.tol_const if args.tol_const is not None else default_tol_const()
    return ConstancyTolerances(rel_std=tol)


def _tool() -> dict:
    return {"name": "liecurve", "version": __version__}


def _grid(fd: FrenetData | SampledCurve, order: int) -> dict:
    return {"n": len(fd.s), "s0": fd.s[0], "s1": fd.s[-1], "h": fd.h, "fd_order": order}


def analysis_section(fd: FrenetData, rep: InvariantReport) -> dict:
    """Report fields shared by ``analyze`` and ``derive``."""
    tol = rep.tolerances
    out = {
        "classification": rep.classification.value,
        "precedence": [c.value for c in InvariantReport.PRECEDENCE],
        "constancy": {k: v.as_dict() for k, v in rep.constancy.items()},
        "slope": rep.slope,
        "theta": rep.theta,
        "axis": rep.axis,
        "lancret_fit": rep.lancret_fit,
        "notes": rep.notes,
        "tolerances": {
            "rel_std": tol.rel_std, "abs_std": tol.abs_std, "interior": tol.interior,
            "kappa_min": tol.kappa_min, "hprime_min": tol.hprime_min,
            "min_unmasked": tol.min_unmasked,
        },
        "profiles": {
            "s": fd.s, "kappa": fd.kappa, "tau": fd.tau, "tau_G": fd.tau_G,
            "H": rep.H, "Hprime": rep.Hprime, "sigma_N": rep.sigma_N,
            "sigma_N_valid": rep.sigma_valid,
        },
    }
    if rep.axis_estimate is not None:
        out["axis_stats"] = {
            "max_deviation": rep.axis_estimate.max_deviation,
            "normal_cosine_expected": rep.axis_estimate.cos_theta,
            "max_normal_cosine_error": rep.axis_estimate.max_cosine_error,
        }
    return out


def analyze_curve(curve: SampledCurve, order: int, tol: ConstancyTolerances):
    """Frenet data and classification; whole-curve geodesics map to the Geodesic tag."""
    try:
        fd = frenet_apparatus(curve, order=order, kappa_min=tol.kappa_min)
    except GeodesicDegeneracy as exc:
        if not exc.everywhere:
            raise
        fd = frenet_apparatus(curve, order=order, kappa_min=tol.kappa_min, strict=False)
    return fd, classify(fd, tol)


def _plot_profiles(section: dict) -> dict:
    prof = dict(section["profiles"])
    prof.pop("s")
    prof["sigma_N_valid"] = np.asarray(prof["sigma_N_valid"], dtype=float)
    return prof


def cmd_analyze(args) -> int:
    g = group_spec(args.group)
    tol = _tolerances(args)
    curve = read_curve_file(args.input, g)
    fd, rep = analyze_curve(curve, args.fd_order, tol)
    section = analysis_section(fd, rep)
    report = {"tool": _tool(), "command": "analyze", "group": g.name,
              "grid": _grid(fd, args.fd_order), **section}
    write_report(args.output, report)
    if args.plot:
        write_plot_csv(args.plot, fd.s, _plot_profiles(section))
    if args.strict and rep.classification is Classification.GEODESIC:
        print("degenerate classification: Geodesic", file=sys.stderr)
        return 2
    return 0


def build_profile(args, g) -> Profile:
    kind = args.profile
    h = args.step
    if args.from_report:
        with open(args.from_report, encoding="utf-8") as fh:
            prof = json.load(fh)["profiles"]
        return Profile.from_samples(prof["s"], prof["kappa"], prof["tau"], h=h)
    if kind == "slant":
        m = args.sigma if args.sigma is not None else 1.0
        k0 = args.kappa if args.kappa is not None else 1.0
        half = 0.85 * abs(m) / k0
        s0 = -half if args.s0 is None else args.s0
        s1 = half if args.s1 is None else args.s1
        return slant_helix_profile(g, m, k0, s0, s1, h)
    s0 = 0.0 if args.s0 is None else args.s0
    s1 = 10.0 if args.s1 is None else args.s1
    if kind == "geodesic":
        return geodesic_profile(g, s0, s1, h)
    k = 0.5 if args.kappa is None else args.kappa
    if kind == "circular":
        tau = 0.5 if args.tau is None else args.tau
        return circular_profile(g, k, tau, s0, s1, h)
    slope = 0.7 if args.slope is None else args.slope
    mod = args.kappa_mod

    def kfn(s):
        return k * (1.0 + mod * np.sin(np.asarray(s, dtype=float)))

    return general_helix_profile(g, slope, kfn, s0, s1, h)


def roundtrip_error(curve: SampledCurve, profile: Profile, order: int = 4) -> dict:
    """Max |kappa|, |tau| errors of the analyzed curve against its profile (interior window)."""
    fd = frenet_apparatus(curve, order=order, unit_speed_tol=None)
    sl = interior_slice(len(fd))
    return {
        "kappa": float(np.max(np.abs(fd.kappa - profile.kappa(fd.s))[sl])),
        "tau": float(np.max(np.abs(fd.tau - profile.tau(fd.s))[sl])),
    }


def cmd_synthesize(args) -> int:
    g = group_spec(args.group)
    profile = build_profile(args, g)
    curve, _ = integrate_frenet(g, profile)
    comments = [f"liecurve {__version__} synthesize group={g.name} profile={profile.label} "
                f"s0={profile.s0:.17g} s1={profile.s1:.17g} step={profile.h:.17g}"]
    write_curve_file(args.output, curve, comments)
    if args.check:
        summary = {"profile": profile.label, "n": len(curve)}
        if profile.label != "geodesic":
            summary["roundtrip_error"] = roundtrip_error(curve, profile)
        print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_derive(args) -> int:
    g = group_spec(args.group)
    tol = _tolerances(args)
    curve = read_curve_file(args.input, g)
    fd = frenet_apparatus(curve, order=args.fd_order, kappa_min=tol.kappa_min)
    base = classify(fd, tol)
    kind = args.kind
    if kind == "tangent":
        res = tangent_indicatrix(fd, order=args.fd_order)
    elif kind == "normal":
        res = normal_indicatrix(fd, order=args.fd_order)
    elif kind == "binormal":
        window = tuple(args.window) if args.window else _auto_window(fd, base.H)
        res = binormal_indicatrix(fd, window, order=args.fd_order)
    else:
        if args.c is None:
            raise LieCurveError("--c is required for --kind involute")
        res = involute(curve, fd, args.c, order=args.fd_order)
    sl = interior_slice(len(res.fd), tol.interior)
    derived = {
        "kind": kind,
        "deltas": res.deltas,
        "orthogonality": res.orthogonality,
        "harmonic_ratio": constancy(res.harmonic_ratio[sl]).as_dict(),
        "extras": {k: v for k, v in res.extras.items() if isinstance(v, (int, float, tuple, str))},
        "grid": _grid(res.fd, args.fd_order),
        "profiles": {
            "s": res.fd.s, "kappa": res.fd.kappa, "tau": res.fd.tau, "tau_G": res.fd.tau_G,
            **{f"predicted_{k}": v for k, v in res.predicted.items()},
        },
    }
    derived["general_helix"] = bool(
        constancy(res.harmonic_ratio[sl]).is_constant(tol)
    )
    if kind == "normal":
        derived["plane_curve_claim"] = base.classification is Classification.SLANT_HELIX
    report = {
        "tool": _tool(), "command": "derive", "group": g.name,
        "grid": _grid(fd, args.fd_order),
        "source": {k: v for k, v in analysis_section(fd, base).items() if k != "profiles"},
        "derived": derived,
    }
    write_report(args.output, report)
    if args.curve_output:
        if res.curve is not None:
            write_algebra_curve_file(args.curve_output, res.curve.s, res.curve.points,
                                     [f"liecurve {__version__} derive kind={kind}"])
        else:
            print("note: no intrinsic point curve for a non-abelian involute; "
                  "curve output skipped", file=sys.stderr)
    return 0


def _auto_window(fd: FrenetData, H: np.ndarray) -> tuple[float, float]:
    # longest sign-definite stretch, kept away from zeros of H
    floor = 0.2 * float(np.max(np.abs(H)))
    wins = sign_definite_windows(H, floor)
    if not wins:
        return (float(fd.s[0]), float(fd.s[-1]))
    lo, hi = max(wins, key=lambda w: w[1] - w[0])
    return (float(fd.s[lo]), float(fd.s[hi - 1]))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liecurve", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"liecurve {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output_help):
        sp.add_argument("--group", required=True, choices=sorted(GROUPS))
        sp.add_argument("--output", required=True, help=output_help)

    def analysis_flags(sp):
        sp.add_argument("--input", required=True, help="curve file (CSV)")
        sp.add_argument("--tol-const", type=float, default=None,
                        help=f"relative-std constancy tolerance (default {DEFAULT_TOL_CONST}, "
                             f"or ${TOL_ENV})")
        sp.add_argument("--fd-order", type=int, choices=(2, 4), default=4)

    a = sub.add_parser("analyze", help="Frenet apparatus, invariants and classification")
    common(a, "report path (JSON)")
    analysis_flags(a)
    a.add_argument("--strict", action="store_true", help="exit 2 on degenerate classification")
    a.add_argument("--plot", help="also write long-format plot CSV here")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("synthesize", help="integrate a curve from a curvature/torsion profile")
    common(s, "curve file path (CSV)")
    s.add_argument("--profile", choices=("geodesic", "circular", "general", "slant"),
                   default="circular")
    s.add_argument("--kappa", type=float, help="curvature (slant: kappa0)")
    s.add_argument("--tau", type=float, help="torsion (circular)")
    s.add_argument("--slope", type=float, help="general-helix slope c")
    s.add_argument("--kappa-mod", type=float, default=0.1,
                   help="general: kappa(s) = kappa (1 + mod sin s)")
    s.add_argument("--sigma", type=float, help="slant: constant sigma_N")
    s.add_argument("--s0", type=float)
    s.add_argument("--s1", type=float)
    s.add_argument("--step", type=float, default=1e-3)
    s.add_argument("--from-report", help="take kappa, tau profiles from an analyze report")
    s.add_argument("--check", action="store_true",
                   help="print round-trip kappa/tau errors as JSON")
    s.set_defaults(func=cmd_synthesize)

    d = sub.add_parser("derive", help="indicatrices and involutes")
    common(d, "report path (JSON)")
    analysis_flags(d)
    d.add_argument("--kind", required=True, choices=("tangent", "normal", "binormal", "involute"))
    d.add_argument("--c", type=float, help="involute offset constant")
    d.add_argument("--window", type=float, nargs=2, metavar=("S_LO", "S_HI"),
                   help="binormal: sign-definite window of s")
    d.add_argument("--curve-output", help="write the derived curve (CSV, s,x,y,z)")
    d.set_defaults(func=cmd_derive)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LieCurveError, ValueError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
