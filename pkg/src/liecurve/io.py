"""Curve files, reports and plot data.

Curve files are CSV with a header row ``s,<coords...>`` and optional
``#`` comment lines. Coordinates are written with 17 significant digits so
that a file round-trips bit-exactly; reports use 12.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import CurveFileError, InsufficientSamples
from .frenet import MIN_SAMPLES, SampledCurve, is_uniform
from .lie_core import GroupSpec, check_element, renormalize

CURVE_DIGITS = 17
REPORT_DIGITS = 12


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x: float, digits: int) -> str:
    return f"{float(x):.{digits}g}"


def format_curve(s, coords, columns: list[str], comments: list[str] | None = None) -> str:
    out = io.StringIO()
    for line in comments or []:
        out.write(f"# {line}\n")
    out.write(",".join(["s"] + columns) + "\n")
    coords = np.asarray(coords, dtype=float).reshape(len(s), -1)
    for si, row in zip(s, coords):
        out.write(",".join(_fmt(v, CURVE_DIGITS) for v in (si, *row)) + "\n")
    return out.getvalue()


def write_curve_file(path, curve: SampledCurve, comments: list[str] | None = None) -> None:
    text = format_curve(curve.s, curve.points, curve.group.columns, comments)
    atomic_write_text(path, text)


def write_algebra_curve_file(path, s, points, comments: list[str] | None = None) -> None:
    """Algebra-valued curve in the abelian ``s,x,y,z`` layout."""
    atomic_write_text(path, format_curve(s, points, ["x", "y", "z"], comments))


def parse_curve_text(text: str, group: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    """Parse curve-file text into ``(s, points)`` without resampling."""
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise CurveFileError("empty curve file")
    reader = csv.reader(rows)
    header = [h.strip().lower() for h in next(reader)]
    expected = ["s"] + group.columns
    if header != expected:
        raise CurveFileError(
            f"header {','.join(header)!r} does not match group {group.name}: "
            f"expected {','.join(expected)!r}"
        )
    data = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(expected):
            raise CurveFileError(f"row {lineno}: expected {len(expected)} columns, got {len(row)}")
        try:
            vals = [float(v) for v in row]
        except ValueError as exc:
            raise CurveFileError(f"row {lineno}: {exc}") from None
        if not all(math.isfinite(v) for v in vals):
            raise CurveFileError(f"row {lineno}: non-finite value")
        data.append(vals)
    if len(data) < MIN_SAMPLES:
        raise InsufficientSamples(
            f"insufficient samples: {len(data)} rows, stencils need at least {MIN_SAMPLES}"
        )
    arr = np.array(data)
    s = arr[:, 0]
    if np.any(np.diff(s) <= 0):
        raise CurveFileError("s must be strictly increasing")
    points = arr[:, 1:].reshape((len(s),) + group.point_shape)
    return s, points


def resample_uniform(group: GroupSpec, s, points) -> SampledCurve:
    """Put a non-uniformly sampled curve on a uniform grid with the same count.

    Embedding coordinates are interpolated with quintic splines and projected
    back onto the group.
    """
    n = len(s)
    s_new = np.linspace(s[0], s[-1], n)
    flat = np.asarray(points).reshape(n, -1)
    new = make_interp_spline(s, flat, k=min(5, n - 1))(s_new).reshape(points.shape)
    return SampledCurve(group, s_new, renormalize(group, new))


def read_curve_file(path, group: GroupSpec) -> SampledCurve:
    """Load a curve file, validating group elements and making the grid uniform."""
    text = Path(path).read_text(encoding="utf-8")
    s, points = parse_curve_text(text, group)
    # files carry 17 digits; allow slack for hand-made data
    if not check_element(group, points, tol=1e-8):
        raise CurveFileError(f"rows are not valid {group.name} elements")
    points = renormalize(group, points)
    if not is_uniform(s):
        return resample_uniform(group, s, points)
    return SampledCurve(group, s, points)


# --------------------------------------------------------------------------
# reports


def to_jsonable(obj, digits: int = REPORT_DIGITS):
    """Recursively convert numpy data to JSON types, rounding floats to ``digits``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v, digits) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(_fmt(x, digits))
    return obj


def dumps_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=1, sort_keys=True) + "\n"


def write_report(path, report: dict) -> None:
    atomic_write_text(path, dumps_report(report))


def write_plot_csv(path, s, profiles: dict[str, np.ndarray]) -> None:
    """Long-format ``s,quantity,value`` table for external plotting."""
    out = io.StringIO()
    out.write("s,quantity,value\n")
    for name in sorted(profiles):
        vals = np.asarray(profiles[name], dtype=float)
        for si, v in zip(s, vals):
            out.write(f"{_fmt(si, REPORT_DIGITS)},{name},"
                      f"{_fmt(v, REPORT_DIGITS) if math.isfinite(v) else 'nan'}\n")
    atomic_write_text(path, out.getvalue())
