"""Command-line front end.

Exit codes: 0 success, 1 usage or invalid input, 2 numerical failure,
3 I/O error.

Group files are UTF-8 JSON::

    {
      "model": "halfplane",            # or "disk"
      "label": "optional name",
      "generators": [
        [[a_re, a_im], [b_re, b_im], [c_re, c_im], [d_re, d_im]],
        ...
      ]
    }

Each generator is the map ``p -> (a p + b)/(c p + d)``.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import domains as dm
from . import fuchsian as fx
from .errors import FridmanError, NonConvergent, NumericalConsistencyError, OutOfDomain
from .hyperbolic import MobiusMap, Model
from .numerics import Tolerance
from .verify import SUITES, run_suites

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

CSV_FIELDS = ("z_re", "z_im", "abs_z", "S", "Hc", "Hk", "mc", "mk")
FUCHSIAN_FIELDS = ("w_re", "w_im", "Hk", "min_displacement", "exact", "witness", "explored")
COMMANDS = ("eval", "grid", "figure", "verify", "fuchsian")
FORMATS = ("csv", "json", "svg")
GRID_PAD = 1e-6


class UsageError(Exception):
    pass


class GroupFileError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    r: Optional[float] = None
    punctures: Optional[list] = None
    group: Optional[Path] = None
    points: list = field(default_factory=list)
    n: int = 400
    radius_range: Optional[tuple] = None
    tol: Tolerance = field(default_factory=Tolerance)
    fmt: str = "csv"
    out: Optional[Path] = None
    suites: list = field(default_factory=list)

    def validate(self):
        specs = sum(x is not None for x in (self.r, self.punctures, self.group))
        if self.command in ("eval", "grid") and specs != 1:
            raise UsageError("give exactly one of --r, --punctures, --group")
        if self.command == "grid" and self.group is not None:
            raise UsageError("grid sampling needs --r or --punctures")
        if self.command == "fuchsian" and self.group is None:
            raise UsageError("fuchsian needs --group")
        if self.command == "figure" and (self.punctures is not None or self.group is not None):
            raise UsageError("figure is defined for the annulus only")
        if self.command in ("eval", "fuchsian") and not self.points:
            raise UsageError("no points given (use --points)")
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.fmt == "svg" and self.command not in ("grid", "figure"):
            raise UsageError("svg output is only available for grid and figure")
        for s in self.suites:
            if s not in SUITES:
                raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")


# -- parsing -------------------------------------------------------------------

def parse_complex_list(text: str) -> list:
    items = [t.strip().replace(" ", "") for t in text.replace(";", ",").split(",")]
    out = []
    for t in items:
        if not t:
            continue
        try:
            out.append(complex(t.replace("i", "j")))
        except ValueError:
            raise UsageError(f"cannot parse {t!r} as a complex number") from None
    return out


def _pair(value, where):
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise GroupFileError(f"{where}: expected a [re, im] pair of numbers, got {json.dumps(value)}")
    return complex(value[0], value[1])


def parse_group(text: str, source: str = "<group>") -> fx.FuchsianGroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise GroupFileError(f"{source}: top level must be an object")
    model_name = data.get("model")
    try:
        model = Model(str(model_name).lower())
    except ValueError:
        raise GroupFileError(f"{source}: field 'model' must be \"disk\" or \"halfplane\", got {model_name!r}") from None
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise GroupFileError(f"{source}: field 'generators' must be a non-empty list")
    maps = []
    for i, gen in enumerate(gens):
        if not isinstance(gen, list) or len(gen) != 4:
            raise GroupFileError(f"{source}: generators[{i}]: expected four [re, im] pairs (a, b, c, d)")
        coeffs = [_pair(v, f"{source}: generators[{i}][{k}] ({'abcd'[k]})") for k, v in enumerate(gen)]
        try:
            maps.append(MobiusMap(*coeffs, model))
        except ValueError as exc:
            raise GroupFileError(f"{source}: generators[{i}]: {exc}") from None
    return fx.FuchsianGroup(tuple(maps), label=str(data.get("label", "")))


def load_group(path: Path) -> fx.FuchsianGroup:
    text = Path(path).read_text(encoding="utf-8")
    return parse_group(text, str(path))


# -- formatting ----------------------------------------------------------------

def fmt_num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return ""
    return format(x, ".17g")


def sample_row(s: dm.InvariantSample) -> dict:
    return {"z_re": s.z.real, "z_im": s.z.imag, "abs_z": abs(s.z),
            "S": s.S, "Hc": s.Hc, "Hk": s.Hk, "mc": s.mc, "mk": s.mk}


def render_csv(rows, fields) -> str:
    buf = io.StringIO()
    buf.write(",".join(fields) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(row.get(f)) for f in fields) + "\n")
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, str):
        return '"' + v.replace('"', '""') + '"' if ("," in v or '"' in v) else v
    return fmt_num(v)


def _json_value(v):
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    s = fmt_num(v)
    return s if s else "null"


def render_json(rows, fields) -> str:
    lines = []
    for row in rows:
        body = ", ".join(f"{json.dumps(f)}: {_json_value(row.get(f))}" for f in fields)
        lines.append("  {" + body + "}")
    return "[\n" + ",\n".join(lines) + ("\n" if lines else "") + "]\n"


SVG_W, SVG_H = 800, 600
_MARGIN = (70, 30, 40, 60)  # left, right, top, bottom
_STYLES = {"solid": "", "dash": ' stroke-dasharray="10,6"', "dot": ' stroke-dasharray="2,4"'}
_COLORS = {"solid": "#1f3b73", "dash": "#b5422c", "dot": "#2f7d32"}


def render_svg(xs, series, title="", x_label="|z|", x_range=None) -> str:
    """Line chart with linear axes; ``series`` is a list of (label, ys, style)."""
    left, right, top, bottom = _MARGIN
    x0, x1 = x_range if x_range else (float(min(xs)), float(max(xs)))
    if x1 <= x0:
        x1 = x0 + 1.0
    pw, ph = SVG_W - left - right, SVG_H - top - bottom
    sx = lambda x: left + (x - x0) / (x1 - x0) * pw
    sy = lambda y: top + (1.0 - y) * ph
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" width="{SVG_W}" height="{SVG_H}">',
        f'<rect x="0" y="0" width="{SVG_W}" height="{SVG_H}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{SVG_W / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{_xml(title)}</text>')
    out.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>')
    for k in range(6):
        y = k / 5
        out.append(f'<line x1="{left - 5}" y1="{sy(y):.3f}" x2="{left}" y2="{sy(y):.3f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{sy(y) + 4:.3f}" text-anchor="end" font-family="sans-serif" font-size="12">{y:.1f}</text>')
        x = x0 + (x1 - x0) * k / 5
        out.append(f'<line x1="{sx(x):.3f}" y1="{top + ph}" x2="{sx(x):.3f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(x):.3f}" y="{top + ph + 20}" text-anchor="middle" font-family="sans-serif" font-size="12">{x:.2f}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{SVG_H - 12}" text-anchor="middle" font-family="sans-serif" font-size="14">{_xml(x_label)}</text>')
    for i, (label, ys, style) in enumerate(series):
        pts = [(sx(x), sy(y)) for x, y in zip(xs, ys) if y is not None and math.isfinite(y)]
        d = " ".join(f"{'M' if j == 0 else 'L'}{px:.3f},{py:.3f}" for j, (px, py) in enumerate(pts))
        out.append(f'<path d="{d}" fill="none" stroke="{_COLORS[style]}" stroke-width="2"{_STYLES[style]}>'
                   f'<title>{_xml(label)}</title></path>')
        ly = top + 20 + 18 * i
        lx = left + pw - 150
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 40}" y2="{ly}" stroke="{_COLORS[style]}" stroke-width="2"{_STYLES[style]}/>')
        out.append(f'<text x="{lx + 48}" y="{ly + 4}" font-family="sans-serif" font-size="13">{_xml(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _xml(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# -- commands ------------------------------------------------------------------

def _domain(cfg: RunConfig):
    if cfg.r is not None:
        try:
            return dm.Annulus(cfg.r)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return dm.PuncturedDisk(tuple(cfg.punctures))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write(text: str, path: Optional[Path], stdout):
    if path is None:
        stdout.write(text)
        return
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _emit(rows, fields, cfg, stdout):
    text = render_json(rows, fields) if cfg.fmt == "json" else render_csv(rows, fields)
    _write(text, cfg.out, stdout)


def cmd_eval(cfg: RunConfig, stdout, stderr) -> int:
    rows, failures = [], []
    if cfg.group is not None:
        g = load_group(cfg.group)
        for w in cfg.points:
            try:
                res = fx.fridman_k(g, w, cfg.tol)
            except (FridmanError, ArithmeticError) as exc:
                failures.append(exc)
                stderr.write(f"point {w}: {exc}\n")
                continue
            if not res.exact:
                stderr.write(f"warning: point {w}: orbit minimum not certified (upper bound)\n")
            rows.append(sample_row(dm.InvariantSample(z=w, Hk=res.value)))
    else:
        domain = _domain(cfg)
        for z in cfg.points:
            try:
                rows.append(sample_row(dm.sample(domain, z, cfg.tol)))
            except (FridmanError, ArithmeticError) as exc:
                failures.append(exc)
                stderr.write(f"point {z}: {exc}\n")
    _emit(rows, CSV_FIELDS, cfg, stdout)
    if not rows:
        return EXIT_USAGE if all(isinstance(e, OutOfDomain) for e in failures) else EXIT_NUMERIC
    return EXIT_OK


def grid_points(domain, n: int, radius_range=None) -> np.ndarray:
    lo, hi = radius_range if radius_range is not None else (None, None)
    return dm.radial_grid(domain, n, lo, hi, pad=GRID_PAD)


def _grid_rows(domain, xs, tol):
    return [sample_row(dm.sample(domain, float(x), tol)) for x in xs]


def _svg_for(rows, title, x_range):
    xs = [row["abs_z"] for row in rows]
    series = [("H^k", [row["Hk"] for row in rows], "solid"),
              ("H^c", [row["Hc"] for row in rows], "dash"),
              ("S", [row["S"] for row in rows], "dot")]
    series = [s for s in series if any(v is not None for v in s[1])]
    return render_svg(xs, series, title=title, x_range=x_range)


def _domain_title(domain):
    if isinstance(domain, dm.Annulus):
        return f"A_r, r = {domain.r:g}"
    return "unit disk minus {" + ", ".join(f"{p:g}" for p in domain.punctures) + "}"


def cmd_grid(cfg: RunConfig, stdout, stderr) -> int:
    domain = _domain(cfg)
    xs = grid_points(domain, cfg.n, cfg.radius_range)
    try:
        rows = _grid_rows(domain, xs, cfg.tol)
    except OutOfDomain as exc:
        raise UsageError(str(exc)) from None
    if cfg.fmt == "svg":
        lo = domain.r if isinstance(domain, dm.Annulus) else 0.0
        _write(_svg_for(rows, _domain_title(domain), (lo, 1.0)), cfg.out, stdout)
    else:
        _emit(rows, CSV_FIELDS, cfg, stdout)
    return EXIT_OK


def figure_paths(out: Optional[Path]) -> tuple:
    stem = Path(out) if out is not None else Path("figure1")
    if stem.suffix in (".csv", ".svg"):
        stem = stem.with_suffix("")
    return stem.with_name(stem.name + ".csv"), stem.with_name(stem.name + ".svg")


def cmd_figure(cfg: RunConfig, stdout, stderr) -> int:
    A = dm.Annulus(0.01 if cfg.r is None else cfg.r)
    xs = grid_points(A, cfg.n)
    rows = _grid_rows(A, xs, cfg.tol)
    csv_path, svg_path = figure_paths(cfg.out)
    _write(render_csv(rows, CSV_FIELDS), csv_path, stdout)
    title = f"H^k (solid), H^c (dash), S (dot) on A_r, r = {A.r:g}"
    _write(_svg_for(rows, title, (A.r, 1.0)), svg_path, stdout)
    k = int(np.argmin([row["Hk"] for row in rows]))
    stdout.write(f"wrote {csv_path} and {svg_path}; min H^k = {rows[k]['Hk']:.7f} at |z| = {rows[k]['abs_z']:.5f}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, stdout, stderr) -> int:
    def report(res):
        status = "PASS" if res.passed else "FAIL"
        stdout.write(f"{status}  {res.name:<22} max_error={res.max_error:.3e}  threshold={res.threshold:.1e}  {res.detail}\n")

    failed = False
    for name in cfg.suites or list(SUITES):
        try:
            res = run_suites([name], cfg.tol, report)[0]
            failed |= not res.passed
        except (NonConvergent, NumericalConsistencyError, FridmanError) as exc:
            stdout.write(f"FAIL  {name:<22} error: {exc}\n")
            failed = True
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_fuchsian(cfg: RunConfig, stdout, stderr) -> int:
    g = load_group(cfg.group)
    rows = []
    for w in cfg.points:
        try:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                res = fx.fridman_k(g, w, cfg.tol)
        except (FridmanError, ArithmeticError) as exc:
            stderr.write(f"point {w}: {exc}\n")
            continue
        for c in caught:
            stderr.write(f"warning: point {w}: {c.message}\n")
        if not res.exact:
            stderr.write(f"warning: point {w}: minimum over words of length <= {cfg.tol.orbit_depth} "
                         "is not certified; Hk is an upper bound\n")
        rows.append({"w_re": w.real, "w_im": w.imag, "Hk": res.value,
                     "min_displacement": res.search.min_displacement, "exact": res.exact,
                     "witness": fx.format_word(res.search.witness), "explored": res.search.explored})
    _emit(rows, FUCHSIAN_FIELDS, cfg, stdout)
    return EXIT_OK if rows else EXIT_NUMERIC


HANDLERS = {"eval": cmd_eval, "grid": cmd_grid, "figure": cmd_figure,
            "verify": cmd_verify, "fuchsian": cmd_fuchsian}


# -- argument handling -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fridman", description="Fridman, squeezing and injectivity-radius functions "
                                             "of annuli, punctured disks and Fuchsian quotients.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--r", type=float, help="annulus inner radius (domain r < |z| < 1)")
    p.add_argument("--punctures", help="comma-separated punctures of the unit disk, e.g. '0,0.5'")
    p.add_argument("--group", type=Path, help="group JSON file (see module docs)")
    p.add_argument("--points", help="comma-separated complex points, e.g. '0.1,0.3+0.2j'")
    p.add_argument("--n", type=int, default=None, help="number of grid samples (default 400)")
    p.add_argument("--range", dest="radius_range", help="grid radius range 'lo,hi'")
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="csv")
    p.add_argument("--out", type=Path, help="output path (figure: stem for .csv and .svg)")
    p.add_argument("--eps-product", type=float, default=1e-14)
    p.add_argument("--eps-compare", type=float, default=1e-8)
    p.add_argument("--depth", type=int, default=12, help="maximal word length in the orbit search")
    p.add_argument("--suite", action="append", default=[], help="verification suite to run (repeatable)")
    return p


def config_from_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    try:
        tol = Tolerance(eps_product=ns.eps_product, eps_compare=ns.eps_compare, orbit_depth=ns.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rng = None
    if ns.radius_range:
        try:
            parts = [float(t) for t in ns.radius_range.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse --range {ns.radius_range!r}") from None
        if len(parts) != 2 or not 0 < parts[0] < parts[1] < 1:
            raise UsageError("--range needs 'lo,hi' with 0 < lo < hi < 1")
        rng = tuple(parts)
    cfg = RunConfig(
        command=ns.command,
        r=ns.r,
        punctures=parse_complex_list(ns.punctures) if ns.punctures is not None else None,
        group=ns.group,
        points=parse_complex_list(ns.points) if ns.points else [],
        n=400 if ns.n is None else ns.n,
        radius_range=rng,
        tol=tol,
        fmt=ns.fmt,
        out=ns.out,
        suites=ns.suite,
    )
    cfg.validate()
    return cfg


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        return HANDLERS[cfg.command](cfg, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except GroupFileError as exc:
        stderr.write(f"group file error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    except (NonConvergent, NumericalConsistencyError, ArithmeticError) as exc:
        stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except FridmanError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
