"""mildbank command line: verification suites and demo series."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import BadParams, MildbankError, UnknownDemo, UnknownSuite
from .grid import Grid, make_grid
from .suites import EPS, SUITES, Check, SuiteConfig

SUITE_NAMES = tuple(sorted(SUITES)) + ("all",)
DEMOS = ("shannon", "dirac_approx", "chirp", "kernel_identity")


@dataclass(frozen=True)
class RunConfig:
    h: float | None = None
    n: int | None = None
    window: float | None = None  # half-width; sets n = 2 window / h
    tol: dict = field(default_factory=dict)  # check name (or "*") -> tolerance
    out: str | None = None
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        for k, v in self.tol.items():
            if not v >= EPS:
                raise BadParams(f"tolerance for {k} must be at least machine epsilon, got {v}")
        if self.fmt not in ("json", "csv"):
            raise BadParams("format must be json or csv")

    def grid(self, default: Grid | None = None) -> Grid:
        if self.h is None and self.n is None and self.window is None and default is not None:
            return default
        h = 1 / 16 if self.h is None else self.h
        n = self.n
        if self.window is not None:
            n = int(round(2 * self.window / h))
        return make_grid(h=h, n=1024 if n is None else n)

    def tolerance(self, check: Check) -> float:
        return float(self.tol.get(check.name, self.tol.get("*", check.tolerance)))


def _grid_block(g: Grid) -> dict:
    return {"h": g.spacing[0], "n": g.count[0], "window": [g.window[0][0], g.window[0][1]], "dim": g.dim}


def run_verify(suite: str, config: RunConfig) -> dict:
    """Run one suite (or all, ordered by name) and return the report dictionary."""
    if suite not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    names = sorted(SUITES) if suite == "all" else [suite]
    grid = config.grid(make_grid())
    start = time.perf_counter()
    records = []
    for name in names:
        for c in SUITES[name](SuiteConfig(grid, config.seed)):
            tol = config.tolerance(c)
            rec = Check(c.name, c.residual, tol, c.anchor).as_dict()
            rec["suite"] = name
            records.append(rec)
    wall = time.perf_counter() - start
    return {
        "suite": suite,
        "passed": all(r["passed"] for r in records),
        "checks": records,
        "environment": {"grid": _grid_block(grid), "seed": config.seed, "version": __version__},
        "timing": {"wall_seconds": wall, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())},
    }


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def rows_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def report_csv(report: dict) -> str:
    cols = ["suite", "name", "residual", "tolerance", "passed", "anchor"]
    return rows_csv(cols, ([c[k] for k in cols] for c in report["checks"]))


def _out_path(config: RunConfig, default_name: str) -> Path:
    name = config.out or default_name
    env = os.environ.get("MILDBANK_OUT")
    if env:
        return Path(env) / Path(name).name
    return Path(name)


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# demos


def _series(t, out, ref) -> list:
    out, ref = np.asarray(out, dtype=complex), np.asarray(ref, dtype=complex)
    return [(ti, o.real, o.imag, r.real, r.imag, abs(o - r)) for ti, o, r in zip(t, out, ref)]


def _demo_shannon(config: RunConfig):
    from .grid import sample_named
    from .sampling import BandSpec, bandlimit, central_error, design_window, reconstruct, take_samples

    g = config.grid(make_grid())
    spec = BandSpec(0.4, 1.0)
    win = design_window(spec, "raised_cosine", grid=g)
    f = bandlimit(sample_named("gaussian", [], g), spec)
    rec = reconstruct(take_samples(f, spec.alpha), spec.alpha, win)
    header = ["t", "recon_re", "recon_im", "ref_re", "ref_im", "abs_error"]
    summary = {"central_error": central_error(rec, f), "b": spec.b, "beta": spec.beta, "profile": "raised_cosine"}
    return header, _series(g.axis(0), rec.values, f.values), summary, g


def _demo_dirac(config: RunConfig):
    from .corpus import mild_battery
    from .mild import MILD_GRID, wstar_gaps

    g = config.grid(MILD_GRID)
    gaps = wstar_gaps("dilated_gaussian", mild_battery(g, config.seed), steps=4)
    rhos = [2.0**-j for j in range(1, 5)]
    summary = {"rho": rhos, "gap": gaps, "decreasing": all(b < a for a, b in zip(gaps, gaps[1:]))}
    return ["rho", "gap"], list(zip(rhos, gaps)), summary, g


def _demo_chirp(config: RunConfig):
    from .grid import sample_named
    from .mild import chirp
    from .systems import CHIRP_GRID, Tils, path_residual, tils_apply

    g = config.grid(CHIRP_GRID)
    f = sample_named("gaussian", [], g)
    sys_ = Tils(chirp(1.0))
    a, b = tils_apply(sys_, f), tils_apply(sys_, f, "freq")
    header = ["t", "time_re", "time_im", "freq_re", "freq_im", "abs_error"]
    return header, _series(g.axis(0), a.values, b.values), {"path_residual": path_residual(a, b), "alpha": 1.0}, g


def _demo_kernel(config: RunConfig):
    from .grid import sample_named
    from .suites import KERNEL_GRID
    from .systems import kernel_apply, kernel_build, kernel_compose

    g = config.grid(KERNEL_GRID)
    op = kernel_compose(kernel_build("ift_kernel", g), kernel_build("ft_kernel", g))
    u = sample_named("gaussian", [], g)
    out = kernel_apply(op, u)
    header = ["t", "out_re", "out_im", "ref_re", "ref_im", "abs_error"]
    err = float(np.max(np.abs(out.values - u.values)))
    return header, _series(g.axis(0), out.values, u.values), {"max_error": err}, g


_DEMOS = {"shannon": _demo_shannon, "dirac_approx": _demo_dirac, "chirp": _demo_chirp, "kernel_identity": _demo_kernel}


def run_demo(name: str, config: RunConfig) -> tuple[Path, Path]:
    """Write the demo's CSV series and JSON summary; return both paths."""
    if name not in _DEMOS:
        raise UnknownDemo(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    header, rows, summary, g = _DEMOS[name](config)
    json_path = _out_path(config, f"{name}.json")
    csv_path = _write(json_path.with_suffix(".csv"), rows_csv(header, rows))
    summary = {"demo": name, "summary": summary, "environment": {"grid": _grid_block(g), "seed": config.seed, "version": __version__}}
    _write(json_path, report_json(summary))
    return csv_path, json_path


# ---------------------------------------------------------------------------


def _number(s: str) -> float:
    return float(Fraction(s)) if "/" in s else float(s)


def _tolerances(items) -> dict:
    out = {}
    for item in items or []:
        if "=" in item:
            k, v = item.split("=", 1)
            out[k] = _number(v)
        else:
            out["*"] = _number(item)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mildbank", description="Verification suites and demo series.")
    sub = p.add_subparsers(dest="command", required=True)
    for cmd, helptext in (("verify", "run a verification suite"), ("demo", "write a demo series")):
        s = sub.add_parser(cmd, help=helptext)
        s.add_argument("name")
        s.add_argument("--h", type=_number, help="grid spacing, e.g. 1/16")
        s.add_argument("--n", type=int, help="samples per axis (power of two)")
        s.add_argument("--window", type=_number, help="half-width of the window; sets n = 2 window / h")
        s.add_argument("--tol", action="append", help="NAME=VALUE or VALUE for every check")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--out", help="output file (directory from MILDBANK_OUT when set)")
        s.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.h, args.n, args.window, _tolerances(args.tol), args.out, args.format, args.seed)
        if args.command == "verify":
            report = run_verify(args.name, cfg)
            ext = cfg.fmt
            text = report_json(report) if ext == "json" else report_csv(report)
            path = _write(_out_path(cfg, f"mildbank_{args.name}.{ext}"), text)
            for c in report["checks"]:
                mark = "PASS" if c["passed"] else "FAIL"
                print(f"{mark} {c['suite']}.{c['name']}: {c['residual']:.3e} (tol {c['tolerance']:.1e})")
            print(f"report: {path}")
            return 0 if report["passed"] else 1
        csv_path, json_path = run_demo(args.name, cfg)
        print(f"series: {csv_path}\nsummary: {json_path}")
        return 0
    except (UnknownSuite, UnknownDemo) as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return 2
    except MildbankError as e:
        # bad grids, phase-resolution violations and other unusable configurations
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
