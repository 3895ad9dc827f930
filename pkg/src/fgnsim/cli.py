"""Command-line front end.

Parameter sweeps over (tau, H, p, configuration) with CSV output and
optional static SVG line plots, a validation run that exercises the
built-in oracles, and a Monte Carlo cross-check mode. Grid points are
evaluated independently and written in deterministic grid order, so runs
with the same seed are bitwise reproducible regardless of worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .channels import (
    COHERENCE_SUPPORT_XORS,
    ChannelPartition,
    InitialStateSpec,
    apply_fgn_map,
    initial_state,
    mc_map,
    support_mask,
)
from .closedform import CONFIGS, ClosedFormId, asymptote, eval_closed
from .errors import ConfigError, DomainError, EmptyInput, FgnsimError
from .measures import (
    MeasureRecord,
    evaluate_all,
    npartite_negativity,
    purity,
    vn_entropy,
    witness,
)
from .noise import beta_fgn, beta_quadrature

THREADS_ENV = "FGNSIM_THREADS"

CSV_BASE_HEADER = ("config", "hurst", "p", "tau", "beta", "ER", "NY", "PY", "VE")
CSV_MC_HEADER = ("er_mc", "ny_mc", "py_mc", "ve_mc")

SERIES = ("er", "ny", "py", "ve")
SERIES_LABELS = {"er": "ER", "ny": "NY", "py": "PY", "ve": "VE"}
SERIES_COLORS = {"er": "#1f77b4", "ny": "#d62728", "py": "#2ca02c", "ve": "#9467bd"}

# validation constants
VALIDATE_QUAD_GRID = tuple((tau, h) for tau in (0.5, 1.0, 2.0) for h in (0.01, 0.3, 0.5, 0.7, 0.9))
VALIDATE_BETAS = np.linspace(0.0, 10.0, 51)
VALIDATE_MC_SAMPLES = 10_000
VALIDATE_MC_SEEDS = 20
VALIDATE_MC_BETA = 0.25


def mix64(seed: int, index: int) -> int:
    """Splitmix-style 64-bit mixer deriving per-row RNG substreams.

    seed' = finalize(seed + GOLDEN * (index + 1)) with the published
    constants GOLDEN = 0x9E3779B97F4A7C15, M1 = 0xBF58476D1CE4E5B9,
    M2 = 0x94D049BB133111EB and shift amounts 30 / 27 / 31.
    """
    mask = (1 << 64) - 1
    z = (int(seed) + 0x9E3779B97F4A7C15 * (int(index) + 1)) & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SweepSpec:
    """A parameter grid plus output and RNG settings for one CLI run."""

    config: str
    hurst: tuple
    tau_min: float
    tau_max: float
    tau_steps: int
    p: float = 1.0
    mc_samples: int = 0
    seed: int = 0
    out_csv: str | None = None
    out_svg: str | None = None

    def __post_init__(self):
        if self.config not in CONFIGS:
            raise ConfigError(f"config must be one of {CONFIGS}, got {self.config!r}")
        hurst = tuple(float(h) for h in self.hurst)
        if not hurst:
            raise ConfigError("hurst list must not be empty")
        for h in hurst:
            if not 0.0 < h < 1.0:
                raise ConfigError(f"hurst values must lie in (0, 1), got {h}")
        object.__setattr__(self, "hurst", hurst)
        if self.tau_min < 0.0:
            raise ConfigError(f"tau_min must be nonnegative, got {self.tau_min}")
        if self.tau_max <= self.tau_min:
            raise ConfigError(f"tau_max must exceed tau_min, got [{self.tau_min}, {self.tau_max}]")
        if self.tau_steps < 2:
            raise ConfigError(f"tau_steps must be at least 2, got {self.tau_steps}")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")
        if self.mc_samples < 0:
            raise ConfigError(f"mc_samples must be nonnegative, got {self.mc_samples}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def tau_grid(self) -> np.ndarray:
        return np.linspace(self.tau_min, self.tau_max, self.tau_steps)


_SPEC_KEYS = {
    "config": str,
    "hurst": "float_list",
    "p": float,
    "tau_min": float,
    "tau_max": float,
    "tau_steps": int,
    "mc_samples": int,
    "seed": int,
    "out_csv": str,
    "out_svg": str,
}
_REQUIRED_KEYS = ("config", "hurst", "tau_min", "tau_max", "tau_steps")


def parse_sweep_spec(path: str) -> SweepSpec:
    """Read a flat `key = value` sweep configuration file.

    Lines starting with `#` and blank lines are ignored; lists are
    comma-separated. Unknown or repeated keys are rejected with the
    offending line number.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read spec file {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected `key = value`, got {line!r}")
        key, _, rhs = line.partition("=")
        key = key.strip()
        rhs = rhs.strip()
        if key not in _SPEC_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: repeated key {key!r}")
        kind = _SPEC_KEYS[key]
        try:
            if kind == "float_list":
                values[key] = tuple(float(tok) for tok in rhs.split(","))
            elif kind is int:
                values[key] = int(rhs)
            elif kind is float:
                values[key] = float(rhs)
            else:
                values[key] = rhs
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {rhs!r}") from exc
    missing = [k for k in _REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigError(f"{path}: missing required keys {missing}")
    return SweepSpec(**values)


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    return max(1, n) if n > 0 else 1


def _format_float(x: float) -> str:
    return f"{x:.12g}"


def _evaluate_row(spec: SweepSpec, part, rho0, h: float, tau: float, row_index: int):
    beta = beta_fgn(tau, h)
    rho_t = apply_fgn_map(rho0, part, beta)
    record = evaluate_all(
        rho_t, rho0, config=spec.config, hurst=h, p=spec.p, tau=tau, beta=beta.value
    )
    mc_record = None
    if spec.mc_samples > 0:
        rng = np.random.default_rng(np.random.PCG64(mix64(spec.seed, row_index)))
        rho_mc = mc_map(rho0, part, beta, spec.mc_samples, rng)
        mc_record = evaluate_all(
            rho_mc, rho0, config=spec.config, hurst=h, p=spec.p, tau=tau, beta=beta.value
        )
    return record, mc_record


def _csv_line(record: MeasureRecord, mc_record: MeasureRecord | None) -> str:
    cells = [record.config]
    cells += [_format_float(v) for v in (record.hurst, record.p, record.tau, record.beta,
                                         record.er, record.ny, record.py, record.ve)]
    if mc_record is not None:
        cells += [_format_float(v) for v in (mc_record.er, mc_record.ny, mc_record.py, mc_record.ve)]
    return ",".join(cells)


def _write_csv_atomic(path: str, header: tuple, lines: list) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sweep_", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(",".join(header) + "\n")
            for line in lines:
                f.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_sweep(spec: SweepSpec, out_csv: str | None = None, svg_prefix: str | None = None):
    """Evaluate the sweep grid and write it as CSV (plus optional SVG plots).

    Rows are ordered hurst-major, tau-ascending. Returns the analytic
    MeasureRecord list. With mc_samples > 0 each row also carries Monte
    Carlo measure columns computed from its own seeded substream.
    """
    csv_path = out_csv or spec.out_csv
    if not csv_path:
        raise ConfigError("no CSV output path: set out_csv in the spec file or pass --out")
    part = ChannelPartition.preset(spec.config)
    rho0 = initial_state(InitialStateSpec(spec.p))
    taus = spec.tau_grid()
    jobs = []
    for hi, h in enumerate(spec.hurst):
        for ti, tau in enumerate(taus):
            jobs.append((h, float(tau), hi * spec.tau_steps + ti))
    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda j: _evaluate_row(spec, part, rho0, *j), jobs))
    else:
        results = [_evaluate_row(spec, part, rho0, *j) for j in jobs]
    header = CSV_BASE_HEADER + (CSV_MC_HEADER if spec.mc_samples > 0 else ())
    lines = [_csv_line(rec, mc) for rec, mc in results]
    _write_csv_atomic(csv_path, header, lines)
    print(f"wrote {len(lines)} rows to {csv_path}")
    prefix = svg_prefix or spec.out_svg
    records = [rec for rec, _ in results]
    if prefix:
        for svg_path in emit_svg(records, prefix):
            print(f"wrote {svg_path}")
    return records


def _svg_panel(records: list, h: float) -> str:
    taus = [r.tau for r in records]
    tmin, tmax = min(taus), max(taus)
    tspan = (tmax - tmin) or 1.0
    values = [getattr(r, key) for r in records for key in SERIES]
    vmin, vmax = min(values), max(values)
    pad = 0.05 * ((vmax - vmin) or 1.0)
    vmin, vmax = vmin - pad, vmax + pad
    vspan = vmax - vmin
    x0, x1, y0, y1 = 70.0, 630.0, 540.0, 60.0

    def px(tau):
        return x0 + (tau - tmin) / tspan * (x1 - x0)

    def py_(v):
        return y0 + (v - vmin) / vspan * (y1 - y0)

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600">',
        '<rect x="0" y="0" width="800" height="600" fill="white"/>',
        f'<text x="350" y="30" font-size="18" font-family="sans-serif">H = {h:.12g}</text>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="1"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1"/>',
        '<text x="340" y="580" font-size="14" font-family="sans-serif">tau</text>',
    ]
    for i in range(6):
        tau = tmin + tspan * i / 5.0
        x = px(tau)
        parts.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 6}" stroke="black" stroke-width="1"/>')
        parts.append(
            f'<text x="{x:.2f}" y="{y0 + 22}" font-size="12" font-family="sans-serif" text-anchor="middle">{tau:.3g}</text>'
        )
        v = vmin + vspan * i / 5.0
        y = py_(v)
        parts.append(f'<line x1="{x0 - 6}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black" stroke-width="1"/>')
        parts.append(
            f'<text x="{x0 - 10}" y="{y + 4:.2f}" font-size="12" font-family="sans-serif" text-anchor="end">{v:.3g}</text>'
        )
    for key in SERIES:
        pts = " ".join(f"{px(r.tau):.2f},{py_(getattr(r, key)):.2f}" for r in records)
        parts.append(
            f'<polyline fill="none" stroke="{SERIES_COLORS[key]}" stroke-width="2" points="{pts}"/>'
        )
    for i, key in enumerate(SERIES):
        y = 80 + 24 * i
        parts.append(
            f'<line x1="650" y1="{y}" x2="690" y2="{y}" stroke="{SERIES_COLORS[key]}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="698" y="{y + 4}" font-size="14" font-family="sans-serif">{SERIES_LABELS[key]}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def emit_svg(records, path_prefix: str):
    """Write one 800x600 static SVG panel per hurst value; returns the paths."""
    records = list(records)
    if not records:
        raise EmptyInput("no records to plot")
    by_h = {}
    for rec in records:
        by_h.setdefault(rec.hurst, []).append(rec)
    written = []
    for h, group in by_h.items():
        svg = _svg_panel(group, h)
        out = f"{path_prefix}_H{h:.12g}.svg"
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(svg + "\n")
        written.append(out)
    return written


@dataclass
class _Check:
    name: str
    worst: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.bound


def _validate_checks(tolerance: float):
    checks = []
    rho0 = initial_state(InitialStateSpec(1.0))
    presets = {kind: ChannelPartition.preset(kind) for kind in CONFIGS}

    for n, bound in ((1024, 1e-3), (4096, 1e-4)):
        worst = 0.0
        for tau, h in VALIDATE_QUAD_GRID:
            exact = beta_fgn(tau, h).value
            rel = abs(beta_quadrature(tau, h, n) - exact) / max(exact, 1e-12)
            worst = max(worst, rel)
        checks.append(_Check(f"beta quadrature n={n}", worst, bound))

    for kind in CONFIGS:
        worst_er = 0.0
        worst_py = 0.0
        for b in VALIDATE_BETAS:
            rho_t = apply_fgn_map(rho0, presets[kind], float(b))
            worst_er = max(worst_er, abs(witness(rho_t, rho0) - eval_closed(ClosedFormId(kind, "ER"), b)))
            worst_py = max(worst_py, abs(purity(rho_t) - eval_closed(ClosedFormId(kind, "PY"), b)))
        checks.append(_Check(f"closed form {kind} ER", worst_er, tolerance))
        checks.append(_Check(f"closed form {kind} PY", worst_py, tolerance))

    worst = 0.0
    for kind in CONFIGS:
        rho_t = apply_fgn_map(rho0, presets[kind], 0.0)
        worst = max(
            worst,
            abs(witness(rho_t, rho0) - 0.5),
            abs(npartite_negativity(rho_t) - 1.0),
            abs(purity(rho_t) - 1.0),
            abs(vn_entropy(rho_t)),
        )
    checks.append(_Check("anchors beta=0", worst, tolerance))

    worst = 0.0
    for kind in CONFIGS:
        for measure in ("ER", "PY"):
            fid = ClosedFormId(kind, measure)
            worst = max(worst, abs(eval_closed(fid, 20.0) - asymptote(fid)))
    checks.append(_Check("asymptote of closed forms", worst, 1e-8))

    worst = 0.0
    for kind in CONFIGS:
        rho_t = apply_fgn_map(rho0, presets[kind], 20.0)
        worst = max(
            worst,
            abs(witness(rho_t, rho0) - asymptote(ClosedFormId(kind, "ER"))),
            abs(purity(rho_t) - asymptote(ClosedFormId(kind, "PY"))),
        )
    checks.append(_Check("asymptote of map at beta=20", worst, 1e-6))

    worst = 0.0
    for kind in CONFIGS:
        off = ~support_mask(kind)
        for b in (0.2, 2.0, 20.0):
            rho_t = apply_fgn_map(rho0, presets[kind], b)
            worst = max(worst, float(np.abs(rho_t.data[off]).max()))
    checks.append(_Check("coherence support patterns", worst, 1e-12))

    bound = 3.0 / np.sqrt(VALIDATE_MC_SAMPLES)
    worst = 0.0
    for kind in CONFIGS:
        exact = apply_fgn_map(rho0, presets[kind], VALIDATE_MC_BETA).data
        devs = []
        for seed in range(VALIDATE_MC_SEEDS):
            rng = np.random.default_rng(np.random.PCG64(mix64(seed, 0)))
            approx = mc_map(rho0, presets[kind], VALIDATE_MC_BETA, VALIDATE_MC_SAMPLES, rng)
            devs.append(float(np.abs(approx.data - exact).max()))
        worst = max(worst, float(np.median(devs)))
    checks.append(_Check(f"mc convergence M={VALIDATE_MC_SAMPLES}", worst, bound))
    return checks


def run_validate(tolerance: float = 1e-9, report_path: str | None = None) -> int:
    """Run the oracle suite; print a pass/fail table; 0 iff everything passed."""
    if tolerance <= 0.0:
        raise ConfigError(f"tolerance must be positive, got {tolerance}")
    checks = _validate_checks(tolerance)
    width = max(len(c.name) for c in checks)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{c.name:<{width}}  worst {c.worst:.3e}  bound {c.bound:.1e}  {status}")
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{n_fail} of {len(checks)} checks failed" if n_fail else f"all {len(checks)} checks passed")
    report = "\n".join(lines)
    print(report)
    if report_path:
        with open(report_path, "w", encoding="utf-8", newline="") as f:
            f.write(report + "\n")
    return 1 if n_fail else 0


def _run_mc_command(spec_path: str, samples: int) -> int:
    if samples < 1:
        raise ConfigError(f"--samples must be at least 1, got {samples}")
    base = parse_sweep_spec(spec_path)
    spec = SweepSpec(
        config=base.config,
        hurst=base.hurst,
        tau_min=base.tau_min,
        tau_max=base.tau_max,
        tau_steps=base.tau_steps,
        p=base.p,
        mc_samples=samples,
        seed=base.seed,
        out_csv=base.out_csv,
        out_svg=None,
    )
    part = ChannelPartition.preset(spec.config)
    rho0 = initial_state(InitialStateSpec(spec.p))
    taus = spec.tau_grid()
    bound = 5.0 / np.sqrt(samples)
    worst = 0.0
    lines = []
    row = 0
    for h in spec.hurst:
        for tau in taus:
            rec, mc = _evaluate_row(spec, part, rho0, h, float(tau), row)
            for key in SERIES:
                worst = max(worst, abs(getattr(mc, key) - getattr(rec, key)))
            lines.append(_csv_line(rec, mc))
            row += 1
    csv_path = spec.out_csv
    if csv_path:
        _write_csv_atomic(csv_path, CSV_BASE_HEADER + CSV_MC_HEADER, lines)
        print(f"wrote {len(lines)} rows to {csv_path}")
    status = "PASS" if worst <= bound else "FAIL"
    print(f"mc vs analytic: worst measure deviation {worst:.3e}  bound {bound:.3e}  {status}")
    return 0 if worst <= bound else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fgnsim",
        description="Dephasing dynamics of a four-qubit GHZ-class state in classical "
        "channels driven by fractional Gaussian noise.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep from a spec file")
    p_sweep.add_argument("--spec", required=True, help="path to a key = value sweep spec")
    p_sweep.add_argument("--out", help="CSV output path (overrides out_csv in the spec)")
    p_sweep.add_argument("--svg", help="SVG path prefix, one panel per hurst value")

    p_val = sub.add_parser("validate", help="run the built-in oracle suite")
    p_val.add_argument("--tol", type=float, default=1e-9, help="closed-form tolerance (default 1e-9)")
    p_val.add_argument("--report", help="also write the pass/fail table to this file")

    p_mc = sub.add_parser("mc", help="Monte Carlo cross-check of a sweep spec")
    p_mc.add_argument("--spec", required=True, help="path to a key = value sweep spec")
    p_mc.add_argument("--samples", type=int, required=True, help="trajectories per grid row")

    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            run_sweep(parse_sweep_spec(args.spec), out_csv=args.out, svg_prefix=args.svg)
            return 0
        if args.command == "validate":
            return run_validate(tolerance=args.tol, report_path=args.report)
        if args.command == "mc":
            return _run_mc_command(args.spec, args.samples)
    except ConfigError as exc:
        print(f"fgnsim: config error: {exc}", file=sys.stderr)
        return 2
    except (FgnsimError, OSError) as exc:
        print(f"fgnsim: error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
