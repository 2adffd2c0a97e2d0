"""Command-line front end: ``noma-drn {sweep,complexity,analyze,presets}``.

Exit codes: 0 success, 1 configuration error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections import defaultdict
from pathlib import Path

from . import analysis
from .csvio import format_csv, parse_csv
from .detectors import jml_ops, sic_ops
from .errors import ConfigurationError
from .kernels import BACKENDS
from .scenario import list_presets, preset_text, resolve_scenario
from .simulator import DETECTORS, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2
COMPLEXITY_ORDERS = (2, 4, 8, 16)
COMPOSITION_MIN_ERRORS = 100


def parse_range(text: str) -> tuple[float, float, float]:
    """``from:to:step`` (inclusive of ``to`` when it lies on the grid)."""
    try:
        parts = [float(p) for p in text.split(":")]
    except ValueError:
        raise ConfigurationError(f"bad range {text!r}; expected from:to:step") from None
    if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
        raise ConfigurationError(f"bad range {text!r}; expected from:to:step with step > 0")
    return parts[0], parts[1], parts[2]


def snr_grid(text: str) -> tuple[float, ...]:
    start, stop, step = parse_range(text)
    n = int((stop - start) / step + 1e-9)
    return tuple(round(start + i * step, 10) for i in range(n + 1))


def parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise ConfigurationError(f"bad window {text!r}; expected lo:hi") from None
    if hi <= lo:
        raise ConfigurationError(f"bad window {text!r}; need lo < hi")
    return lo, hi


def complexity_table(max_m: int) -> str:
    if max_m not in COMPLEXITY_ORDERS:
        raise ConfigurationError(f"--max-m must be one of {COMPLEXITY_ORDERS}, got {max_m}")
    head = ("M", "SIC add", "SIC mul", "SIC cmp", "SIC total",
            "JML add", "JML mul", "JML cmp", "JML total")
    rows = [head]
    for m in COMPLEXITY_ORDERS:
        if m > max_m:
            break
        s, j = sic_ops(m), jml_ops(m)
        rows.append(tuple(str(v) for v in (
            m, s.adders, s.multipliers, s.comparators, s.total,
            j.adders, j.multipliers, j.comparators, j.total,
        )))
    widths = [max(len(r[i]) for r in rows) for i in range(len(head))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    cfg = resolve_scenario(args.scenario)
    changes = {}
    if args.snr:
        changes["snr_grid_db"] = snr_grid(args.snr)
    for attr, key in (("trials", "trials"), ("seed", "seed"), ("detector", "destination_detector"),
                      ("early_stop_errors", "early_stop_errors")):
        value = getattr(args, attr)
        if value is not None:
            changes[key] = value
    if args.workers < 1:
        raise ConfigurationError("--workers must be >= 1")
    cfg = cfg.with_(**changes)
    records = run_sweep(cfg, per_phase=args.per_phase, workers=args.workers, backend=args.backend)
    text = format_csv(records)
    # written only after the whole sweep succeeded
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_complexity(args) -> int:
    sys.stdout.write(complexity_table(args.max_m))
    return EXIT_OK


def _fmt(x):
    return "n/a" if x is None else f"{x:.3f}"


def analyze_report(records, low_window, high_window, min_errors=analysis.MIN_ERRORS) -> str:
    groups = defaultdict(list)
    for r in records:
        groups[(r.scenario, r.detector)].append(r)
    out = []
    for (scenario, detector), recs in groups.items():
        recs.sort(key=lambda r: r.snr_db)
        div = analysis.estimate_diversity(recs, low_window, high_window, min_errors)
        floor = analysis.detect_floor(recs, high_window, min_errors)
        out.append(f"[{scenario} / {detector}]")
        for mid, slope in div.slopes:
            out.append(f"  slope @ {mid:g} dB: {slope:.3f}")
        out.append(f"  low-medium slope {low_window[0]:g}-{low_window[1]:g} dB: "
                   f"{_fmt(div.low_medium_slope)}")
        out.append(f"  high-SNR slope {high_window[0]:g}-{high_window[1]:g} dB: "
                   f"{_fmt(div.high_snr_slope)}")
        ratio = "" if floor.ratio is None else f" (ratio {floor.ratio:.3g}, " \
            f"{floor.snr_from:g}->{floor.snr_to:g} dB)"
        out.append(f"  floor: {floor.verdict}{ratio}")
        checks = analysis.composition_checks(recs)
        if not checks:
            out.append("  two-hop composition check: skipped (no per-phase columns)")
            continue
        for c in checks:
            if c.errors < COMPOSITION_MIN_ERRORS:
                status = "skip"
            else:
                status = "pass" if c.passed() else "FAIL"
            out.append(
                f"  composition x{c.stream} @ {c.snr_db:g} dB: measured {c.measured:.4g} "
                f"predicted {c.predicted:.4g} product-form {c.product_form:.4g} "
                f"z={c.z:+.2f} [{status}]"
            )
    return "\n".join(out) + "\n"


def cmd_analyze(args) -> int:
    path = Path(args.csv)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read {path}: {exc}") from None
    records = parse_csv(text, str(path))
    report = analyze_report(records, parse_window(args.low_window),
                            parse_window(args.high_window), args.min_errors)
    sys.stdout.write(report)
    return EXIT_OK


def cmd_presets(args) -> int:
    if args.show:
        sys.stdout.write(preset_text(args.show))
    else:
        sys.stdout.write("\n".join(list_presets()) + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="noma-drn", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="run a BER sweep and emit CSV")
    s.add_argument("scenario", help="scenario file path or preset name")
    s.add_argument("--snr", help="SNR grid in dB as from:to:step")
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--detector", choices=DETECTORS)
    s.add_argument("--per-phase", action="store_true",
                   help="also measure phase-1 and genie-aided phase-2 BER")
    s.add_argument("--early-stop-errors", type=int)
    s.add_argument("--output", "-o")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--backend", choices=sorted(BACKENDS), help="trial kernel implementation")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("complexity", help="print detector operation counts")
    c.add_argument("--max-m", type=int, default=16)
    c.set_defaults(func=cmd_complexity)

    a = sub.add_parser("analyze", help="diversity, floor and composition report for a CSV")
    a.add_argument("csv")
    a.add_argument("--low-window", default="0:20")
    a.add_argument("--high-window", default="40:50")
    a.add_argument("--min-errors", type=int, default=analysis.MIN_ERRORS)
    a.set_defaults(func=cmd_analyze)

    pr = sub.add_parser("presets", help="list shipped scenario presets")
    pr.add_argument("--show", metavar="NAME", help="print one preset file")
    pr.set_defaults(func=cmd_presets)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
