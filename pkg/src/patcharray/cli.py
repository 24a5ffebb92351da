"""Command-line front end: design, analyze, pattern, report.

Exit codes: 0 ok, 2 usage/validation, 3 numerical failure, 4 I/O.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .fileio import atomic_write_text
from .geometry import ArrayGeometry, load_geometry, write_geometry
from .media import GHZ, MM, NumericalError, Substrate
from .microstrip import synthesize_width
from .network import DEFAULT_SWEEP, build_series_fed_array, match_array, s11_sweep
from .patch import design_patch
from .radiation import (
    MetricUndefinedError,
    beam_metrics,
    directivity,
    gain,
    pattern_cut,
    to_db,
    total_pattern,
)
from .report import excitation_for, format_report, run_pipeline
from .svg import render_cut_svg, render_sweep_svg
from .touchstone import write_touchstone

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="patcharray", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("design", help="synthesize patch dimensions and write a geometry file")
    d.add_argument("--f0-ghz", type=float, required=True)
    d.add_argument("--er", type=float, required=True)
    d.add_argument("--h-mm", type=float, required=True)
    d.add_argument("--tand", type=float, default=0.0009)
    d.add_argument("--elements", type=_positive_int, default=6)
    d.add_argument("--feed-length-mm", type=float, default=1.0)
    d.add_argument("--feed-width-mm", type=float, default=0.2)
    d.add_argument("--margin-mm", type=float, default=0.7, help="ground margin around the patches")
    d.add_argument("--out", default="design.json", help="geometry file to write")

    a = sub.add_parser("analyze", help="S11 sweep of the ladder model")
    a.add_argument("geometry")
    a.add_argument("--fstart-ghz", type=float, default=DEFAULT_SWEEP[0] / GHZ)
    a.add_argument("--fstop-ghz", type=float, default=DEFAULT_SWEEP[1] / GHZ)
    a.add_argument("--points", type=int, default=DEFAULT_SWEEP[2])
    a.add_argument("--match", action="store_true", help="insert a quarter-wave match to 50 ohm")
    a.add_argument("--out", default=".")
    a.add_argument("--threads", type=_positive_int, default=None)

    r = sub.add_parser("pattern", help="far-field cuts, directivity and gain")
    r.add_argument("geometry")
    r.add_argument("--cut", choices=("e", "h"), default=None, help="default: both")
    r.add_argument("--excitation", choices=("uniform", "ladder"), default="uniform")
    r.add_argument("--out", default=".")

    c = sub.add_parser("report", help="full pipeline compared with the published figures")
    c.add_argument("geometry")
    c.add_argument("--excitation", choices=("uniform", "ladder"), default="uniform")
    c.add_argument("--threads", type=_positive_int, default=None)
    return p


def cmd_design(args) -> int:
    s = Substrate(args.er, args.tand, args.h_mm * MM)
    f0 = args.f0_ghz * GHZ
    pd = design_patch(f0, s)
    feed = synthesize_width(50.0, s)
    n = args.elements
    span = n * pd.length / MM + (n - 1) * args.feed_length_mm
    g = ArrayGeometry(
        patch_length_mm=pd.length / MM,
        patch_width_mm=pd.width / MM,
        ground_length_mm=span + 2 * args.margin_mm,
        ground_width_mm=pd.width / MM + 2 * args.margin_mm,
        ground_thickness_mm=0.5,
        feed_length_mm=args.feed_length_mm,
        feed_width_mm=args.feed_width_mm,
        substrate_height_mm=args.h_mm,
        rel_permittivity=args.er,
        loss_tangent=args.tand,
        element_count=n,
        design_frequency_ghz=args.f0_ghz,
    )
    rows = [
        ("W", f"{pd.width / MM:.2f} mm"),
        ("L", f"{pd.length / MM:.2f} mm"),
        ("eps_eff", f"{pd.eps_eff:.4f}"),
        ("delta_L", f"{pd.delta_l / MM:.4f} mm"),
        ("f0", f"{pd.f0 / GHZ:.4f} GHz"),
        ("G1", f"{pd.g1:.6e} S"),
        ("G12", f"{pd.g12:.6e} S"),
        ("Rin_edge", f"{pd.rin_edge:.2f} ohm"),
        ("Q_rad", f"{pd.q_rad:.3f}"),
        ("Q_cond", f"{pd.q_cond:.1f}"),
        ("Q_diel", f"{pd.q_diel:.1f}"),
        ("Q_total", f"{pd.q_total:.3f}"),
        ("efficiency", f"{pd.efficiency:.4f}"),
        ("W_50ohm", f"{feed / MM:.3f} mm"),
    ]
    for k, v in rows:
        print(f"{k:<11}{v}")
    write_geometry(g, args.out)
    print(f"geometry   {args.out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = load_geometry(args.geometry)
    s = g.substrate()
    model = build_series_fed_array(g, s)
    if args.match:
        model = match_array(model, g.design_frequency, s)
    sweep = s11_sweep(
        model, args.fstart_ghz * GHZ, args.fstop_ghz * GHZ, args.points, threads=args.threads
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_touchstone(sweep, out / "array.s1p", g.digest())
    atomic_write_text(out / "s11.svg", render_sweep_svg(sweep, "S11 (ladder model)"))
    if model.matching is not None:
        t = model.matching
        print(f"match       Z0t={t.z0:.3f} ohm  W={t.width / MM:.4f} mm  len={t.length / MM:.4f} mm")
    print(f"resonance   {sweep.f_at_min / GHZ:.4f} GHz")
    print(f"min S11     {sweep.min_s11_db:.2f} dB")
    if sweep.band_edges_10db is None:
        print("bandwidth   none (S11 never below -10 dB)")
    else:
        lo, hi = sweep.band_edges_10db
        note = " (clipped at sweep limit)" if sweep.band_clipped else ""
        print(f"bandwidth   {(hi - lo) / 1e6:.1f} MHz  [{lo / GHZ:.4f}, {hi / GHZ:.4f}] GHz{note}")
    return EXIT_OK


def _cut_table(angles, level_db) -> str:
    return "".join(f"{a:.2f}\t{v:.4f}\n" for a, v in zip(angles, level_db))


def cmd_pattern(args) -> int:
    g = load_geometry(args.geometry)
    s = g.substrate()
    model = build_series_fed_array(g, s)
    ex = excitation_for(g, model, args.excitation)
    p = total_pattern(g, s, ex, g.design_frequency)
    d = directivity(p)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"directivity {10 * np.log10(d):.3f} dBi")
    print(f"gain        {gain(d, model.patch.efficiency):.3f} dBi")
    for plane in (args.cut,) if args.cut else ("e", "h"):
        angles, u = pattern_cut(p, plane)
        level = to_db(u, p.peak())
        atomic_write_text(out / f"cut_{plane}.tsv", _cut_table(angles, level))
        atomic_write_text(out / f"cut_{plane}.svg", render_cut_svg(angles, level, f"{plane.upper()}-plane cut"))
        try:
            m = beam_metrics(p, plane)
        except MetricUndefinedError as exc:
            print(f"{plane}-cut       metrics undefined: {exc}")
            continue
        sll = "none" if m.sll is None else f"{m.sll:.2f} dB"
        print(f"{plane}-cut       HPBW {m.hpbw:.2f} deg  SLL {sll}  peak {m.peak_direction:.2f} deg")
    return EXIT_OK


def cmd_report(args) -> int:
    g = load_geometry(args.geometry)
    sys.stdout.write(format_report(run_pipeline(g, args.excitation, args.threads)))
    return EXIT_OK


COMMANDS = {"design": cmd_design, "analyze": cmd_analyze, "pattern": cmd_pattern, "report": cmd_report}


def _fail(kind: str, exc: BaseException, code: int) -> int:
    msg = " ".join(str(exc).split())
    print(f"patcharray: error: {kind}: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except NumericalError as exc:
        return _fail("numerical", exc, EXIT_NUMERICAL)
    except ValueError as exc:
        return _fail("validation", exc, EXIT_USAGE)
    except OSError as exc:
        return _fail("io", exc, EXIT_IO)


if __name__ == "__main__":
    sys.exit(main())
