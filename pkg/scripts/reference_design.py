"""Run the full pipeline on the bundled 18 GHz six-patch layout and dump artifacts.

    python scripts/reference_design.py [OUT_DIR]
"""
import sys
from pathlib import Path

from patcharray.fileio import atomic_write_text
from patcharray.geometry import paper_geometry
from patcharray.radiation import pattern_cut, to_db, total_pattern
from patcharray.report import excitation_for, format_report, run_pipeline
from patcharray.svg import render_cut_svg, render_sweep_svg
from patcharray.touchstone import write_touchstone


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    g = paper_geometry()
    result = run_pipeline(g)
    print(format_report(result))
    write_touchstone(result.unmatched_sweep, out / "unmatched.s1p", g.digest())
    write_touchstone(result.matched_sweep, out / "matched.s1p", g.digest())
    atomic_write_text(out / "s11_unmatched.svg", render_sweep_svg(result.unmatched_sweep, "S11, no match"))
    atomic_write_text(out / "s11_matched.svg", render_sweep_svg(result.matched_sweep, "S11, quarter-wave match"))
    for kind in ("uniform", "ladder"):
        p = total_pattern(g, None, excitation_for(g, result.model, kind), g.design_frequency)
        for plane in "eh":
            ang, u = pattern_cut(p, plane)
            atomic_write_text(
                out / f"cut_{plane}_{kind}.svg",
                render_cut_svg(ang, to_db(u, p.peak()), f"{plane.upper()}-cut, {kind} excitation"),
            )
    print(f"artifacts in {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "out/reference"))
