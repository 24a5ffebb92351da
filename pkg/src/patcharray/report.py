"""End-to-end pipeline on a geometry and the comparison against published figures."""
from __future__ import annotations

from dataclasses import dataclass

from .geometry import ArrayGeometry
from .media import GHZ, InvalidInputError
from .network import (
    DEFAULT_SWEEP,
    FrequencySweep,
    LadderModel,
    build_series_fed_array,
    match_array,
    node_voltages,
    s11_sweep,
)
from .radiation import (
    BeamMetrics,
    MetricUndefinedError,
    ExcitationSet,
    beam_metrics,
    directivity,
    gain,
    total_pattern,
)

WIDE_SWEEP = (10e9, 26e9, 4001)


@dataclass(frozen=True)
class PublishedValue:
    metric: str
    value: float
    unit: str
    citation: str


# Two bandwidth and two gain figures are published for the same design; both
# are kept as separate rows rather than reconciled.
PUBLISHED = (
    PublishedValue("resonance", 18.0, "GHz", "published design, abstract: resonant frequency 18 GHz"),
    PublishedValue("return loss", -16.0, "dB", "published design, comparison table: return loss -16"),
    PublishedValue("bandwidth", 0.7, "GHz", "published design, abstract: -10 dB bandwidth over 700 MHz"),
    PublishedValue("bandwidth", 1.0, "GHz", "published design, reflection results: -10 dB bandwidth 1 GHz"),
    PublishedValue("gain", 7.51, "dBi", "published design, abstract: gain 7.51 dBi"),
    PublishedValue("gain", 7.91, "dBi", "published design, comparison table: gain 7.91 dBi"),
)


@dataclass(frozen=True)
class ReportRow:
    metric: str
    computed: float | None
    published: float
    unit: str
    citation: str

    @property
    def deviation(self) -> float | None:
        return None if self.computed is None else self.computed - self.published


@dataclass(frozen=True)
class PipelineResult:
    geometry: ArrayGeometry
    model: LadderModel
    matched: LadderModel
    unmatched_sweep: FrequencySweep
    matched_sweep: FrequencySweep
    bandwidth: float | None
    bandwidth_clipped: bool
    array_directivity: float
    array_gain_dbi: float
    single_gain_dbi: float
    e_cut: BeamMetrics | None
    h_cut: BeamMetrics | None
    efficiency: float


def excitation_for(g: ArrayGeometry, model: LadderModel, kind: str = "uniform") -> ExcitationSet:
    if kind == "uniform":
        return ExcitationSet.uniform(g.element_count, g.spacing)
    if kind == "ladder":
        return ExcitationSet(node_voltages(model, g.design_frequency), g.spacing)
    raise InvalidInputError(f"unknown excitation {kind!r}")


def _metrics_or_none(pattern, plane: str) -> BeamMetrics | None:
    try:
        return beam_metrics(pattern, plane)
    except MetricUndefinedError:
        return None


def run_pipeline(
    g: ArrayGeometry, excitation: str = "uniform", threads: int | None = None
) -> PipelineResult:
    s = g.substrate()
    f0 = g.design_frequency
    model = build_series_fed_array(g, s)
    matched = match_array(model, f0, s)
    bare = s11_sweep(model, *DEFAULT_SWEEP, threads=threads)
    sweep = s11_sweep(matched, *DEFAULT_SWEEP, threads=threads)
    bw, clipped = sweep.bandwidth_10db, sweep.band_clipped
    if clipped:
        wide = s11_sweep(matched, *WIDE_SWEEP, threads=threads)
        bw, clipped = wide.bandwidth_10db, wide.band_clipped

    eff = model.patch.efficiency
    ex = excitation_for(g, model, excitation)
    pattern = total_pattern(g, s, ex, f0)
    d_array = directivity(pattern)
    single = total_pattern(g, s, ExcitationSet.uniform(1, g.spacing), f0)
    return PipelineResult(
        geometry=g,
        model=model,
        matched=matched,
        unmatched_sweep=bare,
        matched_sweep=sweep,
        bandwidth=bw,
        bandwidth_clipped=clipped,
        array_directivity=d_array,
        array_gain_dbi=gain(d_array, eff),
        single_gain_dbi=gain(directivity(single), eff),
        e_cut=_metrics_or_none(pattern, "e"),
        h_cut=_metrics_or_none(pattern, "h"),
        efficiency=eff,
    )


def comparison_rows(r: PipelineResult) -> list[ReportRow]:
    computed = {
        "resonance": r.matched_sweep.f_at_min / GHZ,
        "return loss": r.matched_sweep.min_s11_db,
        "bandwidth": None if r.bandwidth is None else r.bandwidth / GHZ,
        "gain": r.array_gain_dbi,
    }
    return [ReportRow(p.metric, computed[p.metric], p.value, p.unit, p.citation) for p in PUBLISHED]


def _num(x: float | None, spec: str = ".3f") -> str:
    return "n/a" if x is None else format(x, spec)


def fan_beam(r: PipelineResult) -> bool:
    """Narrower along the array axis than across it."""
    return r.e_cut is not None and r.h_cut is not None and r.e_cut.hpbw < r.h_cut.hpbw


def format_report(r: PipelineResult) -> str:
    rows = comparison_rows(r)
    lines = [
        f"{'metric':<12} {'computed':>10} {'published':>9} {'unit':<4} {'deviation':>10}  source",
    ]
    for row in rows:
        lines.append(
            f"{row.metric:<12} {_num(row.computed):>10} {row.published:>9.3f} {row.unit:<4} "
            f"{_num(row.deviation, '+.3f'):>10}  {row.citation}"
        )
    fan = fan_beam(r)
    e_bw = "undefined" if r.e_cut is None else f"{r.e_cut.hpbw:.2f} deg"
    h_bw = "undefined" if r.h_cut is None else f"{r.h_cut.hpbw:.2f} deg"
    lines += [
        "",
        f"single-patch gain      {r.single_gain_dbi:.3f} dBi",
        f"array gain             {r.array_gain_dbi:.3f} dBi (directivity x efficiency {r.efficiency:.4f})",
        f"array > single patch   {'yes' if r.array_gain_dbi > r.single_gain_dbi else 'NO'}",
        f"HPBW array-axis cut    {e_bw}",
        f"HPBW transverse cut    {h_bw}",
        f"fan beam               {'yes' if fan else 'NO'}",
        f"unmatched min S11      {r.unmatched_sweep.min_s11_db:.2f} dB "
        f"at {r.unmatched_sweep.f_at_min / GHZ:.3f} GHz",
    ]
    if r.bandwidth_clipped:
        lines.append("note: -10 dB band reaches the sweep limit; bandwidth is a lower bound")
    return "\n".join(lines) + "\n"
