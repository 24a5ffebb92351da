"""ABCD two-port algebra and the series-fed ladder model of the array.

Port 1 is always the feed side. The ladder is read left to right from the
feed: optional matching transformer, then patches (shunt loads) joined by
interconnect lines, open-circuited after the last element.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import reduce
from typing import Protocol, Sequence, Union

import numpy as np

from .geometry import ArrayGeometry, validate_geometry
from .media import (
    C0,
    MM,
    InvalidInputError,
    NumericalError,
    Substrate,
    ValidationError,
    magnitude_db,
    reflection_coefficient,
)
from .microstrip import MicrostripLine, guided_wavelength, synthesize_width, eps_eff
from .patch import PatchDesign, RlcLoad, analyze_patch

Z_REF = 50.0
DEFAULT_SWEEP = (16e9, 20e9, 2001)


@dataclass(frozen=True)
class TwoPortABCD:
    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> "TwoPortABCD":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    def __matmul__(self, other: "TwoPortABCD") -> "TwoPortABCD":
        return TwoPortABCD(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)


class _Open:
    def __repr__(self):
        return "OPEN"


OPEN = _Open()


def abcd_line(z0: float, electrical_length: float) -> TwoPortABCD:
    """Lossless line of characteristic impedance ``z0`` and phase length in radians."""
    if not z0 > 0:
        raise InvalidInputError(f"line impedance must be positive, got {z0!r}")
    cos_t = math.cos(electrical_length)
    sin_t = math.sin(electrical_length)
    return TwoPortABCD(complex(cos_t), 1j * z0 * sin_t, 1j * sin_t / z0, complex(cos_t))


def abcd_shunt(y: complex) -> TwoPortABCD:
    return TwoPortABCD(1 + 0j, 0j, complex(y), 1 + 0j)


def cascade(elements: Sequence[TwoPortABCD]) -> TwoPortABCD:
    if not elements:
        raise InvalidInputError("cascade needs at least one two-port")
    return reduce(lambda left, right: left @ right, elements)


def input_impedance(m: TwoPortABCD, z_load, f: float | None = None) -> complex:
    """Impedance at port 1 with ``z_load`` (or ``OPEN``) on port 2."""
    if z_load is OPEN:
        num, den = m.a, m.c
    else:
        num, den = m.a * z_load + m.b, m.c * z_load + m.d
    if den == 0 or not np.isfinite(den):
        where = f" at {f:.6g} Hz" if f is not None else ""
        raise NumericalError(f"singular input impedance{where}")
    return complex(num / den)


class ShuntLoad(Protocol):
    def impedance(self, f: float) -> complex: ...


@dataclass(frozen=True)
class FixedLoad:
    """Frequency-independent shunt impedance."""

    z: complex

    def impedance(self, f: float) -> complex:
        return complex(self.z)


@dataclass(frozen=True)
class LineSegment:
    z0: float
    length: float
    eps_eff: float

    def __post_init__(self):
        if not self.z0 > 0:
            raise InvalidInputError(f"line impedance must be positive, got {self.z0!r}")
        if self.length < 0:
            raise InvalidInputError(f"line length must be >= 0, got {self.length!r}")

    def electrical_length(self, f: float) -> float:
        return 2 * math.pi * f * math.sqrt(self.eps_eff) * self.length / C0

    def abcd(self, f: float) -> TwoPortABCD:
        return abcd_line(self.z0, self.electrical_length(f))


@dataclass(frozen=True)
class Transformer(LineSegment):
    """Quarter-wave matching section; ``width`` is its synthesized strip width."""

    width: float = 0.0


Element = Union[LineSegment, RlcLoad, FixedLoad]


def _element_abcd(el, f: float) -> TwoPortABCD:
    if isinstance(el, LineSegment):
        return el.abcd(f)
    z = el.impedance(f)
    if z == 0:
        raise NumericalError(f"short-circuit shunt load at {f:.6g} Hz")
    return abcd_shunt(1 / z)


@dataclass(frozen=True)
class LadderModel:
    elements: tuple
    z_ref: float = Z_REF
    matching: Transformer | None = None
    patch: PatchDesign | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.elements:
            raise InvalidInputError("ladder has no elements")
        if not self.z_ref > 0:
            raise InvalidInputError("reference impedance must be positive")

    @property
    def loads(self) -> list:
        return [el for el in self.elements if not isinstance(el, LineSegment)]

    def abcd(self, f: float) -> TwoPortABCD:
        chain = [_element_abcd(el, f) for el in self.elements]
        if self.matching is not None:
            chain.insert(0, self.matching.abcd(f))
        return cascade(chain)

    def input_impedance(self, f: float) -> complex:
        return input_impedance(self.abcd(f), OPEN, f)

    def with_matching(self, t: Transformer | None) -> "LadderModel":
        return replace(self, matching=t)


def build_series_fed_array(g: ArrayGeometry, s: Substrate | None = None) -> LadderModel:
    validate_geometry(g)
    if g.span_mm > g.ground_length_mm + 1e-9:
        raise ValidationError("ground_length_mm", "array span exceeds ground length")
    s = s if s is not None else g.substrate()
    design = analyze_patch(g.patch_width_mm * MM, g.patch_length_mm * MM, s)
    load = design.rlc()
    line = MicrostripLine(g.feed_width_mm * MM, g.feed_length_mm * MM, s)
    seg = LineSegment(line.z0, line.length, line.eps_eff)
    elements: list = []
    for n in range(g.element_count):
        if n:
            elements.append(seg)
        elements.append(load)
    return LadderModel(tuple(elements), patch=design)


@dataclass(frozen=True)
class FrequencySweep:
    frequencies: np.ndarray
    s11: np.ndarray
    f_at_min: float
    min_s11_db: float
    band_edges_10db: tuple[float, float] | None
    band_clipped: bool = False

    def __post_init__(self):
        if len(self.frequencies) < 2 or len(self.frequencies) != len(self.s11):
            raise InvalidInputError("sweep arrays must have equal length >= 2")
        if np.any(np.diff(self.frequencies) <= 0):
            raise InvalidInputError("sweep frequencies must be strictly increasing")

    @property
    def s11_db(self) -> np.ndarray:
        return np.array([magnitude_db(abs(x)) for x in self.s11])

    @property
    def bandwidth_10db(self) -> float | None:
        if self.band_edges_10db is None:
            return None
        lo, hi = self.band_edges_10db
        return hi - lo


def _crossing(f1: float, d1: float, f2: float, d2: float, level: float) -> float:
    return f1 + (level - d1) * (f2 - f1) / (d2 - d1)


def band_edges(freqs: np.ndarray, db: np.ndarray, level: float = -10.0):
    """Edges of the contiguous band around the global minimum where db <= level.

    Returns ``(edges, clipped)``; ``clipped`` is set when the band runs into
    the sweep limits, in which case that limit stands in for the edge.
    """
    i_min = int(np.argmin(db))
    if db[i_min] > level:
        return None, False
    clipped = False
    i = i_min
    while i > 0 and db[i - 1] <= level:
        i -= 1
    if i == 0:
        lo, clipped = float(freqs[0]), True
    else:
        lo = _crossing(freqs[i - 1], db[i - 1], freqs[i], db[i], level)
    j = i_min
    while j < len(db) - 1 and db[j + 1] <= level:
        j += 1
    if j == len(db) - 1:
        hi, clipped = float(freqs[-1]), True
    else:
        hi = _crossing(freqs[j], db[j], freqs[j + 1], db[j + 1], level)
    return (float(lo), float(hi)), clipped


def sweep_from_samples(freqs, s11) -> FrequencySweep:
    freqs = np.asarray(freqs, dtype=float)
    s11 = np.asarray(s11, dtype=complex)
    db = np.array([magnitude_db(abs(x)) for x in s11])
    i_min = int(np.argmin(db))
    edges, clipped = band_edges(freqs, db)
    return FrequencySweep(freqs, s11, float(freqs[i_min]), float(db[i_min]), edges, clipped)


def s11_sweep(
    model: LadderModel,
    f_start: float,
    f_stop: float,
    n_points: int,
    threads: int | None = None,
) -> FrequencySweep:
    if not (0 < f_start < f_stop):
        raise InvalidInputError(f"need 0 < f_start < f_stop, got {f_start!r}, {f_stop!r}")
    if n_points < 2:
        raise InvalidInputError(f"need at least 2 points, got {n_points!r}")
    freqs = np.linspace(f_start, f_stop, int(n_points))

    def point(f: float) -> complex:
        return reflection_coefficient(model.input_impedance(float(f)), model.z_ref)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            s11 = list(pool.map(point, freqs))
    else:
        s11 = [point(f) for f in freqs]
    return sweep_from_samples(freqs, s11)


def synthesize_match(z_in_at_f0: complex, z_ref: float, f0: float, s: Substrate) -> Transformer:
    """Quarter-wave transformer from Re(Zin) to ``z_ref``; residual reactance is left alone."""
    r = complex(z_in_at_f0).real
    if not r > 0:
        raise InvalidInputError(f"Re(Zin) must be positive, got {r!r}")
    z0t = math.sqrt(r * z_ref)
    width = synthesize_width(z0t, s)
    length = guided_wavelength(f0, width, s) / 4
    return Transformer(z0=z0t, length=length, eps_eff=eps_eff(width, s), width=width)


def match_array(model: LadderModel, f0: float, s: Substrate) -> LadderModel:
    bare = model.with_matching(None)
    t = synthesize_match(bare.input_impedance(f0), model.z_ref, f0, s)
    return bare.with_matching(t)


def node_voltages(model: LadderModel, f: float) -> np.ndarray:
    """Complex voltage across each shunt load, feed to far end, peak-normalized.

    Walks back from the open far end with V = 1, I = 0, so only ratios matter.
    """
    v, i = 1 + 0j, 0j
    volts = []
    for el in reversed(model.elements):
        if isinstance(el, LineSegment):
            m = el.abcd(f)
            v, i = m.a * v + m.b * i, m.c * v + m.d * i
        else:
            i = i + v / el.impedance(f)
            volts.append(v)
    out = np.array(volts[::-1], dtype=complex)
    return out / np.max(np.abs(out))
