"""One-port Touchstone v1 writer and reader (GHz, RI format, 50 ohm)."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .fileio import atomic_write_text
from .media import GHZ, InvalidInputError
from .network import FrequencySweep, sweep_from_samples

TOOL_NAME = "patcharray"
OPTION_LINE = "# GHz S RI R 50"


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def format_touchstone(sweep: FrequencySweep, geometry_hash: str | None = None) -> str:
    if sweep is None or len(sweep.frequencies) == 0:
        raise InvalidInputError("cannot write an empty sweep")
    lines = [f"! {TOOL_NAME} one-port S11"]
    if geometry_hash:
        lines.append(f"! geometry sha256/16: {geometry_hash}")
    lines.append(OPTION_LINE)
    for f, s in zip(sweep.frequencies, sweep.s11):
        lines.append(f"{_fmt(f / GHZ)} {_fmt(s.real)} {_fmt(s.imag)}")
    return "\n".join(lines) + "\n"


def write_touchstone(
    sweep: FrequencySweep, path: str | Path, geometry_hash: str | None = None
) -> Path:
    return atomic_write_text(path, format_touchstone(sweep, geometry_hash))


_UNITS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}


def parse_touchstone(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Return (frequencies in Hz, complex S11) from one-port Touchstone v1 text.

    Accepts RI, MA and DB data formats; the reference impedance is not used.
    """
    scale, fmt = GHZ, "ri"
    seen_option = False
    freqs, s11 = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            if seen_option:
                raise InvalidInputError(f"line {lineno}: second option line")
            seen_option = True
            for tok in line[1:].lower().split():
                if tok in _UNITS:
                    scale = _UNITS[tok]
                elif tok in ("ri", "ma", "db"):
                    fmt = tok
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InvalidInputError(f"line {lineno}: expected 3 columns, got {len(parts)}")
        f, x, y = (float(p) for p in parts)
        if fmt == "ri":
            val = complex(x, y)
        else:
            mag = x if fmt == "ma" else 10 ** (x / 20)
            val = mag * np.exp(1j * np.radians(y))
        freqs.append(f * scale)
        s11.append(val)
    if not freqs:
        raise InvalidInputError("no data rows")
    return np.array(freqs), np.array(s11, dtype=complex)


def read_touchstone(path: str | Path) -> FrequencySweep:
    freqs, s11 = parse_touchstone(Path(path).read_text(encoding="utf-8"))
    return sweep_from_samples(freqs, s11)
