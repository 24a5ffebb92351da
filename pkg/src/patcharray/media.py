"""Physical constants, substrate description and small complex/dB helpers.

Everything in the math core is strict SI (m, Hz, S, ohm). Millimetres and
gigahertz only appear at the file/CLI boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

C0 = 299_792_458.0
MU0 = 4e-7 * math.pi
EPS0 = 1.0 / (MU0 * C0**2)
ETA0 = math.sqrt(MU0 / EPS0)

DB_FLOOR = -200.0
_DB_CUTOFF = 1e-10

COPPER_CONDUCTIVITY = 5.8e7

MM = 1e-3
GHZ = 1e9


class InvalidInputError(ValueError):
    """Argument outside the domain of an operation."""


class ValidationError(InvalidInputError):
    """A record failed its invariants; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class OutOfRangeError(InvalidInputError):
    pass


class DesignInfeasibleError(InvalidInputError):
    pass


class NumericalError(ArithmeticError):
    """Quadrature failure, singular network, etc."""


class ConvergenceError(NumericalError):
    pass


@dataclass(frozen=True)
class Substrate:
    rel_permittivity: float
    loss_tangent: float
    height: float
    conductor_thickness: float = 0.0
    conductivity: float = COPPER_CONDUCTIVITY


# Ground/conductor thickness t = 0.5 mm is stored but enters no equation.
RO3003 = Substrate(
    rel_permittivity=3.0,
    loss_tangent=0.0009,
    height=1.574 * MM,
    conductor_thickness=0.5 * MM,
    conductivity=COPPER_CONDUCTIVITY,
)


def validate_substrate(s: Substrate) -> Substrate:
    checks = (
        ("rel_permittivity", s.rel_permittivity >= 1.0, "must be >= 1"),
        ("loss_tangent", s.loss_tangent >= 0.0, "must be >= 0"),
        ("height", s.height > 0.0, "must be > 0"),
        ("conductor_thickness", s.conductor_thickness >= 0.0, "must be >= 0"),
        ("conductivity", s.conductivity > 0.0, "must be > 0"),
    )
    for name, ok, why in checks:
        value = getattr(s, name)
        if not math.isfinite(value) or not ok:
            raise ValidationError(name, f"{why}, got {value!r}")
    return s


def wavelength(f: float) -> float:
    """Free-space wavelength in metres."""
    if not f > 0:
        raise InvalidInputError(f"frequency must be positive, got {f!r}")
    return C0 / f


def reflection_coefficient(z: complex, zref: float = 50.0) -> complex:
    if not zref > 0:
        raise InvalidInputError(f"reference impedance must be positive, got {zref!r}")
    den = z + zref
    if den == 0:
        raise InvalidInputError("degenerate reflection: Z + Zref == 0")
    gamma = complex((z - zref) / den)
    if not (math.isfinite(gamma.real) and math.isfinite(gamma.imag)):
        raise InvalidInputError(f"non-finite reflection coefficient for Z={z!r}")
    return gamma


def impedance_from_reflection(gamma: complex, zref: float = 50.0) -> complex:
    """Inverse of :func:`reflection_coefficient`."""
    if gamma == 1:
        raise InvalidInputError("gamma == 1 is an open circuit")
    return complex(zref * (1 + gamma) / (1 - gamma))


def magnitude_db(x: float) -> float:
    """20*log10(x), clamped to DB_FLOOR below 1e-10."""
    if x < 0:
        raise InvalidInputError(f"magnitude must be non-negative, got {x!r}")
    if x < _DB_CUTOFF:
        return DB_FLOOR
    return 20.0 * math.log10(x)
