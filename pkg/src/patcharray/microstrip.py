"""Quasi-static microstrip line model (Hammerstad-Jensen, zero-thickness strip)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .media import (
    ConvergenceError,
    InvalidInputError,
    OutOfRangeError,
    Substrate,
    validate_substrate,
    wavelength,
)

Z0_MIN = 10.0
Z0_MAX = 250.0

_U_LO = 1e-3
_U_HI = 1e3
_MAX_ITER = 200


def _check_width(width: float) -> None:
    if not width > 0:
        raise InvalidInputError(f"line width must be positive, got {width!r}")


def eps_eff(width: float, s: Substrate) -> float:
    """Effective permittivity of a strip of the given width on ``s``."""
    _check_width(width)
    validate_substrate(s)
    er = s.rel_permittivity
    u = width / s.height
    e = (er + 1) / 2 + (er - 1) / 2 * (1 + 12 / u) ** -0.5
    if u <= 1:
        e += (er - 1) / 2 * 0.04 * (1 - u) ** 2
    return e


def z0_microstrip(width: float, s: Substrate) -> float:
    e = eps_eff(width, s)
    u = width / s.height
    if u <= 1:
        return 60.0 / math.sqrt(e) * math.log(8 / u + u / 4)
    # 120*pi rather than ETA0 keeps the textbook constant of the wide branch
    return 120 * math.pi / (math.sqrt(e) * (u + 1.393 + 0.667 * math.log(u + 1.444)))


def synthesize_width(z0_target: float, s: Substrate, tol: float = 1e-4) -> float:
    """Strip width giving ``z0_target`` ohms, by bisection on W/h.

    Z0 falls monotonically with width, but the branch switch at W/h = 1 puts a
    kink in its derivative, so no Newton steps. The two branches also disagree
    by a fraction of an ohm there; a target inside that step has no exact
    solution, and the bracket collapses onto W = h, which is returned.
    """
    validate_substrate(s)
    if not Z0_MIN <= z0_target <= Z0_MAX:
        raise OutOfRangeError(
            f"target impedance {z0_target!r} ohm outside [{Z0_MIN}, {Z0_MAX}]"
        )
    h = s.height

    def resid(u: float) -> float:
        return z0_microstrip(u * h, s) - z0_target

    lo, hi = _U_LO, _U_HI
    r_lo, r_hi = resid(lo), resid(hi)
    if r_lo < 0 or r_hi > 0:
        raise OutOfRangeError(
            f"target impedance {z0_target!r} ohm not achievable on this substrate"
        )
    for _ in range(_MAX_ITER):
        # geometric midpoint: the bracket spans six decades
        mid = math.sqrt(lo * hi)
        r = resid(mid)
        if abs(r) <= tol or hi / lo - 1 < 1e-12:
            return mid * h
        if r > 0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"width synthesis for {z0_target!r} ohm did not converge in {_MAX_ITER} iterations"
    )


def guided_wavelength(f: float, width: float, s: Substrate) -> float:
    return wavelength(f) / math.sqrt(eps_eff(width, s))


@dataclass(frozen=True)
class MicrostripLine:
    width: float
    length: float
    substrate: Substrate
    eps_eff: float = field(init=False)
    z0: float = field(init=False)

    def __post_init__(self):
        if self.length < 0:
            raise InvalidInputError(f"line length must be >= 0, got {self.length!r}")
        object.__setattr__(self, "eps_eff", eps_eff(self.width, self.substrate))
        object.__setattr__(self, "z0", z0_microstrip(self.width, self.substrate))

    def electrical_length(self, f: float) -> float:
        """Phase delay in radians at frequency ``f``."""
        return 2 * math.pi * self.length / guided_wavelength(f, self.width, self.substrate)
