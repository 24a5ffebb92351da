"""Far-field model: two-slot patch element, linear array factor, pattern
multiplication, spherical quadrature and principal-plane beam metrics.

Coordinates: array axis along x, patch normal along z, E-plane is the x-z
plane (phi = 0). An infinite ground plane is assumed, so every patch-based
pattern is identically zero for theta > pi/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import trapezoid

from .geometry import ArrayGeometry
from .media import C0, MM, InvalidInputError, NumericalError, Substrate
from .patch import length_extension

DTHETA_DEG = 0.5
DPHI_DEG = 1.0
MIN_THETA_SAMPLES = 181
MIN_PHI_SAMPLES = 360
POWER_FLOOR_DB = -200.0


class MetricUndefinedError(NumericalError):
    pass


def _k0(f: float) -> float:
    if not f > 0:
        raise InvalidInputError(f"frequency must be positive, got {f!r}")
    return 2 * math.pi * f / C0


def element_pattern(theta, phi, width: float, l_eff: float, f: float):
    """Relative intensity of one patch, 1 at broadside.

    The E-plane factor is the two-slot interference term over ``l_eff``; the
    H-plane factor is the uniform-line sinc over ``width``.
    """
    if not (width > 0 and l_eff > 0):
        raise InvalidInputError("patch dimensions must be positive")
    k0 = _k0(f)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    x = k0 * width / 2 * st * sp
    y = k0 * l_eff / 2 * st * cp
    line = np.sinc(x / np.pi) ** 2
    slots = np.cos(y) ** 2
    polar = cp**2 + (ct * sp) ** 2
    u = line * slots * polar
    return np.where(theta > np.pi / 2, 0.0, u)


def isotropic_hemisphere(theta, phi):
    theta = np.asarray(theta, dtype=float)
    return np.where(theta > np.pi / 2, 0.0, np.ones(np.broadcast(theta, np.asarray(phi)).shape))


@dataclass(frozen=True)
class ExcitationSet:
    amplitudes: np.ndarray
    spacing: float
    phase: float = 0.0

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex))
        object.__setattr__(self, "amplitudes", a)
        if a.ndim != 1 or not np.any(a != 0):
            raise InvalidInputError("excitation needs at least one nonzero amplitude")
        if len(a) >= 2 and not self.spacing > 0:
            raise InvalidInputError(f"element spacing must be positive, got {self.spacing!r}")

    @classmethod
    def uniform(cls, n: int, spacing: float, phase: float = 0.0) -> "ExcitationSet":
        return cls(np.ones(n, dtype=complex), spacing, phase)

    @property
    def count(self) -> int:
        return len(self.amplitudes)


def array_factor(ex: ExcitationSet, f: float, theta, phi):
    """sum_n a_n exp(j n (k0 d sin(theta) cos(phi) + beta)), evaluated by Horner's rule."""
    psi = _k0(f) * ex.spacing * np.sin(theta) * np.cos(phi) + ex.phase
    z = np.exp(1j * np.asarray(psi, dtype=float))
    return np.polyval(ex.amplitudes[::-1], z)


@dataclass(frozen=True)
class RadiationPattern:
    theta: np.ndarray
    phi: np.ndarray
    intensity: np.ndarray
    frequency: float | None = None

    def __post_init__(self):
        u = self.intensity
        if u.shape != (len(self.theta), len(self.phi)):
            raise InvalidInputError("intensity must have shape (n_theta, n_phi)")
        if np.any(~np.isfinite(u)) or np.any(u < 0):
            raise InvalidInputError("intensity must be finite and non-negative")
        for name, grid in (("theta", self.theta), ("phi", self.phi)):
            step = np.diff(grid)
            if np.any(step <= 0) or not np.allclose(step, step[0], rtol=1e-9, atol=0):
                raise InvalidInputError(f"{name} grid must be uniform and increasing")

    @classmethod
    def sample(
        cls,
        fn: Callable,
        dtheta_deg: float = DTHETA_DEG,
        dphi_deg: float = DPHI_DEG,
        frequency: float | None = None,
    ) -> "RadiationPattern":
        """Evaluate ``fn(theta, phi)`` on theta in [0, pi] and phi in [0, 2pi)."""
        n_theta = int(round(180 / dtheta_deg)) + 1
        n_phi = int(round(360 / dphi_deg))
        theta = np.linspace(0.0, np.pi, n_theta)
        phi = np.arange(n_phi) * (2 * np.pi / n_phi)
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        u = np.asarray(fn(tt, pp), dtype=float)
        return cls(theta, phi, np.broadcast_to(u, tt.shape).copy(), frequency)

    def peak(self) -> float:
        return float(self.intensity.max())


def element_dimensions(g: ArrayGeometry, s: Substrate | None = None) -> tuple[float, float]:
    """(W, L + 2 dL) in metres for the geometry's patch."""
    s = s if s is not None else g.substrate()
    w = g.patch_width_mm * MM
    return w, g.patch_length_mm * MM + 2 * length_extension(w, s)


def total_pattern(
    g: ArrayGeometry | None,
    s: Substrate | None,
    ex: ExcitationSet,
    f: float,
    element: str = "patch",
    dtheta_deg: float = DTHETA_DEG,
    dphi_deg: float = DPHI_DEG,
) -> RadiationPattern:
    """Element pattern times |AF|^2 on the standard spherical grid.

    ``g`` may be None with ``element="isotropic"``.
    """
    if element == "patch":
        w, l_eff = element_dimensions(g, s)

        def elem(t, p):
            return element_pattern(t, p, w, l_eff, f)

    elif element == "isotropic":
        elem = isotropic_hemisphere
    else:
        raise InvalidInputError(f"unknown element model {element!r}")

    def fn(t, p):
        return elem(t, p) * np.abs(array_factor(ex, f, t, p)) ** 2

    return RadiationPattern.sample(fn, dtheta_deg, dphi_deg, frequency=f)


def directivity(p: RadiationPattern) -> float:
    """4 pi U_max / integral of U over the sphere (trapezoid in theta, periodic in phi)."""
    u_max = p.peak()
    if u_max <= 0:
        raise InvalidInputError("pattern is identically zero")
    if len(p.theta) < MIN_THETA_SAMPLES or len(p.phi) < MIN_PHI_SAMPLES:
        raise InvalidInputError(
            f"grid {len(p.theta)}x{len(p.phi)} too coarse for quadrature, "
            f"need at least {MIN_THETA_SAMPLES}x{MIN_PHI_SAMPLES}"
        )
    dphi = 2 * np.pi / len(p.phi)
    if not np.isclose(p.phi[0], 0.0) or not np.allclose(np.diff(p.phi), dphi):
        raise InvalidInputError("phi grid must cover [0, 2pi) uniformly")
    over_theta = trapezoid(p.intensity * np.sin(p.theta)[:, None], p.theta, axis=0)
    total = float(np.sum(over_theta) * dphi)
    return 4 * np.pi * u_max / total


def directivity_dbi(p: RadiationPattern) -> float:
    return 10 * math.log10(directivity(p))


def gain(d: float, efficiency: float) -> float:
    """Gain in dBi from linear directivity and radiation efficiency."""
    if not 0 < efficiency <= 1:
        raise InvalidInputError(f"efficiency must lie in (0, 1], got {efficiency!r}")
    if not d > 0:
        raise InvalidInputError(f"directivity must be positive, got {d!r}")
    return 10 * math.log10(efficiency * d)


_CUT_PHI = {"e": 0.0, "h": 0.5 * math.pi}


def pattern_cut(p: RadiationPattern, plane: str) -> tuple[np.ndarray, np.ndarray]:
    """Principal-plane cut as (signed angle in degrees from broadside, intensity).

    Negative angles come from the opposite half-plane (phi + pi).
    """
    plane = plane.lower()
    if plane not in _CUT_PHI:
        raise InvalidInputError(f"cut must be 'e' or 'h', got {plane!r}")
    n_phi = len(p.phi)
    dphi = 2 * np.pi / n_phi
    idx = []
    for target in (_CUT_PHI[plane], _CUT_PHI[plane] + np.pi):
        k = int(round(target / dphi)) % n_phi
        if not np.isclose(p.phi[k], target, atol=1e-9):
            raise InvalidInputError(f"phi grid has no sample at {math.degrees(target):g} deg")
        idx.append(k)
    front, back = p.intensity[:, idx[0]], p.intensity[:, idx[1]]
    theta_deg = np.degrees(p.theta)
    angles = np.concatenate([-theta_deg[::-1], theta_deg[1:]])
    values = np.concatenate([back[::-1], front[1:]])
    return angles, values


def to_db(u: np.ndarray, ref: float) -> np.ndarray:
    ratio = np.asarray(u, dtype=float) / ref
    with np.errstate(divide="ignore"):
        db = 10 * np.log10(ratio)
    return np.where(ratio < 1e-20, POWER_FLOOR_DB, db)


class BeamMetrics(NamedTuple):
    hpbw: float
    sll: float | None
    peak_direction: float


def _interp_level(a0, d0, a1, d1, level):
    return a0 + (level - d0) * (a1 - a0) / (d1 - d0)


def beam_metrics(p: RadiationPattern, plane: str) -> BeamMetrics:
    """HPBW (deg), sidelobe level (dB, None when the cut has no sidelobe) and
    peak direction (deg) in an E or H cut.

    Levels are relative to the cut maximum; a cut whose maximum sits more than
    3 dB below the global peak is rejected.
    """
    angles, u = pattern_cut(p, plane)
    i_pk = int(np.argmax(u))
    u_pk = float(u[i_pk])
    if u_pk <= 0 or u_pk < p.peak() / 2:
        raise MetricUndefinedError(f"{plane}-cut does not contain the main beam")
    db = to_db(u, u_pk)
    n = len(db)

    left = i_pk
    while left > 0 and db[left] >= -3.0:
        left -= 1
    right = i_pk
    while right < n - 1 and db[right] >= -3.0:
        right += 1
    if db[left] >= -3.0 or db[right] >= -3.0:
        raise MetricUndefinedError(f"no -3 dB crossing on both sides of the {plane}-cut peak")
    a_lo = _interp_level(angles[left], db[left], angles[left + 1], db[left + 1], -3.0)
    a_hi = _interp_level(angles[right - 1], db[right - 1], angles[right], db[right], -3.0)

    peak = float(angles[i_pk])
    if 0 < i_pk < n - 1:
        y0, y1, y2 = u[i_pk - 1], u[i_pk], u[i_pk + 1]
        curv = y0 - 2 * y1 + y2
        if curv < 0:
            peak += 0.5 * (y0 - y2) / curv * (angles[1] - angles[0])

    # main lobe extends down to the first minimum on each side
    lo = i_pk
    while lo > 0 and db[lo - 1] <= db[lo]:
        lo -= 1
    hi = i_pk
    while hi < n - 1 and db[hi + 1] <= db[hi]:
        hi += 1
    side = [
        db[k]
        for k in range(1, n - 1)
        if (k < lo or k > hi) and db[k] > db[k - 1] and db[k] >= db[k + 1]
    ]
    sll = float(max(side)) if side else None
    return BeamMetrics(float(a_hi - a_lo), sll, float(peak) + 0.0)
