"""Transmission-line model of a rectangular patch.

The patch is a low-impedance line of length L closed by two radiating slots
of width W. Resonance placement is owned entirely by the fringing extension
dL; slot susceptance is not modelled separately.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate, special

from .media import (
    C0,
    EPS0,
    MU0,
    DesignInfeasibleError,
    InvalidInputError,
    NumericalError,
    Substrate,
    validate_substrate,
)
from .microstrip import eps_eff

QUAD_RTOL = 1e-8


def _positive(**kw: float) -> None:
    for name, value in kw.items():
        if not (value > 0 and math.isfinite(value)):
            raise InvalidInputError(f"{name} must be positive and finite, got {value!r}")


def patch_width(f0: float, eps_r: float) -> float:
    """Width for an efficient radiator: c0/(2 f0) * sqrt(2/(er+1))."""
    _positive(f0=f0)
    if not eps_r >= 1:
        raise InvalidInputError(f"eps_r must be >= 1, got {eps_r!r}")
    return C0 / (2 * f0) * math.sqrt(2 / (eps_r + 1))


def length_extension(width: float, s: Substrate) -> float:
    """Fringing extension dL at each radiating edge (Hammerstad)."""
    e = eps_eff(width, s)
    u = width / s.height
    return s.height * 0.412 * (e + 0.3) * (u + 0.264) / ((e - 0.258) * (u + 0.8))


def patch_length(f0: float, s: Substrate, include_fringing: bool = True) -> float:
    _positive(f0=f0)
    validate_substrate(s)
    w = patch_width(f0, s.rel_permittivity)
    e = eps_eff(w, s)
    half_wave = C0 / (2 * f0 * math.sqrt(e))
    dl = length_extension(w, s) if include_fringing else 0.0
    length = half_wave - 2 * dl
    if length <= 0:
        raise DesignInfeasibleError(
            f"fringing extension {dl:.4g} m swallows the half-wave length {half_wave:.4g} m"
        )
    return length


def resonant_frequency(length: float, width: float, s: Substrate) -> float:
    """Closed-form inverse of :func:`patch_length` for arbitrary (L, W)."""
    _positive(length=length, width=width)
    e = eps_eff(width, s)
    dl = length_extension(width, s)
    return C0 / (2 * (length + 2 * dl) * math.sqrt(e))


def _slot_integrand(theta, half_kw: float, k0_sep: float):
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta)
    sin_t = np.sin(theta)
    small = np.abs(c) < 1e-12
    safe_c = np.where(small, 1.0, c)
    # limit of [sin(a cos t)/cos t]^2 as cos t -> 0 is a^2
    aperture = np.where(small, half_kw**2, (np.sin(half_kw * c) / safe_c) ** 2)
    out = aperture * sin_t**3
    if k0_sep:
        out = out * special.j0(k0_sep * sin_t)
    return out


def _slot_integral(half_kw: float, k0_sep: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.quad(
                lambda t: float(_slot_integrand(t, half_kw, k0_sep)),
                0.0,
                math.pi,
                epsabs=0.0,
                epsrel=QUAD_RTOL,
                limit=200,
            )
        except integrate.IntegrationWarning as exc:
            raise NumericalError(f"slot conductance quadrature failed: {exc}") from exc
    return value


def slot_conductances(width: float, length: float, f0: float) -> tuple[float, float]:
    """Self conductance G1 of one radiating slot and mutual conductance G12."""
    _positive(width=width, f0=f0)
    if not length >= 0:
        raise InvalidInputError(f"length must be >= 0, got {length!r}")
    k0 = 2 * math.pi * f0 / C0
    half_kw = k0 * width / 2
    i1 = _slot_integral(half_kw, 0.0)
    i12 = _slot_integral(half_kw, k0 * length)
    scale = 120 * math.pi**2
    return i1 / scale, i12 / scale


def edge_resistance(g1: float, g12: float) -> float:
    """Input resistance at the radiating edge, in-phase slot convention."""
    total = g1 + g12
    if not total > 0:
        raise InvalidInputError(f"total slot conductance must be positive, got {total!r}")
    return 1.0 / (2 * total)


class QualityFactors(NamedTuple):
    q_rad: float
    q_cond: float
    q_diel: float
    q_total: float
    efficiency: float


def skin_depth(f: float, conductivity: float) -> float:
    return 1.0 / math.sqrt(math.pi * f * MU0 * conductivity)


def quality_factors(
    width: float, length: float, s: Substrate, f0: float, g_total: float
) -> QualityFactors:
    """Radiation, conductor and dielectric Q of the cavity plus radiation efficiency.

    ``g_total`` is G1 + G12, the same sum that sets the edge resistance.
    A lossless term (tan d = 0) contributes an infinite Q.
    """
    _positive(width=width, length=length, f0=f0, g_total=g_total)
    validate_substrate(s)
    omega = 2 * math.pi * f0
    q_rad = omega * EPS0 * s.rel_permittivity * length * width / (4 * s.height * g_total)
    q_cond = s.height / skin_depth(f0, s.conductivity)
    q_diel = math.inf if s.loss_tangent == 0 else 1.0 / s.loss_tangent
    q_total = 1.0 / (1 / q_rad + 1 / q_cond + 1 / q_diel)
    return QualityFactors(q_rad, q_cond, q_diel, q_total, q_total / q_rad)


@dataclass(frozen=True)
class RlcLoad:
    """Parallel-resonant stand-in for one patch at its feed edge."""

    f0: float
    rin: float
    q_total: float

    def __post_init__(self):
        _positive(f0=self.f0, rin=self.rin, q_total=self.q_total)

    def impedance(self, f: float) -> complex:
        return rlc_impedance(f, self)


def rlc_impedance(f: float, load: RlcLoad) -> complex:
    _positive(f=f)
    detune = f / load.f0 - load.f0 / f
    return complex(load.rin / (1 + 1j * load.q_total * detune))


@dataclass(frozen=True)
class PatchDesign:
    width: float
    length: float
    eps_eff: float
    delta_l: float
    f0: float
    g1: float
    g12: float
    rin_edge: float
    q_rad: float
    q_cond: float
    q_diel: float
    q_total: float
    efficiency: float

    @property
    def effective_length(self) -> float:
        return self.length + 2 * self.delta_l

    def rlc(self) -> RlcLoad:
        return RlcLoad(self.f0, self.rin_edge, self.q_total)


def analyze_patch(width: float, length: float, s: Substrate) -> PatchDesign:
    """Electrical model of a patch with given dimensions, at its own resonance."""
    f0 = resonant_frequency(length, width, s)
    g1, g12 = slot_conductances(width, length, f0)
    q = quality_factors(width, length, s, f0, g1 + g12)
    return PatchDesign(
        width=width,
        length=length,
        eps_eff=eps_eff(width, s),
        delta_l=length_extension(width, s),
        f0=f0,
        g1=g1,
        g12=g12,
        rin_edge=edge_resistance(g1, g12),
        q_rad=q.q_rad,
        q_cond=q.q_cond,
        q_diel=q.q_diel,
        q_total=q.q_total,
        efficiency=q.efficiency,
    )


def design_patch(f0: float, s: Substrate) -> PatchDesign:
    """Synthesize W and L for resonance at ``f0`` and return the full model."""
    w = patch_width(f0, s.rel_permittivity)
    return analyze_patch(w, patch_length(f0, s), s)
