import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hammerstad_delta_l, hammerstad_eps_eff, slot_conductances_trap
from patcharray.media import (
    C0,
    RO3003,
    DesignInfeasibleError,
    InvalidInputError,
    Substrate,
    reflection_coefficient,
    wavelength,
)
from patcharray.patch import (
    RlcLoad,
    analyze_patch,
    design_patch,
    edge_resistance,
    length_extension,
    patch_length,
    patch_width,
    quality_factors,
    resonant_frequency,
    rlc_impedance,
    slot_conductances,
)

MM = 1e-3
W_PAPER, L_PAPER = 5.89 * MM, 3.85 * MM

# frozen from the 10^6-point trapezoid oracle in tests/oracles.py
G1_PAPER = 1.282940349171134e-03
G12_PAPER = 7.894319576893353e-04


def test_patch_width():
    assert patch_width(18e9, 3) == pytest.approx(5.89 * MM, abs=0.01 * MM)
    assert patch_width(18e9, 1) == pytest.approx(wavelength(18e9) / 2, rel=1e-15)
    assert patch_width(9e9, 3) == pytest.approx(2 * patch_width(18e9, 3), rel=1e-15)
    assert patch_width(9e9, 3) == pytest.approx(11.78 * MM, abs=0.01 * MM)


def test_length_extension_reference():
    dl = length_extension(W_PAPER, RO3003)
    assert dl == pytest.approx(0.715 * MM, abs=0.002 * MM)
    assert dl == pytest.approx(hammerstad_delta_l(W_PAPER, RO3003.height, 3.0), rel=1e-14)


def test_length_extension_thin_limit():
    s = Substrate(3.0, 0.0009, 1e-6)
    assert length_extension(W_PAPER, s) < 1e-5


@given(st.floats(1e-4, 5e-2), st.floats(1.0, 12.0), st.floats(1e-5, 5e-3))
def test_length_extension_positive(w, er, h):
    assert length_extension(w, Substrate(er, 0.0, h)) > 0


def test_patch_length_reference():
    assert patch_length(18e9, RO3003) == pytest.approx(3.85 * MM, abs=0.01 * MM)


def test_patch_length_without_fringing():
    got = patch_length(18e9, RO3003, include_fringing=False)
    assert got == pytest.approx(5.28 * MM, abs=0.01 * MM)
    w = C0 / (2 * 18e9) * math.sqrt(2 / 4)
    e = hammerstad_eps_eff(w, RO3003.height, 3.0)
    assert got == pytest.approx(C0 / (2 * 18e9 * math.sqrt(e)), rel=1e-12)


def test_patch_length_air_thin():
    s = Substrate(1.0, 0.0, 1e-9)
    assert patch_length(18e9, s) == pytest.approx(8.33 * MM, abs=0.01 * MM)


def test_patch_length_infeasible():
    # very thick substrate: fringing exceeds the half-wave line
    with pytest.raises(DesignInfeasibleError):
        patch_length(18e9, Substrate(3.0, 0.0, 50 * MM))


def test_resonant_frequency_reference():
    assert resonant_frequency(L_PAPER, W_PAPER, RO3003) == pytest.approx(18e9, rel=0.005)


@pytest.mark.parametrize("f", [10e9, 18e9, 28e9])
def test_resonant_frequency_round_trip(f):
    w = patch_width(f, 3)
    assert resonant_frequency(patch_length(f, RO3003), w, RO3003) == pytest.approx(f, rel=1e-3)


def test_resonant_frequency_monotone_in_length():
    ls = np.linspace(2 * MM, 6 * MM, 50)
    fs = [resonant_frequency(l, W_PAPER, RO3003) for l in ls]
    assert np.all(np.diff(fs) < 0)


@given(st.floats(5e9, 40e9), st.floats(2.0, 10.0))
def test_design_consistency(f0, er):
    s = Substrate(er, 0.001, 0.5 * MM)
    l = patch_length(f0, s)
    assert resonant_frequency(l, patch_width(f0, er), s) == pytest.approx(f0, rel=1e-3)


def test_slot_conductances_coincident():
    g1, g12 = slot_conductances(W_PAPER, 0.0, 18e9)
    assert g12 == pytest.approx(g1, rel=1e-6)


def test_slot_conductances_reference_regression():
    g1, g12 = slot_conductances(W_PAPER, L_PAPER, 18e9)
    assert g1 > 0 and abs(g12) <= g1
    assert g1 == pytest.approx(G1_PAPER, rel=1e-6)
    assert g12 == pytest.approx(G12_PAPER, rel=1e-6)


def test_slot_conductances_small_width_scaling():
    lam = wavelength(18e9)
    w = lam / 50
    g_full, _ = slot_conductances(w, 0.0, 18e9)
    g_half, _ = slot_conductances(w / 2, 0.0, 18e9)
    assert g_full / g_half == pytest.approx(4.0, rel=0.02)


def test_slot_quadrature_matches_trapezoid_oracle():
    rng = np.random.default_rng(11)
    for _ in range(50):
        f0 = rng.uniform(5e9, 40e9)
        lam = C0 / f0
        w = rng.uniform(0.05, 0.9) * lam
        l = rng.uniform(0.05, 0.6) * lam
        got = slot_conductances(w, l, f0)
        ref = slot_conductances_trap(w, l, f0)
        assert got[0] == pytest.approx(ref[0], rel=1e-6)
        assert got[1] == pytest.approx(ref[1], rel=1e-6, abs=1e-6 * ref[0])


def test_edge_resistance():
    assert edge_resistance(0.005, 0.0) == pytest.approx(100.0)
    assert edge_resistance(0.0025, 0.0025) == pytest.approx(100.0)
    with pytest.raises(InvalidInputError):
        edge_resistance(0.001, -0.001)


def test_edge_resistance_reference_window():
    rin = edge_resistance(G1_PAPER, G12_PAPER)
    assert 50 <= rin <= 400
    assert rin == pytest.approx(241.3, abs=0.1)


def test_quality_factors_dielectric():
    q = quality_factors(W_PAPER, L_PAPER, RO3003, 18e9, G1_PAPER + G12_PAPER)
    assert q.q_diel == pytest.approx(1111.1, abs=0.1)


def test_quality_factors_lossless_limit():
    s = Substrate(3.0, 0.0, RO3003.height, conductivity=1e15)
    q = quality_factors(W_PAPER, L_PAPER, s, 18e9, G1_PAPER + G12_PAPER)
    assert q.efficiency == pytest.approx(1.0, abs=1e-3)
    assert q.q_total == pytest.approx(q.q_rad, rel=1e-3)


def test_quality_factors_reference_regression():
    q = quality_factors(W_PAPER, L_PAPER, RO3003, 18e9, G1_PAPER + G12_PAPER)
    assert q.q_total <= min(q.q_rad, q.q_cond, q.q_diel)
    # pinned from direct evaluation of the cavity expressions
    omega = 2 * math.pi * 18e9
    q_rad = omega * 8.8541878128e-12 * 3 * L_PAPER * W_PAPER / (4 * RO3003.height * (G1_PAPER + G12_PAPER))
    assert q.q_rad == pytest.approx(q_rad, rel=1e-9)
    assert q.q_total == pytest.approx(5.1882, abs=1e-3)
    assert q.efficiency == pytest.approx(0.99371, abs=1e-4)


@given(
    st.floats(1e-3, 2e-2), st.floats(1e-3, 2e-2), st.floats(1e-4, 0.02),
    st.floats(1e6, 1e8), st.floats(1e-4, 1e-1),
)
def test_quality_factor_composition(w, l, tand, sigma, g):
    s = Substrate(3.0, tand, 1e-3, conductivity=sigma)
    q = quality_factors(w, l, s, 18e9, g)
    assert 1 / q.q_total == pytest.approx(1 / q.q_rad + 1 / q.q_cond + 1 / q.q_diel, rel=1e-12)
    assert q.efficiency * q.q_rad == pytest.approx(q.q_total, rel=1e-12)
    assert 0 < q.efficiency <= 1
    assert q.q_total <= min(q.q_rad, q.q_cond, q.q_diel)


def test_rlc_impedance():
    load = RlcLoad(18e9, 50.0, 100.0)
    assert rlc_impedance(18e9, load) == 50 + 0j
    f = 18e9 * (1 + 1 / 200)
    assert abs(rlc_impedance(f, load)) == pytest.approx(50 / math.sqrt(2), rel=0.01)
    assert abs(rlc_impedance(0.01 * 18e9, load)) < 50 / 50


@given(st.floats(1e8, 1e12))
def test_rlc_positive_real_part(f):
    assert rlc_impedance(f, RlcLoad(18e9, 241.0, 5.2)).real > 0


def test_rlc_argmin_at_resonance():
    load = RlcLoad(18e9, 50.0, 20.0)
    fs = np.linspace(16e9, 20e9, 4001)
    g = [abs(reflection_coefficient(rlc_impedance(f, load), 50.0)) for f in fs]
    step = fs[1] - fs[0]
    assert abs(fs[int(np.argmin(g))] - 18e9) <= step


def test_rlc_rejects_nonpositive():
    with pytest.raises(InvalidInputError):
        RlcLoad(18e9, -1.0, 5.0)
    with pytest.raises(InvalidInputError):
        rlc_impedance(0.0, RlcLoad(18e9, 50, 5))


def test_design_patch_invariants():
    d = design_patch(18e9, RO3003)
    assert d.width == pytest.approx(5.89 * MM, abs=0.01 * MM)
    assert d.length == pytest.approx(3.85 * MM, abs=0.01 * MM)
    assert d.f0 == pytest.approx(18e9, rel=1e-9)
    assert 1 < d.eps_eff <= 3 and d.delta_l > 0 and d.g1 > 0 and d.rin_edge > 0
    assert d.q_total <= min(d.q_rad, d.q_cond, d.q_diel)
    assert 0 < d.efficiency <= 1


def test_analyze_patch_uses_own_resonance():
    d = analyze_patch(W_PAPER, L_PAPER, RO3003)
    assert d.f0 == pytest.approx(resonant_frequency(L_PAPER, W_PAPER, RO3003))
    assert d.rlc() == RlcLoad(d.f0, d.rin_edge, d.q_total)
