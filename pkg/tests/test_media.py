import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from patcharray.media import (
    C0,
    DB_FLOOR,
    EPS0,
    ETA0,
    RO3003,
    InvalidInputError,
    Substrate,
    ValidationError,
    impedance_from_reflection,
    magnitude_db,
    reflection_coefficient,
    validate_substrate,
    wavelength,
)


def test_constants():
    assert C0 == 299_792_458.0
    assert ETA0 == pytest.approx(376.730, abs=1e-3)
    assert EPS0 == pytest.approx(8.8541878e-12, rel=1e-7)


def test_wavelength():
    assert wavelength(299.792458e6) == pytest.approx(1.0, abs=1e-12)
    assert wavelength(18e9) * 1e3 == pytest.approx(16.6551, abs=1e-4)
    assert wavelength(2e9) == pytest.approx(wavelength(1e9) / 2, rel=1e-15)


@pytest.mark.parametrize("f", [0.0, -1e9])
def test_wavelength_rejects_nonpositive(f):
    with pytest.raises(InvalidInputError):
        wavelength(f)


@pytest.mark.parametrize(
    "z, expected",
    [(50, 0j), (100, 1 / 3 + 0j), (25 - 25j, -0.2 - 0.4j)],
)
def test_reflection_coefficient(z, expected):
    assert reflection_coefficient(z, 50) == pytest.approx(expected, abs=1e-15)


def test_reflection_degenerate():
    with pytest.raises(InvalidInputError):
        reflection_coefficient(-50, 50)
    with pytest.raises(InvalidInputError):
        reflection_coefficient(10, 0)


passive = st.builds(
    complex,
    st.floats(0, 1e4, allow_nan=False),
    st.floats(-1e4, 1e4, allow_nan=False),
).filter(lambda z: abs(z + 50) > 1e-6)


@given(passive)
def test_reflection_passive_bounded(z):
    assert abs(reflection_coefficient(z, 50)) <= 1 + 1e-12


@given(
    st.builds(
        complex,
        st.floats(1e-3, 1e4, allow_nan=False),
        st.floats(-1e4, 1e4, allow_nan=False),
    )
)
def test_reflection_inverse_recovers_z(z):
    back = impedance_from_reflection(reflection_coefficient(z, 50), 50)
    assert abs(back - z) <= 1e-12 * abs(z) + 1e-12 * 50


def test_reflection_inverse_1000_random():
    import numpy as np

    rng = np.random.default_rng(7)
    zs = rng.uniform(0.1, 500, 1000) + 1j * rng.uniform(-500, 500, 1000)
    for z in zs:
        back = impedance_from_reflection(reflection_coefficient(z, 50), 50)
        assert abs(back - z) / abs(z) < 1e-12


def test_magnitude_db():
    assert magnitude_db(1.0) == 0.0
    assert magnitude_db(0.1) == pytest.approx(-20.0, abs=1e-12)
    assert magnitude_db(0.0) == DB_FLOOR
    with pytest.raises(InvalidInputError):
        magnitude_db(-0.1)


@given(st.floats(1e-4, 1e4), st.floats(1e-4, 1e4))
def test_magnitude_db_additive(a, b):
    assert magnitude_db(a * b) == pytest.approx(magnitude_db(a) + magnitude_db(b), abs=1e-9)


def test_ro3003_preset_valid():
    assert validate_substrate(RO3003) is RO3003
    assert RO3003.rel_permittivity == 3
    assert RO3003.loss_tangent == 0.0009
    assert RO3003.height == pytest.approx(1.574e-3)
    assert RO3003.conductivity == 5.8e7


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(rel_permittivity=0.5), "rel_permittivity"),
        (dict(loss_tangent=-0.001), "loss_tangent"),
        (dict(height=0.0), "height"),
        (dict(conductivity=0.0), "conductivity"),
    ],
)
def test_validate_substrate_names_field(kwargs, field):
    base = dict(rel_permittivity=3.0, loss_tangent=0.0009, height=1.574e-3)
    base.update(kwargs)
    with pytest.raises(ValidationError) as info:
        validate_substrate(Substrate(**base))
    assert info.value.field == field
    assert field in str(info.value)


def test_substrate_is_immutable():
    with pytest.raises(Exception):
        RO3003.height = 1.0
    assert math.isfinite(RO3003.height)
