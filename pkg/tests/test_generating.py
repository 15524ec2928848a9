"""Generating-function families: normalization, monotonicity, domains."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from glspace import (
    DomainError,
    PowerSlowVaryParams,
    gaussian_model,
    make_power_slowvary,
    natural_psi,
    psi_eval,
    psi_validate,
    raw_power_slowvary,
    sqrt_dip_psi,
)


@pytest.mark.parametrize("r,delta", [(0.5, 0.0), (1.0, 0.0), (2.0, 1.0), (3.0, 2.5)])
def test_normalized_family_is_one_at_one(r, delta):
    psi = make_power_slowvary(PowerSlowVaryParams(r=r, delta=delta))
    assert psi.value_at_one == 1.0
    assert psi_eval(psi, 1.0) == 1.0


def test_descriptions_round_trip_parameters():
    psi = make_power_slowvary(PowerSlowVaryParams(r=2.0, delta=0.5))
    assert psi.description == "power_slowvary(r=2, delta=0.5)"


def test_monotone_flag_tracks_delta_sign():
    assert make_power_slowvary(PowerSlowVaryParams(r=2.0, delta=0.5)).strictly_increasing
    assert not make_power_slowvary(PowerSlowVaryParams(r=2.0, delta=-0.5)).strictly_increasing


def test_invalid_exponent_rejected():
    with pytest.raises(DomainError):
        PowerSlowVaryParams(r=0.0)
    with pytest.raises(DomainError):
        PowerSlowVaryParams(r=-1.0)


def test_evaluation_rejects_p_below_one():
    psi = make_power_slowvary(PowerSlowVaryParams(r=1.0))
    with pytest.raises(DomainError):
        psi_eval(psi, 0.5)
    with pytest.raises(DomainError):
        psi_eval(psi, np.array([1.0, 0.99]))


def test_vectorized_matches_scalar_evaluation():
    psi = make_power_slowvary(PowerSlowVaryParams(r=1.5, delta=1.0))
    ps = np.array([1.0, 2.0, 3.7, 50.0, 200.0])
    vec = psi_eval(psi, ps)
    np.testing.assert_allclose(vec, [psi_eval(psi, float(p)) for p in ps], rtol=1e-14)


def test_raw_family_pays_its_value_at_one():
    raw = raw_power_slowvary(PowerSlowVaryParams(r=1.0, delta=2.0))
    assert raw.value_at_one == pytest.approx(math.log(3.0) ** 2, rel=1e-14)
    assert psi_eval(raw, 1.0) == pytest.approx(raw.value_at_one, rel=1e-14)
    # normalized twin divides the slowly varying factor back out
    norm = make_power_slowvary(PowerSlowVaryParams(r=1.0, delta=2.0))
    for p in (1.0, 4.0, 33.0):
        assert psi_eval(raw, p) == pytest.approx(
            psi_eval(norm, p) * raw.value_at_one, rel=1e-12
        )


def test_natural_family_is_the_moment_ratio():
    g = gaussian_model()
    psi = natural_psi(g)
    assert psi_eval(psi, 1.0) == 1.0
    # |f|_2 / |f|_1 = 1 / sqrt(2/pi) for the standard normal
    assert psi_eval(psi, 2.0) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-12)
    assert psi.strictly_increasing
    assert psi.description == "natural(gaussian)"


def test_dip_family_touches_root_p_at_integers():
    dip = sqrt_dip_psi()
    for m in (1, 2, 3, 10, 37):
        assert psi_eval(dip, float(m)) == pytest.approx(math.sqrt(m), rel=1e-12)
    # between integers the oscillation dips below sqrt(p)
    assert psi_eval(dip, 2.5) < math.sqrt(2.5)


def test_validation_detects_the_dip():
    assert not sqrt_dip_psi().strictly_increasing
    assert not psi_validate(sqrt_dip_psi(), p_max=20.0).monotone
    assert psi_validate(make_power_slowvary(PowerSlowVaryParams(r=2.0)), p_max=50.0).monotone


@given(
    r=st.floats(0.3, 5.0),
    delta=st.floats(0.0, 3.0),
    a=st.floats(1.0, 900.0),
    scale=st.floats(1.001, 10.0),
)
def test_family_strictly_increasing_for_nonnegative_delta(r, delta, a, scale):
    psi = make_power_slowvary(PowerSlowVaryParams(r=r, delta=delta))
    assert psi_eval(psi, a * scale) > psi_eval(psi, a)
