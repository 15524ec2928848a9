"""Norm computations and the two-sided sandwich checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glspace import (
    DensityModel,
    DomainError,
    EmpiricalModel,
    NonMonotoneError,
    PowerSlowVaryParams,
    RestrictedSet,
    TruncationError,
    constant_model,
    default_p_max,
    discrete_norm,
    gaussian_model,
    geometric_grid,
    gls_norm,
    integer_grid,
    make_power_slowvary,
    natural_psi,
    restricted_norm,
    sandwich_check_discrete,
    sandwich_check_restricted,
    sqrt_dip_psi,
    uniform01_model,
)


def root_psi():
    return make_power_slowvary(PowerSlowVaryParams(r=2.0))


def linear_psi():
    return make_power_slowvary(PowerSlowVaryParams(r=1.0))


def test_gaussian_root_norm_peaks_at_one():
    res = gls_norm(gaussian_model(), root_psi())
    assert res.value == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-12)
    assert res.arg_p == 1.0
    assert res.decreasing_at_hi


def test_uniform_root_norm():
    res = gls_norm(uniform01_model(), root_psi())
    assert res.value == pytest.approx(0.5, rel=1e-12)
    assert res.arg_p == 1.0


def test_natural_psi_norm_is_the_first_moment():
    g = gaussian_model()
    res = gls_norm(g, natural_psi(g))
    # the ratio is identically |f|_1 by construction
    assert res.value == pytest.approx(g.lp_norm(1.0), rel=1e-12)


def test_p_max_must_be_at_least_one():
    with pytest.raises(DomainError):
        gls_norm(gaussian_model(), root_psi(), p_max=0.5)


def test_discrete_norm_of_a_constant():
    res = discrete_norm(constant_model(5.0), root_psi(), integer_grid(10))
    assert res.value == 5.0
    assert res.arg_p == 1.0 and res.arg_index == 1
    assert res.truncation_p_max == 10.0


def test_discrete_norm_gaussian_on_integers():
    g = gaussian_model()
    res = discrete_norm(g, root_psi(), integer_grid(50))
    assert res.value == pytest.approx(g.lp_norm(1.0), rel=1e-13)
    assert res.arg_index == 1
    assert res.decreasing_at_hi


def test_divergent_moments_give_infinite_norms():
    pareto = DensityModel(
        "pareto3", lambda x: 2.0 / x ** 3 if x >= 1.0 else 0.0, (1.0, np.inf)
    )
    res = gls_norm(pareto, root_psi(), p_max=10.0, n_points=32)
    assert math.isinf(res.value)
    assert "divergent" in res.diagnostics
    dres = discrete_norm(pareto, root_psi(), integer_grid(5))
    assert math.isinf(dres.value)


def test_homogeneity_of_all_three_norms():
    g = gaussian_model()
    psi = root_psi()
    S = RestrictedSet.from_intervals([(1.0, 2.0), (3.0, math.inf)])
    q = geometric_grid(2, 10)
    for alpha in (-2.0, 0.5, 3.0):
        s = g.scaled(alpha)
        assert gls_norm(s, psi).value == pytest.approx(
            abs(alpha) * gls_norm(g, psi).value, rel=1e-12
        )
        assert restricted_norm(s, psi, S).value == pytest.approx(
            abs(alpha) * restricted_norm(g, psi, S).value, rel=1e-12
        )
        assert discrete_norm(s, psi, q).value == pytest.approx(
            abs(alpha) * discrete_norm(g, psi, q).value, rel=1e-12
        )


@settings(max_examples=25)
@given(seed=st.integers(0, 2 ** 31), n=st.integers(60, 150))
def test_triangle_inequality_for_plugin_norms(seed, n):
    rng = np.random.default_rng(seed)
    f = rng.normal(size=n)
    g = rng.normal(size=n)
    psi = root_psi()
    nf = gls_norm(EmpiricalModel(f), psi, p_max=20.0, n_points=128).value
    ng = gls_norm(EmpiricalModel(g), psi, p_max=20.0, n_points=128).value
    nfg = gls_norm(EmpiricalModel(f + g), psi, p_max=20.0, n_points=128).value
    assert nfg <= (nf + ng) * (1.0 + 1e-9)


def test_restricted_sandwich_with_the_linear_gap():
    S = RestrictedSet.from_intervals([(1.0, 2.0), (3.0, math.inf)])
    rep = sandwich_check_restricted(gaussian_model(), linear_psi(), S)
    assert rep.ok
    assert rep.kind == "restricted"
    assert rep.window_p == 200.0
    assert rep.constant.value == 1.5
    assert rep.inner_value <= rep.full_value <= rep.bound * (1.0 + rep.slack)


def test_restricted_sandwich_on_a_bounded_window():
    B = RestrictedSet.from_intervals([(1.0, 2.0)])
    rep = sandwich_check_restricted(gaussian_model(), root_psi(), B, p_max=2.0)
    # window and set coincide, so the two norms are the same scan
    assert rep.ok and rep.constant.value == 1.0
    assert rep.inner_value == rep.full_value
    with pytest.raises(TruncationError):
        sandwich_check_restricted(gaussian_model(), root_psi(), B, p_max=200.0)


def test_discrete_sandwich_monotone_route():
    rep = sandwich_check_discrete(gaussian_model(), root_psi(), geometric_grid(2, 40))
    assert rep.ok
    assert rep.kind == "discrete"
    assert rep.window_p == 255.0  # first grid point at or past 200
    assert rep.constant.value == pytest.approx(math.sqrt(3.0), rel=1e-13)


def test_discrete_sandwich_dip_needs_the_cell_route():
    with pytest.raises(NonMonotoneError):
        sandwich_check_discrete(gaussian_model(), sqrt_dip_psi(), integer_grid(256))
    rep = sandwich_check_discrete(
        gaussian_model(), sqrt_dip_psi(), integer_grid(256), use_w_hat=True
    )
    assert rep.ok
    assert rep.constant.kind == "W_hat"
    # the dip hides full-norm mass between grid points
    assert rep.full_value > rep.inner_value


def test_discrete_sandwich_requires_a_long_enough_grid():
    with pytest.raises(TruncationError):
        sandwich_check_discrete(gaussian_model(), root_psi(), integer_grid(50))


def test_default_window():
    assert default_p_max(gaussian_model()) == 200.0
    assert default_p_max(EmpiricalModel(np.ones(1000))) == pytest.approx(
        5.0 * math.log(1000.0)
    )
