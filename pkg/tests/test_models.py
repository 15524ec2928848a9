"""Moment backends: closed forms, quadrature twins, plug-in samples."""

import math

import numpy as np
import pytest

from glspace import (
    DensityModel,
    DivergentMomentError,
    DomainError,
    EmpiricalModel,
    EmptyBatchError,
    MomentInstabilityWarning,
    UnsupportedBackendError,
    constant_model,
    empirical_survival,
    exponential_model,
    gaussian_density_model,
    gaussian_model,
    rademacher_model,
    sample,
    uniform01_model,
)
from glspace.models import (
    SAMPLE_CHUNK,
    exponential_density_model,
    uniform01_density_model,
    uniform_stream,
)


def test_gaussian_moments():
    g = gaussian_model()
    assert g.lp_norm(1.0) == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-12)
    assert g.lp_norm(2.0) == pytest.approx(1.0, rel=1e-12)
    # E|Z|^4 = 3
    assert g.lp_norm(4.0) == pytest.approx(3.0 ** 0.25, rel=1e-12)


def test_uniform_and_exponential_moments():
    assert uniform01_model().lp_norm(3.0) == pytest.approx(4.0 ** (-1.0 / 3.0), rel=1e-12)
    assert exponential_model().lp_norm(1.0) == pytest.approx(1.0, rel=1e-12)
    assert exponential_model().lp_norm(2.0) == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_flat_families():
    assert rademacher_model().lp_norm(17.3) == 1.0
    assert constant_model(-3.0).lp_norm(5.0) == 3.0
    assert constant_model(-3.0).label == "constant:-3"


def test_moments_reject_p_below_one():
    with pytest.raises(DomainError):
        gaussian_model().lp_norm(0.5)
    with pytest.raises(DomainError):
        uniform01_model().lp_norm(np.array([2.0, 0.3]))


@pytest.mark.parametrize(
    "make_closed,make_density",
    [
        (gaussian_model, gaussian_density_model),
        (uniform01_model, uniform01_density_model),
        (exponential_model, exponential_density_model),
    ],
)
def test_quadrature_twin_agrees_with_closed_form(make_closed, make_density):
    closed, density = make_closed(), make_density()
    for p in (1.0, 2.0, 3.7, 10.0):
        assert density.lp_norm(p) == pytest.approx(closed.lp_norm(p), rel=1e-6)


@pytest.mark.parametrize(
    "factory", [gaussian_model, uniform01_model, exponential_model, rademacher_model]
)
def test_moments_nondecreasing_in_p(factory):
    model = factory()
    rng = np.random.default_rng(42)
    for _ in range(30):
        p = 1.0 + 6.0 * rng.random()
        q = p + 5.0 * rng.random()
        assert model.lp_norm(p) <= model.lp_norm(q) * (1.0 + 1e-12)


def test_heavy_tail_divergence_carries_the_exponent():
    pareto = DensityModel(
        "pareto3", lambda x: 2.0 / x ** 3 if x >= 1.0 else 0.0, (1.0, np.inf)
    )
    assert pareto.lp_norm(1.0) == pytest.approx(2.0, rel=1e-6)
    with pytest.raises(DivergentMomentError) as exc:
        pareto.lp_norm(4.0)
    assert exc.value.p == 4.0


def test_infinite_support_density_cannot_sample():
    with pytest.raises(UnsupportedBackendError):
        gaussian_density_model().sample_values(10, 0)
    vals = uniform01_density_model().sample_values(2000, 1)
    assert vals.min() >= 0.0 and vals.max() <= 1.0


def test_sampling_is_reproducible():
    a = sample(gaussian_model(), 70_000, seed=3)
    b = sample(gaussian_model(), 70_000, seed=3)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, sample(gaussian_model(), 70_000, seed=4).values)


def test_chunk_order_cannot_change_the_stream():
    n = 3 * SAMPLE_CHUNK + 123
    natural = uniform_stream(9, n)
    shuffled = uniform_stream(9, n, chunk_indices=[3, 1, 0, 2])
    assert np.array_equal(natural, shuffled)


def test_shorter_stream_is_a_prefix_of_a_longer_one():
    long = uniform_stream(5, SAMPLE_CHUNK + 50)
    short = uniform_stream(5, SAMPLE_CHUNK + 7)
    assert np.array_equal(long[: SAMPLE_CHUNK + 7], short)


def test_empirical_plugin_moments():
    m = EmpiricalModel([3.0, 4.0])
    assert m.lp_norm(1.0) == pytest.approx(3.5, rel=1e-15)
    assert m.lp_norm(2.0) == pytest.approx(math.sqrt(12.5), rel=1e-14)


def test_plugin_warns_when_p_outruns_the_sample():
    m = EmpiricalModel(np.arange(1.0, 101.0))
    with pytest.warns(MomentInstabilityWarning):
        m.lp_norm(30.0)


def test_zero_sample_has_zero_norm():
    assert EmpiricalModel(np.zeros(8)).lp_norm(2.0) == 0.0


def test_empirical_rejects_empty_input():
    with pytest.raises(EmptyBatchError):
        EmpiricalModel([])


def test_scaling_is_exact_homogeneity():
    g = gaussian_model()
    s = g.scaled(-2.0)
    assert s.lp_norm(3.0) == 2.0 * g.lp_norm(3.0)
    assert np.array_equal(s.sample_values(100, 7), -2.0 * g.sample_values(100, 7))
    assert s.label == "gaussian*-2"


def test_empirical_survival_matches_the_normal_tail():
    batch = sample(gaussian_model(), 200_000, seed=11)
    # P(|Z| >= 1) = 0.31731...
    assert empirical_survival(batch, 1.0) == pytest.approx(0.31731, abs=5e-3)
    assert empirical_survival(batch, 0.0) == 1.0


def test_empty_batch_has_no_survival():
    with pytest.raises(EmptyBatchError):
        empirical_survival(sample(gaussian_model(), 0, seed=0), 1.0)


def test_negative_sample_size_rejected():
    with pytest.raises(DomainError):
        sample(gaussian_model(), -1, seed=0)
