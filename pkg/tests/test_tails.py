"""Discrete Legendre-type transform, tail envelopes, membership scans."""

import math

import numpy as np
import pytest

from glspace import (
    DomainError,
    NoFeasibleKError,
    PowerSlowVaryParams,
    SampleBatch,
    TailEnvelope,
    TruncationError,
    constant_model,
    gaussian_model,
    geometric_grid,
    h_transform,
    integer_grid,
    make_power_slowvary,
    make_tail_envelope,
    membership_K_estimate,
    psi_eval,
    rademacher_model,
    sample,
    sqrt_dip_psi,
    tail_check,
    tail_envelope,
)
from glspace.tails import default_probe_points, quadratic_h_reference


def root_psi():
    return make_power_slowvary(PowerSlowVaryParams(r=2.0))


def naive_h(q, psi, x):
    """Full enumeration over every stored index, same term arithmetic."""
    vals = psi_eval(psi, q.values)
    log_x = math.log(x)
    best_val, best_m = -math.inf, 0
    for m in range(1, q.M + 1):
        term = float(q.values[m - 1]) * (log_x - math.log(float(vals[m - 1])))
        if term > best_val:
            best_val, best_m = term, m
    return best_val, best_m


def test_h_is_zero_at_one():
    res = h_transform(integer_grid(50), root_psi(), 1.0)
    assert res.value == 0.0 and res.arg_index == 1


def test_h_closed_form_anchors():
    res = h_transform(integer_grid(50), root_psi(), math.e)
    # max_m m (1 - 0.5 ln m) lands on m = 3
    assert res.value == pytest.approx(3.0 - 1.5 * math.log(3.0), rel=1e-12)
    assert res.arg_index == 3
    res2 = h_transform(integer_grid(80), root_psi(), math.e ** 2)
    assert res2.value == pytest.approx(20.0 * (2.0 - 0.5 * math.log(20.0)), rel=1e-12)
    assert res2.arg_index == 20


def test_h_rejects_x_below_one():
    with pytest.raises(DomainError):
        h_transform(integer_grid(10), root_psi(), 0.5)


def test_h_truncation_error_when_psi_never_reaches_x():
    # sqrt(9) = 3 < 5, so no stored term brackets the supremum
    with pytest.raises(TruncationError) as exc:
        h_transform(integer_grid(9), root_psi(), 5.0)
    assert "materialized truncation" in str(exc.value)


def test_h_matches_naive_enumeration_bit_for_bit():
    rng = np.random.default_rng(7)
    grids = [integer_grid(60), integer_grid(120), geometric_grid(2, 12), geometric_grid(3, 9)]
    psis = [
        make_power_slowvary(PowerSlowVaryParams(r=r, delta=d))
        for r, d in [(0.5, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 0.5)]
    ]
    for _ in range(30):
        q = grids[int(rng.integers(len(grids)))]
        psi = psis[int(rng.integers(len(psis)))]
        hi = 0.99 * float(psi_eval(psi, q.values[-1]))
        x = math.exp(rng.random() * math.log(hi))
        res = h_transform(q, psi, x)
        val, arg = naive_h(q, psi, x)
        assert res.value == val
        assert res.arg_index == arg


def test_h_nondecreasing_in_x():
    q, psi = integer_grid(60), root_psi()
    hs = [h_transform(q, psi, float(x)).value for x in np.linspace(1.0, 7.0, 30)]
    assert all(b >= a for a, b in zip(hs, hs[1:]))


def test_h_against_the_continuous_relaxation():
    # integer grid, root family: the real-p supremum is x^2/(2e), and an
    # integer within 1/2 of the maximizer loses at most ~1/(16e)
    q = integer_grid(120)
    psi = root_psi()
    for x in np.linspace(math.e, 10.0, 25):
        h = h_transform(q, psi, float(x)).value
        ref = quadratic_h_reference(float(x))
        assert h <= ref * (1.0 + 1e-12)
        assert h >= ref - 0.03


def test_h_non_monotone_route():
    res = h_transform(integer_grid(30), sqrt_dip_psi(), 2.0)
    # dip psi agrees with sqrt(p) at the integers, where the terms live
    assert res.value == pytest.approx(math.log(2.0), rel=1e-12)
    assert res.arg_index in (1, 2)
    with pytest.raises(TruncationError):
        h_transform(integer_grid(10), sqrt_dip_psi(), 5.0)


def test_envelope_value_and_domain():
    env = TailEnvelope(q=integer_grid(50), psi=root_psi(), norm_value=1.0)
    assert env.domain_threshold == math.e
    want = math.exp(-(3.0 - 1.5 * math.log(3.0)))
    assert tail_envelope(env, math.e) == pytest.approx(want, rel=1e-12)
    assert env(math.e) == tail_envelope(env, math.e)
    with pytest.raises(DomainError):
        tail_envelope(env, 2.0)


def test_envelope_scales_exactly_with_the_norm():
    q, psi = integer_grid(50), root_psi()
    one = TailEnvelope(q=q, psi=psi, norm_value=1.0)
    two = TailEnvelope(q=q, psi=psi, norm_value=2.0)
    for x in (math.e, 3.5, 4.0):
        assert two(2.0 * x) == one(x)


def test_envelope_monotone_and_below_one():
    env = TailEnvelope(q=integer_grid(120), psi=root_psi(), norm_value=1.0)
    xs = np.linspace(env.domain_threshold, 9.0, 20)
    vals = [env(float(x)) for x in xs]
    assert all(v <= 1.0 for v in vals)
    assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_make_envelope_plugs_in_the_discrete_norm():
    env = make_tail_envelope(constant_model(2.0), root_psi(), integer_grid(50))
    assert env.norm_value == 2.0
    assert env.domain_threshold == pytest.approx(2.0 * math.e)
    assert env.model_label == "constant:2"
    pts = default_probe_points(env)
    assert all(p >= env.domain_threshold for p in pts)


def test_tail_check_gaussian_smoke():
    report = tail_check(
        gaussian_model(), root_psi(), integer_grid(50), n=20_000, seed=5,
        x_grid=(1.0, 2.5, 3.0),
    )
    assert report.all_ok
    assert not report.rows[0].in_domain  # 1.0 sits below e * norm
    assert math.isnan(report.rows[0].envelope) and report.rows[0].ok
    assert report.n_active == 2


def test_tail_check_bounded_variable_never_violates():
    report = tail_check(
        rademacher_model(), root_psi(), integer_grid(50), n=5_000, seed=1,
        x_grid=(2.8, 3.5),
    )
    assert report.all_ok
    assert all(r.empirical == 0.0 for r in report.rows if r.in_domain)


def test_membership_scan_brackets_the_gaussian_norm():
    batch = sample(gaussian_model(), 50_000, seed=3)
    q, psi = integer_grid(60), root_psi()
    K_grid = np.geomspace(0.3, 4.0, 24)
    est = membership_K_estimate(batch, q, psi, K_grid=K_grid)
    assert est.violations == 0
    assert est.K_hat in set(float(k) for k in K_grid)
    # the true norm is ~0.8; the accepted scale cannot be tiny
    assert est.K_hat > 0.4
    doubled = SampleBatch(values=2.0 * batch.values, seed=batch.seed, size=batch.size)
    est2 = membership_K_estimate(doubled, q, psi, K_grid=K_grid)
    assert est2.K_hat >= est.K_hat


def test_membership_trivial_accept_when_sample_is_small():
    batch = sample(constant_model(0.1), 1_000, seed=0)
    est = membership_K_estimate(batch, integer_grid(60), root_psi(), K_grid=[1.0])
    assert est.K_hat == 1.0
    assert est.x_range_checked is None
    assert est.violations == 0


def test_membership_no_feasible_scale():
    batch = sample(constant_model(50.0), 1_000, seed=0)
    with pytest.raises(NoFeasibleKError):
        membership_K_estimate(
            batch, integer_grid(60), root_psi(), K_grid=[0.1, 0.2]
        )


def test_membership_zero_batch_needs_an_explicit_grid():
    batch = sample(constant_model(0.0), 100, seed=0)
    with pytest.raises(DomainError):
        membership_K_estimate(batch, integer_grid(60), root_psi())
    est = membership_K_estimate(batch, integer_grid(60), root_psi(), K_grid=[0.5, 1.0])
    assert est.K_hat == 0.5 and est.x_range_checked is None


def test_membership_needs_a_grid_reaching_e():
    # sqrt(5) < e, so no probe point is ever inside the envelope domain
    batch = sample(gaussian_model(), 1_000, seed=0)
    with pytest.raises(TruncationError):
        membership_K_estimate(batch, integer_grid(5), root_psi(), K_grid=[1.0])
