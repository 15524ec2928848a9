"""Finite groups, normalized convolution, Young and algebra inequalities."""

import math

import numpy as np
import pytest

from glspace import (
    DomainError,
    FiniteGroup,
    GroupAxiomError,
    PowerSlowVaryParams,
    YoungTriple,
    algebra_check,
    convolve,
    cyclic_group,
    dihedral_group,
    group_lp_norm,
    make_group,
    make_power_slowvary,
    product_group,
    raw_power_slowvary,
    symmetric_group,
    unit_function,
    young_check,
)
from glspace import SpecParseError


def small_groups():
    return [cyclic_group(5), dihedral_group(4), symmetric_group(3)]


def dyadic(rng, n):
    # eighths are exact in binary, so convolution identities can be
    # checked bitwise
    return rng.integers(-16, 17, size=n).astype(float) / 8.0


def test_cyclic_group_structure():
    G = cyclic_group(4)
    assert G.order == 4 and G.identity == 0
    assert G.inv[1] == 3
    assert G.name == "cyclic:4"


def test_broken_table_rejected():
    with pytest.raises(GroupAxiomError):
        FiniteGroup("broken", np.array([[0, 1], [1, 1]]))


def test_symmetric_group_is_noncommutative():
    G = symmetric_group(4)
    assert G.order == 24
    assert any(
        G.mul[a, b] != G.mul[b, a] for a in range(G.order) for b in range(G.order)
    )


def test_product_group_has_an_order_six_element():
    G = make_group("product:cyclic:2xcyclic:3")
    assert G.order == 6
    k = 4  # the element (1, 1)
    power, order = k, 1
    while power != G.identity:
        power = int(G.mul[power, k])
        order += 1
    assert order == 6
    assert product_group(cyclic_group(2), cyclic_group(3)).name == "product:cyclic:2xcyclic:3"


def test_convolution_by_hand_on_two_elements():
    G = cyclic_group(2)
    f = np.array([2.0, 0.0])  # twice the unit mass at the identity
    g = np.array([0.0, 2.0])
    assert np.array_equal(convolve(G, f, g), g)


def test_unit_function_is_a_bitwise_identity():
    rng = np.random.default_rng(3)
    for G in small_groups():
        f = dyadic(rng, G.order)
        u = unit_function(G)
        assert np.array_equal(convolve(G, f, u), f)
        assert np.array_equal(convolve(G, u, f), f)


def test_noncommutative_convolution():
    G = dihedral_group(3)
    f = np.zeros(G.order)
    g = np.zeros(G.order)
    f[1] = 1.0  # a rotation
    g[3] = 1.0  # a reflection
    assert not np.array_equal(convolve(G, f, g), convolve(G, g, f))


def test_convolution_is_associative_and_bilinear():
    rng = np.random.default_rng(11)
    for G in small_groups():
        f, g, h = (rng.normal(size=G.order) for _ in range(3))
        left = convolve(G, convolve(G, f, g), h)
        right = convolve(G, f, convolve(G, g, h))
        np.testing.assert_allclose(left, right, atol=1e-12)
        combo = convolve(G, 2.0 * f + 3.0 * g, h)
        np.testing.assert_allclose(
            combo, 2.0 * convolve(G, f, h) + 3.0 * convolve(G, g, h), atol=1e-12
        )


def test_group_norms():
    G = cyclic_group(4)
    f = np.array([1.0, 2.0, 3.0, 4.0])
    assert group_lp_norm(G, f, 1.0) == pytest.approx(2.5, rel=1e-15)
    assert group_lp_norm(G, f, 2.0) == pytest.approx(math.sqrt(7.5), rel=1e-14)
    assert group_lp_norm(G, f, math.inf) == 4.0
    with pytest.raises(DomainError):
        group_lp_norm(G, f, 0.5)


def test_young_triple_validation():
    YoungTriple(1.0, 1.0, 1.0)
    YoungTriple(2.0, 2.0, math.inf)
    with pytest.raises(DomainError):
        YoungTriple(2.0, 2.0, 2.0)


def test_young_equality_at_the_l1_corner():
    # for nonnegative f, g the L1 case is an identity, so the check is
    # sharp there
    G = dihedral_group(4)
    rng = np.random.default_rng(5)
    f = rng.random(G.order)
    g = rng.random(G.order)
    rep = young_check(G, f, g, YoungTriple(1.0, 1.0, 1.0))
    assert rep.ok
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-12)


def test_young_with_conjugate_exponents():
    G = symmetric_group(3)
    rng = np.random.default_rng(9)
    f = rng.normal(size=G.order)
    g = rng.normal(size=G.order)
    for triple in (YoungTriple(1.5, 3.0, math.inf), YoungTriple(1.0, 2.0, 2.0)):
        rep = young_check(G, f, g, triple)
        assert rep.ok
        assert rep.lhs <= rep.rhs * (1.0 + 1e-12)


def test_algebra_bound_normalized_and_raw():
    G = cyclic_group(8)
    rng = np.random.default_rng(2)
    f = rng.normal(size=G.order)
    g = rng.normal(size=G.order)
    rep = algebra_check(G, f, g, make_power_slowvary(PowerSlowVaryParams(r=2.0)))
    assert rep.ok and rep.constant == 1.0
    raw = raw_power_slowvary(PowerSlowVaryParams(r=1.0, delta=1.0))
    rep_raw = algebra_check(G, f, g, raw)
    assert rep_raw.ok
    assert rep_raw.constant == pytest.approx(math.log(3.0), rel=1e-14)


def test_group_spec_errors():
    with pytest.raises(SpecParseError):
        make_group("foo:3")
    with pytest.raises(SpecParseError):
        make_group("cyclic:abc")
    with pytest.raises(SpecParseError):
        make_group("symmetric:7")
