"""
Convolution algebra on finite groups
====================================

Functions on a finite group G convolve under normalized counting
measure.  Young's inequality holds with constant 1, and the weighted
norm is submultiplicative with constant psi(1): the space is a Banach
algebra.  Everything here is exact small-matrix arithmetic, so the
checks run with 1e-12 slack.
"""

import numpy as np

from glspace import (
    PowerSlowVaryParams,
    YoungTriple,
    algebra_check,
    convolve,
    group_lp_norm,
    make_group,
    make_power_slowvary,
    raw_power_slowvary,
    unit_function,
    young_check,
)

G = make_group("dihedral:4")
abelian = np.array_equal(G.mul, G.mul.T)
print(G.name, "order", G.order, "abelian:", abelian)

rng = np.random.default_rng(5)
f = rng.uniform(0.0, 2.0, G.order)
g = rng.uniform(0.0, 2.0, G.order)
conv = convolve(G, f, g)
print("f*g =", np.round(conv, 4))

# convolving with n * delta_e changes nothing: the unit of the algebra
u = unit_function(G)
print("unit acts as identity:", np.array_equal(convolve(G, u, f), f))

# Young: |f*g|_r <= |f|_p |g|_q whenever 1/p + 1/q = 1 + 1/r
for triple in (YoungTriple(1.0, 1.0, 1.0), YoungTriple(2.0, 2.0, np.inf), YoungTriple(1.5, 3.0, np.inf)):
    rep = young_check(G, f, g, triple)
    print(f"Young {triple}: lhs = {rep.lhs:.6f} <= rhs = {rep.rhs:.6f} -> {rep.ok}")

# nonnegative f, g at p = q = r = 1 is the equality case
print("L1 equality gap:", abs(group_lp_norm(G, conv, 1.0) - group_lp_norm(G, f, 1.0) * group_lp_norm(G, g, 1.0)))

print()
params = PowerSlowVaryParams(r=1.0, delta=1.0)
for psi in (make_power_slowvary(params), raw_power_slowvary(params)):
    rep = algebra_check(G, f, g, psi)
    print(f"algebra bound, {psi.description}:")
    print(f"  |f*g| = {rep.conv_norm:.6f} <= {rep.constant:.6f} * {rep.f_norm:.6f} * {rep.g_norm:.6f} = {rep.bound:.6f} -> {rep.ok}")
