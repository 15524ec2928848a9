"""
Norm equivalence: restricted and discrete sandwiches
====================================================

The full norm sup_{p>=1} |f|_p / psi(p) is bracketed by the same sup
taken over a thinner exponent domain:

    inner <= full <= constant * inner

with Z (restricted sets) or W / W^ (grids) as the constant.  This
script evaluates both sides on concrete models and prints the verdicts.
"""

from glspace import (
    PowerSlowVaryParams,
    gaussian_model,
    geometric_grid,
    gls_norm,
    integer_grid,
    make_power_slowvary,
    sandwich_check_discrete,
    sandwich_check_restricted,
    set_from_spec,
    sqrt_dip_psi,
    uniform01_model,
)

psi = make_power_slowvary(PowerSlowVaryParams(r=2.0, delta=0.0))
g = gaussian_model()

# the full norm over [1, p_max]; for the gaussian under sqrt(p) the
# ratio decreases, so the sup sits at p = 1
res = gls_norm(g, psi, p_max=200.0)
print("full gaussian norm:", res.value, "attained at p =", res.arg_p)

print()
print("-- restricted sandwich --")
S = set_from_spec("intervals:1-2,4-inf")
rep = sandwich_check_restricted(g, psi, S, p_max=200.0)
print("domain:", rep.domain_description)
print("inner =", rep.inner_value)
print("full  =", rep.full_value)
print("Z     =", rep.constant.value)
print("inner <= full:", rep.left_ok, "| full <= Z*inner:", rep.right_ok)

print()
print("-- discrete sandwich, monotone psi --")
q = geometric_grid(D=2.0, M=40)
rep = sandwich_check_discrete(uniform01_model(), psi, q, p_max=200.0)
print("grid:", rep.domain_description, "window p =", rep.window_p)
print("inner =", rep.inner_value, "full =", rep.full_value, "W =", rep.constant.value)
print("two-sided ok:", rep.ok)

print()
print("-- discrete sandwich, dipping psi --")
# W assumes monotone psi; the dip family needs the sampled variant W^
dip = sqrt_dip_psi()
rep = sandwich_check_discrete(g, dip, integer_grid(256), p_max=200.0, use_w_hat=True)
print("constant kind:", rep.constant.kind, "value =", round(rep.constant.value, 6))
print("inner =", round(rep.inner_value, 6), "full =", round(rep.full_value, 6))
print("two-sided ok:", rep.ok)
