"""Norm computations: full, restricted, discrete, and sandwich checks.

The central quantity is sup over admissible p of |f|_p / psi(p).  The
full norm ranges over [1, p_max], the restricted norm over a Borel
subset, the discrete norm over a grid (exact enumeration, no
refinement).  Sandwich checks verify the two-sided equivalence

    inner <= full <= constant * inner

numerically.  Both sides are only provable under a common truncation, so
the comparison window is cut at P = p_plus(p_max): the smallest set (or
grid) element at or beyond p_max.  With that choice every p in [1, P]
has its p_plus inside the window and both inequalities hold in exact
arithmetic; the reported slack covers search and moment-backend error.

A divergent moment is not an error here: ||f|| = +inf is a meaningful
statement (f lies outside the space), so it short-circuits to +inf with
the offending p recorded as the witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DivergentMomentError, DomainError, NonMonotoneError, TruncationError
from .generating import GeneratingFunction, psi_eval, psi_validate
from .grids import (
    EquivalenceConstant,
    GridSequence,
    RestrictedSet,
    w_constant,
    w_hat_constant,
    z_constant,
)
from .models import EmpiricalModel, RandomVariableModel
from .search import enumerate_max, grid_refine_supremum

DEFAULT_P_MAX = 200.0


def default_p_max(model: RandomVariableModel) -> float:
    """200 for exact backends; capped at 5*ln(n) for plug-in moments,
    beyond which the empirical estimator degenerates to the sample max."""
    if isinstance(model, EmpiricalModel):
        return min(DEFAULT_P_MAX, max(5.0 * math.log(model.values.size), 1.0))
    return DEFAULT_P_MAX


@dataclass(frozen=True)
class NormResult:
    """A computed norm value with its witness point and diagnostics."""

    value: float
    arg_p: float
    truncation_p_max: float
    decreasing_at_hi: bool
    n_evaluations: int
    arg_index: Optional[int] = None

    @property
    def diagnostics(self) -> str:
        if math.isinf(self.value):
            return f"divergent moment at p={self.arg_p:g}; norm is +inf"
        if self.decreasing_at_hi:
            return "ratio decreasing at the truncation point"
        return "ratio not decreasing at the truncation point; supremum may exceed the truncated value"

    def __float__(self) -> float:
        return self.value


def _ratio_fn(model: RandomVariableModel, psi: GeneratingFunction):
    def ratio(p):
        return model.lp_norm(p) / psi_eval(psi, p)

    return ratio


def gls_norm(
    model: RandomVariableModel,
    psi: GeneratingFunction,
    p_max: float = DEFAULT_P_MAX,
    refine_tol: float = 1e-10,
    rset: Optional[RestrictedSet] = None,
    n_points: int = 512,
    extra_points=(),
) -> NormResult:
    """sup over S intersected with [1, p_max] of |f|_p / psi(p).

    With rset=None the domain is all of [1, p_max].  Interval components
    are scanned on a geometric grid of n_points and every local maximum
    is polished to refine_tol (no unimodality assumed); point components
    are enumerated exactly.  ``extra_points`` are additional exact
    evaluation points; ones outside the domain are ignored.
    """
    if p_max < 1.0:
        raise DomainError(f"p_max must be at least 1, got {p_max:g}")
    ratio = _ratio_fn(model, psi)
    segments = [(1.0, p_max)] if rset is None else rset.segments

    best_val, best_arg = -math.inf, math.inf
    n_eval = 0
    edge_decreasing = True

    def consider(val: float, arg: float) -> None:
        nonlocal best_val, best_arg
        if val > best_val or (val == best_val and arg < best_arg):
            best_val, best_arg = val, arg

    try:
        for a, b in segments:
            a = max(a, 1.0)
            b = min(b, p_max)
            if a > b:
                continue
            if a == b:
                consider(float(ratio(a)), a)
                n_eval += 1
                continue
            res = grid_refine_supremum(ratio, a, b, n_points=n_points, refine_tol=refine_tol)
            consider(res.value, res.arg)
            n_eval += res.n_evaluations
            if b == p_max:
                edge_decreasing = res.decreasing_at_hi
        for p in extra_points:
            p = float(p)
            if 1.0 <= p <= p_max and (rset is None or rset.contains(p)):
                consider(float(ratio(p)), p)
                n_eval += 1
    except DivergentMomentError as exc:
        return NormResult(
            value=math.inf,
            arg_p=float(exc.p),
            truncation_p_max=float(p_max),
            decreasing_at_hi=False,
            n_evaluations=n_eval,
        )

    if not math.isfinite(best_arg) and best_val == -math.inf:
        raise DomainError("domain is empty below p_max")
    return NormResult(
        value=float(best_val),
        arg_p=float(best_arg),
        truncation_p_max=float(p_max),
        decreasing_at_hi=bool(edge_decreasing),
        n_evaluations=int(n_eval),
    )


def restricted_norm(
    model: RandomVariableModel,
    psi: GeneratingFunction,
    S: RestrictedSet,
    p_max: float = DEFAULT_P_MAX,
    refine_tol: float = 1e-10,
    n_points: int = 512,
) -> NormResult:
    """Norm over the given set, truncated at p_max."""
    return gls_norm(model, psi, p_max, refine_tol=refine_tol, rset=S, n_points=n_points)


def discrete_norm(model: RandomVariableModel, psi: GeneratingFunction, q: GridSequence) -> NormResult:
    """max over the stored grid of |f|_{q(m)} / psi(q(m)); exact enumeration."""
    try:
        moments = np.asarray(model.lp_norm(q.values), dtype=float)
    except DivergentMomentError as exc:
        return NormResult(
            value=math.inf,
            arg_p=float(exc.p),
            truncation_p_max=float(q.values[-1]),
            decreasing_at_hi=False,
            n_evaluations=0,
        )
    ratios = moments / psi_eval(psi, q.values)
    idx, best = enumerate_max(ratios.tolist())
    decreasing = ratios.size >= 3 and ratios[-3] > ratios[-2] > ratios[-1]
    return NormResult(
        value=float(best),
        arg_p=float(q.values[idx]),
        truncation_p_max=float(q.values[-1]),
        decreasing_at_hi=bool(decreasing),
        n_evaluations=int(ratios.size),
        arg_index=idx + 1,
    )


# ---------------------------------------------------------------------------
# Sandwich checks

@dataclass(frozen=True)
class SandwichReport:
    """Outcome of a two-sided equivalence check on a common window.

    left  :  inner <= full        (a sup over a subset cannot exceed it)
    right :  full <= constant * inner
    ``slack`` is the relative tolerance applied (requested tolerance plus
    the moment backend's own).  When the constant or a norm is infinite
    the right side is not applicable and only the left side is judged.
    """

    kind: str
    model_label: str
    psi_description: str
    domain_description: str
    window_p: float
    full_value: float
    inner_value: float
    constant: EquivalenceConstant
    left_ok: bool
    right_ok: bool
    slack: float

    @property
    def applicable(self) -> bool:
        return (
            math.isfinite(self.constant.value)
            and math.isfinite(self.full_value)
            and math.isfinite(self.inner_value)
        )

    @property
    def bound(self) -> float:
        return self.constant.value * self.inner_value

    @property
    def ok(self) -> bool:
        return self.left_ok and self.right_ok

    @property
    def left_margin(self) -> float:
        return self.full_value - self.inner_value

    @property
    def right_margin(self) -> float:
        return self.bound - self.full_value


def _combined_slack(model: RandomVariableModel, rtol: float) -> float:
    # two moment evaluations enter each compared ratio
    return rtol + 2.0 * model.moment_tolerance


def _judge(full: float, inner: float, constant: float, slack: float):
    left_ok = inner <= full * (1.0 + slack)
    if not (math.isfinite(constant) and math.isfinite(full) and math.isfinite(inner)):
        return left_ok, True  # right side not applicable, never asserted false
    right_ok = full <= constant * inner * (1.0 + slack)
    return left_ok, right_ok


def sandwich_check_restricted(
    model: RandomVariableModel,
    psi: GeneratingFunction,
    S: RestrictedSet,
    p_max: float = DEFAULT_P_MAX,
    rtol: float = 1e-9,
    n_points: int = 512,
) -> SandwichReport:
    """Check inner <= full <= Z * inner on the window [1, p_plus(p_max)].

    Z is computed over the windowed set: its gaps are exactly the gaps
    a p in the window can fall into, so the bound is valid and finite
    even when the untruncated set continues with larger gaps.
    """
    P = S.window_point(p_max)
    windowed = S.windowed(P)
    inner = gls_norm(model, psi, P, rset=windowed, n_points=n_points)
    full = gls_norm(model, psi, P, n_points=n_points)
    const = z_constant(windowed, psi)
    slack = _combined_slack(model, rtol)
    left_ok, right_ok = _judge(full.value, inner.value, const.value, slack)
    return SandwichReport(
        kind="restricted",
        model_label=model.label,
        psi_description=psi.description,
        domain_description=S.description,
        window_p=P,
        full_value=full.value,
        inner_value=inner.value,
        constant=const,
        left_ok=bool(left_ok),
        right_ok=bool(right_ok),
        slack=slack,
    )


def _cellwise_full_norm(
    model: RandomVariableModel,
    psi: GeneratingFunction,
    gtr: GridSequence,
    refine_tol: float = 1e-10,
    points_per_cell: int = 64,
) -> NormResult:
    """Full norm over [1, q(M)] scanned one partition cell at a time.

    An oscillating psi can hide whole peaks between the samples of a
    single geometric scan of [1, q(M)].  The W^ constant resolves each
    cell with its own dense sample, so the norm search on the other side
    of the sandwich has to match that resolution or the two sides end up
    looking at different functions.
    """
    ratio = _ratio_fn(model, psi)
    best_val, best_arg = -math.inf, math.inf
    n_eval = 0
    edge_decreasing = True
    P = float(gtr.values[-1])
    try:
        for m in range(gtr.M - 1):
            a, b = float(gtr.values[m]), float(gtr.values[m + 1])
            res = grid_refine_supremum(
                ratio, a, b, n_points=points_per_cell, refine_tol=refine_tol, geometric=False
            )
            if res.value > best_val or (res.value == best_val and res.arg < best_arg):
                best_val, best_arg = res.value, res.arg
            n_eval += res.n_evaluations
            if b == P:
                edge_decreasing = res.decreasing_at_hi
    except DivergentMomentError as exc:
        return NormResult(
            value=math.inf,
            arg_p=float(exc.p),
            truncation_p_max=P,
            decreasing_at_hi=False,
            n_evaluations=n_eval,
        )
    return NormResult(
        value=float(best_val),
        arg_p=float(best_arg),
        truncation_p_max=P,
        decreasing_at_hi=bool(edge_decreasing),
        n_evaluations=int(n_eval),
    )


def sandwich_check_discrete(
    model: RandomVariableModel,
    psi: GeneratingFunction,
    q: GridSequence,
    p_max: float = DEFAULT_P_MAX,
    use_w_hat: bool = False,
    rtol: float = 1e-9,
    n_points: int = 512,
) -> SandwichReport:
    """Check discrete <= full <= W * discrete (or W^ when requested).

    The W route is only sound for nondecreasing psi; a non-monotone
    generating function must go through W^, whose cell minima assume
    nothing.  The two routes stay separate on purpose: W^ collapsing to
    W on monotone inputs is itself a tested property, not a shortcut.
    """
    idx = q.first_index_at_least(p_max)
    if idx > q.M:
        raise TruncationError(
            f"{q.description} stores {q.M} points but the window needs q({idx}); increase M"
        )
    gtr = q.truncated(idx)
    P = float(gtr.values[-1])
    inner = discrete_norm(model, psi, gtr)
    if use_w_hat:
        full = _cellwise_full_norm(model, psi, gtr)
        const = w_hat_constant(gtr, psi)
    else:
        if not psi.strictly_increasing and not psi_validate(psi, p_max=P).monotone:
            raise NonMonotoneError(
                f"{psi.description} is not nondecreasing on [1, {P:g}]; "
                "the W bound does not apply, pass use_w_hat=True"
            )
        full = gls_norm(model, psi, P, n_points=n_points)
        const = w_constant(gtr, psi)
    slack = _combined_slack(model, rtol)
    left_ok, right_ok = _judge(full.value, inner.value, const.value, slack)
    return SandwichReport(
        kind="discrete",
        model_label=model.label,
        psi_description=psi.description,
        domain_description=q.description,
        window_p=P,
        full_value=full.value,
        inner_value=inner.value,
        constant=const,
        left_ok=bool(left_ok),
        right_ok=bool(right_ok),
        slack=slack,
    )
