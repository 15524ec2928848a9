"""Restricted parameter sets, discrete grids, and equivalence constants.

A restricted set is a Borel subset of [1, inf) containing 1, stored as a
merged union of closed segments (isolated points are degenerate
segments).  A grid is a strictly increasing sequence q(1)=1, q(2), ...
that conceptually continues to infinity; only finitely many values are
materialized, with an optional generator to extend on demand.

The equivalence constants quantify how much of the full norm a
restriction can lose:

    Z  = sup_p psi(p+(p)) / psi(p)           over gaps of the set
    W  = sup_m psi(q(m+1)) / psi(q(m))        consecutive grid ratios
    W^ = sup_m psi(q(m+1)) / min_{A(m)} psi   cell-minimum variant,
                                              valid without monotonicity

where p+(p) is the smallest element of the set that is >= p and A(m) is
the cell [q(m), q(m+1)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NonMonotoneError, TruncationError
from .generating import GeneratingFunction, psi_eval
from .search import enumerate_max, sampled_min

_EXTEND_CAP = 200000


class GridSequence:
    """Strictly increasing grid q(1)=1 < q(2) < ... with optional tail."""

    def __init__(self, values, description="grid:custom", generator: Optional[Callable[[int], float]] = None):
        vals = np.asarray(values, dtype=float).ravel()
        if vals.size < 1:
            raise DomainError("a grid needs at least one point")
        if vals[0] != 1.0:
            raise DomainError(f"grids must start at q(1)=1, got {vals[0]}")
        if np.any(np.diff(vals) <= 0):
            raise NonMonotoneError("grid values must be strictly increasing")
        self.values = vals
        self.description = description
        self.generator = generator

    @property
    def M(self) -> int:
        return int(self.values.size)

    def value_at(self, m: int) -> float:
        """q(m), 1-based; beyond the stored range the generator extends."""
        if m < 1:
            raise DomainError("grid indices are 1-based")
        if m <= self.M:
            return float(self.values[m - 1])
        if self.generator is None:
            raise TruncationError(f"grid stores {self.M} points and has no generator for m={m}")
        return float(self.generator(m))

    def truncated(self, M: int) -> "GridSequence":
        if not 1 <= M <= self.M:
            raise DomainError(f"cannot truncate a {self.M}-point grid to M={M}")
        return GridSequence(self.values[:M], self.description, self.generator)

    def first_index_at_least(self, p: float) -> int:
        """Smallest m with q(m) >= p; extends through the generator."""
        if p <= self.values[-1]:
            return int(np.searchsorted(self.values, p, side="left")) + 1
        if self.generator is None:
            raise TruncationError(
                f"{self.description} is truncated at q({self.M})={self.values[-1]:g} < {p:g}"
            )
        # grids diverge, so doubling then bisecting terminates quickly
        lo, hi = self.M, 2 * self.M
        while self.value_at(hi) < p:
            lo, hi = hi, 2 * hi
            if hi > _EXTEND_CAP:
                raise TruncationError(f"{self.description} did not reach {p:g} within {_EXTEND_CAP} terms")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.value_at(mid) < p:
                lo = mid
            else:
                hi = mid
        return hi

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"GridSequence({self.description}, M={self.M})"


def geometric_grid(D: int, M: int) -> GridSequence:
    """q(m) = D^m - D + 1 for an integer ratio D >= 2; q(1) = 1."""
    if float(D) != int(D) or int(D) < 2:
        raise DomainError(f"geometric grids need an integer D >= 2, got {D}")
    D = float(int(D))
    if M < 1:
        raise DomainError("M must be positive")
    values = D ** np.arange(1, M + 1, dtype=float) - D + 1.0
    return GridSequence(values, f"grid:geometric:D={D:g}:M={M}", generator=lambda m: D**m - D + 1.0)


def integer_grid(M: int) -> GridSequence:
    """q(m) = m."""
    if M < 1:
        raise DomainError("M must be positive")
    return GridSequence(np.arange(1, M + 1, dtype=float), f"grid:integers:M={M}", generator=float)


@dataclass(frozen=True)
class PartitionCell:
    """Half-open cell A(m) = [q(m), q(m+1)) of the induced partition."""

    m: int
    lower: float
    upper: float


def partition_cells(grid: GridSequence):
    """Disjoint cells covering [1, q(M)); adjacent cells share endpoints."""
    v = grid.values
    return [PartitionCell(m + 1, float(v[m]), float(v[m + 1])) for m in range(grid.M - 1)]


class RestrictedSet:
    """Borel subset of [1, inf) containing 1, as merged closed segments."""

    def __init__(
        self,
        segments,
        description="set:custom",
        grid: Optional[GridSequence] = None,
        windowed_at: Optional[float] = None,
    ):
        segs = sorted((float(a), float(b)) for a, b in segments)
        for a, b in segs:
            if not (a >= 1.0 and a <= b):
                raise DomainError(f"segment [{a:g}, {b:g}] must satisfy 1 <= a <= b")
        merged = []
        for a, b in segs:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        if not merged or merged[0][0] != 1.0:
            raise DomainError("restricted sets must contain p = 1")
        self._lo = np.array([s[0] for s in merged])
        self._hi = np.array([s[1] for s in merged])
        self.description = description
        self.grid = grid
        self.windowed_at = windowed_at

    @classmethod
    def full(cls) -> "RestrictedSet":
        return cls([(1.0, math.inf)], "full")

    @classmethod
    def from_intervals(cls, intervals, description=None) -> "RestrictedSet":
        if description is None:
            parts = ",".join(f"{a:g}-{'inf' if math.isinf(b) else format(b, 'g')}" for a, b in intervals)
            description = f"intervals:{parts}"
        return cls(intervals, description)

    @classmethod
    def from_grid(cls, grid: GridSequence) -> "RestrictedSet":
        return cls([(v, v) for v in grid.values], grid.description, grid=grid)

    @property
    def segments(self):
        return list(zip(self._lo.tolist(), self._hi.tolist()))

    @property
    def sup_value(self) -> float:
        return math.inf if self.grid is not None else float(self._hi[-1])

    def _extend_to(self, p: float) -> None:
        """Pull more points out of a backing grid until one reaches p."""
        if self.grid is None or self.grid.generator is None:
            return
        m = int(np.searchsorted(self._lo, self.grid.values[-1], side="right")) or self._lo.size
        last = self._hi[-1]
        new = []
        idx = self.grid.M
        while last < p:
            idx += 1
            if idx > _EXTEND_CAP:
                raise TruncationError(f"{self.description} tail did not reach {p:g}")
            last = self.grid.value_at(idx)
            new.append(last)
        if new:
            arr = np.array(new)
            self._lo = np.concatenate([self._lo, arr])
            self._hi = np.concatenate([self._hi, arr])

    def contains(self, p):
        arr = np.asarray(p, dtype=float)
        scalar = arr.ndim == 0
        flat = np.atleast_1d(arr)
        if self.grid is not None and flat.max(initial=1.0) > self._hi[-1]:
            self._extend_to(float(flat.max()))
        idx = np.searchsorted(self._hi, flat, side="left")
        ok = idx < self._hi.size
        res = np.zeros(flat.shape, dtype=bool)
        res[ok] = self._lo[idx[ok]] <= flat[ok]
        return bool(res[0]) if scalar else res.reshape(arr.shape)

    def p_plus(self, p):
        """Smallest element of the set that is >= p (inf if none)."""
        arr = np.asarray(p, dtype=float)
        scalar = arr.ndim == 0
        flat = np.atleast_1d(arr).astype(float)
        if np.any(flat < 1.0):
            raise DomainError("p_plus is defined for p >= 1")
        if self.grid is not None and flat.max() > self._hi[-1]:
            self._extend_to(float(flat.max()))
        idx = np.searchsorted(self._hi, flat, side="left")
        out = np.full(flat.shape, math.inf)
        ok = idx < self._hi.size
        out[ok] = np.maximum(flat[ok], self._lo[idx[ok]])
        return float(out[0]) if scalar else out.reshape(arr.shape)

    def window_point(self, p_max: float) -> float:
        """Smallest set element >= p_max, used to truncate comparisons."""
        P = self.p_plus(p_max)
        if math.isinf(P):
            raise TruncationError(
                f"{self.description} has no elements >= {p_max:g}; lower p_max to at most {self.sup_value:g}"
            )
        return P

    def windowed(self, P: float) -> "RestrictedSet":
        """Intersection with [1, P].  P must itself belong to the set,
        so that every p <= P keeps its p_plus inside the window; Z of
        the result is then a valid constant for the truncated sandwich.
        """
        if not self.contains(P):
            raise DomainError(f"window point {P:g} is not an element of {self.description}")
        segs = [(a, min(b, P)) for a, b in self.segments if a <= P]
        return RestrictedSet(segs, f"{self.description}|p<={P:g}", windowed_at=float(P))

    def gaps(self):
        """Open gaps (hi_k, lo_{k+1}) between consecutive segments."""
        return [
            (float(self._hi[k]), float(self._lo[k + 1]))
            for k in range(self._lo.size - 1)
            if self._lo[k + 1] > self._hi[k]
        ]

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"RestrictedSet({self.description})"


# ---------------------------------------------------------------------------
# Equivalence constants

@dataclass(frozen=True)
class EquivalenceConstant:
    """A computed Z / W / W^ value with its witness location.

    ``arg`` is the left endpoint of the achieving gap (Z) or the 1-based
    achieving cell index (W, W^).  ``tail_ratio`` reports the last
    computed ratio so callers can notice a supremum that is still
    climbing at the truncation point (``tail_increasing``).
    """

    kind: str
    value: float
    arg: float
    unbounded: bool = False
    tail_ratio: Optional[float] = None
    tail_increasing: bool = False
    detail: str = ""

    def __float__(self) -> float:
        return self.value


def p_plus(S: RestrictedSet, p):
    """Smallest element of S at or above p; +inf when none exists."""
    return S.p_plus(p)


def z_constant(S: RestrictedSet, psi: GeneratingFunction, tail_terms: int = 8) -> EquivalenceConstant:
    """Z = sup_p psi(p+(p))/psi(p), by structural analysis of the gaps.

    Inside a segment p+(p) = p, so only the gaps contribute.  Over a gap
    (b, a) the supremum of psi(a)/psi(p) is the limit value psi(a)/psi(b)
    as p drops to b (psi continuous and nondecreasing); the closed-form
    gap analysis therefore requires the monotone flag and rejects
    anything else (the W^ machinery covers non-monotone psi).  A bounded
    set has nothing beyond its last point, so p_plus diverges there and
    Z = +inf with an unbounded-gap marker.
    """
    if not psi.strictly_increasing:
        raise NonMonotoneError(
            f"{psi.description} is not flagged increasing; the gap analysis for Z "
            "needs monotone psi (use the W^ cell-minimum machinery instead)"
        )
    rset = S
    gaps = rset.gaps()
    detail = ""
    if rset.grid is not None and rset.grid.generator is not None:
        # the stored points are a truncation; extend a few gaps past the
        # end so the reported tail ratio reflects the true sequence
        last = rset.grid.M
        ext = [rset.grid.value_at(m) for m in range(last, last + tail_terms + 1)]
        gaps = gaps + [(ext[i], ext[i + 1]) for i in range(tail_terms)]
    elif math.isfinite(rset.sup_value) and rset.windowed_at is None:
        # nothing beyond the last point: p_plus diverges there, so no
        # finite Z compares the set against the untruncated full norm
        return EquivalenceConstant(
            kind="Z",
            value=math.inf,
            arg=rset.sup_value,
            unbounded=True,
            detail=f"set has no elements beyond {rset.sup_value:g}; p_plus diverges there",
        )
    if not gaps:
        return EquivalenceConstant(kind="Z", value=1.0, arg=1.0, detail="set has no gaps")

    ratios = [psi_eval(psi, hi) / psi_eval(psi, lo) for lo, hi in gaps]
    idx, best = enumerate_max(ratios)
    tail_increasing = len(ratios) >= 3 and ratios[-1] > ratios[-2] > ratios[-3]
    if tail_increasing:
        detail = "gap ratios still increasing at truncation; value may understate Z"
    return EquivalenceConstant(
        kind="Z",
        value=max(1.0, best),
        arg=gaps[idx][0],
        tail_ratio=ratios[-1],
        tail_increasing=tail_increasing,
        detail=detail,
    )


def w_constant(q: GridSequence, psi: GeneratingFunction) -> EquivalenceConstant:
    """W = max_m psi(q(m+1))/psi(q(m)) over the stored grid."""
    grid = q
    if grid.M < 2:
        raise DomainError("W needs at least two grid points")
    vals = psi_eval(psi, grid.values)
    ratios = vals[1:] / vals[:-1]
    idx, best = enumerate_max(ratios.tolist())
    tail_increasing = ratios.size >= 3 and ratios[-1] > ratios[-2] > ratios[-3]
    return EquivalenceConstant(
        kind="W",
        value=float(best),
        arg=float(idx + 1),
        tail_ratio=float(ratios[-1]),
        tail_increasing=bool(tail_increasing),
        detail="ratios still increasing at truncation" if tail_increasing else "",
    )


def w_hat_constant(q: GridSequence, psi: GeneratingFunction, cell_grid: int = 256) -> EquivalenceConstant:
    """W^ = max_m psi(q(m+1)) / min over the cell A(m) of psi.

    The cell minimum comes from cell_grid samples polished by local
    refinement, so for increasing psi this reproduces W exactly (the
    minimum sits at the left endpoint, which is a sample).  Valid for
    non-monotone generating functions, where W is not.
    """
    grid = q
    if grid.M < 2:
        raise DomainError("W^ needs at least two grid points")
    if cell_grid < 2:
        raise DomainError("cell_grid must be at least 2 samples per cell")
    f = lambda p: psi_eval(psi, p)
    ratios = []
    for cell in partition_cells(grid):
        mn = sampled_min(f, cell.lower, cell.upper, n_samples=cell_grid)
        ratios.append(psi_eval(psi, cell.upper) / mn)
    idx, best = enumerate_max(ratios)
    tail_increasing = len(ratios) >= 3 and ratios[-1] > ratios[-2] > ratios[-3]
    return EquivalenceConstant(
        kind="W_hat",
        value=float(best),
        arg=float(idx + 1),
        tail_ratio=float(ratios[-1]),
        tail_increasing=bool(tail_increasing),
        detail="ratios still increasing at truncation" if tail_increasing else "",
    )
