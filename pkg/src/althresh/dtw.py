"""Dynamic-time-warping distance between univariate value traces.

Squared-difference local cost, unconstrained monotone alignment over steps
(1,0), (0,1), (1,1), and the square root of the optimal cumulative cost as
the distance.  The O(T^2) recurrence runs in a numba-compiled two-row kernel;
`cost_matrix` and `cumulative_matrix` build the full matrices in plain numpy
for tests and debugging.  An optional band half-width restricts the alignment
to |u - v| <= band as a speed knob; it is off by default and the band is
widened to the length difference when needed so a path always exists.
"""

from __future__ import annotations

from typing import List, Optional, Sequence as SequenceType

import numpy as np
from numba import njit

__all__ = [
    "dtw_distance",
    "pairwise_distances",
    "cost_matrix",
    "cumulative_matrix",
]


@njit(cache=True)
def _final_cumulative_cost(x: np.ndarray, y: np.ndarray, band: int) -> float:
    """Bottom-right cell of the cumulative cost matrix; band < 0 means no band."""
    tx = x.shape[0]
    ty = y.shape[0]
    prev = np.full(ty, np.inf)
    curr = np.full(ty, np.inf)
    hi = ty if band < 0 else min(ty, band + 1)
    diff = x[0] - y[0]
    prev[0] = diff * diff
    for v in range(1, hi):
        diff = x[0] - y[v]
        prev[v] = prev[v - 1] + diff * diff
    for u in range(1, tx):
        lo = 0 if band < 0 else max(0, u - band)
        hi = ty if band < 0 else min(ty, u + band + 1)
        for v in range(ty):
            curr[v] = np.inf
        for v in range(lo, hi):
            best = prev[v]
            if v > 0:
                if prev[v - 1] < best:
                    best = prev[v - 1]
                if curr[v - 1] < best:
                    best = curr[v - 1]
            diff = x[u] - y[v]
            curr[v] = best + diff * diff
        prev, curr = curr, prev
    return prev[ty - 1]


def _as_trace(values, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise ValueError(f"{name} trace is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} trace contains non-finite values")
    return arr


def dtw_distance(x, y, band: Optional[int] = None) -> float:
    """Warping distance between two univariate traces.

    Args:
        x: First trace, any 1-D array-like of finite reals.
        y: Second trace.
        band: Optional alignment band half-width; None computes the
            unconstrained distance.

    Returns:
        sqrt of the optimal cumulative squared-difference cost.

    Raises:
        ValueError: On an empty trace or non-finite values.
    """
    xa = _as_trace(x, "first")
    ya = _as_trace(y, "second")
    if band is None:
        effective = -1
    else:
        if band < 0:
            raise ValueError("band must be >= 0")
        # widen so the corner stays reachable for unequal lengths
        effective = max(int(band), abs(xa.size - ya.size))
    return float(np.sqrt(_final_cumulative_cost(xa, ya, effective)))


def pairwise_distances(
    a: SequenceType[np.ndarray], b: SequenceType[np.ndarray], band: Optional[int] = None
) -> np.ndarray:
    """Matrix of dtw_distance over the cross product of two trace lists.

    Entry [n, m] is the distance between a[n] and b[m], computed elementwise
    in row-major order.

    Raises:
        ValueError: Naming the offending pair when a trace is invalid.
    """
    out = np.empty((len(a), len(b)), dtype=np.float64)
    for n, xa in enumerate(a):
        for m, yb in enumerate(b):
            try:
                out[n, m] = dtw_distance(xa, yb, band=band)
            except ValueError as exc:
                raise ValueError(f"pair ({n}, {m}): {exc}") from exc
    return out


def cost_matrix(x, y) -> np.ndarray:
    """Full local cost matrix C[u, v] = (x_u - y_v)^2."""
    xa = _as_trace(x, "first")
    ya = _as_trace(y, "second")
    return (xa[:, None] - ya[None, :]) ** 2


def cumulative_matrix(x, y) -> np.ndarray:
    """Full cumulative cost matrix of the warping recurrence.

    First row and column accumulate along their single predecessor; every
    other cell adds the local cost to the cheapest of the three predecessors.
    Kept in plain numpy as the readable mirror of the compiled kernel.
    """
    cost = cost_matrix(x, y)
    tx, ty = cost.shape
    acc = np.empty_like(cost)
    acc[0, 0] = cost[0, 0]
    for v in range(1, ty):
        acc[0, v] = acc[0, v - 1] + cost[0, v]
    for u in range(1, tx):
        acc[u, 0] = acc[u - 1, 0] + cost[u, 0]
    for u in range(1, tx):
        for v in range(1, ty):
            acc[u, v] = cost[u, v] + min(acc[u - 1, v], acc[u, v - 1], acc[u - 1, v - 1])
    return acc
