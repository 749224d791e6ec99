"""X-state parameter extraction and the three quantumness measures.

For a three-qubit X-matrix (nonzero entries on the main diagonal and the
antidiagonal only) the measures have closed evaluations:

  Svetlichny value   S = max(8*sqrt(2)*max_i |f_i|, 4|N|),
                     N = d1 - d2 - d3 + d4 - e4 + e3 + e2 - e1;
                     S > 4 certifies genuine tripartite nonlocality.
  GTE                E = 2*max(0, max_i (|f_i| - m_i)),
                     m_i = sum_{j != i} sqrt(d_j e_j).
  l1-coherence       C = sum of |off-diagonal entries| (any density matrix).

Diagonal entries 1..4 are d_1..d_4; entries 8..5 are e_1..e_4, so d_i and
e_i sit on mirrored positions. f_i lives on the (i, 9-i) antidiagonal slot
(1-based indices).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import DensityOperator, SizeError


class StructureError(ValueError):
    """The matrix does not have the X pattern within tolerance."""


@dataclass(frozen=True)
class XState:
    """The 12 defining scalars of a three-qubit X-matrix."""

    d: tuple[float, float, float, float]
    e: tuple[float, float, float, float]
    f: tuple[complex, complex, complex, complex]


@dataclass(frozen=True)
class MeasureTriple:
    s: float
    e_gte: float
    c: float


#: (row, col) of f_1..f_4 in the upper triangle.
_F_SLOTS = ((0, 7), (1, 6), (2, 5), (3, 4))


def extract_xstate(rho: DensityOperator, tol: float = 1e-12) -> XState:
    """Read off (d, e, f); reject any off-pattern entry above `tol`."""
    mat = rho.matrix
    if mat.shape != (8, 8):
        raise SizeError(f"expected a three-mode operator, got shape {mat.shape}")

    allowed = {(i, i) for i in range(8)} | {(i, 7 - i) for i in range(8)}
    worst = (0.0, None)
    for i in range(8):
        for j in range(8):
            if (i, j) in allowed:
                continue
            mag = abs(mat[i, j])
            if mag > worst[0]:
                worst = (mag, (i, j))
    if worst[0] > tol:
        raise StructureError(
            f"matrix is not X-structured: entry {worst[1]} has magnitude {worst[0]:.3e}"
        )

    d = tuple(float(mat[i, i].real) for i in range(4))
    e = tuple(float(mat[7 - i, 7 - i].real) for i in range(4))
    f = tuple(complex(mat[i, j]) for i, j in _F_SLOTS)
    return XState(d, e, f)  # type: ignore[arg-type]


def gtn(x: XState) -> float:
    """Svetlichny value of an X-state (threshold 4 is the caller's concern)."""
    d1, d2, d3, d4 = x.d
    e1, e2, e3, e4 = x.e
    n = d1 - d2 - d3 + d4 - e4 + e3 + e2 - e1
    f_max = max(abs(fi) for fi in x.f)
    return max(8.0 * math.sqrt(2.0) * f_max, 4.0 * abs(n))


def gte(x: XState) -> float:
    """Genuine tripartite entanglement of an X-state."""
    roots = [math.sqrt(max(di * ei, 0.0)) for di, ei in zip(x.d, x.e)]
    total = sum(roots)
    best = max(abs(fi) - (total - ri) for fi, ri in zip(x.f, roots))
    return 2.0 * max(0.0, best)


def coherence_l1(rho: DensityOperator) -> float:
    """Sum of absolute off-diagonal entries; equals 2*sum|f_i| on X-states."""
    mat = rho.matrix
    return float(np.sum(np.abs(mat)) - np.sum(np.abs(np.diag(mat))))
