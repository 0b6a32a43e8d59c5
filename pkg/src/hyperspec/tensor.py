"""Adjacency-tensor products and the spectral radius of connected k-graphs.

The tensor has entry ``1/(k-1)!`` on every ordering of an edge, so
``(A x^{k-1})_i`` collapses to a sum over the edges through ``i`` of the
product of the other ``k - 1`` coordinates. It is never formed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, ContractError
from .hypergraph import UniformHypergraph

SHIFT = 1.0


@dataclass(frozen=True)
class SpectralEstimate:
    rho: float
    perron: np.ndarray
    iterations: int
    residual: float
    lower_bound: float
    upper_bound: float
    tol: float

    @property
    def width(self) -> float:
        return self.upper_bound - self.lower_bound


def _check_vector(H: UniformHypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (H.n,):
        raise ContractError(f"vector has shape {x.shape}, expected ({H.n},)")
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise ContractError("vector entries must be finite and nonnegative")
    return x


def _apply(E: np.ndarray, n: int, x: np.ndarray) -> np.ndarray:
    xe = x[E]
    # product of the other k-1 entries, via prefix and suffix products
    prefix = np.ones_like(xe)
    suffix = np.ones_like(xe)
    prefix[:, 1:] = np.cumprod(xe[:, :-1], axis=1)
    suffix[:, :-1] = np.cumprod(xe[:, :0:-1], axis=1)[:, ::-1]
    others = prefix * suffix
    y = np.zeros(n)
    np.add.at(y, E.reshape(-1), others.reshape(-1))
    return y


def apply(H: UniformHypergraph, x) -> np.ndarray:
    """``A x^{k-1}``: for each vertex, the sum over its edges of the other entries' product."""
    x = _check_vector(H, x)
    return _apply(H.edge_array, H.n, x)


def residual(H: UniformHypergraph, rho: float, x) -> float:
    x = _check_vector(H, x)
    if np.any(x <= 0):
        raise ContractError("residual needs a strictly positive vector")
    return float(np.max(np.abs(_apply(H.edge_array, H.n, x) - rho * x ** (H.k - 1))))


def spectral_radius(H: UniformHypergraph, tol: float = 1e-10, max_iter: int = 10**6) -> SpectralEstimate:
    """Shifted power iteration for the spectral radius of a connected k-graph.

    Each step forms ``y = A x^{k-1} + x^{[k-1]}``; the extremes of
    ``y_i / x_i^{k-1}`` enclose ``rho + 1``. Iteration stops once that
    enclosure is narrower than ``tol``. The returned vector is the one the
    final enclosure was measured on, so its residual is at most ``tol / 2``.
    """
    if tol <= 0:
        raise ContractError("tol must be positive")
    if not H.is_connected():
        raise ContractError("spectral_radius requires a connected hypergraph: not connected")
    E, n, p = H.edge_array, H.n, H.k - 1
    x = np.ones(n)
    lo = hi = float("nan")
    for it in range(1, max_iter + 1):
        xp = x**p
        y = _apply(E, n, x) + SHIFT * xp
        ratio = y / xp
        lo, hi = float(ratio.min()), float(ratio.max())
        if hi - lo < tol:
            rho = 0.5 * (lo + hi) - SHIFT
            return SpectralEstimate(
                rho=rho,
                perron=x,
                iterations=it,
                residual=residual(H, rho, x),
                lower_bound=lo - SHIFT,
                upper_bound=hi - SHIFT,
                tol=tol,
            )
        x = y ** (1.0 / p)
        x /= x.max()
    raise BudgetError(
        f"spectral_radius did not reach width {tol} in {max_iter} iterations",
        bracket=(lo - SHIFT, hi - SHIFT),
    )
