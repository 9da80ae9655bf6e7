"""Dense complex linear algebra kernels for the exponential fitter.

Everything here is deliberately small and self-contained: partial-pivot
elimination, normal-equations least squares, Durand-Kerner root finding,
and the Hankel linear-prediction setup.  Problem sizes stay around a
dozen unknowns, so simplicity and transparent diagnostics beat
sophistication; numpy supplies the arithmetic, not the solvers.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    ConvergenceError,
    IllConditionedWarning,
    InsufficientDataError,
    SingularMatrixError,
)

__all__ = [
    "SolveDiagnostics",
    "solve_linear",
    "least_squares",
    "poly_roots",
    "hankel_system",
    "CONDITION_LIMIT",
]

# Condition estimates above this raise the non-fatal ill-conditioned flag.
CONDITION_LIMIT = 1e12
_PIVOT_REL_TOL = 1e-14


@dataclass(frozen=True)
class SolveDiagnostics:
    """Cheap conditioning report from the elimination.

    ``condition_estimate`` is an order-of-magnitude heuristic: the pivot
    growth factor times the max/min pivot-modulus ratio.  It is not a
    norm-based condition number, but it is monotone enough to flag the
    systems this package should distrust.
    """

    pivot_growth: float
    condition_estimate: float
    ill_conditioned: bool


def _as_complex_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    return m


def _as_complex_vector(b) -> np.ndarray:
    v = np.array(b, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got ndim={v.ndim}")
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ValueError("vector entries must be finite")
    return v


def solve_linear(a, b) -> tuple[np.ndarray, SolveDiagnostics]:
    """Solve the square complex system a x = b by partial-pivot elimination.

    Pivoting is by modulus.  Raises SingularMatrixError when the best
    available pivot has modulus <= 1e-14 times the largest initial entry
    modulus.  A condition estimate above 1e12 sets the ill_conditioned
    flag on the returned diagnostics and emits IllConditionedWarning;
    the solution is still returned.
    """
    u = _as_complex_matrix(a)
    rhs = _as_complex_vector(b)
    n = u.shape[0]
    if u.shape[1] != n:
        raise ValueError(f"matrix must be square, got {u.shape}")
    if rhs.shape[0] != n:
        raise ValueError(f"dimension mismatch: matrix {u.shape}, vector {rhs.shape}")
    if n == 0:
        raise ValueError("empty system")

    scale0 = float(np.abs(u).max())
    threshold = _PIVOT_REL_TOL * scale0
    max_entry = scale0
    pivots = np.empty(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(u[k:, k])))
        if abs(u[p, k]) <= threshold:
            raise SingularMatrixError(
                f"pivot modulus {abs(u[p, k]):.3e} at column {k} is below "
                f"{_PIVOT_REL_TOL:g} of the largest entry {scale0:.3e}"
            )
        if p != k:
            u[[k, p]] = u[[p, k]]
            rhs[[k, p]] = rhs[[p, k]]
        pivots[k] = abs(u[k, k])
        if k + 1 < n:
            factors = u[k + 1 :, k] / u[k, k]
            u[k + 1 :, k:] -= np.outer(factors, u[k, k:])
            rhs[k + 1 :] -= factors * rhs[k]
            max_entry = max(max_entry, float(np.abs(u[k + 1 :, k + 1 :]).max()))

    x = np.zeros(n, dtype=np.complex128)
    for i in range(n - 1, -1, -1):
        x[i] = (rhs[i] - u[i, i + 1 :] @ x[i + 1 :]) / u[i, i]

    growth = max_entry / scale0
    cond = growth * float(pivots.max() / pivots.min())
    ill = cond > CONDITION_LIMIT
    diag = SolveDiagnostics(pivot_growth=growth, condition_estimate=cond, ill_conditioned=ill)
    if ill:
        warnings.warn(
            f"linear system looks ill conditioned (estimate {cond:.3e})",
            IllConditionedWarning,
            stacklevel=2,
        )
    return x, diag


def least_squares(a, b) -> tuple[np.ndarray, SolveDiagnostics]:
    """Minimize ||a x - b||_2 through the normal equations.

    Adequate at this package's problem sizes; conditioning of the normal
    matrix is monitored by solve_linear and surfaced unchanged.  Raises
    SingularMatrixError for rank-deficient columns.
    """
    m = _as_complex_matrix(a)
    rhs = _as_complex_vector(b)
    if m.shape[0] < m.shape[1]:
        raise ValueError(f"need rows >= cols, got {m.shape}")
    if m.shape[0] != rhs.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {m.shape}, vector {rhs.shape}")
    gram = m.conj().T @ m
    return solve_linear(gram, m.conj().T @ rhs)


def poly_roots(coeffs, max_iter: int = 1000) -> np.ndarray:
    """All roots of a polynomial with ascending complex coefficients.

    ``coeffs[k]`` multiplies z**k; the leading coefficient must be
    nonzero and the degree at least 1.  Durand-Kerner simultaneous
    iteration with the standard deterministic start: iterates on the
    circle of the Cauchy bound at powers of 0.4 + 0.9i, so repeated
    calls give bit-identical results.  Each returned root satisfies
    |p(root)| <= 1e-8 * max(1, max coefficient modulus) for the monic
    normalization, else ConvergenceError (carrying the last iterates)
    is raised.
    """
    c = _as_complex_vector(coeffs)
    if c.shape[0] < 2:
        raise ValueError("polynomial degree must be at least 1")
    if c[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    monic = c / c[-1]
    degree = monic.shape[0] - 1
    scale = max(1.0, float(np.abs(monic).max()))
    radius = 1.0 + float(np.abs(monic[:-1]).max())
    z = radius * (0.4 + 0.9j) ** np.arange(1, degree + 1)

    for _ in range(max_iter):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        collided = denom == 0
        if np.any(collided):
            # coincident iterates break the update; nudge deterministically
            z = np.where(collided, z + radius * 1e-8 * (1 + 1j), z)
            continue
        delta = npoly.polyval(z, monic) / denom
        z = z - delta
        if float(np.abs(delta).max()) <= 1e-14 * (1.0 + float(np.abs(z).max())):
            break
    residual = float(np.abs(npoly.polyval(z, monic)).max()) / scale
    if residual > 1e-8:
        raise ConvergenceError(
            f"root iteration stalled with scaled residual {residual:.3e}",
            last=z,
            residual=residual,
        )
    return z


def hankel_system(samples, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Linear-prediction system for ``order`` exponentials.

    Returns (H, r) with H[i, j] = samples[i + j] of shape
    (N - order, order) and r[i] = -samples[i + order]; the least-squares
    solution a of H a = r gives the ascending non-leading coefficients
    of the monic characteristic polynomial.  Requires N >= 2 * order.
    """
    s = _as_complex_vector(samples)
    n = s.shape[0]
    if order < 1:
        raise ValueError("order must be >= 1")
    if n < 2 * order:
        raise InsufficientDataError(
            f"need at least {2 * order} samples for order {order}, got {n}"
        )
    h = np.empty((n - order, order), dtype=np.complex128)
    for j in range(order):
        h[:, j] = s[j : j + n - order]
    return h, -s[order:]
