"""Exact interpolation of nodes by finite sums of complex exponentials.

A model is y(t) = sum_j c_j * exp(lambda_j * t) with complex c_j and
lambda_j.  With as many terms as nodes the coefficients solve a square
generalized Vandermonde system, so the model passes through every node
exactly (up to solver roundoff, which is checked and recorded).  When
the exponent multiset is closed under conjugation and the node values
are real, the imaginary parts cancel and the model is real-valued on
the whole axis; that cancellation is what ``evaluate`` reports as
``imag_residual``.

Exponents either come from the caller (``Given``) or are estimated from
the nodes (``Estimate``) by the classical linear-prediction route:
resample to a uniform grid, solve a Hankel system for the
characteristic polynomial, take its roots z_k, and map them to
exponents through lambda_k = ln(z_k) / delta.  The principal branch
confines Im(lambda) to (-pi/delta, pi/delta]; faster oscillations alias
and cannot be recovered from the samples.
"""
from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConjugateClosureError,
    DimensionMismatchError,
    DuplicateAbscissaError,
    FitResidualError,
    IllConditionedWarning,
    InsufficientDataError,
    RootAtZeroError,
)
from .geometry import Point2
from .numerics import hankel_system, least_squares, poly_roots, solve_linear

__all__ = [
    "ExpTerm",
    "ExpModel",
    "Given",
    "Estimate",
    "ExponentSpec",
    "basis_matrix",
    "solve_coefficients",
    "evaluate",
    "evaluate_grid",
    "estimate_exponents",
    "fit",
    "fit_least_squares",
]

# exp argument magnitude beyond which float64 overflows
_EXP_ARG_LIMIT = 700.0
_CONJ_MATCH_TOL = 1e-8
_REAL_SNAP_TOL = 1e-10


@dataclass(frozen=True)
class ExpTerm:
    """One summand c * exp(lambda * t)."""

    coefficient: complex
    exponent: complex

    def __post_init__(self) -> None:
        for z in (self.coefficient, self.exponent):
            z = complex(z)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("term components must be finite")


@dataclass(frozen=True)
class ExpModel:
    """An exponential-sum model together with the nodes it interpolates.

    ``fit_residual`` is the max abs node error measured at fit time;
    ``warnings`` carries non-fatal diagnostics (conditioning) so they
    survive serialization.
    """

    terms: tuple[ExpTerm, ...]
    nodes: tuple[Point2, ...]
    fit_residual: float
    warnings: tuple[str, ...] = ()

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return tuple(term.coefficient for term in self.terms)

    @property
    def exponents(self) -> tuple[complex, ...]:
        return tuple(term.exponent for term in self.terms)


@dataclass(frozen=True)
class Given:
    """Use these exponents as they are."""

    exponents: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(complex(z) for z in self.exponents))
        if not self.exponents:
            raise ValueError("need at least one exponent")


@dataclass(frozen=True)
class Estimate:
    """Estimate ``m`` exponents from the nodes by linear prediction.

    ``symmetrize`` estimates only m/2 exponents and mirrors them through
    negation, matching data whose growth and decay come in +/- pairs;
    it requires even m.  ``resample_count`` defaults to max(4m, 32).
    """

    m: int
    symmetrize: bool = False
    resample_count: int | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.symmetrize and self.m % 2 != 0:
            raise ValueError("symmetrize requires even m")
        if self.resample_count is not None and self.resample_count < 2 * self.m:
            raise ValueError("resample_count must be >= 2m")

    @property
    def effective_resample_count(self) -> int:
        return self.resample_count if self.resample_count is not None else max(4 * self.m, 32)


ExponentSpec = Given | Estimate


def _abscissae(nodes) -> np.ndarray:
    t = np.array([p.x for p in nodes], dtype=np.float64)
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if abs(t[i] - t[j]) <= 1e-12 * max(1.0, abs(t[i]), abs(t[j])):
                raise DuplicateAbscissaError(
                    f"nodes {i} and {j} share abscissa {t[i]!r}"
                )
    return t


def basis_matrix(nodes, exponents) -> np.ndarray:
    """Generalized Vandermonde matrix with entries exp(exponent_j * t_i)."""
    if len(nodes) < 1 or len(exponents) < 1:
        raise ValueError("need at least one node and one exponent")
    t = _abscissae(nodes)
    lam = np.array([complex(z) for z in exponents], dtype=np.complex128)
    return np.exp(np.outer(t, lam))


def _fit_tolerance(values: np.ndarray) -> float:
    return 1e-8 * max(1.0, float(np.abs(values).max()))


def solve_coefficients(nodes, exponents, tol: float | None = None) -> ExpModel:
    """Coefficients making the model pass through every node exactly.

    Requires exactly as many exponents as nodes.  The square basis
    system is solved by partial-pivot elimination; the achieved node
    residual is re-measured and must stay within ``tol`` (default
    1e-8 * max(1, max|y|)), else FitResidualError.  IllConditionedWarning
    from the solver is re-emitted and its message is recorded on the
    model.
    """
    nodes = tuple(nodes)
    exponents = tuple(complex(z) for z in exponents)
    if len(nodes) != len(exponents):
        raise DimensionMismatchError(
            f"exact interpolation needs one exponent per node, got "
            f"{len(nodes)} nodes and {len(exponents)} exponents"
        )
    a = basis_matrix(nodes, exponents)
    y = np.array([p.y for p in nodes], dtype=np.complex128)
    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always")
        x, _diag = solve_linear(a, y)
    notes = []
    for w in caught:
        _warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
        if issubclass(w.category, IllConditionedWarning):
            notes.append(str(w.message))
    residual = float(np.abs(a @ x - y).max())
    if tol is None:
        tol = _fit_tolerance(y)
    if residual > tol:
        raise FitResidualError(
            f"node residual {residual:.3e} exceeds tolerance {tol:.3e}",
            residual=residual,
            tolerance=tol,
        )
    terms = tuple(ExpTerm(complex(c), lam) for c, lam in zip(x, exponents))
    return ExpModel(terms=terms, nodes=nodes, fit_residual=residual, warnings=tuple(notes))


def evaluate(model: ExpModel, t: float) -> tuple[float, float]:
    """Model value at ``t`` as (real part, |imaginary part|).

    Raises OverflowError before computing if any |Re(lambda) * t|
    exceeds 700, the float64 exp limit.
    """
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    for term in model.terms:
        if abs(term.exponent.real * t) > _EXP_ARG_LIMIT:
            raise OverflowError(
                f"exp argument {term.exponent.real * t:.3e} exceeds the float64 range"
            )
    coef = np.array([term.coefficient for term in model.terms])
    lam = np.array([term.exponent for term in model.terms])
    z = complex((coef * np.exp(lam * t)).sum())
    return z.real, abs(z.imag)


def evaluate_grid(
    model: ExpModel, t_start: float, t_stop: float, step: float
) -> list[tuple[float, float, float]]:
    """Evaluate on the inclusive uniform grid t_start, t_start + step, ...

    The stop point is included when the step divides the span (up to
    float rounding): [1, 11] at step 0.1 gives 101 points.
    """
    t_start, t_stop, step = float(t_start), float(t_stop), float(step)
    if not (math.isfinite(t_start) and math.isfinite(t_stop) and math.isfinite(step)):
        raise ValueError("grid parameters must be finite")
    if step <= 0:
        raise ValueError("step must be > 0")
    if t_stop < t_start:
        raise ValueError("t_stop must be >= t_start")
    count = int(math.floor((t_stop - t_start) / step + 1e-9)) + 1
    out = []
    for i in range(count):
        t = t_start + i * step
        value, imag = evaluate(model, t)
        out.append((t, value, imag))
    return out


def _close_conjugates(lams: list[complex], budget: int) -> list[complex]:
    """Snap near-conjugate pairs exact and enforce closure under conjugation."""
    remaining = list(lams)
    out: list[complex] = []
    while remaining:
        lam = remaining.pop(0)
        if abs(lam.imag) <= _REAL_SNAP_TOL:
            out.append(complex(lam.real, 0.0))
            continue
        target = lam.conjugate()
        best = None
        for j, other in enumerate(remaining):
            d = abs(other - target)
            if best is None or d < best[1]:
                best = (j, d)
        if best is not None and best[1] <= _CONJ_MATCH_TOL * (1.0 + abs(lam)):
            partner = remaining.pop(best[0])
            mean = (lam + partner.conjugate()) / 2.0
            out.extend([mean, mean.conjugate()])
        elif len(out) + 2 + len(remaining) <= budget:
            out.extend([lam, lam.conjugate()])
        else:
            raise ConjugateClosureError(
                f"exponent {complex(lam)!r} has no conjugate partner and the "
                f"budget of {budget} terms leaves no room to add one"
            )
    return out


def estimate_exponents(nodes, spec: Estimate) -> list[complex]:
    """Estimate exponents from the nodes by the linear-prediction route.

    Steps: piecewise-linear resampling of the node polyline onto a
    uniform grid spanning [t_min, t_max]; Hankel linear prediction of
    order m (or m/2 when symmetrizing); characteristic roots; principal
    logarithms divided by the grid spacing; optional negation mirror;
    conjugate closure.  Raises RootAtZeroError when a characteristic
    root sits at the origin (its log is undefined) and
    ConjugateClosureError when closure cannot be enforced within m.
    """
    nodes = tuple(nodes)
    if len(nodes) < 3:
        raise InsufficientDataError(f"need at least 3 nodes to estimate, got {len(nodes)}")
    t = _abscissae(nodes)
    order_idx = np.argsort(t)
    t_sorted = t[order_idx]
    y_sorted = np.array([nodes[i].y for i in order_idx], dtype=np.float64)

    count = spec.effective_resample_count
    grid = np.linspace(t_sorted[0], t_sorted[-1], count)
    delta = (t_sorted[-1] - t_sorted[0]) / (count - 1)
    resampled = np.interp(grid, t_sorted, y_sorted)

    order = spec.m // 2 if spec.symmetrize else spec.m
    h, r = hankel_system(resampled.astype(np.complex128), order)
    a, _diag = least_squares(h, r)
    roots = poly_roots(np.concatenate([a, [1.0]]))
    tiny = np.abs(roots) <= 1e-12
    if np.any(tiny):
        raise RootAtZeroError(
            f"characteristic root at the origin (modulus {np.abs(roots).min():.3e})"
        )
    lams = list(np.log(roots) / delta)
    if spec.symmetrize:
        lams = lams + [-z for z in lams]
    return _close_conjugates(lams, budget=spec.m)


def fit(nodes, spec: ExponentSpec, tol: float | None = None) -> ExpModel:
    """Build an exactly interpolating model from nodes and an exponent spec."""
    nodes = tuple(nodes)
    match spec:
        case Given(exponents=exponents):
            if len(exponents) != len(nodes):
                raise DimensionMismatchError(
                    f"Given spec has {len(exponents)} exponents for {len(nodes)} nodes"
                )
            return solve_coefficients(nodes, exponents, tol=tol)
        case Estimate():
            return solve_coefficients(nodes, estimate_exponents(nodes, spec), tol=tol)
    raise TypeError(f"unknown exponent spec {spec!r}")


def fit_least_squares(nodes, exponents) -> ExpModel:
    """Approximation mode: fewer exponents than nodes, normal equations.

    The returned model minimizes the sum of squared node errors instead
    of interpolating; fit_residual records the max abs node error and is
    not bounded by the exact-interpolation tolerance.
    """
    nodes = tuple(nodes)
    exponents = tuple(complex(z) for z in exponents)
    if len(exponents) > len(nodes):
        raise ValueError(
            f"approximation needs at most one exponent per node, got "
            f"{len(exponents)} exponents and {len(nodes)} nodes"
        )
    a = basis_matrix(nodes, exponents)
    y = np.array([p.y for p in nodes], dtype=np.complex128)
    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always")
        x, _diag = least_squares(a, y)
    notes = []
    for w in caught:
        _warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
        if issubclass(w.category, IllConditionedWarning):
            notes.append(str(w.message))
    residual = float(np.abs(a @ x - y).max())
    terms = tuple(ExpTerm(complex(c), lam) for c, lam in zip(x, exponents))
    return ExpModel(terms=terms, nodes=nodes, fit_residual=residual, warnings=tuple(notes))
