"""Fermat-Torricelli point of a triangle, computed by three separate routes.

The Fermat-Torricelli point of points v0, v1, v2 minimizes the total
distance f(p) = |v0 - p| + |v1 - p| + |v2 - p|.  Its location depends on
the triangle's shape:

* all interior angles below 2*pi/3: the minimizer is the interior point
  seeing each side under 2*pi/3 (the first isogonic point), and it has a
  closed form in the vertex coordinates (Uteshev, Amer. Math. Monthly
  121(4):318-331, 2014);
* some angle at or above 2*pi/3: the minimizer is that vertex;
* degenerate (collinear or coincident vertices): the minimizer is the
  middle point on the line, or the repeated vertex.

``classify`` decides which case applies, ``fermat_point`` dispatches on
it, and ``weiszfeld`` (Weiszfeld, Tohoku Math. J. 43:355-386, 1937) is
kept as an independent iterative route so the closed form can always be
cross-checked against a method that knows nothing about it.  The two
routes are deliberately never merged: each acceptance check runs both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConvergenceError, DomainError

__all__ = [
    "Point2",
    "Triangle",
    "SideLengths",
    "DegenerateKind",
    "InteriorCase",
    "ObtuseVertex",
    "Degenerate",
    "TriangleClass",
    "side_lengths",
    "signed_area_2x",
    "classify",
    "fermat_point_closed_form",
    "fermat_point",
    "weiszfeld",
    "objective",
    "centroid",
]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Point2:
    """A planar point.  Units are opaque to this module."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class Triangle:
    """An ordered triple of points.  Order is meaningful and never sorted:

    in smoothing usage v1 is the middle sample of the sliding window.
    """

    v0: Point2
    v1: Point2
    v2: Point2

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.v0, self.v1, self.v2)


@dataclass(frozen=True)
class SideLengths:
    """Euclidean distances between the vertex pairs (v0,v1), (v0,v2), (v1,v2)."""

    r12: float
    r13: float
    r23: float


class DegenerateKind(Enum):
    COLLINEAR = "collinear"
    COINCIDENT_VERTICES = "coincident_vertices"


@dataclass(frozen=True)
class InteriorCase:
    """All interior angles are below 2*pi/3; the minimizer is interior."""


@dataclass(frozen=True)
class ObtuseVertex:
    """The angle at ``index`` is at or above 2*pi/3; that vertex is the minimizer."""

    index: int


@dataclass(frozen=True)
class Degenerate:
    """Collinear points or coincident vertices; no genuine triangle."""

    kind: DegenerateKind


TriangleClass = InteriorCase | ObtuseVertex | Degenerate


def side_lengths(t: Triangle) -> SideLengths:
    """Side lengths of ``t``, named by the vertex pair they connect."""
    return SideLengths(
        r12=math.hypot(t.v1.x - t.v0.x, t.v1.y - t.v0.y),
        r13=math.hypot(t.v2.x - t.v0.x, t.v2.y - t.v0.y),
        r23=math.hypot(t.v2.x - t.v1.x, t.v2.y - t.v1.y),
    )


def signed_area_2x(t: Triangle) -> float:
    """Twice the signed area of ``t``; positive for counter-clockwise order.

    Expanded determinant form, kept term for term so the sign convention
    is explicit: S = x1 y2 + x3 y1 + x2 y3 - x1 y3 - x2 y1 - x3 y2.
    """
    (x1, y1), (x2, y2), (x3, y3) = (
        (t.v0.x, t.v0.y),
        (t.v1.x, t.v1.y),
        (t.v2.x, t.v2.y),
    )
    return x1 * y2 + x3 * y1 + x2 * y3 - x1 * y3 - x2 * y1 - x3 * y2


def classify(t: Triangle, angle_tol: float = 1e-12) -> TriangleClass:
    """Decide which Fermat-Torricelli case applies to ``t``.

    ``angle_tol`` acts on the cosine test for the obtuse case and, scaled
    by the largest side, on the degeneracy tests.  The function is total:
    every finite triangle falls in exactly one class.
    """
    if angle_tol < 0:
        raise ValueError("angle_tol must be >= 0")
    s = side_lengths(t)
    max_side = max(s.r12, s.r13, s.r23)
    if min(s.r12, s.r13, s.r23) <= angle_tol * max_side:
        return Degenerate(DegenerateKind.COINCIDENT_VERTICES)
    if abs(signed_area_2x(t)) <= angle_tol * max_side * max_side:
        return Degenerate(DegenerateKind.COLLINEAR)
    sq12, sq13, sq23 = s.r12 * s.r12, s.r13 * s.r13, s.r23 * s.r23
    cosines = (
        (sq12 + sq13 - sq23) / (2.0 * s.r12 * s.r13),
        (sq12 + sq23 - sq13) / (2.0 * s.r12 * s.r23),
        (sq13 + sq23 - sq12) / (2.0 * s.r13 * s.r23),
    )
    widest = min(range(3), key=lambda i: cosines[i])
    if cosines[widest] <= -0.5 + angle_tol:
        return ObtuseVertex(widest)
    return InteriorCase()


def fermat_point_closed_form(t: Triangle) -> Point2:
    """Interior Fermat-Torricelli point from the analytic solution.

    Valid only for ``InteriorCase`` triangles.  The point is the convex
    combination of the vertices with barycentric weights

        w_i = 1 / (2*|S| + sqrt(3) * (sum of the two squared sides at
              vertex i minus the opposite squared side)),

    S being twice the signed area.  Clearing denominators gives the
    polynomial numerators X, Y and the common denominator 2*sqrt(3)*d
    with d = (r12^2 + r13^2 + r23^2)/2 + sqrt(3)*|S|, which is what is
    evaluated here.  The expansion was checked symbolically against the
    weight form, and ``weiszfeld`` remains the normative cross-check: the
    two must agree to 1e-9 per coordinate.
    """
    if not isinstance(classify(t), InteriorCase):
        raise DomainError("closed form is only valid when all angles are below 2*pi/3")
    (x1, y1), (x2, y2), (x3, y3) = (
        (t.v0.x, t.v0.y),
        (t.v1.x, t.v1.y),
        (t.v2.x, t.v2.y),
    )
    sq12 = (x2 - x1) ** 2 + (y2 - y1) ** 2
    sq13 = (x3 - x1) ** 2 + (y3 - y1) ** 2
    sq23 = (x3 - x2) ** 2 + (y3 - y2) ** 2
    s = signed_area_2x(t)
    sgn = 1.0 if s > 0 else -1.0
    d = 0.5 * (sq12 + sq13 + sq23) + _SQRT3 * abs(s)
    # Cyclic sums of scalar products; these carry the orientation-odd part
    # of the numerators, hence the sgn factor below.
    qx = (
        (y2 - y1) * (x1 * x2 + y1 * y2)
        + (y3 - y2) * (x2 * x3 + y2 * y3)
        + (y1 - y3) * (x3 * x1 + y3 * y1)
    )
    qy = (
        (x1 - x2) * (x1 * x2 + y1 * y2)
        + (x2 - x3) * (x2 * x3 + y2 * y3)
        + (x3 - x1) * (x3 * x1 + y3 * y1)
    )
    big_x = _SQRT3 * (x1 * sq23 + x2 * sq13 + x3 * sq12) + (x1 + x2 + x3) * abs(s) + 3.0 * sgn * qx
    big_y = _SQRT3 * (y1 * sq23 + y2 * sq13 + y3 * sq12) + (y1 + y2 + y3) * abs(s) + 3.0 * sgn * qy
    denom = 2.0 * _SQRT3 * d
    return Point2(big_x / denom, big_y / denom)


def fermat_point(t: Triangle) -> Point2:
    """Fermat-Torricelli point of ``t``, total over all triangle shapes."""
    match classify(t):
        case InteriorCase():
            return fermat_point_closed_form(t)
        case ObtuseVertex(index=i):
            return t.vertices[i]
        case Degenerate(kind=DegenerateKind.COLLINEAR):
            return _middle_vertex(t)
        case Degenerate(kind=DegenerateKind.COINCIDENT_VERTICES):
            return _repeated_vertex(t)
    raise AssertionError("classify returned an unknown variant")


def _middle_vertex(t: Triangle) -> Point2:
    """The vertex lying between the other two on a (nearly) collinear triple."""
    v = t.vertices
    for i in range(3):
        a, b, c = v[i], v[(i + 1) % 3], v[(i + 2) % 3]
        # The middle point sees the other two in opposite directions.
        if (b.x - a.x) * (c.x - a.x) + (b.y - a.y) * (c.y - a.y) <= 0.0:
            return a
    return v[0]


def _repeated_vertex(t: Triangle) -> Point2:
    """First member of the closest vertex pair; it carries weight 2 of 3."""
    v = t.vertices
    pairs = ((0, 1), (0, 2), (1, 2))
    i, _ = min(pairs, key=lambda p: math.hypot(v[p[1]].x - v[p[0]].x, v[p[1]].y - v[p[0]].y))
    return v[i]


def objective(points: list[Point2], p: Point2) -> float:
    """Total Euclidean distance from ``p`` to every point in ``points``."""
    return sum(math.hypot(v.x - p.x, v.y - p.y) for v in points)


def centroid(points: list[Point2]) -> Point2:
    if not points:
        raise ValueError("centroid of an empty point list")
    n = len(points)
    return Point2(sum(v.x for v in points) / n, sum(v.y for v in points) / n)


def weiszfeld(points: list[Point2], tol: float = 1e-12, max_iter: int = 10000) -> Point2:
    """Geometric median of ``points`` by Weiszfeld's fixed-point iteration.

    Starts at the centroid and repeats y <- sum(v_i/d_i) / sum(1/d_i)
    until the step falls to ``tol``.  Two standard complications are
    handled exactly rather than by perturbation:

    * a data point v with multiplicity w is itself optimal iff the pull
      of the remaining points, R = |sum of unit vectors from v|, is at
      most w; all data points are tested up front so vertex optima are
      returned exactly instead of being approached sublinearly;
    * if an iterate still lands within ``tol`` of a non-optimal data
      point, the iteration pushes off along the descent direction with
      the step (R - w) / L, L = sum of 1/d over the remaining points
      (Vardi and Zhang, Proc. Natl. Acad. Sci. 97:1423-1426, 2000).

    Raises ConvergenceError if ``max_iter`` is exhausted with the step
    still above ``tol``; the exception carries the last iterate and the
    last step size.
    """
    if not points:
        raise ValueError("weiszfeld needs at least one point")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    coords = [(p.x, p.y) for p in points]
    multiplicity: dict[tuple[float, float], int] = {}
    for c in coords:
        multiplicity[c] = multiplicity.get(c, 0) + 1
    for (cx, cy), w in multiplicity.items():
        pull_x = pull_y = 0.0
        for (px, py), wp in multiplicity.items():
            d = math.hypot(px - cx, py - cy)
            if d > 0.0:
                pull_x += wp * (px - cx) / d
                pull_y += wp * (py - cy) / d
        if math.hypot(pull_x, pull_y) <= w:
            return Point2(cx, cy)

    yx = sum(c[0] for c in coords) / len(coords)
    yy = sum(c[1] for c in coords) / len(coords)
    step = math.inf
    for _ in range(max_iter):
        dists = [math.hypot(px - yx, py - yy) for px, py in coords]
        d_min = min(dists)
        if d_min <= tol:
            near = dists.index(d_min)
            ax, ay = coords[near]
            # Cluster weight at the anchor, pull and Lipschitz sum from the rest.
            w = 0
            pull_x = pull_y = lip = 0.0
            for (px, py) in coords:
                d = math.hypot(px - ax, py - ay)
                if d <= tol:
                    w += 1
                else:
                    pull_x += (px - ax) / d
                    pull_y += (py - ay) / d
                    lip += 1.0 / d
            pull = math.hypot(pull_x, pull_y)
            if pull <= w:
                return Point2(ax, ay)
            step = (pull - w) / lip
            yx = ax + step * pull_x / pull
            yy = ay + step * pull_y / pull
            continue
        inv = [1.0 / d for d in dists]
        denom = sum(inv)
        tx = sum(px * i for (px, _), i in zip(coords, inv)) / denom
        ty = sum(py * i for (_, py), i in zip(coords, inv)) / denom
        step = math.hypot(tx - yx, ty - yy)
        yx, yy = tx, ty
        if step <= tol:
            return Point2(yx, yy)
    raise ConvergenceError(
        f"geometric median did not converge in {max_iter} iterations (last step {step:.3e})",
        last=Point2(yx, yy),
        residual=step,
    )
