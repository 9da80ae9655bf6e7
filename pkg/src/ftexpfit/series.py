"""Series validation, sliding triangles, and geometric-median smoothing.

A series of n samples yields n - 2 smoothed nodes: each consecutive
triple (k, k+1, k+2) forms a triangle in the (t, value) plane and the
node is that triangle's Fermat-Torricelli point.  Jagged spikes get
pulled toward the middle of their window while runs that are already
straight pass through unchanged (the median of collinear points is the
middle point).

The calendar mapping used by the bundled example lives here too: year
numbers count from 2010, so t = year - 2010.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import MonotonicityWarning, TooShortError, ValidationError
from .geometry import Point2, Triangle, fermat_point

__all__ = [
    "TimeSeries",
    "SmoothedSeries",
    "YEAR_OFFSET",
    "validate",
    "year_to_t",
    "t_to_year",
    "sliding_triangles",
    "smooth",
]

YEAR_OFFSET = 2010.0


@dataclass(frozen=True)
class TimeSeries:
    """Finite samples with strictly increasing abscissae.  Build via ``validate``."""

    samples: tuple[tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.samples)

    @property
    def t(self) -> tuple[float, ...]:
        return tuple(s[0] for s in self.samples)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(s[1] for s in self.samples)


@dataclass(frozen=True)
class SmoothedSeries:
    """Smoothed nodes in window order plus the sample window each came from.

    ``monotonic`` is False when some consecutive node abscissae fail to
    increase; that is legal here (fitting later only needs distinct
    abscissae) but worth surfacing, so ``smooth`` also emits a
    MonotonicityWarning in that case.
    """

    nodes: tuple[Point2, ...]
    source_window: tuple[tuple[int, int], ...]
    monotonic: bool

    def __len__(self) -> int:
        return len(self.nodes)


def validate(samples: Iterable[Sequence[float]]) -> TimeSeries:
    """Check sample invariants and wrap them in a TimeSeries.

    Raises ValidationError naming the first offending index: non-numeric
    or non-finite entries, non-increasing t, or an empty input.
    """
    clean: list[tuple[float, float]] = []
    for i, pair in enumerate(samples):
        try:
            t, value = float(pair[0]), float(pair[1])
        except (TypeError, ValueError, IndexError):
            raise ValidationError(f"sample {i} is not a (t, value) number pair", index=i)
        if not (math.isfinite(t) and math.isfinite(value)):
            raise ValidationError(f"sample {i} is not finite: ({t}, {value})", index=i)
        if clean and t <= clean[-1][0]:
            raise ValidationError(
                f"t must be strictly increasing; sample {i} has t={t} after t={clean[-1][0]}",
                index=i,
            )
        clean.append((t, value))
    if not clean:
        raise ValidationError("empty series", index=None)
    return TimeSeries(samples=tuple(clean))


def year_to_t(year: float) -> float:
    """Calendar year to year-number abscissa (2011 -> 1)."""
    return year - YEAR_OFFSET


def t_to_year(t: float) -> float:
    """Year-number abscissa back to calendar year (exact inverse of year_to_t)."""
    return t + YEAR_OFFSET


def sliding_triangles(s: TimeSeries) -> list[Triangle]:
    """One triangle per consecutive sample triple, in sample order."""
    if len(s) < 3:
        raise TooShortError(f"need at least 3 samples to form a triangle, got {len(s)}")
    pts = [Point2(t, v) for t, v in s.samples]
    return [Triangle(pts[k], pts[k + 1], pts[k + 2]) for k in range(len(pts) - 2)]


def smooth(s: TimeSeries) -> SmoothedSeries:
    """Replace each sliding triple by its Fermat-Torricelli point.

    Nodes stay in window order and are never re-sorted.  Raises
    TooShortError for series shorter than 3.
    """
    triangles = sliding_triangles(s)
    nodes = tuple(fermat_point(t) for t in triangles)
    windows = tuple((k, k + 2) for k in range(len(nodes)))
    monotonic = all(a.x < b.x for a, b in zip(nodes, nodes[1:]))
    if not monotonic:
        warnings.warn(
            "smoothed node abscissae are not strictly increasing",
            MonotonicityWarning,
            stacklevel=2,
        )
    return SmoothedSeries(nodes=nodes, source_window=windows, monotonic=monotonic)
