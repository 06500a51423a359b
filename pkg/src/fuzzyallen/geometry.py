"""Exact area of the intersection of two trapezoid membership regions.

The region under each membership curve is a convex polygon, so their
intersection is convex too. We collect its vertices (bottom, top and side
vertices), order them counter-clockwise and apply the shoelace formula.
Like :mod:`fuzzyallen.interval`, this code only uses arithmetic and
comparisons on the parameters, so it also differentiates through a tape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Optional

import numpy as np

from .interval import FuzzyInterval, IntervalError, membership_array

VERTEX_TOL = 1e-9


class PlanePoint(NamedTuple):
    x: Any
    y: Any


@dataclass(frozen=True)
class EdgeLine:
    """Either the slanted line ``y = (x - p) / (q - p)`` or the vertical ``x = p``."""

    p: Any
    q: Any = None

    @property
    def vertical(self) -> bool:
        return self.q is None

    @classmethod
    def through(cls, p, q) -> "EdgeLine":
        """Edge that is 0 at ``x = p`` and 1 at ``x = q``; vertical when the edge is crisp."""
        return cls(p) if p == q else cls(p, q)


def left_edge(interval: FuzzyInterval) -> EdgeLine:
    return EdgeLine.through(interval.a, interval.b)


def right_edge(interval: FuzzyInterval) -> EdgeLine:
    return EdgeLine.through(interval.d, interval.c)


def line_intersection(l1: EdgeLine, l2: EdgeLine) -> Optional[PlanePoint]:
    """Unique crossing point of two edge lines, or ``None`` when they are parallel."""
    if l1.vertical and l2.vertical:
        return None
    if l1.vertical or l2.vertical:
        vert, slanted = (l1, l2) if l1.vertical else (l2, l1)
        x = vert.p
        return PlanePoint(x, (x - slanted.p) / (slanted.q - slanted.p))
    # (x - p1)(q2 - p2) = (x - p2)(q1 - p1)
    denom = (l2.q - l2.p) - (l1.q - l1.p)
    if denom == 0:
        return None
    x = (l1.p * (l2.q - l2.p) - l2.p * (l1.q - l1.p)) / denom
    y = (l1.p - l2.p) / denom
    return PlanePoint(x, y)


def finitize_pair(A: FuzzyInterval, B: FuzzyInterval) -> tuple[FuzzyInterval, FuzzyInterval]:
    """Replace infinite sides by short ramps lying outside the other interval's support.

    Left-infinite sides become ``(m - 2, m - 1)`` with ``m`` the smallest
    finite parameter of the pair, right-infinite sides ``(M + 1, M + 2)``.
    """
    if A.finite and B.finite:
        return A, B
    if (A.left_infinite and B.left_infinite) or (A.right_infinite and B.right_infinite):
        raise IntervalError("cannot finitize two intervals infinite on the same side")
    finite = [v for v in A.params + B.params if not math.isinf(float(v))]
    lo, hi = min(finite), max(finite)

    def fix(I):
        a, b, c, d = I.params
        if I.left_infinite:
            a, b = lo - 2, lo - 1
        if I.right_infinite:
            c, d = hi + 1, hi + 2
        return FuzzyInterval(a, b, c, d)

    return fix(A), fix(B)


def _top_vertices(A, B):
    b, c = A.b, A.c
    b2, c2 = B.b, B.c
    if c < b2 or b > c2:
        return []
    if b2 == c:
        return [PlanePoint(c, 1.0)]
    if b == c2:
        return [PlanePoint(b, 1.0)]
    return [PlanePoint(max(b, b2), 1.0), PlanePoint(min(c, c2), 1.0)]


def _side_vertices(A, B):
    out = []
    for la in (left_edge(A), right_edge(A)):
        for lb in (left_edge(B), right_edge(B)):
            pt = line_intersection(la, lb)
            if pt is not None and -VERTEX_TOL <= pt.y <= 1 + VERTEX_TOL:
                out.append(pt)
    return out


def _dedupe(points):
    kept = []
    for pt in points:
        if not any(abs(pt.x - q.x) <= VERTEX_TOL and abs(pt.y - q.y) <= VERTEX_TOL for q in kept):
            kept.append(pt)
    return kept


def _ccw(points):
    cx = sum(float(p.x) for p in points) / len(points)
    cy = sum(float(p.y) for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p.y) - cy, float(p.x) - cx))


def intersection_vertices(A: FuzzyInterval, B: FuzzyInterval) -> list[PlanePoint]:
    """Counter-clockwise vertices of the region under ``min(A(x), B(x))``.

    Both intervals must be finite (see :func:`finitize_pair`).
    """
    if not (A.finite and B.finite):
        raise IntervalError("intersection_vertices needs finite intervals")
    # full-tuple ordering keeps the result bitwise symmetric when a == a'
    if tuple(map(float, B.params)) < tuple(map(float, A.params)):
        A, B = B, A
    if A.d <= B.a:
        return []
    points = [PlanePoint(B.a, 0.0), PlanePoint(min(A.d, B.d), 0.0)]
    points += _top_vertices(A, B)
    points += _side_vertices(A, B)
    return _ccw(_dedupe(points))


def shoelace_area(vertices) -> Any:
    """Area of a polygon whose vertices are listed counter-clockwise."""
    n = len(vertices)
    if n < 3:
        return 0.0
    total = 0.0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        total = total + (y0 + y1) * (x0 - x1)
    return total / 2


def intersection_area(A: FuzzyInterval, B: FuzzyInterval):
    """``|A ∩ B|``, the integral of ``min(A(x), B(x))``; symmetric in its arguments."""
    A, B = finitize_pair(A, B)
    return shoelace_area(intersection_vertices(A, B))


def oracle_intersection_area(A: FuzzyInterval, B: FuzzyInterval, grid_step: float = 1e-4) -> float:
    """Midpoint-rule integral of ``min(A(x), B(x))``, for cross-checking.

    Midpoints keep crisp jumps that fall on cell boundaries from being
    half-counted, which the trapezoid rule would do.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    A, B = finitize_pair(A.detach(), B.detach())
    lo, hi = min(A.a, B.a), max(A.d, B.d)
    if hi <= lo:
        return 0.0
    n = int(math.ceil((hi - lo) / grid_step))
    h = (hi - lo) / n
    xs = lo + (np.arange(n) + 0.5) * h
    ys = np.minimum(membership_array(A, xs), membership_array(B, xs))
    return float(ys.sum() * h)
