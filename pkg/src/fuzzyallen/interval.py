"""Trapezoidal fuzzy intervals and the unary temporal operators on them.

Interval parameters are usually floats, but every operation here is written
with plain arithmetic and comparisons so that the same code also runs on
:class:`fuzzyallen.autodiff.DiffScalar` values and gets recorded on a tape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

INF = math.inf
DELTA_MIN = 0.1


class IntervalError(ValueError):
    """Raised for malformed intervals or operators applied to the wrong side."""


@dataclass(frozen=True)
class FuzzyInterval:
    """Trapezoid ``(a, b, c, d)``: ramps up on ``[a, b]``, 1 on ``[b, c]``, down on ``[c, d]``.

    ``a = b = -inf`` makes the interval left-infinite, ``c = d = +inf``
    right-infinite. Being infinite on both sides is rejected.
    """

    a: Any
    b: Any
    c: Any
    d: Any

    def __post_init__(self):
        a, b, c, d = (float(v) for v in (self.a, self.b, self.c, self.d))
        if any(math.isnan(v) for v in (a, b, c, d)):
            raise IntervalError(f"NaN parameter in {self._fmt()}")
        if not a <= b <= c <= d:
            raise IntervalError(f"parameters must satisfy a <= b <= c <= d, got {self._fmt()}")
        if (a == -INF) != (b == -INF) or c == -INF:
            raise IntervalError(f"left side must be both finite or both -inf, got {self._fmt()}")
        if (c == INF) != (d == INF) or b == INF:
            raise IntervalError(f"right side must be both finite or both +inf, got {self._fmt()}")
        if a == -INF and d == INF:
            raise IntervalError("an interval cannot be infinite on both sides")

    def _fmt(self):
        return "(" + ", ".join(f"{float(v):g}" for v in self.params) + ")"

    @property
    def params(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def left_infinite(self) -> bool:
        return float(self.a) == -INF

    @property
    def right_infinite(self) -> bool:
        return float(self.d) == INF

    @property
    def finite(self) -> bool:
        return not (self.left_infinite or self.right_infinite)

    def detach(self) -> "FuzzyInterval":
        """Copy with every parameter converted to a plain float."""
        return FuzzyInterval(*(float(v) for v in self.params))

    def __iter__(self):
        return iter(self.params)

    def __repr__(self):
        return f"FuzzyInterval{self._fmt()}"


def crisp_interval(i, j) -> FuzzyInterval:
    """The indicator of ``[i, j]`` as a trapezoid with vertical edges."""
    if i > j:
        raise IntervalError(f"crisp interval needs i <= j, got [{i}, {j}]")
    return FuzzyInterval(i, i, j, j)


def membership(interval: FuzzyInterval, x):
    """Degree to which time ``x`` belongs to ``interval``."""
    a, b, c, d = interval.params
    if b <= x <= c:
        return 1.0
    if a < x < b:
        return (x - a) / (b - a)
    if c < x < d:
        return (x - d) / (c - d)
    return 0.0


def membership_array(interval: FuzzyInterval, xs) -> np.ndarray:
    """Vectorised :func:`membership` over an array of time points."""
    a, b, c, d = (float(v) for v in interval.params)
    xs = np.asarray(xs, dtype=float)
    out = np.zeros_like(xs)
    with np.errstate(divide="ignore", invalid="ignore"):
        rise = (a < xs) & (xs < b)
        out[rise] = (xs[rise] - a) / (b - a)
        fall = (c < xs) & (xs < d)
        out[fall] = (xs[fall] - d) / (c - d)
    out[(b <= xs) & (xs <= c)] = 1.0
    return out


def duration(interval: FuzzyInterval):
    """Area under the membership curve; ``inf`` for semi-infinite intervals."""
    if not interval.finite:
        return INF
    a, b, c, d = interval.params
    return ((c - b) + (d - a)) / 2


def before(interval: FuzzyInterval) -> FuzzyInterval:
    if interval.left_infinite:
        raise IntervalError("Before is undefined for a left-infinite interval")
    return FuzzyInterval(-INF, -INF, interval.a, interval.b)


def after(interval: FuzzyInterval) -> FuzzyInterval:
    if interval.right_infinite:
        raise IntervalError("After is undefined for a right-infinite interval")
    return FuzzyInterval(interval.c, interval.d, INF, INF)


def _point_trapezoid(lo, hi, delta_min):
    chi = (lo + hi) / 2
    delta = max((hi - lo) / 2, delta_min)
    return FuzzyInterval(chi - delta / 2, chi, chi, chi + delta / 2)


def start(interval: FuzzyInterval, delta_min=DELTA_MIN) -> FuzzyInterval:
    """Narrow symmetric trapezoid centred on the middle of the rising edge."""
    if delta_min <= 0:
        raise IntervalError("delta_min must be positive")
    if interval.left_infinite:
        raise IntervalError("Start is undefined for a left-infinite interval")
    return _point_trapezoid(interval.a, interval.b, delta_min)


def end(interval: FuzzyInterval, delta_min=DELTA_MIN) -> FuzzyInterval:
    """Narrow symmetric trapezoid centred on the middle of the falling edge."""
    if delta_min <= 0:
        raise IntervalError("delta_min must be positive")
    if interval.right_infinite:
        raise IntervalError("End is undefined for a right-infinite interval")
    return _point_trapezoid(interval.c, interval.d, delta_min)
