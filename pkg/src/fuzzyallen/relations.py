"""Fuzzy containment and the Allen-style relations built from it.

Every relation reduces to containment ratios ``|A ∩ B| / |A|`` between the
intervals or their Start/End/Before/After images, joined with a t-norm.
:class:`AllenRelations` takes the containment function as a parameter, which
is how :mod:`fuzzyallen.smooth` swaps in the smooth-gradient version.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import autodiff as ad
from .geometry import intersection_area
from .interval import DELTA_MIN, FuzzyInterval, after, before, duration, end, start
from .logic import product

DURATION_EPS = 1e-9

RELATION_NAMES = ("in", "eq", "bf", "af", "mt", "st", "dr", "fin", "ol")


def rel_in(A: FuzzyInterval, B: FuzzyInterval):
    """Share of ``A``'s area that lies inside ``B``."""
    dur = duration(A)
    ratio = intersection_area(A, B) / max(dur, DURATION_EPS)
    return ad.clamp01(ratio)


@dataclass(frozen=True)
class AllenRelations:
    delta_min: float = DELTA_MIN
    t_norm: Callable = product
    contain: Callable = rel_in

    def __call__(self, name: str, A, B):
        try:
            method = getattr(self, "in_" if name == "in" else name)
        except AttributeError:
            raise KeyError(f"unknown relation {name!r}") from None
        return method(A, B)

    def _start(self, I):
        return start(I, self.delta_min)

    def _end(self, I):
        return end(I, self.delta_min)

    def in_(self, A, B):
        return self.contain(A, B)

    def eq(self, A, B):
        return self.t_norm(self.contain(A, B), self.contain(B, A))

    def bf(self, A, B):
        """``A`` lies before ``B``."""
        return self.contain(A, before(B))

    def af(self, A, B):
        """``A`` lies after ``B``."""
        return self.contain(A, after(B))

    def mt(self, A, B):
        return self.eq(self._end(A), self._start(B))

    def st(self, A, B):
        return self.t_norm(
            self.eq(self._start(A), self._start(B)),
            self.bf(self._end(A), self._end(B)),
        )

    def dr(self, A, B):
        return self.t_norm(
            self.af(self._start(A), self._start(B)),
            self.bf(self._end(A), self._end(B)),
        )

    def fin(self, A, B):
        return self.t_norm(
            self.af(self._start(A), self._start(B)),
            self.eq(self._end(A), self._end(B)),
        )

    def ol(self, A, B):
        sa, ea = self._start(A), self._end(A)
        sb, eb = self._start(B), self._end(B)
        return self.t_norm(
            self.t_norm(self.bf(sa, sb), self.bf(sb, ea)),
            self.bf(ea, eb),
        )


def _crisp(name):
    def rel(A, B, *, delta_min=DELTA_MIN, t_norm=product):
        return AllenRelations(delta_min, t_norm)(name, A, B)

    rel.__name__ = f"rel_{name}"
    return rel


rel_eq = _crisp("eq")
rel_bf = _crisp("bf")
rel_af = _crisp("af")
rel_mt = _crisp("mt")
rel_st = _crisp("st")
rel_dr = _crisp("dr")
rel_fin = _crisp("fin")
rel_ol = _crisp("ol")
