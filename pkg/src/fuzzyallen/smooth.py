"""Operators with an exact forward pass and a softplus-smoothed backward pass.

Crisp trapezoid memberships and containment ratios are flat over large parts
of their domain, so their gradients vanish there. The operators below return
the exact crisp value but record the derivative of a smooth surrogate built
from softplus terms with temperature ``beta``. Choosing ``beta = 1 / T`` for a
trace of length ``T`` keeps those derivatives away from floating-point
underflow everywhere on the trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable

from . import autodiff as ad
from .autodiff import softplus, straight_through
from .geometry import finitize_pair
from .interval import DELTA_MIN, FuzzyInterval, membership
from .logic import product
from .relations import AllenRelations, rel_in


@dataclass(frozen=True)
class SmoothConfig:
    beta: float = 1.0
    horizon: float | None = None

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")

    @classmethod
    def from_horizon(cls, horizon: float, beta: float | None = None) -> "SmoothConfig":
        """``beta = 1 / horizon`` unless an explicit ``beta`` overrides it."""
        if horizon <= 0:
            raise ValueError("horizon must be positive")
        return cls(beta=1.0 / horizon if beta is None else beta, horizon=horizon)


def membership_surrogate(interval: FuzzyInterval, x, beta: float):
    """Smoothed membership used only for its derivative.

    Outside the support and on the plateau the value is a softplus of a
    negative distance to the nearest edge; on the ramps it is the exact
    membership. On the plateau the left branch wins ties at the centre.
    """
    a, b, c, d = interval.params
    xv = ad.value(x)
    if xv <= a:
        return softplus(x - a, beta)
    if xv <= b:
        return (x - a) / (b - a)
    if xv <= c:
        to_left, to_right = b - x, x - c
        return softplus(to_left if ad.value(to_left) >= ad.value(to_right) else to_right, beta)
    if xv <= d:
        return (x - d) / (c - d)
    return softplus(d - x, beta)


def smooth_membership(interval: FuzzyInterval, x, cfg: SmoothConfig):
    """Exact membership forward, derivative of :func:`membership_surrogate` backward."""
    exact = membership(interval.detach(), ad.value(x))
    return straight_through(exact, membership_surrogate(interval, x, cfg.beta))


def _fully_inside(A: FuzzyInterval, B: FuzzyInterval) -> bool:
    return A.a > B.a and A.b > B.b and A.c < B.c and A.d < B.d


def containment_surrogate(A: FuzzyInterval, B: FuzzyInterval, beta: float):
    """Smoothed ``A in B`` used only for its derivative.

    Disjoint pairs get ``softplus(d_left - a_right)``, which pulls the facing
    edges together; ``A`` strictly inside ``B`` gets
    ``softplus(a' - a + d - d')``; otherwise the exact ratio is used.
    Semi-infinite sides are finitized first, so they carry no gradient.
    """
    fa, fb = finitize_pair(A, B)
    left, right = (fb, fa) if tuple(map(float, fb.params)) < tuple(map(float, fa.params)) else (fa, fb)
    if left.d < right.a:
        return softplus(left.d - right.a, beta)
    if _fully_inside(fa, fb):
        return softplus(fb.a - fa.a + fa.d - fb.d, beta)
    return rel_in(A, B)


def smooth_rel_in(A: FuzzyInterval, B: FuzzyInterval, cfg: SmoothConfig):
    """Exact containment ratio forward, derivative of :func:`containment_surrogate` backward."""
    exact = rel_in(A.detach(), B.detach())
    return straight_through(exact, containment_surrogate(A, B, cfg.beta))


def smooth_relations(
    cfg: SmoothConfig, delta_min: float = DELTA_MIN, t_norm: Callable = product
) -> AllenRelations:
    """Allen relations whose containment steps use :func:`smooth_rel_in`."""
    return AllenRelations(delta_min, t_norm, partial(smooth_rel_in, cfg=cfg))
