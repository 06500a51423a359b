"""Fuzzy connectives, aggregation and the event predicates Happ and Active.

All functions accept plain floats or DiffScalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from . import autodiff as ad
from .interval import FuzzyInterval, membership


def product(u, v):
    return u * v


def minimum(u, v):
    return u if u <= v else v


def lukasiewicz(u, v):
    s = u + v - 1.0
    return s if s > 0 else 0.0


T_NORMS: dict[str, Callable] = {
    "product": product,
    "minimum": minimum,
    "lukasiewicz": lukasiewicz,
}


def t_norm(u, v, kind: str = "product"):
    """Fuzzy conjunction; the product t-norm unless ``kind`` says otherwise."""
    return T_NORMS[kind](u, v)


def negate(u):
    return 1.0 - u


def disjunction(u, v):
    """Probabilistic sum, the dual of the product t-norm."""
    return 1.0 - (1.0 - u) * (1.0 - v)


def implication(u, v):
    """Reichenbach implication ``1 - u + u v``."""
    return 1.0 - u + u * v


def approx_eq(u, v):
    """Smooth equality ``exp(-|u - v|)``."""
    return ad.exp(-abs(u - v))


def aggregate_forall(values: Iterable, conj: Callable = product):
    """Universal quantifier over a finite batch; the empty batch is true."""
    out = 1.0
    for v in values:
        out = conj(out, v)
    return out


@dataclass(frozen=True)
class Event:
    interval: FuzzyInterval
    happ: float = 1.0
    label: str = ""

    def __post_init__(self):
        if not 0.0 <= float(self.happ) <= 1.0:
            raise ValueError(f"happ must lie in [0, 1], got {float(self.happ)}")


def happ(event: Event):
    return event.happ


def membership_at(target, x):
    """Membership of time ``x`` in an event's interval (or in an interval directly)."""
    interval = target.interval if isinstance(target, Event) else target
    return membership(interval, x)


def active(event: Event, i, conj: Callable = product):
    """Truth of "the event is running at time ``i``": interval membership and Happ."""
    return conj(membership(event.interval, i), event.happ)
