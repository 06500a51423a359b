"""Trainable and fixed groundings of events and time-point scalars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .. import autodiff as ad
from ..interval import FuzzyInterval
from ..logic import Event
from .dsl import Program

N_EVENT_LOGITS = 5


@dataclass(frozen=True)
class EventGrounding:
    """An event given either by five logits or by a fixed interval.

    The logits are ``(happ, a, b - a, c - b, d - c)`` before activation: a
    sigmoid for the first, softplus for the rest, so the realized trapezoid is
    always ordered.
    """

    name: str
    trainable: bool
    logits: Optional[tuple] = None
    interval: Optional[FuzzyInterval] = None
    happ: float = 1.0

    @property
    def size(self) -> int:
        return N_EVENT_LOGITS if self.trainable else 0


@dataclass(frozen=True)
class ScalarGrounding:
    name: str
    value: float
    trainable: bool = True

    @property
    def size(self) -> int:
        return 1 if self.trainable else 0


def realize_logits(logits: Sequence, label: str = "") -> Event:
    """Event from ``(happ, a, b - a, c - b, d - c)`` logits; works on DiffScalars."""
    happ_logit, *gaps = logits
    a = ad.softplus(gaps[0])
    b = a + ad.softplus(gaps[1])
    c = b + ad.softplus(gaps[2])
    d = c + ad.softplus(gaps[3])
    return Event(FuzzyInterval(a, b, c, d), ad.sigmoid(happ_logit), label)


def realize(g: EventGrounding, logits: Optional[Sequence] = None) -> Event:
    """Turn a grounding into an event; ``logits`` override the stored ones (e.g. tape variables)."""
    if not g.trainable:
        return Event(g.interval, g.happ, g.name)
    return realize_logits(g.logits if logits is None else logits, g.name)


def groundings_from_program(program: Program, seed: int = 0) -> dict:
    """Initial groundings for every declared event and scalar.

    Trainable declarations without an ``init`` clause draw their start values
    from a standard normal seeded by ``seed``.
    """
    rng = np.random.default_rng(seed)
    out = {}
    for name, decl in program.events.items():
        if decl.trainable:
            logits = decl.logits
            if logits is None:
                logits = tuple(float(v) for v in rng.standard_normal(N_EVENT_LOGITS))
            out[name] = EventGrounding(name, True, logits=tuple(logits))
        else:
            happ = 1.0 if decl.happ is None else decl.happ
            out[name] = EventGrounding(name, False, interval=FuzzyInterval(*decl.params), happ=happ)
    for name, decl in program.scalars.items():
        init = decl.init if decl.init is not None else float(rng.standard_normal())
        out[name] = ScalarGrounding(name, init)
    return out


def pack(groundings: dict) -> np.ndarray:
    """Flatten the trainable values in declaration order."""
    vals = []
    for g in groundings.values():
        if isinstance(g, EventGrounding) and g.trainable:
            vals.extend(g.logits)
        elif isinstance(g, ScalarGrounding) and g.trainable:
            vals.append(g.value)
    return np.array(vals, dtype=float)


def unpack(groundings: dict, theta: Sequence) -> dict:
    """Split a flat parameter vector back into per-name slices (values may be DiffScalars)."""
    out = {}
    i = 0
    for name, g in groundings.items():
        out[name] = list(theta[i : i + g.size]) if g.size else None
        i += g.size
    return out


def with_parameters(groundings: dict, theta: Sequence[float]) -> dict:
    """Copy of ``groundings`` whose trainable values are taken from ``theta``."""
    slices = unpack(groundings, theta)
    out = {}
    for name, g in groundings.items():
        s = slices[name]
        if s is None:
            out[name] = g
        elif isinstance(g, EventGrounding):
            out[name] = EventGrounding(name, True, logits=tuple(float(v) for v in s))
        else:
            out[name] = ScalarGrounding(name, float(s[0]))
    return out
