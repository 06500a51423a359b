"""Truth values of knowledge-base formulas under a grounding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .. import autodiff as ad
from ..interval import DELTA_MIN, after, before, duration, end, start
from ..logic import T_NORMS, aggregate_forall, approx_eq, negate
from ..smooth import SmoothConfig, smooth_membership, smooth_relations
from .dsl import (
    And, At, DurationEq, Forall, Formula, Happ, Not, Program, Ref, Relation,
)
from .grounding import EventGrounding, realize, unpack


@dataclass
class Environment:
    """Realized events (name -> Event) and scalar time points (name -> value)."""

    events: dict
    scalars: dict


def build_environment(groundings: dict, theta: Optional[Sequence] = None) -> Environment:
    """Realize every grounding, substituting ``theta`` for the trainable values if given."""
    slices = unpack(groundings, theta) if theta is not None else {}
    events, scalars = {}, {}
    for name, g in groundings.items():
        s = slices.get(name)
        if isinstance(g, EventGrounding):
            events[name] = realize(g, s)
        else:
            scalars[name] = s[0] if s is not None else g.value
    return Environment(events, scalars)


class Evaluator:
    """Evaluates the constraints of one program with smooth-gradient operators."""

    def __init__(
        self,
        program: Program,
        cfg: SmoothConfig,
        delta_min: float = DELTA_MIN,
        t_norm: str = "product",
    ):
        self.program = program
        self.cfg = cfg
        self.delta_min = delta_min
        self.conj: Callable = T_NORMS[t_norm]
        self.relations = smooth_relations(cfg, delta_min, self.conj)

    @staticmethod
    def event(name: str, env: Environment, scope: dict):
        return scope[name] if name in scope else env.events[name]

    def term(self, t, env: Environment, scope: dict):
        if isinstance(t, Ref):
            return self.event(t.name, env, scope).interval
        inner = self.term(t.arg, env, scope)
        if t.func == "Start":
            return start(inner, self.delta_min)
        if t.func == "End":
            return end(inner, self.delta_min)
        if t.func == "Before":
            return before(inner)
        return after(inner)

    def formula(self, f: Formula, env: Environment, scope: Optional[dict] = None):
        scope = scope or {}
        if isinstance(f, Relation):
            return self.relations(f.rel, self.term(f.left, env, scope), self.term(f.right, env, scope))
        if isinstance(f, At):
            x = env.scalars[f.time] if isinstance(f.time, str) else f.time
            return smooth_membership(self.term(f.term, env, scope), x, self.cfg)
        if isinstance(f, DurationEq):
            return approx_eq(duration(self.event(f.name, env, scope).interval), f.value)
        if isinstance(f, Happ):
            return self.event(f.name, env, scope).happ
        if isinstance(f, Not):
            return negate(self.formula(f.arg, env, scope))
        if isinstance(f, And):
            return self.conj(self.formula(f.left, env, scope), self.formula(f.right, env, scope))
        if isinstance(f, Forall):
            members = self.program.batches[f.batch].members
            return aggregate_forall(
                (self.formula(f.body, env, {**scope, f.var: env.events[m]}) for m in members),
                self.conj,
            )
        raise TypeError(f"not a formula: {f!r}")

    def constraint_values(self, env: Environment) -> list:
        return [self.formula(f, env) for f in self.program.constraints]

    def satisfaction(self, env: Environment):
        """Conjunction of all constraints (the product t-norm by default)."""
        return aggregate_forall(self.constraint_values(env), self.conj)


def satisfaction(program: Program, groundings: dict, cfg: Optional[SmoothConfig] = None, **kw):
    """Satisfaction level of ``program`` under ``groundings`` as a float."""
    cfg = cfg or default_smooth_config(program)
    return ad.value(Evaluator(program, cfg, **kw).satisfaction(build_environment(groundings)))


def default_smooth_config(program: Program, beta: Optional[float] = None) -> SmoothConfig:
    """``beta = 1 / horizon`` when the program declares one, else ``beta`` or 1."""
    if program.horizon is not None:
        return SmoothConfig.from_horizon(program.horizon, beta)
    return SmoothConfig(beta=1.0 if beta is None else beta)
