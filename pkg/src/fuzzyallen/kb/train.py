"""Maximise knowledge-base satisfaction over trainable groundings with Adam."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .. import autodiff as ad
from ..interval import DELTA_MIN
from ..logic import aggregate_forall
from ..smooth import SmoothConfig
from .dsl import Program, format_formula
from .evaluate import Evaluator, build_environment, default_smooth_config
from .grounding import groundings_from_program, pack, with_parameters


class TrainingError(RuntimeError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 0.1
    steps: int = 100
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0
    horizon: Optional[float] = None  # overrides the program's horizon
    delta_min: float = DELTA_MIN
    beta: Optional[float] = None  # None: 1 / horizon
    target: Optional[float] = None  # stop once satisfaction reaches this
    t_norm: str = "product"

    def __post_init__(self):
        if self.lr <= 0:
            raise ValueError("lr must be positive")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")


@dataclass(frozen=True)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def zeros(cls, n: int) -> "AdamState":
        return cls(np.zeros(n), np.zeros(n), 0)


def adam_step(params, grads, state: AdamState, cfg: TrainConfig):
    """One bias-corrected Adam update; returns ``(new_params, new_state)``."""
    params = np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    t = state.t + 1
    m = cfg.beta1 * state.m + (1.0 - cfg.beta1) * grads
    v = cfg.beta2 * state.v + (1.0 - cfg.beta2) * grads * grads
    m_hat = m / (1.0 - cfg.beta1**t)
    v_hat = v / (1.0 - cfg.beta2**t)
    new = params - cfg.lr * m_hat / (np.sqrt(v_hat) + cfg.eps)
    return new, AdamState(m, v, t)


@dataclass(frozen=True)
class StepRecord:
    step: int
    loss: float
    satisfaction: float
    constraints: tuple


@dataclass
class TrainRun:
    config: TrainConfig
    history: list = field(default_factory=list)
    groundings: dict = field(default_factory=dict)
    constraint_labels: tuple = ()

    @property
    def final(self) -> StepRecord:
        return self.history[-1]

    def events(self) -> dict:
        """Final realized events (plain floats)."""
        return {
            name: ev.__class__(ev.interval.detach(), ad.value(ev.happ), ev.label)
            for name, ev in build_environment(self.groundings).events.items()
        }

    def scalars(self) -> dict:
        return {name: float(v) for name, v in build_environment(self.groundings).scalars.items()}


def _smooth_config(program: Program, cfg: TrainConfig):
    if cfg.horizon is not None:
        return SmoothConfig.from_horizon(cfg.horizon, cfg.beta)
    return default_smooth_config(program, cfg.beta)


def train(program: Program, cfg: TrainConfig, groundings: Optional[dict] = None) -> TrainRun:
    """Run Adam on ``loss = 1 - satisfaction`` for ``cfg.steps`` updates.

    The history holds one record per visited parameter vector, so ``steps``
    updates give ``steps + 1`` records unless the target stops the run early.
    """
    groundings = groundings if groundings is not None else groundings_from_program(program, cfg.seed)
    theta = pack(groundings)
    if theta.size == 0:
        raise TrainingError("the knowledge base has nothing trainable")
    evaluator = Evaluator(program, _smooth_config(program, cfg), cfg.delta_min, cfg.t_norm)
    labels = tuple(format_formula(f) for f in program.constraints)
    run = TrainRun(cfg, constraint_labels=labels)
    state = AdamState.zeros(theta.size)

    for step in range(cfg.steps + 1):
        tape = ad.Tape()
        params = tape.variables(theta)
        values = evaluator.constraint_values(build_environment(groundings, params))
        sat = aggregate_forall(values, evaluator.conj)
        loss = 1.0 - sat
        truths = tuple(ad.value(v) for v in values)
        for label, t in zip(labels, truths):
            if not math.isfinite(t):
                raise TrainingError(f"constraint {label!r} evaluated to {t} at step {step}")
        run.history.append(StepRecord(step, ad.value(loss), ad.value(sat), truths))

        if step == cfg.steps or (cfg.target is not None and ad.value(sat) >= cfg.target):
            break
        if isinstance(loss, ad.DiffScalar):
            grads = tape.gradient(loss, params)
        else:
            grads = np.zeros_like(theta)
        if not np.all(np.isfinite(grads)):
            raise TrainingError(f"non-finite gradient at step {step}; constraints: {truths}")
        theta, state = adam_step(theta, grads, state, cfg)

    run.groundings = with_parameters(groundings, theta)
    return run
