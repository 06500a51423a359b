"""Self-checks: geometry against numeric integration, tape gradients against
finite differences, and crisp Allen configurations against their expected truth."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .autodiff import Tape
from .geometry import intersection_area, oracle_intersection_area
from .interval import FuzzyInterval, crisp_interval
from .relations import AllenRelations
from .smooth import (
    SmoothConfig, containment_surrogate, membership_surrogate, smooth_membership, smooth_rel_in,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    cases: int
    max_error: float
    detail: str = ""


def random_trapezoid(rng: random.Random, lo=0.0, hi=100.0) -> FuzzyInterval:
    return FuzzyInterval(*sorted(rng.uniform(lo, hi) for _ in range(4)))


def oracle_suite(cases=1000, seed=0, grid_step=1e-4, tol=1e-3, area: Callable = intersection_area) -> SuiteResult:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(cases):
        A, B = random_trapezoid(rng), random_trapezoid(rng)
        worst = max(worst, abs(float(area(A, B)) - oracle_intersection_area(A, B, grid_step)))
    return SuiteResult("oracle", worst <= tol, cases, worst, f"|area - midpoint rule|, step {grid_step:g}")


def _separated(params, gap):
    s = sorted(params)
    return all(b - a >= gap for a, b in zip(s, s[1:]))


def _rel_err(got, want, floor=1e-6):
    return abs(got - want) / max(abs(want), floor)


def _central_diff(f, params, i, h):
    up, down = list(params), list(params)
    up[i] += h
    down[i] -= h
    return (f(up) - f(down)) / (2 * h)


def gradient_suite(cases=200, seed=0, h=1e-4, tol=1e-3) -> SuiteResult:
    """Tape partials of both smooth operators against central differences of their surrogates."""
    rng = random.Random(seed)
    beta = 0.1
    cfg = SmoothConfig(beta)
    worst = 0.0
    done = 0
    while done < cases:
        params = [rng.uniform(0, 10) for _ in range(9)]
        trap, x = sorted(params[:4]), params[4]
        pair = sorted(params[:4]) + sorted(params[5:])
        if not (_separated(trap + [x, (trap[1] + trap[2]) / 2], 0.05) and _separated(pair, 0.05)):
            continue
        tape = Tape()
        v = tape.variables(trap + [x])
        out = smooth_membership(FuzzyInterval(*v[:4]), v[4], cfg)
        got = tape.gradient(out, v)
        f = lambda p: membership_surrogate(FuzzyInterval(*p[:4]), p[4], beta)
        for i in range(5):
            worst = max(worst, _rel_err(got[i], _central_diff(f, trap + [x], i, h)))

        tape = Tape()
        v = tape.variables(pair)
        out = smooth_rel_in(FuzzyInterval(*v[:4]), FuzzyInterval(*v[4:]), cfg)
        got = tape.gradient(out, v)
        g = lambda p: containment_surrogate(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]), beta)
        for i in range(8):
            worst = max(worst, _rel_err(got[i], _central_diff(g, pair, i, h)))
        done += 1
    return SuiteResult("gradient", worst <= tol, cases, worst, f"relative error, h={h:g}")


# (relation, defining configuration, violating configuration), crisp endpoints
ALLEN_CASES = [
    ("in", ((1, 2), (0, 3)), ((0, 1), (2, 3))),
    ("eq", ((0, 2), (0, 2)), ((0, 1), (2, 3))),
    ("bf", ((0, 1), (2, 3)), ((2, 3), (0, 1))),
    ("af", ((2, 3), (0, 1)), ((0, 1), (2, 3))),
    ("mt", ((0, 2), (2, 4)), ((0, 2), (3, 5))),
    ("st", ((0, 2), (0, 5)), ((2, 4), (0, 5))),
    ("dr", ((2, 3), (0, 5)), ((0, 2), (3, 6))),
    ("fin", ((3, 5), (0, 5)), ((0, 2), (0, 5))),
    ("ol", ((0, 4), (2, 6)), ((0, 2), (3, 5))),
]


def crisp_allen_suite(delta_min=0.1) -> SuiteResult:
    rels = AllenRelations(delta_min)
    failures = []
    worst = 0.0
    for name, good, bad in ALLEN_CASES:
        hi = rels(name, crisp_interval(*good[0]), crisp_interval(*good[1]))
        lo = rels(name, crisp_interval(*bad[0]), crisp_interval(*bad[1]))
        worst = max(worst, 1.0 - hi, lo)
        if hi < 0.99:
            failures.append(f"{name} holds at {hi:.3g}")
        if lo > 0.01:
            failures.append(f"{name} violated at {lo:.3g}")
    return SuiteResult("crisp-allen", not failures, 2 * len(ALLEN_CASES), worst, "; ".join(failures))


def run_all(cases=1000, seed=0, area: Callable = intersection_area) -> list[SuiteResult]:
    return [
        oracle_suite(cases, seed, area=area),
        gradient_suite(max(1, cases // 5), seed),
        crisp_allen_suite(),
    ]


def faulty_area(A, B):
    """Deliberately wrong area, for checking that the oracle suite catches bugs."""
    return intersection_area(A, B) * 1.01
