import math

import pytest
from hypothesis import given, settings, strategies as st

from fuzzyallen import autodiff as ad
from fuzzyallen.autodiff import Tape
from fuzzyallen.interval import FuzzyInterval, crisp_interval as crisp, membership
from fuzzyallen.logic import negate, t_norm
from fuzzyallen.relations import rel_in
from fuzzyallen.smooth import (
    SmoothConfig, containment_surrogate, membership_surrogate, smooth_membership, smooth_rel_in,
)


def grad(f, *xs):
    tape = Tape()
    vs = tape.variables(xs)
    out = f(*vs)
    return ad.value(out), [float(g) for g in tape.gradient(out, vs)]


def test_backward_examples():
    assert grad(lambda x, y: x * y, 2.0, 3.0)[1] == [3.0, 2.0]
    assert grad(lambda x: ad.softplus(x, 1.0), 0.0)[1] == [0.5]
    assert grad(lambda u, v: negate(t_norm(u, v)), 0.5, 0.5)[1][0] == -0.5


def test_arithmetic_partials():
    _, g = grad(lambda x, y: (x - y) / (x + 2 * y) - abs(x) + 3 / y + 1 - x, 2.0, 1.0)
    assert g[0] == pytest.approx(3 / 16 - 1 - 1)
    assert g[1] == pytest.approx(-6 / 16 - 3)


def test_backward_rejects_foreign_output():
    t1, t2 = Tape(), Tape()
    x = t1.variable(1.0)
    with pytest.raises(ValueError):
        t2.backward(x * 2)


def test_mixing_tapes_is_an_error():
    with pytest.raises(ValueError):
        Tape().variable(1.0) + Tape().variable(2.0)


def test_softplus_values():
    assert ad.softplus_value(0.0, 1.0) == pytest.approx(math.log(2))
    assert ad.softplus_value(10.0, 1.0) == pytest.approx(10.0000454, abs=1e-7)
    assert 0 < ad.softplus_value(-100.0, 1.0) < 1e-40
    assert ad.softplus_value(1e6, 1.0) == 1e6
    assert ad.sigmoid_value(-1000) == 0.0 and ad.sigmoid_value(1000) == 1.0


def test_straight_through_uses_surrogate_gradient():
    val, g = grad(lambda x: ad.straight_through(0.0, 3 * x), 1.0)
    assert val == 0.0 and g == [3.0]


def test_clamp_passes_gradient():
    val, g = grad(lambda x: ad.clamp01(2 * x), 0.75)
    assert val == 1.0 and g == [2.0]


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_adjoints_deterministic(x, y):
    f = lambda a, b: ad.softplus(a * b, 0.5) + ad.sigmoid(a - b) * a
    tape = Tape()
    vs = tape.variables([x, y])
    out = f(*vs)
    assert list(tape.gradient(out, vs)) == list(tape.gradient(out, vs))


I = FuzzyInterval(1, 2, 5, 7)
CFG = SmoothConfig(1.0)


def test_smooth_membership_examples():
    val, g = grad(lambda x: smooth_membership(I, x, CFG), 3.0)
    assert val == 1.0 and g[0] == pytest.approx(-ad.sigmoid_value(-1.0))
    val, g = grad(lambda x: smooth_membership(I, x, CFG), 0.0)
    assert val == 0.0 and g[0] == pytest.approx(ad.sigmoid_value(-1.0))
    assert g[0] > 0
    val, g = grad(lambda x: smooth_membership(I, x, CFG), 1.5)
    assert val == 0.5 and g[0] == pytest.approx(1.0)


def test_plateau_tie_takes_left_branch():
    _, g = grad(lambda x: smooth_membership(I, x, CFG), 3.5)
    assert g[0] < 0


def fd(f, xs, i, h=1e-5):
    up, down = list(xs), list(xs)
    up[i] += h
    down[i] -= h
    return (f(up) - f(down)) / (2 * h)


def test_smooth_rel_in_disjoint():
    pair = [0, 0.2, 0.8, 1, 5, 5.2, 5.8, 6]
    val, g = grad(lambda *p: smooth_rel_in(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]), CFG), *pair)
    assert val == 0.0
    assert g[3] > 0 and g[4] < 0
    sur = lambda p: containment_surrogate(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]), 1.0)
    assert g[3] == pytest.approx(fd(sur, pair, 3), rel=1e-6)
    # the mirror case: A to the right of B attracts A's left edge to B's right edge
    pair = [5, 5, 6, 6, 0, 0, 1, 1]
    _, g = grad(lambda *p: smooth_rel_in(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]), CFG), *pair)
    assert g[0] < 0 and g[7] > 0


def test_smooth_rel_in_fully_inside():
    pair = [2, 3, 4, 5, 0, 1, 6, 7]
    val, g = grad(lambda *p: smooth_rel_in(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]), CFG), *pair)
    assert val == 1.0
    assert g[0] < 0 and g[3] > 0


def test_smooth_rel_in_partial_matches_exact():
    pair = [0, 1.5, 3, 6, 2.2, 3.3, 5, 7]
    val, g = grad(lambda *p: smooth_rel_in(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]), CFG), *pair)
    exact = lambda p: rel_in(FuzzyInterval(*p[:4]), FuzzyInterval(*p[4:]))
    assert val == exact(pair)
    for i in range(8):
        assert g[i] == pytest.approx(fd(exact, pair, i), rel=1e-3, abs=1e-6)


@st.composite
def trap_and_x(draw):
    pts = sorted(draw(st.lists(st.floats(0, 20), min_size=4, max_size=4)))
    return FuzzyInterval(*pts), draw(st.floats(-30, 50))


@given(trap_and_x())
def test_forward_is_exact(tx):
    t, x = tx
    assert ad.value(grad(lambda v: smooth_membership(t, v, CFG), x)[0]) == membership(t, x)


@given(trap_and_x(), trap_and_x())
def test_forward_containment_is_exact(p, q):
    A, B = p[0], q[0]
    assert ad.value(smooth_rel_in(A, B, CFG)) == rel_in(A, B)


@settings(max_examples=300)
@given(st.floats(-100, 100).filter(lambda d: abs(d) > 1e-3))
def test_gradient_never_vanishes_within_horizon(offset):
    T = 100.0
    cfg = SmoothConfig.from_horizon(T)
    A = FuzzyInterval(0, 1, 2, 3)
    x = (A.a + offset) if offset < 0 else (A.d + offset)
    _, g = grad(lambda v: smooth_membership(A, v, cfg), x)
    assert abs(g[0]) >= ad.sigmoid_value(-1.0) - 1e-12


def test_surrogate_functions_are_plain_floats():
    assert isinstance(membership_surrogate(I, 0.0, 1.0), float)
    assert isinstance(containment_surrogate(crisp(0, 1), crisp(5, 6), 1.0), float)


def test_smooth_config():
    cfg = SmoothConfig.from_horizon(50)
    assert cfg.beta == pytest.approx(0.02) and cfg.horizon == 50
    with pytest.raises(ValueError):
        SmoothConfig(0.0)
