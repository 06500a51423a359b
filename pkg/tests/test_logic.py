import math

import pytest
from hypothesis import given, strategies as st

from fuzzyallen.interval import FuzzyInterval
from fuzzyallen.logic import (
    T_NORMS, Event, active, aggregate_forall, approx_eq, disjunction, happ, implication,
    membership_at, negate, t_norm,
)

unit = st.floats(0, 1)
kinds = st.sampled_from(sorted(T_NORMS))


def test_t_norm_examples():
    assert t_norm(0.5, 0.5) == 0.25
    assert t_norm(1, 0.3) == 0.3
    assert t_norm(0, 0.3) == 0


def test_negate_examples():
    assert negate(0.3) == pytest.approx(0.7)
    assert negate(0) == 1 and negate(1) == 0


def test_approx_eq_examples():
    assert approx_eq(2, 2) == 1.0
    assert approx_eq(1, 2) == pytest.approx(0.36788, abs=1e-5)
    assert approx_eq(0, 10) == pytest.approx(4.54e-5, rel=1e-3)


def test_aggregate_examples():
    assert aggregate_forall([0.5, 0.5]) == 0.25
    assert aggregate_forall([]) == 1.0
    assert aggregate_forall([1, 1, 0.9]) == pytest.approx(0.9)


def test_derived_connectives():
    assert disjunction(0.5, 0.5) == 0.75
    assert implication(1, 0.2) == pytest.approx(0.2)
    assert implication(0, 0.2) == 1


def test_event_predicates():
    assert active(Event(FuzzyInterval(0, 1, 3, 4), 1.0), 2) == 1.0
    assert active(Event(FuzzyInterval(0, 1, 3, 4), 0.0), 2) == 0.0
    assert active(Event(FuzzyInterval(0, 2, 4, 6), 0.5), 1) == 0.25
    for h in (0.7, 1, 0):
        assert happ(Event(FuzzyInterval(0, 1, 2, 3), h)) == h
    assert membership_at(Event(FuzzyInterval(1, 2, 5, 7)), 1.5) == 0.5
    assert membership_at(FuzzyInterval(1, 2, 5, 7), 3) == 1.0


def test_event_rejects_bad_happ():
    with pytest.raises(ValueError):
        Event(FuzzyInterval(0, 1, 2, 3), 1.5)


def test_unknown_t_norm():
    with pytest.raises(KeyError):
        t_norm(0.5, 0.5, "drastic")


@given(unit, unit, unit, kinds)
def test_t_norm_laws(u, v, w, kind):
    T = lambda x, y: t_norm(x, y, kind)
    assert T(u, v) == pytest.approx(T(v, u), abs=1e-15)
    assert T(T(u, v), w) == pytest.approx(T(u, T(v, w)), abs=1e-12)
    assert T(u, 1) == pytest.approx(u, abs=1e-15)
    if v <= w:
        assert T(u, v) <= T(u, w) + 1e-15


@given(unit)
def test_negate_involution(u):
    assert abs(negate(negate(u)) - u) <= 1e-15


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_approx_eq_symmetric(u, v):
    assert approx_eq(u, v) == approx_eq(v, u)
    assert approx_eq(u, u) == 1.0


@given(unit, st.floats(-10, 20))
def test_active_bounded_by_happ(h, i):
    e = Event(FuzzyInterval(0, 2, 4, 6), h)
    assert active(e, i) <= happ(e)
    assert not math.isnan(active(e, i))
