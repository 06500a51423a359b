import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzyallen.interval import FuzzyInterval, duration
from fuzzyallen.kb import (
    AdamState, EventGrounding, TrainConfig, TrainingError, adam_step, groundings_from_program,
    parse_kb, realize, satisfaction, task_text, train,
)
from fuzzyallen.kb.grounding import pack, realize_logits, unpack, with_parameters
from fuzzyallen.kb.report import result_document, write_curves, write_json


def test_realize_zero_logits():
    ev = realize_logits([0, 0, 0, 0, 0])
    ln2 = math.log(2)
    assert ev.interval.params == pytest.approx((ln2, 2 * ln2, 3 * ln2, 4 * ln2))
    assert ev.happ == 0.5


def test_realize_fixed_and_degenerate():
    fixed = EventGrounding("A", False, interval=FuzzyInterval(0, 1, 2, 3))
    assert realize(fixed).interval == FuzzyInterval(0, 1, 2, 3)
    ev = realize_logits([0, 0, -40, -40, -40])
    a, b, c, d = ev.interval.params
    assert a <= b <= c <= d and d - a < 1e-15


def test_groundings_seeded():
    p = parse_kb("event A trainable\nscalar x trainable")
    g1, g2 = groundings_from_program(p, 3), groundings_from_program(p, 3)
    assert np.array_equal(pack(g1), pack(g2))
    assert not np.array_equal(pack(g1), pack(groundings_from_program(p, 4)))
    assert pack(g1).size == 6


def test_pack_unpack_round_trip():
    p = parse_kb(task_text("T4"))
    g = groundings_from_program(p)
    theta = pack(g) + 1.5
    assert np.array_equal(pack(with_parameters(g, theta)), theta)
    assert unpack(g, theta) == {"A": None, "x": [g["x"].value + 1.5]}


def _sat(text, **fixed):
    p = parse_kb(text)
    g = groundings_from_program(p)
    for name, iv in fixed.items():
        g[name] = EventGrounding(name, False, interval=iv)
    return satisfaction(p, g)


def test_satisfaction_examples():
    decl = "event A fixed trapezoid(0, 1, 2, 3)\n"
    assert _sat(decl + "constraint A eq A") == pytest.approx(1.0)
    assert _sat(decl + "constraint not (A eq A)") == pytest.approx(0.0)
    hand = _sat(task_text("T1"), B=FuzzyInterval(4, 5, 6, 7))
    assert hand >= 0.95


def test_happ_and_at_atoms():
    text = "event A fixed trapezoid(0, 1, 2, 3) happ 0.25\nscalar x trainable init 0.5\nconstraint happ(A) and A at x"
    assert _sat(text) == pytest.approx(0.125)


def test_forall_is_product_over_batch():
    text = """event A fixed trapezoid(0, 1, 2, 3)
event B fixed trapezoid(0, 1, 3, 4)
batch S = A, B
constraint forall e over S: e at 2.5"""
    assert _sat(text) == pytest.approx(0.5)


def test_adam_first_step_moves_against_gradient():
    cfg = TrainConfig(lr=0.1)
    new, state = adam_step([1.0, 1.0], [2.0, -0.5], AdamState.zeros(2), cfg)
    assert new == pytest.approx([0.9, 1.1])
    assert state.t == 1


def test_adam_zero_gradient():
    cfg = TrainConfig(lr=0.1)
    state = AdamState(np.array([0.5]), np.array([0.25]), 3)
    new, nxt = adam_step([2.0], [0.0], state, cfg)
    assert nxt.m[0] == pytest.approx(0.45) and nxt.v[0] == pytest.approx(0.24975)
    same, _ = adam_step([2.0], [0.0], AdamState.zeros(1), cfg)
    assert same[0] == 2.0


def test_adam_deterministic():
    cfg = TrainConfig()
    a = adam_step([1.0], [0.3], AdamState.zeros(1), cfg)
    b = adam_step([1.0], [0.3], AdamState.zeros(1), cfg)
    assert a[0] == b[0] and np.array_equal(a[1].m, b[1].m)


@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=5), st.integers(1, 20))
def test_adam_step_bounded_by_lr(grads, repeats):
    cfg = TrainConfig(lr=0.1)
    state = AdamState.zeros(len(grads))
    params = np.zeros(len(grads))
    for _ in range(repeats):
        new, state = adam_step(params, grads, state, cfg)
        assert np.all(np.abs(new - params) <= cfg.lr * (1 + 1e-9))
        params = new


def test_train_config_validation():
    with pytest.raises(ValueError):
        TrainConfig(lr=0)
    with pytest.raises(ValueError):
        TrainConfig(steps=-1)


def test_zero_steps():
    p = parse_kb(task_text("T1"))
    run = train(p, TrainConfig(steps=0))
    assert len(run.history) == 1
    assert np.array_equal(pack(run.groundings), pack(groundings_from_program(p)))


def test_contradiction_completes():
    p = parse_kb("event A trainable\nevent B trainable\nconstraint A bf B\nconstraint B bf A")
    run = train(p, TrainConfig(steps=30))
    assert run.final.satisfaction < 1.0


def test_nothing_trainable():
    p = parse_kb("event A fixed trapezoid(0, 1, 2, 3)\nconstraint A eq A")
    with pytest.raises(TrainingError):
        train(p, TrainConfig(steps=1))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000))
def test_history_invariants(seed):
    p = parse_kb("horizon 10\nevent A fixed trapezoid(1, 2, 4, 5)\nevent B trainable\nconstraint B mt A")
    run = train(p, TrainConfig(steps=15, seed=seed))
    for rec in run.history:
        assert abs(rec.loss + rec.satisfaction - 1.0) <= 1e-12
    iv = run.events()["B"].interval
    assert iv.a <= iv.b <= iv.c <= iv.d


def test_trained_intervals_stay_valid_every_step():
    p = parse_kb(task_text("T2"))
    g = groundings_from_program(p)
    for steps in (1, 5, 25):
        run = train(p, TrainConfig(steps=steps), g)
        iv = run.events()["B"].interval
        assert iv.a <= iv.b <= iv.c <= iv.d


def test_satisfied_constraints_keep_parameters_near():
    # everything already true: each Adam step moves a coordinate by at most lr
    p = parse_kb("event A fixed trapezoid(0, 1, 9, 10)\nevent B trainable init logits(3, 2, 1, 1, 1)\nconstraint B in A")
    g = groundings_from_program(p)
    run = train(p, TrainConfig(steps=5, lr=0.1), g)
    assert np.max(np.abs(pack(run.groundings) - pack(g))) <= 5 * 0.1 + 1e-12


def test_reproducible():
    p = parse_kb(task_text("T2"))
    a = train(p, TrainConfig(steps=40))
    b = train(p, TrainConfig(steps=40))
    assert a.history == b.history


def test_early_stop():
    p = parse_kb(task_text("T1"))
    run = train(p, TrainConfig(steps=50, target=0.9))
    assert run.final.satisfaction >= 0.9 and run.final.step < 50


def test_report_documents(tmp_path):
    p = parse_kb(task_text("T4"))
    run = train(p, TrainConfig(steps=3))
    doc = result_document(run, "T4", timestamp=False)
    out = tmp_path / "r.json"
    write_json(doc, out)
    back = json.loads(out.read_text())
    assert back["steps_run"] == 3 and len(back["history"]) == 4
    assert back["events"]["A"] == {"a": 1.0, "b": 2.0, "c": 5.0, "d": 7.0, "happ": 1.0}
    assert set(back["scalars"]) == {"x"}
    assert back["constraints"][0]["formula"] == "End(A) at x"
    assert "timestamp" in result_document(run, "T4")

    curves = tmp_path / "c.csv"
    write_curves(run, curves, horizon=10)
    rows = curves.read_text().splitlines()
    assert rows[0] == "t,A" and len(rows) == 1002
    assert rows[301].split(",") == ["3", "1"]


def test_duration_constraint_uses_duration():
    text = "event B trainable init logits(0, 0, 0, 0, 0)\nconstraint duration(B) ~= 2"
    p = parse_kb(text)
    dur = duration(realize_logits([0] * 5).interval)
    assert satisfaction(p, groundings_from_program(p)) == pytest.approx(math.exp(-abs(dur - 2)))
