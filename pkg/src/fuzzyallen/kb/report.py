"""JSON result documents and CSV membership curves for training runs."""

from __future__ import annotations

import csv
import dataclasses
import datetime as _dt
import json
import math
from pathlib import Path

import numpy as np

from ..interval import membership_array


def _num(v: float):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def result_document(run, source: str, timestamp: bool = True) -> dict:
    """Everything needed to reproduce and inspect a run; only ``timestamp`` varies between reruns."""
    events = run.events()
    doc = {
        "source": source,
        "config": dataclasses.asdict(run.config),
        "steps_run": run.final.step,
        "satisfaction": run.final.satisfaction,
        "loss": run.final.loss,
        "events": {
            name: {
                "a": _num(float(ev.interval.a)),
                "b": _num(float(ev.interval.b)),
                "c": _num(float(ev.interval.c)),
                "d": _num(float(ev.interval.d)),
                "happ": float(ev.happ),
            }
            for name, ev in events.items()
        },
        "scalars": run.scalars(),
        "constraints": [
            {"formula": label, "truth": truth}
            for label, truth in zip(run.constraint_labels, run.final.constraints)
        ],
        "history": [
            {"step": r.step, "loss": r.loss, "satisfaction": r.satisfaction, "constraints": list(r.constraints)}
            for r in run.history
        ],
    }
    if timestamp:
        doc["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return doc


def write_json(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_curves(run, path, horizon: float, step: float = 0.01) -> None:
    """Membership of every final event sampled on ``[0, horizon]``."""
    n = int(round(horizon / step)) + 1
    ts = np.linspace(0.0, horizon, n)
    events = run.events()
    columns = {name: membership_array(ev.interval, ts) for name, ev in events.items()}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", *columns])
        for i, t in enumerate(ts):
            writer.writerow([f"{t:.6g}", *(f"{col[i]:.9g}" for col in columns.values())])
