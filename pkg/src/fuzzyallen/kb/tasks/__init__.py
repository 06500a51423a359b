"""Bundled knowledge bases for the four synthetic tasks."""

from dataclasses import dataclass
from importlib import resources


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    filename: str
    steps: int
    target: float = 0.99


TASKS = {
    "T1": TaskSpec("T1", "t1.kb", 50),
    "T2": TaskSpec("T2", "t2.kb", 500),
    "T3": TaskSpec("T3", "t3.kb", 5000),
    "T4": TaskSpec("T4", "t4.kb", 200),
}


def task_text(task_id: str) -> str:
    try:
        spec = TASKS[task_id.upper()]
    except KeyError:
        raise KeyError(f"unknown task {task_id!r}; choose from {', '.join(TASKS)}") from None
    return resources.files(__name__).joinpath(spec.filename).read_text(encoding="utf-8")
