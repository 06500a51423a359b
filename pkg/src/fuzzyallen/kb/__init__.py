"""Knowledge bases of temporal constraints: parsing, grounding and training."""

from .dsl import (
    KBError,
    LexError,
    ParseError,
    Program,
    SemanticError,
    format_program,
    parse_kb,
    parse_program,
)
from .evaluate import Evaluator, build_environment, satisfaction
from .grounding import EventGrounding, ScalarGrounding, groundings_from_program, realize
from .tasks import TASKS, task_text
from .train import AdamState, TrainConfig, TrainingError, TrainRun, adam_step, train

__all__ = [
    "KBError", "LexError", "ParseError", "SemanticError", "Program",
    "parse_kb", "parse_program", "format_program",
    "Evaluator", "build_environment", "satisfaction",
    "EventGrounding", "ScalarGrounding", "groundings_from_program", "realize",
    "TASKS", "task_text",
    "AdamState", "TrainConfig", "TrainingError", "TrainRun", "adam_step", "train",
]
