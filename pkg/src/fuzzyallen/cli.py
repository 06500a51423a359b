"""Command-line entry point: ``fuzzyallen run | eval | check``.

Exit codes: 0 success, 1 satisfaction below the requested target or a failed
check, 2 bad input (missing file, parse or semantic error).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import verify
from .kb import TASKS, KBError, TrainConfig, TrainingError, parse_kb, task_text, train
from .kb.evaluate import Evaluator, build_environment, default_smooth_config
from .kb.dsl import format_formula
from .kb.grounding import groundings_from_program
from .kb.report import result_document, write_curves, write_json

OUTPUT_DIR_ENV = "FUZZYALLEN_OUTPUT_DIR"

EXIT_OK, EXIT_UNSATISFIED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(args) -> tuple[str, str]:
    """(source label, knowledge-base text)."""
    if args.task:
        try:
            return args.task.upper(), task_text(args.task)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    path = Path(args.kb)
    try:
        return path.stem, path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _add_source(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--task", help="bundled task id (" + ", ".join(TASKS) + ")")
    group.add_argument("--kb", help="path to a knowledge-base file")


def cmd_run(args) -> int:
    source, text = _load(args)
    program = parse_kb(text)
    task = TASKS.get(source) if args.task else None
    steps = args.steps if args.steps is not None else (task.steps if task else 100)
    target = args.target if args.target is not None else (task.target if task else None)
    cfg = TrainConfig(
        lr=args.lr, steps=steps, seed=args.seed, beta=args.beta,
        delta_min=args.delta_min, target=target, horizon=args.horizon,
    )
    run = train(program, cfg)

    out = Path(args.out) if args.out else Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / f"{source}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_json(result_document(run, source), out)
    if args.curves:
        horizon = args.horizon or program.horizon or 10.0
        write_curves(run, args.curves, horizon)

    final = run.final
    print(f"{source}: satisfaction {final.satisfaction:.6f} after {final.step} steps -> {out}")
    for label, truth in zip(run.constraint_labels, final.constraints):
        print(f"  {truth:.6f}  {label}")
    if target is not None and final.satisfaction < target:
        return EXIT_UNSATISFIED
    return EXIT_OK


def cmd_eval(args) -> int:
    source, text = _load(args)
    program = parse_kb(text)
    groundings = groundings_from_program(program, args.seed)
    evaluator = Evaluator(program, default_smooth_config(program, args.beta), args.delta_min)
    env = build_environment(groundings)
    values = [float(v) for v in evaluator.constraint_values(env)]
    sat = 1.0
    for v in values:
        sat *= v
    for f, v in zip(program.constraints, values):
        print(f"{v:.6f}  {format_formula(f)}")
    print(f"satisfaction {sat:.6f}")
    return EXIT_OK


def cmd_check(args) -> int:
    area = verify.faulty_area if args.inject_fault == "geometry" else verify.intersection_area
    results = verify.run_all(args.cases, args.seed, area=area)
    print(f"{'suite':<12} {'result':<6} {'cases':>6} {'max error':>12}")
    for r in results:
        print(f"{r.name:<12} {'pass' if r.passed else 'FAIL':<6} {r.cases:>6} {r.max_error:>12.3e}  {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_UNSATISFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzyallen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="train a knowledge base and write a result document")
    _add_source(p)
    p.add_argument("--steps", type=int)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, help="softplus temperature (default 1/horizon)")
    p.add_argument("--horizon", type=float, help="override the knowledge base's horizon")
    p.add_argument("--delta-min", type=float, default=0.1)
    p.add_argument("--target", type=float, help="early-stop and exit-status threshold")
    p.add_argument("--out", help=f"result JSON path (default ${OUTPUT_DIR_ENV}/<name>.json)")
    p.add_argument("--curves", help="also write sampled membership curves to this CSV")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="print constraint truth values without training")
    _add_source(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float)
    p.add_argument("--delta-min", type=float, default=0.1)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run the built-in verification suites")
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", choices=["geometry"], help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, KBError, TrainingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
