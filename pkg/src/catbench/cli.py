"""Command-line entry points.

Subcommands mirror the pipeline stages: gen-world, gen-tasks, run,
verify-trace, score, report, selfcheck.  Everything runs offline; the
external adapter activates only when a run config carries endpoint
settings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .harness.runner import RunConfig, run_suite, selfcheck
from .scoring import TaskScore, build_run_score, emit_report, grade
from .taskgen import gen_task, task_from_json, task_public_json, task_sealed_json
from .verifier import render_verdict, trace_from_json, verdict_to_json, verify
from .world import WorldConfig, generate_world, load_world, save_world


def _load_task(tasks_dir: Path, sealed_dir: Path, task_id: str):
    public = jsonio.load_versioned(tasks_dir / f"{task_id}.json", "catbench/task@1")
    sealed = jsonio.load_versioned(sealed_dir / f"{task_id}.json", "catbench/sealed@1")
    return task_from_json(public, sealed)


def _cmd_gen_world(args) -> int:
    cfg = WorldConfig(seed=args.seed)
    if args.config:
        data = json.loads(Path(args.config).read_text())
        data["seed"] = args.seed
        cfg = WorldConfig.from_json(data)
    world = generate_world(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_world(world, out / "world.json")
    print(f"world {world.content_hash[:16]} with {len(world.pages)} pages -> {out / 'world.json'}")
    return 0


def _parse_counts(spec: str) -> dict[int, int]:
    if "=" not in spec:
        return {kind: int(spec) for kind in range(1, 16)}
    out: dict[int, int] = {}
    for part in spec.split(","):
        kind, _, count = part.partition("=")
        out[int(kind)] = int(count)
    return out


def _cmd_gen_tasks(args) -> int:
    world = load_world(args.world)
    counts = _parse_counts(args.counts)
    out = Path(args.out)
    (out / "tasks").mkdir(parents=True, exist_ok=True)
    (out / "sealed").mkdir(parents=True, exist_ok=True)
    made = 0
    for kind in sorted(counts):
        for i in range(counts[kind]):
            task = gen_task(world, kind, seed=args.seed * 1000 + i)
            jsonio.dump_versioned(
                out / "tasks" / f"{task.task_id}.json", "catbench/task@1",
                task_public_json(task),
            )
            jsonio.dump_versioned(
                out / "sealed" / f"{task.task_id}.json", "catbench/sealed@1",
                task_sealed_json(task),
            )
            made += 1
    print(f"{made} tasks -> {out / 'tasks'} (answers sealed separately)")
    return 0


def _cmd_run(args) -> int:
    data = json.loads(Path(args.config).read_text()) if args.config else {}
    if args.seed is not None:
        data.setdefault("world", {})["seed"] = args.seed
        data["seed"] = args.seed
    cfg = RunConfig.from_json(data) if data else RunConfig()
    scores = run_suite(cfg, args.out)
    for agent, score in sorted(scores.items()):
        print(f"{agent}: total={score.total} S={score.s_score} R={score.r_score}")
    print(f"artifacts -> {args.out}")
    return 0


def _cmd_verify_trace(args) -> int:
    world = load_world(args.world)
    tasks_dir, sealed_dir = Path(args.tasks), Path(args.sealed)
    task = _load_task(tasks_dir, sealed_dir, args.task_id)
    trace = trace_from_json(
        jsonio.load_versioned(args.trace, "catbench/trace@1")
    )
    verdict = verify(trace, task, world)
    if args.out:
        jsonio.dump_versioned(args.out, "catbench/verdict@1", verdict_to_json(verdict))
    sys.stdout.write(render_verdict(verdict))
    return 0 if verdict.all_pass else 1


def _cmd_score(args) -> int:
    run = Path(args.run)
    world = load_world(run / "world.json")
    tasks_dir, sealed_dir = run / "tasks", run / "sealed"
    run_scores = []
    for agent_dir in sorted((run / "traces").iterdir()):
        scores = []
        for trace_file in sorted(agent_dir.glob("*.json")):
            task = _load_task(tasks_dir, sealed_dir, trace_file.stem)
            trace = trace_from_json(jsonio.load_versioned(trace_file, "catbench/trace@1"))
            scores.append(TaskScore(task.task_id, task.kind, grade(task, trace.answer)))
        run_scores.append(build_run_score(agent_dir.name, scores))
    scorecard, _ = emit_report(run_scores, run / "scores")
    print(f"scorecard -> {scorecard}")
    return 0


def _cmd_report(args) -> int:
    from .scoring import load_scorecard

    run = Path(args.run)
    run_scores = load_scorecard(run / "scores" / "scorecard.json")
    _, report = emit_report(run_scores, run / "scores")
    final = run / "report.md"
    final.write_text(report.read_text(encoding="ascii"), encoding="ascii")
    report.unlink()
    print(f"report -> {final}")
    return 0


def _cmd_selfcheck(args) -> int:
    result = selfcheck(args.out, seed=args.seed)
    failed = [name for name, ok in result["checks"].items() if not ok]
    for name, ok in result["checks"].items():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    if result["mismatched"]:
        print(f"mismatched files: {result['mismatched'][:5]}")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="catbench",
        description="Deterministic synthetic-web benchmark with functorial trace audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-world", help="generate a world file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="WorldConfig JSON file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_world)

    p = sub.add_parser("gen-tasks", help="generate certified tasks against a world")
    p.add_argument("--world", required=True)
    p.add_argument("--counts", default="1", help='"N" for all kinds or "kind=N,..."')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_tasks)

    p = sub.add_parser("run", help="run the full suite into a run directory")
    p.add_argument("--config", help="RunConfig JSON file")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify-trace", help="audit one trace file")
    p.add_argument("--world", required=True)
    p.add_argument("--tasks", required=True)
    p.add_argument("--sealed", required=True)
    p.add_argument("--task-id", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_trace)

    p = sub.add_parser("score", help="grade traces in a run directory")
    p.add_argument("--run", required=True)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("report", help="re-render report.md from the scorecard")
    p.add_argument("--run", required=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("selfcheck", help="offline determinism and separation checks")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_selfcheck)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
