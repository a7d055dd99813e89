"""Episode driver and the end-to-end suite runner.

A run directory holds world.json, tasks/, sealed/, then per-agent traces/,
verdicts/, scores/ and a report.md.  Offline suites with the reference
agents are byte-stable per seed: every file is canonical JSON and the
aggregation order is sorted.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from pathlib import Path

from .. import jsonio
from ..errors import ProtocolViolation
from ..scoring import RunScore, TaskScore, build_run_score, emit_report, grade
from ..taskgen import gen_task, task_from_json, task_public_json, task_sealed_json
from ..taskgen.model import Task
from ..verifier import render_verdict, trace_from_json, trace_to_json, verdict_to_json, verify
from ..world import World, WorldConfig, generate_world, load_world, save_world
from .agents import reference_agents
from .protocol import Agent, BudgetExhausted, Episode

RUNCONFIG_SCHEMA = "catbench/runconfig@1"
DEFAULT_BUDGET = 50


@dataclass(frozen=True)
class RunConfig:
    world: WorldConfig = WorldConfig()
    kinds: tuple[int, ...] = tuple(range(1, 16))
    tasks_per_kind: int = 2
    budget: int = DEFAULT_BUDGET
    agents: tuple[str, ...] = ("fabricator", "greedy", "oracle", "sycophant", "truncating")
    parallelism: int = 1
    seed: int = 0
    external: dict | None = None

    def __post_init__(self):
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    def to_json(self) -> dict:
        return {
            "world": self.world.to_json(),
            "kinds": list(self.kinds),
            "tasks_per_kind": self.tasks_per_kind,
            "budget": self.budget,
            "agents": list(self.agents),
            "parallelism": self.parallelism,
            "seed": self.seed,
            "external": self.external,
        }

    @staticmethod
    def from_json(data: dict) -> "RunConfig":
        base = RunConfig()
        return RunConfig(
            world=WorldConfig.from_json(data["world"]) if "world" in data else base.world,
            kinds=tuple(data.get("kinds", base.kinds)),
            tasks_per_kind=data.get("tasks_per_kind", base.tasks_per_kind),
            budget=data.get("budget", base.budget),
            agents=tuple(data.get("agents", base.agents)),
            parallelism=data.get("parallelism", base.parallelism),
            seed=data.get("seed", base.seed),
            external=data.get("external"),
        )


@dataclass
class RunRecord:
    task: Task
    agent: str
    answer: object
    trace: object
    log: list
    calls_used: int
    forced: bool


def run_task(agent: Agent, task: Task, world: World, budget: int = DEFAULT_BUDGET) -> RunRecord:
    """Drive one episode; budget exhaustion forces a finish with whatever
    the agent holds.  Sealed data reaches oracle-family agents only."""
    episode = Episode(world, budget)
    public = task_public_json(task)
    sealed = task_sealed_json(task) if agent.oracle_family else None
    try:
        agent.run(episode, public, sealed)
    except BudgetExhausted:
        answer, trace = agent.best_effort()
        episode.force_finish(answer, trace)
    if not episode.finished:
        raise ProtocolViolation(f"agent {agent.name!r} returned without finishing")
    return RunRecord(
        task=task,
        agent=agent.name,
        answer=episode.answer,
        trace=episode.trace,
        log=episode.log,
        calls_used=episode.calls_used,
        forced=episode.forced,
    )


def generate_tasks(world: World, cfg: RunConfig) -> list[Task]:
    tasks = []
    for kind in cfg.kinds:
        for i in range(cfg.tasks_per_kind):
            tasks.append(gen_task(world, kind, seed=cfg.seed * 1000 + i))
    return tasks


def _agent_instances(cfg: RunConfig) -> list[Agent]:
    catalog = reference_agents()
    instances = []
    for name in cfg.agents:
        if name not in catalog:
            raise ValueError(f"unknown agent {name!r}; catalog: {sorted(catalog)}")
        instances.append(catalog[name]())
    return instances


def run_suite(cfg: RunConfig, out_dir: str | Path) -> dict[str, RunScore]:
    """Generate, run, verify, grade, and report under one directory."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jsonio.dump_versioned(out / "run_config.json", RUNCONFIG_SCHEMA, cfg.to_json())

    stage = "world generation"
    try:
        world = generate_world(cfg.world)
        save_world(world, out / "world.json")

        stage = "task generation"
        tasks = generate_tasks(world, cfg)
        (out / "tasks").mkdir(exist_ok=True)
        (out / "sealed").mkdir(exist_ok=True)
        for task in tasks:
            jsonio.dump_versioned(
                out / "tasks" / f"{task.task_id}.json", "catbench/task@1",
                task_public_json(task),
            )
            jsonio.dump_versioned(
                out / "sealed" / f"{task.task_id}.json", "catbench/sealed@1",
                task_sealed_json(task),
            )

        stage = "episodes"
        agents = _agent_instances(cfg)
        jobs = [(agent, task) for agent in agents for task in tasks]

        def _one(job):
            agent_cls = type(job[0])
            return run_task(agent_cls(), job[1], world, cfg.budget)

        if cfg.parallelism > 1:
            with concurrent.futures.ThreadPoolExecutor(cfg.parallelism) as pool:
                records = list(pool.map(_one, jobs))
        else:
            records = [_one(job) for job in jobs]

        stage = "verification and grading"
        scores: dict[str, list[TaskScore]] = {}
        for record in sorted(records, key=lambda r: (r.agent, r.task.task_id)):
            agent_dir = out / "traces" / record.agent
            agent_dir.mkdir(parents=True, exist_ok=True)
            jsonio.dump_versioned(
                agent_dir / f"{record.task.task_id}.json", "catbench/trace@1",
                trace_to_json(record.trace),
            )
            verdict = verify(record.trace, record.task, world)
            verdict_dir = out / "verdicts" / record.agent
            verdict_dir.mkdir(parents=True, exist_ok=True)
            jsonio.dump_versioned(
                verdict_dir / f"{record.task.task_id}.json", "catbench/verdict@1",
                verdict_to_json(verdict),
            )
            (verdict_dir / f"{record.task.task_id}.txt").write_text(
                render_verdict(verdict), encoding="ascii"
            )
            scores.setdefault(record.agent, []).append(
                TaskScore(record.task.task_id, record.task.kind, grade(record.task, record.answer))
            )

        stage = "reporting"
        run_scores = {
            agent: build_run_score(agent, agent_scores)
            for agent, agent_scores in sorted(scores.items())
        }
        scorecard, _ = emit_report(list(run_scores.values()), out / "scores")
        (out / "report.md").write_text(
            (out / "scores" / "report.md").read_text(encoding="ascii"), encoding="ascii"
        )
        (out / "scores" / "report.md").unlink()
        return run_scores
    except Exception as exc:
        raise RuntimeError(f"suite failed during {stage}: {exc}") from exc


SELFCHECK_CONFIG = RunConfig(
    world=WorldConfig(
        funds=24,
        managers=12,
        companies=8,
        persons=10,
        libraries=5,
        panel_days=20,
        collision_pairs=2,
        decoy_pages=10,
        phantom_count=5,
    ),
    tasks_per_kind=1,
)


def selfcheck(out_dir: str | Path, seed: int = 0) -> dict:
    """Offline self-test: run the reference suite twice with one seed and
    compare the artifact bytes, then check the expected agent separations."""
    out = Path(out_dir)
    cfg = RunConfig(
        world=WorldConfig(**{**SELFCHECK_CONFIG.world.to_json(), "seed": seed}),
        kinds=SELFCHECK_CONFIG.kinds,
        tasks_per_kind=SELFCHECK_CONFIG.tasks_per_kind,
        budget=SELFCHECK_CONFIG.budget,
        agents=SELFCHECK_CONFIG.agents,
        parallelism=1,
        seed=seed,
    )
    scores_a = run_suite(cfg, out / "run-a")
    scores_b = run_suite(cfg, out / "run-b")

    mismatched = []
    for sub in ("world.json", "tasks", "sealed", "traces", "scores/scorecard.json"):
        a_path, b_path = out / "run-a" / sub, out / "run-b" / sub
        files_a = sorted(p.relative_to(a_path) for p in a_path.rglob("*") if p.is_file()) if a_path.is_dir() else [Path(".")]
        for rel in files_a:
            fa = a_path / rel if a_path.is_dir() else a_path
            fb = b_path / rel if b_path.is_dir() else b_path
            if not fb.exists() or fa.read_bytes() != fb.read_bytes():
                mismatched.append(str(fa))

    oracle = scores_a["oracle"]
    checks = {
        "byte_identical_reruns": not mismatched,
        "oracle_all_kinds_correct": all(
            row["hits"] == row["samples"] for row in oracle.per_kind.values()
        ),
        "fabricator_type4_zero": all(
            row["hits"] == 0
            for kind, row in scores_a["fabricator"].per_kind.items()
            if kind in (13, 14, 15)
        ),
        "sycophant_type4_zero": all(
            row["hits"] == 0
            for kind, row in scores_a["sycophant"].per_kind.items()
            if kind in (13, 14, 15)
        ),
    }
    return {"checks": checks, "mismatched": mismatched, "scores": scores_a}
