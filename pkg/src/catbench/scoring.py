"""Binary grading and score aggregation.

Grading is strict and binary.  Axis averages are count-weighted hit rates
rounded half-up to one decimal; the total is the plain mean of the four
axis averages rounded half-up to two decimals; the search/reasoning
diagnostics are the per-kind accuracies averaged under the fixed weight
table (weighted mean per column).  All arithmetic is exact until the final
rounding step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .exact import round_half_up_float
from .taskgen.answers import (
    Answer,
    EntityRef,
    NullField,
    OrderedList,
    Refutation,
    Scalar,
    Stat,
    answer_from_json,
)
from .taskgen.model import Task
from .taskgen.weights import AXES, WEIGHTS, axis_of_kind, kinds_of_axis, task_weights

SCORECARD_SCHEMA = "catbench/scorecard@1"


@dataclass(frozen=True)
class TaskScore:
    task_id: str
    kind: int
    score: int  # 0 or 1

    def __post_init__(self):
        if self.score not in (0, 1):
            raise ValueError("scores are strictly binary")


@dataclass(frozen=True)
class WeightTable:
    rows: tuple[tuple[int, int, int], ...] = tuple(
        (kind, s, r) for kind, (s, r) in sorted(WEIGHTS.items())
    )

    def __post_init__(self):
        for kind, s, r in self.rows:
            if s + r != 100:
                raise ValueError(f"weights for kind {kind} do not sum to 100")

    def s_weights(self) -> dict[int, int]:
        return {kind: s for kind, s, _ in self.rows}

    def r_weights(self) -> dict[int, int]:
        return {kind: r for kind, _, r in self.rows}


def grade(task: Task, submitted: Answer | None) -> int:
    """Strict binary grade of a structured submission against the seal."""
    truth = task.answer
    if submitted is None or type(submitted) is not type(truth):
        return 0
    if isinstance(truth, Scalar):
        return int(abs(submitted.value - truth.value) <= truth.tolerance)
    if isinstance(truth, EntityRef):
        return int(submitted.code == truth.code)
    if isinstance(truth, OrderedList):
        return int(submitted.codes == truth.codes)
    if isinstance(truth, Stat):
        if submitted.kind != truth.kind:
            return 0
        return int(
            abs(submitted.value - truth.value)
            <= truth.rel_tolerance * abs(truth.value)
        )
    if isinstance(truth, NullField):
        if submitted.field != truth.field:
            return 0
        # every designed empty cell must be explicitly empty, every value exact
        return int(dict(submitted.cells) == dict(truth.cells))
    if isinstance(truth, Refutation):
        return int(
            submitted.reason == truth.reason and submitted.witness == truth.witness
        )
    raise TypeError(f"unknown answer shape {type(truth).__name__}")


def grade_submission(task: Task, raw: dict | None) -> tuple[int, str]:
    """Parse-then-grade; unparseable submissions score 0 with a note."""
    if raw is None:
        return 0, "no answer submitted"
    try:
        submitted = answer_from_json(raw)
    except Exception as exc:
        return 0, f"parse failure: {exc}"
    return grade(task, submitted), ""


def per_kind_accuracy(scores: list[TaskScore]) -> dict[int, Fraction]:
    hits: dict[int, int] = {}
    counts: dict[int, int] = {}
    for s in scores:
        hits[s.kind] = hits.get(s.kind, 0) + s.score
        counts[s.kind] = counts.get(s.kind, 0) + 1
    return {
        kind: Fraction(100 * hits[kind], counts[kind]) for kind in sorted(counts)
    }


def axis_average(
    scores: list[TaskScore], counts: dict[int, int] | None = None
) -> dict[str, float]:
    """Count-weighted hit rate per axis, in percent, one decimal, half-up.

    ``counts`` overrides the per-kind sample totals (the scores then supply
    hits only), which reproduces published rows given (hits, samples) pairs.
    Axes with no samples are absent from the result, not zero.
    """
    hits: dict[int, int] = {}
    seen: dict[int, int] = {}
    for s in scores:
        hits[s.kind] = hits.get(s.kind, 0) + s.score
        seen[s.kind] = seen.get(s.kind, 0) + 1
    totals = dict(seen)
    if counts is not None:
        for kind, n in counts.items():
            if n < seen.get(kind, 0):
                raise ValueError(f"count for kind {kind} below the scored samples")
            totals[kind] = n
    out: dict[str, float] = {}
    for axis in AXES:
        kinds = [k for k in kinds_of_axis(axis) if totals.get(k)]
        sample_total = sum(totals[k] for k in kinds)
        if not sample_total:
            continue
        hit_total = sum(hits.get(k, 0) for k in kinds)
        out[axis] = round_half_up_float(Fraction(100 * hit_total, sample_total), 1)
    return out


def total_average(axis_avgs: dict[str, float]) -> float:
    """Mean of the four axis averages, two decimals, half-up."""
    missing = [a for a in AXES if a not in axis_avgs]
    if missing:
        raise ValueError(f"missing axis average(s): {missing}")
    exact = sum(Fraction(str(axis_avgs[a])) for a in AXES) / 4
    return round_half_up_float(exact, 2)


def diagnostic_scores(
    per_kind_acc: dict[int, float | Fraction],
    weights: WeightTable | None = None,
) -> tuple[float, float]:
    """Search and reasoning scores: accuracies averaged under each weight
    column.  This aggregation is the declared reconstruction that reproduces
    the published diagnostic pairs from per-kind accuracies for 10 of the 11
    reference rows (the remaining row is internally inconsistent upstream)."""
    table = weights or WeightTable()
    s_w, r_w = table.s_weights(), table.r_weights()
    missing = [k for k in s_w if k not in per_kind_acc]
    if missing:
        raise ValueError(f"missing per-kind accuracies: {missing}")
    acc = {k: Fraction(str(per_kind_acc[k])) for k in s_w}
    s_total, r_total = sum(s_w.values()), sum(r_w.values())
    s_score = sum(acc[k] * s_w[k] for k in s_w) / s_total
    r_score = sum(acc[k] * r_w[k] for k in r_w) / r_total
    return float(s_score), float(r_score)


@dataclass(frozen=True)
class RunScore:
    agent: str
    per_kind: dict  # kind -> {"hits": int, "samples": int, "accuracy": float}
    axis_avgs: dict  # axis -> float (percent, 1 decimal)
    total: float | None
    s_score: float
    r_score: float

    def to_json(self) -> dict:
        return {
            "agent": self.agent,
            "per_kind": {str(k): v for k, v in sorted(self.per_kind.items())},
            "axis_avgs": dict(sorted(self.axis_avgs.items())),
            "total": self.total,
            "s_score": self.s_score,
            "r_score": self.r_score,
        }

    @staticmethod
    def from_json(data: dict) -> "RunScore":
        return RunScore(
            agent=data["agent"],
            per_kind={int(k): v for k, v in data["per_kind"].items()},
            axis_avgs=data["axis_avgs"],
            total=data["total"],
            s_score=data["s_score"],
            r_score=data["r_score"],
        )


def build_run_score(agent: str, scores: list[TaskScore]) -> RunScore:
    hits: dict[int, int] = {}
    counts: dict[int, int] = {}
    for s in scores:
        hits[s.kind] = hits.get(s.kind, 0) + s.score
        counts[s.kind] = counts.get(s.kind, 0) + 1
    per_kind = {
        kind: {
            "hits": hits.get(kind, 0),
            "samples": counts[kind],
            "accuracy": round_half_up_float(
                Fraction(100 * hits.get(kind, 0), counts[kind]), 1
            ),
        }
        for kind in sorted(counts)
    }
    axis_avgs = axis_average(scores)
    total = total_average(axis_avgs) if len(axis_avgs) == len(AXES) else None
    acc_full = {
        kind: Fraction(100 * hits.get(kind, 0), counts[kind]) if counts.get(kind) else Fraction(0)
        for kind in WEIGHTS
    }
    s_score, r_score = diagnostic_scores(acc_full)
    return RunScore(
        agent=agent,
        per_kind=per_kind,
        axis_avgs=axis_avgs,
        total=total,
        s_score=round_half_up_float(Fraction(str(s_score)), 2),
        r_score=round_half_up_float(Fraction(str(r_score)), 2),
    )


def emit_report(run_scores: list[RunScore], out_dir: str | Path) -> tuple[Path, Path]:
    """Write scorecard.json plus a markdown table (one row per agent)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    scorecard = out_dir / "scorecard.json"
    jsonio.dump_versioned(
        scorecard,
        SCORECARD_SCHEMA,
        {"runs": [r.to_json() for r in sorted(run_scores, key=lambda r: r.agent)]},
        hashed=True,
    )
    lines = [
        "| Agent | Type I | Type II | Type III | Type IV | Total | S | R |",
        "| --- | --- | --- | --- | --- | --- | --- | --- |",
    ]
    for r in sorted(run_scores, key=lambda r: r.agent):
        cells = [r.agent]
        for axis in AXES:
            cells.append(f"{r.axis_avgs[axis]:.1f}" if axis in r.axis_avgs else "-")
        cells.append(f"{r.total:.2f}" if r.total is not None else "-")
        cells.append(f"{r.s_score:.1f}")
        cells.append(f"{r.r_score:.1f}")
        lines.append("| " + " | ".join(cells) + " |")
    report = out_dir / "report.md"
    report.write_text("\n".join(lines) + "\n", encoding="ascii")
    return scorecard, report


def load_scorecard(path: str | Path) -> list[RunScore]:
    body = jsonio.load_versioned(path, SCORECARD_SCHEMA)
    return [RunScore.from_json(r) for r in body["runs"]]
