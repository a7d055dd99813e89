"""The five trace audits.

Monotonicity tests the declared per-node evidence views along dependency
edges; compositionality tests declared chain composites against the stepwise
union; groundedness tests citations against the hyperlink graph and rendered
facts; transitivity tests end-to-end claims against their own step chains;
the report check rebuilds the claim entailment preorder and demands the
report be its least upper bound.  All checks are pure functions of
(trace, task, world) and report witnesses instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import MalformedTrace
from ..fincat import NO_COLIMIT, ThinCategory, lub_thin
from ..world import World, page_supports
from ..world.ops import is_link_path
from .trace import Claim, Trace, Triple


@dataclass(frozen=True)
class MonotonicityViolation:
    src: str
    dst: str
    missing: tuple[str, ...]


@dataclass(frozen=True)
class CompositionViolation:
    chain: tuple[str, ...]
    lost: tuple[str, ...]


@dataclass(frozen=True)
class Hallucination:
    claim_id: str
    reason: str


@dataclass(frozen=True)
class TransitivityViolation:
    claim_id: str
    stated: Triple
    expected: Triple


@dataclass(frozen=True)
class ColimitMismatch:
    reason: str  # unresolved-conflict | fabricated-summary
    detail: str


@dataclass(frozen=True)
class Verdict:
    monotonicity: tuple[MonotonicityViolation, ...] = ()
    compositionality: tuple[CompositionViolation, ...] = ()
    hallucinations: tuple[Hallucination, ...] = ()
    transitivity: tuple[TransitivityViolation, ...] = ()
    report: tuple[ColimitMismatch, ...] = ()

    @property
    def all_pass(self) -> bool:
        return not (
            self.monotonicity
            or self.compositionality
            or self.hallucinations
            or self.transitivity
            or self.report
        )


def _assert_acyclic(trace: Trace) -> None:
    adjacency: dict[str, list[str]] = {n: [] for n in trace.nodes}
    for a, b in trace.edges:
        adjacency[a].append(b)
    state: dict[str, int] = {}

    def visit(node: str) -> None:
        state[node] = 1
        for nxt in adjacency[node]:
            mark = state.get(nxt, 0)
            if mark == 1:
                raise MalformedTrace("cyclic dependency declaration")
            if mark == 0:
                visit(nxt)
        state[node] = 2

    for node in trace.nodes:
        if state.get(node, 0) == 0:
            visit(node)


def check_search_monotonicity(trace: Trace) -> tuple[MonotonicityViolation, ...]:
    """Along every dependency edge, the downstream view must contain the
    upstream one; a correct agent carries its whole access history forward."""
    _assert_acyclic(trace)
    violations = []
    for src, dst in trace.edges:
        missing = trace.view(src) - trace.view(dst)
        if missing:
            violations.append(MonotonicityViolation(src, dst, tuple(sorted(missing))))
    return tuple(violations)


def check_search_compositionality(
    trace: Trace, world: World
) -> tuple[CompositionViolation, ...]:
    """Each declared end-to-end composite must carry at least the union of
    the stepwise views; dropped intermediate evidence is material loss.
    Traces that declare no chain pass vacuously."""
    violations = []
    for chain in trace.chains:
        stepwise: set[str] = set()
        for node in chain.nodes:
            stepwise.update(trace.view(node))
        lost = stepwise - set(chain.composite_pages)
        if lost:
            violations.append(CompositionViolation(chain.nodes, tuple(sorted(lost))))
    return tuple(violations)


def check_groundedness(
    trace: Trace, world: World, strict: bool = True
) -> tuple[Hallucination, ...]:
    """Cited paths must exist in the hyperlink graph and, for premise-free
    claims, the concluded triple must be backed by a rendered fact on a
    cited page.  In strict mode a claim with neither citations nor premises
    is itself a hallucination."""
    flags = []
    for claim in trace.claims:
        if claim.cited_path:
            if not is_link_path(world, list(claim.cited_path)):
                flags.append(
                    Hallucination(claim.claim_id, "cited path does not exist in the web")
                )
                continue
            if not claim.premises and not claim.composite_of:
                if not any(
                    page_supports(world.pages[pid], claim.conclusion)
                    for pid in claim.cited_path
                ):
                    flags.append(
                        Hallucination(
                            claim.claim_id, "no cited page backs the concluded triple"
                        )
                    )
        elif not claim.premises and not claim.composite_of:
            if strict:
                flags.append(
                    Hallucination(claim.claim_id, "claim cites no evidence and no premise")
                )
    return tuple(flags)


def check_transitivity(trace: Trace) -> tuple[TransitivityViolation, ...]:
    """An end-to-end claim over a step chain must conclude exactly what the
    chain's final step concludes; traces without composite claims pass
    vacuously."""
    by_id = trace.claim_by_id()
    violations = []
    for claim in trace.claims:
        if not claim.composite_of:
            continue
        steps = [by_id[sid] for sid in claim.composite_of]
        linked = all(
            steps[i - 1].claim_id in steps[i].premises for i in range(1, len(steps))
        )
        if not linked:
            continue  # not a premise-linked chain: nothing to compose
        expected = steps[-1].conclusion
        if claim.conclusion != expected:
            violations.append(
                TransitivityViolation(claim.claim_id, claim.conclusion, expected)
            )
    return tuple(violations)


def _triple_key(triple: Triple) -> str:
    return "␟".join(triple)


def claim_entailment_category(trace: Trace) -> tuple[ThinCategory, dict[str, Triple]]:
    """The thin preorder on step-claim conclusions, with entailment edges
    taken only from declared premises (composite claims are summaries of
    chains, not evidence, and stay out of the diagram)."""
    by_id = trace.claim_by_id()
    steps = [c for c in trace.claims if not c.composite_of]
    objects: dict[str, Triple] = {}
    for claim in steps:
        objects.setdefault(_triple_key(claim.conclusion), claim.conclusion)
    relation = []
    for claim in steps:
        for pid in claim.premises:
            src = _triple_key(by_id[pid].conclusion)
            if src in objects:
                relation.append((src, _triple_key(claim.conclusion)))
    category = ThinCategory(tuple(sorted(objects)), tuple(relation))
    return category, objects


def check_report_colimit(trace: Trace) -> tuple[ColimitMismatch, ...]:
    """The report proposition must be the least upper bound of the claim
    entailment diagram: no join means unresolved conflict; a report outside
    (or strictly above) the join is a fabricated summary."""
    if trace.report is None:
        return ()
    category, objects = claim_entailment_category(trace)
    report_key = _triple_key(trace.report.proposition)
    if not objects:
        return (
            ColimitMismatch("fabricated-summary", "report with no step claims"),
        )
    if report_key not in objects:
        return (
            ColimitMismatch(
                "fabricated-summary", "report proposition entailed by nothing"
            ),
        )
    join = lub_thin(category, tuple(sorted(objects)))
    if join is NO_COLIMIT:
        return (
            ColimitMismatch(
                "unresolved-conflict", "claim conclusions admit no least upper bound"
            ),
        )
    if not (category.leq(join, report_key) and category.leq(report_key, join)):
        return (
            ColimitMismatch(
                "fabricated-summary", "report is not the least upper bound"
            ),
        )
    return ()


def verify(trace: Trace, task, world: World, strict: bool = True) -> Verdict:
    """Run all five checks and fold in the degenerate cases: an answer with
    no claims at all is an ungrounded assertion, and an answer without a
    report step skipped aggregation entirely."""
    hallucinations = list(check_groundedness(trace, world, strict=strict))
    report = list(check_report_colimit(trace))
    if trace.answer is not None and not trace.claims and strict:
        hallucinations.append(
            Hallucination("final-answer", "answer submitted without any claims")
        )
    if trace.answer is not None and trace.report is None:
        report.append(
            ColimitMismatch("fabricated-summary", "answer submitted without a report step")
        )
    return Verdict(
        monotonicity=check_search_monotonicity(trace),
        compositionality=check_search_compositionality(trace, world),
        hallucinations=tuple(hallucinations),
        transitivity=check_transitivity(trace),
        report=tuple(report),
    )


VERDICT_SCHEMA = "catbench/verdict@1"


def verdict_to_json(verdict: Verdict) -> dict:
    return {
        "schema": VERDICT_SCHEMA,
        "all_pass": verdict.all_pass,
        "monotonicity": [
            {"src": v.src, "dst": v.dst, "missing": list(v.missing)}
            for v in verdict.monotonicity
        ],
        "compositionality": [
            {"chain": list(v.chain), "lost": list(v.lost)}
            for v in verdict.compositionality
        ],
        "hallucinations": [
            {"claim": v.claim_id, "reason": v.reason} for v in verdict.hallucinations
        ],
        "transitivity": [
            {
                "claim": v.claim_id,
                "stated": list(v.stated),
                "expected": list(v.expected),
            }
            for v in verdict.transitivity
        ],
        "report": [
            {"reason": v.reason, "detail": v.detail} for v in verdict.report
        ],
    }


def render_verdict(verdict: Verdict) -> str:
    lines = []
    checks = (
        ("search monotonicity", verdict.monotonicity),
        ("search compositionality", verdict.compositionality),
        ("groundedness", verdict.hallucinations),
        ("deductive transitivity", verdict.transitivity),
        ("report colimit", verdict.report),
    )
    for name, witnesses in checks:
        status = "pass" if not witnesses else f"FAIL ({len(witnesses)} witness(es))"
        lines.append(f"{name}: {status}")
        for w in witnesses:
            lines.append(f"  - {w}")
    lines.append(f"verdict: {'all-pass' if verdict.all_pass else 'violations found'}")
    return "\n".join(lines) + "\n"
