"""Reference agents.

Five deterministic controls: a script-replaying positive control, three
single-failure negatives (uncited claims, chain truncation, premise
acceptance on designed-absence tasks), and an honest keyword heuristic that
never reads sealed data.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..taskgen.answers import EntityRef, NullField, Scalar
from ..taskgen.model import task_from_json
from ..verifier.trace import ChainDecl, Claim, ReportStep, Retrieval, Trace
from ..world.model import parse_page
from ..world.ops import tokenize
from .protocol import Agent, Episode


def _script_trace(task, chains_builder=None, claims_override=None, answer=None) -> Trace:
    script = task.script
    views = {r.node: set(r.pages) for r in script.retrievals}
    chains = []
    for chain_nodes in script.chains:
        union: set[str] = set()
        for node in chain_nodes:
            union.update(views.get(node, ()))
        composite = chains_builder(chain_nodes, views, union) if chains_builder else union
        chains.append(ChainDecl(tuple(chain_nodes), tuple(sorted(composite))))
    claims = claims_override if claims_override is not None else tuple(
        Claim(c.claim_id, c.conclusion, c.premises, c.cited_path, c.composite_of)
        for c in script.claims
    )
    return Trace(
        nodes=script.nodes,
        edges=script.edges,
        retrievals=tuple(
            Retrieval(r.node, tuple(sorted(r.pages))) for r in script.retrievals
        ),
        chains=tuple(chains),
        claims=claims,
        report=ReportStep(script.report, script.report_contributing),
        answer=task.answer if answer is None else answer,
    )


class OracleAgent(Agent):
    """Positive control: replays the sealed solution script faithfully."""

    name = "oracle"
    oracle_family = True

    def _replay(self, episode: Episode, task) -> None:
        opened: set[str] = set()
        for retrieval in task.script.retrievals:
            if retrieval.query:
                episode.search(list(retrieval.query), k=10)
            for page in retrieval.pages:
                if page not in opened:
                    episode.open(page)
                    opened.add(page)

    def build_trace(self, task) -> Trace:
        return _script_trace(task)

    def run(self, episode: Episode, public: dict, sealed: dict | None = None) -> None:
        task = task_from_json(public, sealed)
        self._replay(episode, task)
        trace = self.build_trace(task)
        episode.finish(trace.answer, trace)


class TruncatingAgent(OracleAgent):
    """Drops the middle hops' evidence from every declared composite."""

    name = "truncating"

    def build_trace(self, task) -> Trace:
        def truncate(chain_nodes, views, union):
            kept = set(views.get(chain_nodes[0], set()))
            dropped = set()
            for node in chain_nodes[1:-1]:
                dropped |= views.get(node, set()) - kept
            return union - dropped

        return _script_trace(task, chains_builder=truncate)


class SycophantAgent(OracleAgent):
    """Accepts designed-absence premises: fills every null, summarizes every
    phantom, and forces every comparison instead of refuting."""

    name = "sycophant"

    def build_trace(self, task) -> Trace:
        if task.axis != "IV":
            return _script_trace(task)
        rng = random.Random(f"sycophant:{task.task_id}")
        if task.kind == 13:
            filled = tuple(
                (code, value if value is not None else f"{rng.randrange(100, 999)}.0000")
                for code, value in task.answer.cells
            )
            fabricated = NullField(task.answer.field, filled)
            # independent per-company extractions: the filled-in cells have
            # no backing fact and get flagged one by one
            claims = [
                Claim(
                    f"f{idx}",
                    (f"RPT-Q-{int(code.split('-')[1]):03d}", task.answer.field, value),
                    (),
                    (f"rq1-{code}",),
                )
                for idx, (code, value) in enumerate(filled, 1)
            ]
            report = ReportStep(claims[-1].conclusion, tuple(c.claim_id for c in claims))
            script = task.script
            return Trace(
                nodes=script.nodes,
                edges=script.edges,
                retrievals=tuple(
                    Retrieval(r.node, tuple(sorted(r.pages))) for r in script.retrievals
                ),
                chains=(),
                claims=tuple(claims),
                report=report,
                answer=fabricated,
            )
        if task.kind == 14:
            title = task.query["title"]
            claims = (
                Claim("f1", (title, "core_argument_1", "synergy thesis confirmed")),
                Claim("f2", (title, "core_argument_2", "projected uplift quantified"), ("f1",)),
            )
            return Trace(
                nodes=task.script.nodes,
                edges=task.script.edges,
                retrievals=tuple(
                    Retrieval(r.node, tuple(sorted(r.pages))) for r in task.script.retrievals
                ),
                chains=(),
                claims=claims,
                report=ReportStep(claims[-1].conclusion, ("f1", "f2")),
                answer=EntityRef("RPT-FABRICATED"),
            )
        # kind 15: force the comparison although one side lacks the section
        section = task.query["section"]
        claims = (
            Claim("f1", ("comparison", section, "both sides worded identically")),
        )
        return Trace(
            nodes=task.script.nodes,
            edges=task.script.edges,
            retrievals=tuple(
                Retrieval(r.node, tuple(sorted(r.pages))) for r in task.script.retrievals
            ),
            chains=(),
            claims=claims,
            report=ReportStep(claims[0].conclusion, ("f1",)),
            answer=EntityRef("RPT-BOTH"),
        )


class FabricatorAgent(Agent):
    """Negative control: answers instantly with uncited claims, no retrieval."""

    name = "fabricator"

    def run(self, episode: Episode, public: dict, sealed: dict | None = None) -> None:
        rng = random.Random(f"fabricator:{public['task_id']}")
        made_up = Fraction(rng.randrange(1, 10_000_000), 10_000)
        claim = Claim(
            "f1", ("subject", "asserted_value", str(made_up)), (), ()
        )
        trace = Trace(
            nodes=("q0",),
            edges=(),
            retrievals=(),
            chains=(),
            claims=(claim,),
            report=ReportStep(claim.conclusion, ("f1",)),
            answer=Scalar(made_up),
        )
        episode.finish(trace.answer, trace)


class GreedyKeywordAgent(Agent):
    """Honest heuristic baseline: query the most frequent prompt tokens,
    open the top hits, answer from the first plausible fact found."""

    name = "greedy"
    opens = 4

    def run(self, episode: Episode, public: dict, sealed: dict | None = None) -> None:
        prompt_tokens = tokenize(public["prompt"])
        counts: dict[str, int] = {}
        for token in prompt_tokens:
            counts[token] = counts.get(token, 0) + 1
        query = [t for t, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:6]]
        results = episode.search(query, k=10)
        opened: list = []
        for pid, _title in results[: self.opens]:
            opened.append((pid, parse_page(episode.open(pid))))
        answer = None
        claims: tuple[Claim, ...] = ()
        report = None
        for pid, page in opened:
            for fact in page.facts:
                value = getattr(fact, "value", None)
                code = getattr(fact, "entity_code", None)
                if value is not None and code is not None:
                    claims = (Claim("g1", (code, fact.attr, value), (), (pid,)),)
                    report = ReportStep(claims[0].conclusion, ("g1",))
                    try:
                        from ..exact import SCALE, parse_scaled

                        answer = Scalar(Fraction(parse_scaled(value), SCALE))
                    except ValueError:
                        answer = EntityRef(value)
                    break
            if answer is not None:
                break
        trace = Trace(
            nodes=("q0",),
            edges=(),
            retrievals=(Retrieval("q0", tuple(sorted(pid for pid, _ in opened))),),
            chains=(),
            claims=claims,
            report=report,
            answer=answer,
        )
        episode.finish(answer, trace)


def reference_agents() -> dict[str, type[Agent]]:
    """The five deterministic reference agents, by catalog name."""
    return {
        cls.name: cls
        for cls in (
            OracleAgent,
            FabricatorAgent,
            TruncatingAgent,
            SycophantAgent,
            GreedyKeywordAgent,
        )
    }
