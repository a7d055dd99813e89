"""Task objects, the oracle replay script, and the public/sealed split.

The public file carries only what an agent may see (prompt, structured
query, weights); the sealed file carries the certified answer, the evidence
subgraph and a replayable solution script for the positive-control agent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import MalformedTrace
from .answers import Answer, answer_from_json, answer_to_json
from .weights import axis_of_kind, task_weights

TASK_SCHEMA = "catbench/task@1"
SEALED_SCHEMA = "catbench/sealed@1"

Triple = tuple[str, str, str]


@dataclass(frozen=True)
class OracleRetrieval:
    node: str
    query: tuple[str, ...]
    pages: tuple[str, ...]  # cumulative view the agent attributes to the node


@dataclass(frozen=True)
class OracleClaim:
    claim_id: str
    conclusion: Triple
    premises: tuple[str, ...] = ()
    cited_path: tuple[str, ...] = ()
    composite_of: tuple[str, ...] = ()


@dataclass(frozen=True)
class OracleScript:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    retrievals: tuple[OracleRetrieval, ...]
    chains: tuple[tuple[str, ...], ...]
    claims: tuple[OracleClaim, ...]
    report: Triple
    report_contributing: tuple[str, ...]


@dataclass(frozen=True)
class Task:
    task_id: str
    kind: int
    axis: str
    prompt: str
    query: dict
    answer: Answer
    evidence_pages: tuple[str, ...]
    evidence_chain: tuple[str, ...]
    s_weight: int
    r_weight: int
    seed: int
    script: OracleScript
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axis != axis_of_kind(self.kind):
            raise MalformedTrace(f"axis {self.axis!r} inconsistent with kind {self.kind}")
        if (self.s_weight, self.r_weight) != task_weights(self.kind):
            raise MalformedTrace("weights do not match the fixed table")
        if self.s_weight + self.r_weight != 100:
            raise MalformedTrace("weights must sum to 100")


@dataclass(frozen=True)
class UniquenessCert:
    candidate_space: int
    satisfying: int
    runtime_s: float


def task_public_json(task: Task) -> dict:
    return {
        "task_id": task.task_id,
        "kind": task.kind,
        "axis": task.axis,
        "prompt": task.prompt,
        "query": task.query,
        "s_weight": task.s_weight,
        "r_weight": task.r_weight,
        "seed": task.seed,
    }


def task_sealed_json(task: Task) -> dict:
    script = task.script
    return {
        "task_id": task.task_id,
        "answer": answer_to_json(task.answer),
        "evidence_pages": list(task.evidence_pages),
        "evidence_chain": list(task.evidence_chain),
        "meta": task.meta,
        "script": {
            "nodes": list(script.nodes),
            "edges": [list(e) for e in script.edges],
            "retrievals": [
                [r.node, list(r.query), list(r.pages)] for r in script.retrievals
            ],
            "chains": [list(c) for c in script.chains],
            "claims": [
                {
                    "id": c.claim_id,
                    "conclusion": list(c.conclusion),
                    "premises": list(c.premises),
                    "cited_path": list(c.cited_path),
                    "composite_of": list(c.composite_of),
                }
                for c in script.claims
            ],
            "report": list(script.report),
            "report_contributing": list(script.report_contributing),
        },
    }


def task_from_json(public: dict, sealed: dict) -> Task:
    if public["task_id"] != sealed["task_id"]:
        raise MalformedTrace("public/sealed task id mismatch")
    s = sealed["script"]
    script = OracleScript(
        nodes=tuple(s["nodes"]),
        edges=tuple((a, b) for a, b in s["edges"]),
        retrievals=tuple(
            OracleRetrieval(n, tuple(q), tuple(p)) for n, q, p in s["retrievals"]
        ),
        chains=tuple(tuple(c) for c in s["chains"]),
        claims=tuple(
            OracleClaim(
                c["id"],
                tuple(c["conclusion"]),
                tuple(c["premises"]),
                tuple(c["cited_path"]),
                tuple(c["composite_of"]),
            )
            for c in s["claims"]
        ),
        report=tuple(s["report"]),
        report_contributing=tuple(s["report_contributing"]),
    )
    return Task(
        task_id=public["task_id"],
        kind=public["kind"],
        axis=public["axis"],
        prompt=public["prompt"],
        query=public["query"],
        answer=answer_from_json(sealed["answer"]),
        evidence_pages=tuple(sealed["evidence_pages"]),
        evidence_chain=tuple(sealed["evidence_chain"]),
        s_weight=public["s_weight"],
        r_weight=public["r_weight"],
        seed=public["seed"],
        script=script,
        meta=sealed.get("meta", {}),
    )
