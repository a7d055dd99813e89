"""Agent trace schema.

A cooperative agent declares its decomposition (query nodes plus dependency
edges), attributes retrieved pages to nodes, records claims as canonical
(subject, attribute, value) triples with citations into the web, declares
per-chain composite evidence, and closes with a report step and an answer.
Traces are validated structurally here; the semantic checks live in checks.py.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import MalformedTrace
from ..taskgen.answers import Answer, answer_from_json, answer_to_json

TRACE_SCHEMA = "catbench/trace@1"

Triple = tuple[str, str, str]


@dataclass(frozen=True)
class Retrieval:
    node: str
    pages: tuple[str, ...]


@dataclass(frozen=True)
class Claim:
    claim_id: str
    conclusion: Triple
    premises: tuple[str, ...] = ()
    cited_path: tuple[str, ...] = ()
    composite_of: tuple[str, ...] = ()


@dataclass(frozen=True)
class ChainDecl:
    nodes: tuple[str, ...]
    composite_pages: tuple[str, ...]


@dataclass(frozen=True)
class ReportStep:
    proposition: Triple
    contributing: tuple[str, ...]


@dataclass(frozen=True)
class Trace:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    retrievals: tuple[Retrieval, ...]
    chains: tuple[ChainDecl, ...]
    claims: tuple[Claim, ...]
    report: ReportStep | None
    answer: Answer | None

    def __post_init__(self):
        validate_trace(self)

    def view(self, node: str) -> frozenset[str]:
        """Pages the agent attributes to a query node (its declared S(q))."""
        pages: set[str] = set()
        for r in self.retrievals:
            if r.node == node:
                pages.update(r.pages)
        return frozenset(pages)

    def claim_by_id(self) -> dict[str, Claim]:
        return {c.claim_id: c for c in self.claims}


def validate_trace(trace: Trace) -> None:
    nodes = set(trace.nodes)
    if len(nodes) != len(trace.nodes):
        raise MalformedTrace("duplicate query node ids")
    for a, b in trace.edges:
        if a not in nodes or b not in nodes:
            raise MalformedTrace(f"edge ({a!r}, {b!r}) references undeclared nodes")
    for r in trace.retrievals:
        if r.node not in nodes:
            raise MalformedTrace(f"retrieval attributed to undeclared node {r.node!r}")
    for chain in trace.chains:
        if len(chain.nodes) < 3:
            raise MalformedTrace("declared chains must span at least three nodes")
        for n in chain.nodes:
            if n not in nodes:
                raise MalformedTrace(f"chain references undeclared node {n!r}")
    ids = [c.claim_id for c in trace.claims]
    if len(set(ids)) != len(ids):
        raise MalformedTrace("claim ids must be unique")
    known = set(ids)
    for c in trace.claims:
        if len(c.conclusion) != 3 or not all(isinstance(p, str) for p in c.conclusion):
            raise MalformedTrace(f"claim {c.claim_id!r} conclusion is not a triple")
        for p in c.premises:
            if p not in known:
                raise MalformedTrace(f"claim {c.claim_id!r} cites unknown premise {p!r}")
        if c.composite_of:
            if len(c.composite_of) < 2:
                raise MalformedTrace("a composite claim needs at least two steps")
            steps = []
            for sid in c.composite_of:
                if sid not in known:
                    raise MalformedTrace(f"composite step {sid!r} unknown")
                steps.append(sid)
    if trace.report is not None:
        for cid in trace.report.contributing:
            if cid not in known:
                raise MalformedTrace(f"report cites unknown claim {cid!r}")


def trace_to_json(trace: Trace) -> dict:
    return {
        "schema": TRACE_SCHEMA,
        "nodes": list(trace.nodes),
        "edges": [list(e) for e in trace.edges],
        "retrievals": [[r.node, sorted(r.pages)] for r in trace.retrievals],
        "chains": [
            [list(c.nodes), sorted(c.composite_pages)] for c in trace.chains
        ],
        "claims": [
            {
                "id": c.claim_id,
                "conclusion": list(c.conclusion),
                "premises": list(c.premises),
                "cited_path": list(c.cited_path),
                "composite_of": list(c.composite_of),
            }
            for c in trace.claims
        ],
        "report": (
            None
            if trace.report is None
            else {
                "proposition": list(trace.report.proposition),
                "contributing": list(trace.report.contributing),
            }
        ),
        "answer": None if trace.answer is None else answer_to_json(trace.answer),
    }


def trace_from_json(data: dict) -> Trace:
    if data.get("schema") != TRACE_SCHEMA:
        raise MalformedTrace(f"unknown trace schema {data.get('schema')!r}")
    return Trace(
        nodes=tuple(data["nodes"]),
        edges=tuple((a, b) for a, b in data["edges"]),
        retrievals=tuple(Retrieval(n, tuple(p)) for n, p in data["retrievals"]),
        chains=tuple(ChainDecl(tuple(n), tuple(p)) for n, p in data["chains"]),
        claims=tuple(
            Claim(
                c["id"],
                tuple(c["conclusion"]),
                tuple(c["premises"]),
                tuple(c["cited_path"]),
                tuple(c["composite_of"]),
            )
            for c in data["claims"]
        ),
        report=(
            None
            if data["report"] is None
            else ReportStep(
                tuple(data["report"]["proposition"]),
                tuple(data["report"]["contributing"]),
            )
        ),
        answer=None if data["answer"] is None else answer_from_json(data["answer"]),
    )
