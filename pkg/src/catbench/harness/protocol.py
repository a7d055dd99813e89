"""The synchronous, replayable tool protocol.

Agents see the world only through an Episode: flat search, page opens, and
one Finish.  The budget counts search and open calls; exhausting it raises
``BudgetExhausted`` which the runner converts into a forced finish with
whatever answer the agent holds.  The numeric panel is deliberately not on
this surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CatbenchError, ProtocolViolation
from ..taskgen.answers import Answer, answer_to_json
from ..verifier.trace import Trace, trace_to_json
from ..world import World
from ..world.ops import open_page, search


class BudgetExhausted(CatbenchError):
    """The episode ran out of tool calls; the runner forces a finish."""


@dataclass
class Episode:
    world: World
    budget: int
    calls_used: int = 0
    finished: bool = False
    forced: bool = False
    answer: Answer | None = None
    trace: Trace | None = None
    log: list = field(default_factory=list)

    def _spend(self, what: str) -> None:
        if self.finished:
            raise ProtocolViolation(f"{what} after finish")
        if self.calls_used >= self.budget:
            raise BudgetExhausted(f"budget of {self.budget} calls exhausted")
        self.calls_used += 1

    def search(self, tokens, k: int = 10) -> list[tuple[str, str]]:
        self._spend("search")
        hits = search(self.world, list(tokens), k)
        results = [(pid, self.world.pages[pid].title) for pid in hits]
        self.log.append({"call": "search", "tokens": sorted(set(tokens)), "k": k,
                         "results": [pid for pid, _ in results]})
        return results

    def open(self, page_id: str) -> str:
        self._spend("open")
        text = open_page(self.world, page_id).render()
        self.log.append({"call": "open", "page": page_id})
        return text

    def finish(self, answer: Answer | None, trace: Trace) -> None:
        if self.finished:
            raise ProtocolViolation("finish called twice")
        self.finished = True
        self.answer = answer
        self.trace = trace
        self.log.append({
            "call": "finish",
            "answer": None if answer is None else answer_to_json(answer),
        })

    def force_finish(self, answer: Answer | None, trace: Trace) -> None:
        self.forced = True
        self.finished = False  # allow the terminal finish
        self.finish(answer, trace)
        self.log[-1]["forced"] = True


EMPTY_TRACE = Trace((), (), (), (), (), None, None)


class Agent:
    """Reference-agent base: drive the episode, hold a fallback answer."""

    name = "agent"
    oracle_family = False  # only the oracle family may read sealed files

    def run(self, episode: Episode, public: dict, sealed: dict | None = None) -> None:
        raise NotImplementedError

    def best_effort(self) -> tuple[Answer | None, Trace]:
        return None, EMPTY_TRACE
