"""Optional adapter for driving an external chat-completions endpoint.

Speaks the common JSON tool-calling dialect: the model sees three tools
(search, open, finish) and the adapter executes them against the episode.
Entirely optional at runtime; the offline suite never imports a credential.
Transport is injectable so tests run without a network.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass

from ..errors import ProtocolViolation
from ..taskgen.answers import answer_from_json
from ..verifier.trace import trace_from_json
from .protocol import Agent, Episode

TOOLS = [
    {
        "type": "function",
        "function": {
            "name": "search",
            "description": "Flat keyword search over the corpus; returns page ids and titles.",
            "parameters": {
                "type": "object",
                "properties": {
                    "tokens": {"type": "array", "items": {"type": "string"}},
                    "k": {"type": "integer", "minimum": 1, "default": 10},
                },
                "required": ["tokens"],
            },
        },
    },
    {
        "type": "function",
        "function": {
            "name": "open",
            "description": "Open one page by id and return its full text.",
            "parameters": {
                "type": "object",
                "properties": {"page_id": {"type": "string"}},
                "required": ["page_id"],
            },
        },
    },
    {
        "type": "function",
        "function": {
            "name": "finish",
            "description": "Submit the final answer and the structured trace.",
            "parameters": {
                "type": "object",
                "properties": {"answer": {"type": "object"}, "trace": {"type": "object"}},
                "required": ["answer", "trace"],
            },
        },
    },
]

SYSTEM_PROMPT = (
    "You are a research agent working against a closed corpus. Use the "
    "search and open tools to gather evidence, then call finish exactly "
    "once with a structured answer and a full trace (declared query nodes, "
    "dependency edges, per-node page attributions, chain composites, cited "
    "claims, and a report step)."
)


@dataclass(frozen=True)
class ExternalConfig:
    base_url: str
    model: str
    api_key_env: str = "CATBENCH_API_KEY"
    timeout_s: float = 60.0
    max_retries: int = 3
    backoff_s: float = 1.0
    max_in_flight: int = 4

    @staticmethod
    def from_json(data: dict) -> "ExternalConfig":
        return ExternalConfig(**data)


def _http_transport(config: ExternalConfig):
    import requests

    def post(payload: dict) -> dict:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(config.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        response = requests.post(
            config.base_url.rstrip("/") + "/chat/completions",
            json=payload,
            headers=headers,
            timeout=config.timeout_s,
        )
        response.raise_for_status()
        return response.json()

    return post


class ExternalToolAgent(Agent):
    """Bridges the tool protocol to a chat-completions endpoint with a
    global in-flight cap, timeouts, and exponential backoff."""

    name = "external"
    oracle_family = False

    _gate: threading.Semaphore | None = None
    _gate_lock = threading.Lock()

    def __init__(self, config: ExternalConfig, transport=None, max_turns: int = 64):
        self.config = config
        self.transport = transport or _http_transport(config)
        self.max_turns = max_turns
        with ExternalToolAgent._gate_lock:
            if ExternalToolAgent._gate is None:
                ExternalToolAgent._gate = threading.Semaphore(config.max_in_flight)

    def _call_model(self, messages: list[dict]) -> dict:
        payload = {
            "model": self.config.model,
            "messages": messages,
            "tools": TOOLS,
            "tool_choice": "auto",
        }
        delay = self.config.backoff_s
        last_error: Exception | None = None
        for _ in range(self.config.max_retries):
            try:
                assert ExternalToolAgent._gate is not None
                with ExternalToolAgent._gate:
                    return self.transport(payload)
            except Exception as exc:
                last_error = exc
                time.sleep(delay)
                delay *= 2
        raise ProtocolViolation(f"external endpoint failed: {last_error}")

    def run(self, episode: Episode, public: dict, sealed: dict | None = None) -> None:
        messages = [
            {"role": "system", "content": SYSTEM_PROMPT},
            {"role": "user", "content": public["prompt"]},
        ]
        for _ in range(self.max_turns):
            reply = self._call_model(messages)["choices"][0]["message"]
            messages.append(reply)
            calls = reply.get("tool_calls") or []
            if not calls:
                continue  # plain text turn; keep prompting for tools
            for call in calls:
                name = call["function"]["name"]
                args = json.loads(call["function"]["arguments"] or "{}")
                if name == "search":
                    result = episode.search(args["tokens"], int(args.get("k", 10)))
                elif name == "open":
                    result = episode.open(args["page_id"])
                elif name == "finish":
                    answer = (
                        None if args.get("answer") is None
                        else answer_from_json(args["answer"])
                    )
                    episode.finish(answer, trace_from_json(args["trace"]))
                    return
                else:
                    raise ProtocolViolation(f"unknown tool {name!r}")
                messages.append(
                    {
                        "role": "tool",
                        "tool_call_id": call.get("id", name),
                        "content": json.dumps(result),
                    }
                )
        raise ProtocolViolation("external agent never called finish")
