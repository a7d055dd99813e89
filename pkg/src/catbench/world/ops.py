"""Read-only world operations: search, page access, panel lookups.

The search index is a flat bag-of-tokens ranker on purpose: scoring is the
count of distinct query tokens present on a page, ties break by page id, and
no numeric filtering or metric ordering can be expressed through it.
"""

from __future__ import annotations

import re
from pathlib import Path

from .. import jsonio
from ..errors import UnknownEntityOrMetric, UnknownPage
from ..fincat import DirectedMultigraph, Edge, FreeCategory, free_category
from .model import SCHEMA_VERSION, Page, World, world_from_body

_TOKEN_RE = re.compile(r"[a-z0-9.\-]+")


def tokenize(text: str) -> list[str]:
    tokens = []
    for raw in _TOKEN_RE.findall(text.lower()):
        token = raw.strip(".-")
        if token:
            tokens.append(token)
    return tokens


_INDEX_CACHE: dict[int, dict[str, frozenset]] = {}


def _page_tokens(world: World) -> dict[str, frozenset]:
    cached = _INDEX_CACHE.get(id(world))
    if cached is None:
        cached = {
            pid: frozenset(tokenize(page.render()))
            for pid, page in world.pages.items()
        }
        _INDEX_CACHE.clear()  # one world at a time is the common case
        _INDEX_CACHE[id(world)] = cached
    return cached


def search(world: World, query: list[str], k: int = 10) -> list[str]:
    """Top-k page ids by distinct-token overlap, ties by page id ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    wanted = {t.strip(".-") for t in (q.lower() for q in query)} - {""}
    if not wanted:
        return []
    scored = []
    for pid, tokens in _page_tokens(world).items():
        score = len(wanted & tokens)
        if score:
            scored.append((-score, pid))
    scored.sort()
    return [pid for _, pid in scored[:k]]


def search_scores(world: World, query: list[str]) -> dict[str, int]:
    wanted = {t.strip(".-") for t in (q.lower() for q in query)} - {""}
    return {
        pid: len(wanted & tokens)
        for pid, tokens in _page_tokens(world).items()
        if wanted & tokens
    }


def open_page(world: World, page_id: str) -> Page:
    return world.page(page_id)


def panel_query(world: World, code: str, metric: str, days) -> list[tuple[int, int]]:
    """Exact scaled-integer series; an oracle-side call, never a tool call."""
    if code not in world.entities:
        raise UnknownEntityOrMetric(f"unknown entity {code!r}")
    known_metrics = {m for _, m, _ in world.panel}
    if metric not in known_metrics:
        raise UnknownEntityOrMetric(f"unknown metric {metric!r}")
    out = []
    for day in days:
        value = world.panel.get((code, metric, day))
        if value is not None:
            out.append((day, value))
    return out


def subgraph_inclusion(a, b) -> bool:
    return set(a) <= set(b)


def link_graph(world: World) -> DirectedMultigraph:
    edges = []
    for pid, page in sorted(world.pages.items()):
        for i, target in enumerate(page.links):
            if target not in world.pages:
                raise UnknownPage(f"{pid} links to missing page {target!r}")
            edges.append(Edge(f"{pid}->{target}#{i}", pid, target))
    return DirectedMultigraph(tuple(sorted(world.pages)), tuple(edges))


def web_category(world: World) -> FreeCategory:
    """The free category on the hyperlink graph."""
    return free_category(link_graph(world))


def is_link_path(world: World, path: list[str]) -> bool:
    """True when consecutive page ids are joined by hyperlinks."""
    if not path:
        return False
    if any(pid not in world.pages for pid in path):
        return False
    return all(world.has_link(a, b) for a, b in zip(path, path[1:]))


def scan_text(world: World, needle: str) -> list[str]:
    """Page ids whose rendered text contains the needle, case-insensitive."""
    needle = needle.lower()
    return [
        pid
        for pid, page in sorted(world.pages.items())
        if needle in page.render().lower()
    ]


def phantom_probe(world: World, name: str) -> dict:
    """Yoneda-style probe: every page mentioning the name, plus the hom
    neighborhoods.  Phantoms have no page at all, so everything is empty."""
    mentions = scan_text(world, name)
    incoming = []
    outgoing = []
    if name in world.pages:
        outgoing = list(world.pages[name].links)
        incoming = [
            pid for pid, page in sorted(world.pages.items()) if name in page.links
        ]
    return {"mentions": mentions, "incoming": incoming, "outgoing": outgoing}


def save_world(world: World, path) -> None:
    jsonio.dump_versioned(path, SCHEMA_VERSION, world.body_json(), hashed=True)


def load_world(path) -> World:
    body = jsonio.load_versioned(path, SCHEMA_VERSION)
    return world_from_body(body, jsonio.content_hash(body))
