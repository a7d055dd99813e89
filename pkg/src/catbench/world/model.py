"""Data model for the synthetic web: entities, facts, pages, the panel.

Pages render to deterministic pipe-separated text and parse back to the
exact fact objects they were built from; that inverse pair is what makes
text-level scans (uniqueness certificates, phantom isolation) authoritative.
All numeric values are scaled integers with 4 implied decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..errors import MalformedGraph, UnknownPage
from ..exact import day_to_iso, iso_to_day, render_scaled

SCHEMA_VERSION = "catbench/world@1"

ENTITY_KINDS = ("fund", "manager", "company", "person", "library", "report")
PANEL_METRICS = ("nav", "growth_rate", "shares", "cumulative_value", "contributions")


@dataclass(frozen=True)
class TimelineEntry:
    attr: str
    value: str
    day_from: int
    day_to: int  # inclusive


@dataclass(frozen=True)
class Entity:
    code: str  # rigid unique id, e.g. FND-007
    kind: str
    name: str  # display name; collisions allowed
    timeline: tuple[TimelineEntry, ...] = ()

    def __post_init__(self):
        if self.kind not in ENTITY_KINDS:
            raise MalformedGraph(f"unknown entity kind {self.kind!r}")
        spans: dict[str, list[tuple[int, int]]] = {}
        for entry in self.timeline:
            for lo, hi in spans.get(entry.attr, []):
                if not (entry.day_to < lo or entry.day_from > hi):
                    raise MalformedGraph(
                        f"{self.code}: overlapping timeline for {entry.attr!r}"
                    )
            spans.setdefault(entry.attr, []).append((entry.day_from, entry.day_to))

    def attribute_at(self, attr: str, day: int) -> str | None:
        for entry in self.timeline:
            if entry.attr == attr and entry.day_from <= day <= entry.day_to:
                return entry.value
        return None

    def attribute_names(self) -> tuple[str, ...]:
        return tuple(sorted({e.attr for e in self.timeline}))


# ---------------------------------------------------------------------------
# Facts


@dataclass(frozen=True)
class Snippet:
    author_code: str  # "" for anonymous filler pages
    text: str


@dataclass(frozen=True)
class AttributeFact:
    entity_code: str
    attr: str
    value: str
    day_from: int
    day_to: int


@dataclass(frozen=True)
class TableFact:
    """One panel slice: every entity's value for one metric on one day,
    rows pre-sorted by value descending then code ascending (a ranking)."""

    metric: str
    day: int
    rows: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class RegulationFact:
    rule_id: str
    scope: str
    fraction: int  # scaled; bound = fraction * reference value / SCALE


@dataclass(frozen=True)
class RiskRecord:
    record_id: str
    fields: tuple[tuple[str, str], ...]  # sorted (key, value) pairs


@dataclass(frozen=True)
class CompatibilityFact:
    library_code: str
    version: str
    requires_code: str
    lo_version: str
    hi_version: str
    release_day: int


@dataclass(frozen=True)
class ReportSection:
    report_code: str
    section: str
    present: bool = True  # absent sections are simply not stored on the page


Fact = Union[
    Snippet,
    AttributeFact,
    TableFact,
    RegulationFact,
    RiskRecord,
    CompatibilityFact,
    ReportSection,
]


def render_fact(fact: Fact) -> str:
    if isinstance(fact, Snippet):
        return f"SNIPPET|{fact.author_code}|{fact.text}"
    if isinstance(fact, AttributeFact):
        return (
            f"ATTR|{fact.entity_code}|{fact.attr}|{fact.value}"
            f"|{day_to_iso(fact.day_from)}|{day_to_iso(fact.day_to)}"
        )
    if isinstance(fact, TableFact):
        cells = ";".join(f"{code}={render_scaled(v)}" for code, v in fact.rows)
        return f"TABLE|{fact.metric}|{day_to_iso(fact.day)}|{cells}"
    if isinstance(fact, RegulationFact):
        return f"REG|{fact.rule_id}|{fact.scope}|{render_scaled(fact.fraction)}"
    if isinstance(fact, RiskRecord):
        cells = ";".join(f"{k}={v}" for k, v in fact.fields)
        return f"RISK|{fact.record_id}|{cells}"
    if isinstance(fact, CompatibilityFact):
        return (
            f"COMPAT|{fact.library_code}|{fact.version}|{fact.requires_code}"
            f"|{fact.lo_version}|{fact.hi_version}|{day_to_iso(fact.release_day)}"
        )
    if isinstance(fact, ReportSection):
        if not fact.present:
            raise MalformedGraph("absent sections are never stored on pages")
        return f"SECTION|{fact.report_code}|{fact.section}|present"
    raise TypeError(f"not a fact: {type(fact).__name__}")


def parse_fact(line: str) -> Fact:
    tag, _, rest = line.partition("|")
    parts = rest.split("|")
    if tag == "SNIPPET":
        return Snippet(parts[0], "|".join(parts[1:]))
    if tag == "ATTR":
        code, attr, value, lo, hi = parts
        return AttributeFact(code, attr, value, iso_to_day(lo), iso_to_day(hi))
    if tag == "TABLE":
        metric, day, cells = parts
        rows = []
        if cells:
            for cell in cells.split(";"):
                code, _, value = cell.partition("=")
                from ..exact import parse_scaled

                rows.append((code, parse_scaled(value)))
        return TableFact(metric, iso_to_day(day), tuple(rows))
    if tag == "REG":
        from ..exact import parse_scaled

        return RegulationFact(parts[0], parts[1], parse_scaled(parts[2]))
    if tag == "RISK":
        fields = []
        if parts[1]:
            for cell in parts[1].split(";"):
                k, _, v = cell.partition("=")
                fields.append((k, v))
        return RiskRecord(parts[0], tuple(fields))
    if tag == "COMPAT":
        lib, ver, req, lo, hi, rel = parts
        return CompatibilityFact(lib, ver, req, lo, hi, iso_to_day(rel))
    if tag == "SECTION":
        return ReportSection(parts[0], parts[1], True)
    raise ValueError(f"unparseable fact line: {line!r}")


# ---------------------------------------------------------------------------
# Pages


@dataclass(frozen=True)
class Page:
    page_id: str
    title: str
    facts: tuple[Fact, ...]
    links: tuple[str, ...]

    def render(self) -> str:
        lines = [f"PAGE|{self.page_id}", f"TITLE|{self.title}"]
        lines.extend(render_fact(f) for f in self.facts)
        lines.append("LINKS|" + ";".join(self.links))
        return "\n".join(lines) + "\n"


def parse_page(text: str) -> Page:
    lines = [ln for ln in text.splitlines() if ln]
    assert lines[0].startswith("PAGE|") and lines[1].startswith("TITLE|")
    page_id = lines[0][5:]
    title = lines[1][6:]
    links_line = lines[-1]
    assert links_line.startswith("LINKS|")
    links = tuple(links_line[6:].split(";")) if links_line[6:] else ()
    facts = tuple(parse_fact(ln) for ln in lines[2:-1])
    return Page(page_id, title, facts, links)


# ---------------------------------------------------------------------------
# Grounding: which canonical (subject, attribute, value) triples a page backs

Triple = tuple[str, str, str]


def _fact_supports(fact: Fact, triple: Triple) -> bool:
    subject, attr, value = triple
    if isinstance(fact, Snippet):
        return bool(fact.author_code) and triple == (fact.author_code, "snippet", fact.text)
    if isinstance(fact, AttributeFact):
        if subject != fact.entity_code:
            return False
        name, _, day = attr.partition("@")
        if name != fact.attr or value != fact.value:
            return False
        if not day:
            return True
        return fact.day_from <= iso_to_day(day) <= fact.day_to
    if isinstance(fact, TableFact):
        name, _, day = attr.partition("@")
        if name != fact.metric or not day or iso_to_day(day) != fact.day:
            return False
        return any(
            code == subject and render_scaled(v) == value for code, v in fact.rows
        )
    if isinstance(fact, RegulationFact):
        return triple in (
            (fact.rule_id, "scope", fact.scope),
            (fact.rule_id, "max_fraction", render_scaled(fact.fraction)),
        )
    if isinstance(fact, RiskRecord):
        joined = ";".join(f"{k}={v}" for k, v in fact.fields)
        if triple == (fact.record_id, "risk_fields", joined):
            return True
        return any(triple == (fact.record_id, k, v) for k, v in fact.fields)
    if isinstance(fact, CompatibilityFact):
        key = f"{fact.library_code}@{fact.version}"
        return triple in (
            (key, "requires", f"{fact.requires_code}[{fact.lo_version},{fact.hi_version}]"),
            (key, "released", day_to_iso(fact.release_day)),
        )
    if isinstance(fact, ReportSection):
        return triple == (fact.report_code, f"section:{fact.section}", "present")
    return False


def page_supports(page: Page, triple: Triple) -> bool:
    """True when a rendered fact (or a whole-page aggregate) backs the triple.

    Aggregates let absence be grounded in something positively on the page:
    the full list of sections or attribute names the page carries.
    """
    if any(_fact_supports(f, triple) for f in page.facts):
        return True
    subject, attr, value = triple
    if attr == "listed_sections":
        names = sorted(
            f.section
            for f in page.facts
            if isinstance(f, ReportSection) and f.report_code == subject
        )
        return bool(names) and value == ";".join(names)
    if attr == "listed_attributes":
        names = sorted(
            {
                f.attr
                for f in page.facts
                if isinstance(f, AttributeFact) and f.entity_code == subject
            }
        )
        return bool(names) and value == ";".join(names)
    return False


# ---------------------------------------------------------------------------
# The world


@dataclass(frozen=True)
class WorldConfig:
    funds: int = 36
    managers: int = 36
    companies: int = 12
    persons: int = 20
    libraries: int = 8
    panel_days: int = 40
    last_day: int = 4000
    panel_density_pct: int = 100
    collision_pairs: int = 3  # same-display-name person pairs
    decoy_pages: int = 25
    phantom_count: int = 10
    seed: int = 0

    def __post_init__(self):
        for name in (
            "funds",
            "managers",
            "companies",
            "persons",
            "libraries",
            "panel_days",
            "collision_pairs",
            "decoy_pages",
            "phantom_count",
        ):
            if getattr(self, name) < 0:
                raise MalformedGraph(f"config count {name} must be nonnegative")
        if self.panel_days > self.last_day:
            raise MalformedGraph("day range must fit below last_day")

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @staticmethod
    def from_json(data: dict) -> "WorldConfig":
        return WorldConfig(**data)


@dataclass(eq=False)
class World:
    """Immutable after generation; hash identity is the content hash."""

    config: WorldConfig
    seed: int
    entities: dict  # code -> Entity
    pages: dict  # page_id -> Page
    panel: dict  # (code, metric, day) -> scaled int
    phantoms: tuple[str, ...]
    content_hash: str = ""
    schema_version: str = SCHEMA_VERSION

    def entity(self, code: str) -> Entity:
        return self.entities[code]

    def entities_of_kind(self, kind: str) -> list[Entity]:
        return [e for code, e in sorted(self.entities.items()) if e.kind == kind]

    def page(self, page_id: str) -> Page:
        if page_id not in self.pages:
            raise UnknownPage(page_id)
        return self.pages[page_id]

    def has_link(self, src: str, dst: str) -> bool:
        page = self.pages.get(src)
        return page is not None and dst in page.links

    def panel_days_range(self) -> range:
        first = self.config.last_day - self.config.panel_days + 1
        return range(first, self.config.last_day + 1)

    def body_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "entities": [
                [e.code, e.kind, e.name, [[t.attr, t.value, t.day_from, t.day_to] for t in e.timeline]]
                for _, e in sorted(self.entities.items())
            ],
            "pages": [
                [p.page_id, p.title, [render_fact(f) for f in p.facts], list(p.links)]
                for _, p in sorted(self.pages.items())
            ],
            "panel": [
                [code, metric, day, value]
                for (code, metric, day), value in sorted(self.panel.items())
            ],
            "phantoms": list(self.phantoms),
            "schema_version": self.schema_version,
            "seed": self.seed,
        }


def world_from_body(body: dict, content_hash: str) -> World:
    entities = {
        code: Entity(
            code,
            kind,
            name,
            tuple(TimelineEntry(a, v, lo, hi) for a, v, lo, hi in timeline),
        )
        for code, kind, name, timeline in body["entities"]
    }
    pages = {
        pid: Page(pid, title, tuple(parse_fact(ln) for ln in facts), tuple(links))
        for pid, title, facts, links in body["pages"]
    }
    panel = {
        (code, metric, day): value for code, metric, day, value in body["panel"]
    }
    return World(
        config=WorldConfig.from_json(body["config"]),
        seed=body["seed"],
        entities=entities,
        pages=pages,
        panel=panel,
        phantoms=tuple(body["phantoms"]),
        content_hash=content_hash,
        schema_version=body["schema_version"],
    )
