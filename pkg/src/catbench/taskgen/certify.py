"""Exhaustive ground-truth certification.

Every emitted task is re-checked against the world with scans written
independently of the generators: full-text substring sweeps, whole-registry
matching, and filter/sort/aggregate recomputation straight off the panel.
Kinds 1-12 must have exactly one satisfying answer; kinds 13-15 must match
their designed absence or asymmetry exactly.
"""

from __future__ import annotations

import time
from fractions import Fraction

from ..errors import AmbiguousTask
from ..exact import SCALE, iso_to_day, parse_scaled, render_fraction_decimal
from ..world import World
from ..world.generate import REGULATIONS, SECTION_PROBE
from ..world.model import CompatibilityFact, ReportSection, RiskRecord
from ..world.ops import scan_text
from .answers import NullField, OrderedList, Refutation, Scalar, Stat
from .model import Task, UniquenessCert


def _fail(message: str, candidates=()) -> None:
    raise AmbiguousTask(message, candidates)


def _expect_one(candidates: list, space: int, what: str) -> UniquenessCert:
    if len(candidates) != 1:
        _fail(f"{what}: expected 1 candidate, found {len(candidates)}", candidates)
    return UniquenessCert(space, 1, 0.0)


def _fund_cells(world: World, metric: str, day: int) -> dict[str, int]:
    return {
        code: value
        for (code, m, d), value in world.panel.items()
        if m == metric and d == day and code.startswith("FND-")
    }


def _cert_1(world: World, task: Task) -> UniquenessCert:
    hits = scan_text(world, task.query["snippet"])
    return _expect_one(hits, len(world.pages), "snippet fingerprint pages")


def _cert_2(world: World, task: Task) -> UniquenessCert:
    q = task.query
    t1, t2 = iso_to_day(q["nav_day"]), iso_to_day(q["shares_day"])
    v1, v2 = parse_scaled(q["nav"]), parse_scaled(q["shares"])
    matches = [
        e.code
        for e in world.entities_of_kind("fund")
        if world.panel.get((e.code, "nav", t1)) == v1
        and world.panel.get((e.code, "shares", t2)) == v2
    ]
    cert = _expect_one(matches, len(world.entities_of_kind("fund")), "constraint pair")
    expected = Fraction(
        parse_scaled(world.entity(matches[0]).attribute_at("advisor_registry", t1)),
        SCALE,
    )
    if not isinstance(task.answer, Scalar) or task.answer.value != expected:
        _fail("sealed answer disagrees with the matched fund's registry value")
    return cert


def _cert_3(world: World, task: Task) -> UniquenessCert:
    q = task.query
    day = iso_to_day(q["day"])
    target = tuple(q["ranks"][m] for m in sorted(q["ranks"]))
    managers = world.entities_of_kind("manager")
    matches = []
    for manager in managers:
        for fund in world.entities_of_kind("fund"):
            if fund.attribute_at("managed_by", day) != manager.code:
                continue
            vector = []
            for metric in sorted(q["ranks"]):
                cells = _fund_cells(world, metric, day)
                order = sorted(cells, key=lambda c: (-cells[c], c))
                if fund.code not in order:
                    break
                vector.append(order.index(fund.code) + 1)
            if tuple(vector) == target:
                matches.append(manager.code)
                break
    cert = _expect_one(matches, len(managers), "rank-vector managers")
    expected = world.entity(matches[0]).attribute_at("employer", iso_to_day(q["ask_day"]))
    if task.answer.code != expected:
        _fail("sealed employer disagrees with the matched manager's timeline")
    return cert


def _cert_4(world: World, task: Task) -> UniquenessCert:
    q = task.query
    day = iso_to_day(q["day"])
    cells = _fund_cells(world, q["metric"], day)
    order = sorted(cells, key=lambda c: (-cells[c], c))
    fund = order[q["rank"] - 1]
    base = world.panel[(fund, "nav", day)]
    expected = Fraction(base + parse_scaled(q["delta"]), SCALE)
    if task.answer.value != expected:
        _fail("sealed scalar disagrees with rank-resolved nav + delta")
    return UniquenessCert(len(order), 1, 0.0)


def _cert_5(world: World, task: Task) -> UniquenessCert:
    code = task.query["code"]
    matches = [e.code for e in world.entities.values() if e.code == code]
    cert = _expect_one(matches, len(world.entities), "rigid code")
    target = world.entity(code)
    same_name = [
        e.code for e in world.entities.values()
        if e.name == target.name and e.code != code and e.kind == target.kind
    ]
    if not same_name:
        _fail("no same-name distractor exists for the target")
    expected = Fraction(parse_scaled(target.attribute_at("birth_year", 0)), SCALE)
    if task.answer.value != expected:
        _fail("sealed birth year disagrees with the target profile")
    return cert


def _cert_6(world: World, task: Task) -> UniquenessCert:
    q = task.query
    day = iso_to_day(q["day"])
    units = Fraction(parse_scaled(q["units"]), SCALE)
    shares = world.panel[(q["fund"], "shares", day)]
    violated = []
    for rule_id, scope, fraction in REGULATIONS:
        if f"reg-{rule_id}" not in world.pages:
            continue
        if scope != "order_units_vs_shares":
            continue  # the request is an order; other scopes never bind it
        bound = Fraction(fraction * shares, SCALE * SCALE)
        if units > bound:
            violated.append((rule_id, bound))
    cert = _expect_one(violated, len(REGULATIONS), "violated order rules")
    rule_id, bound = violated[0]
    witness = f"{rule_id}|{q['fund']}|{render_fraction_decimal(bound)}"
    if not isinstance(task.answer, Refutation) or task.answer.witness != witness:
        _fail(f"sealed witness {task.answer.witness!r} != computed {witness!r}")
    return cert


def _cert_7(world: World, task: Task) -> UniquenessCert:
    q = task.query
    matches = []
    records = 0
    for page in world.pages.values():
        for fact in page.facts:
            if isinstance(fact, RiskRecord):
                records += 1
                fields = dict(fact.fields)
                if (
                    fields.get("surname") == q["surname"]
                    and fields.get("idfrag") == q["idfrag"]
                    and fields.get("region") == q["region"]
                ):
                    matches.append(fact.record_id)
    cert = _expect_one(matches, records, "matching risk records")
    if task.answer.witness != matches[0]:
        _fail("sealed record id disagrees with the registry match")
    return cert


def _cert_8(world: World, task: Task) -> UniquenessCert:
    from ..world.generate import version_key

    installs = []
    for iso, lib_code, _name in task.query["installs"]:
        day = iso_to_day(iso)
        facts = [
            f
            for f in world.pages[f"lib-{lib_code}"].facts
            if isinstance(f, CompatibilityFact) and f.release_day <= day
        ]
        latest = max(facts, key=lambda f: version_key(f.version))
        installs.append(latest)
    conflicts = []
    for i in range(len(installs)):
        for j in range(i + 1, len(installs)):
            a, b = installs[i], installs[j]
            disjoint = version_key(a.hi_version) < version_key(b.lo_version) or (
                version_key(b.hi_version) < version_key(a.lo_version)
            )
            if disjoint:
                conflicts.append(
                    "+".join(
                        sorted(
                            (f"{a.library_code}@{a.version}", f"{b.library_code}@{b.version}")
                        )
                    )
                )
    pairs = len(installs) * (len(installs) - 1) // 2
    cert = _expect_one(conflicts, pairs, "mutually exclusive install pairs")
    if task.answer.witness != conflicts[0]:
        _fail("sealed conflict pair disagrees with the recomputed one")
    return cert


def _cert_9(world: World, task: Task) -> UniquenessCert:
    q = task.query
    day = iso_to_day(q["rank_day"])
    cells = _fund_cells(world, q["metric"], day)
    order = sorted(cells, key=lambda c: (-cells[c], c))
    matches = [order[q["rank"] - 1]]
    manager = world.entity(matches[0]).attribute_at(
        "managed_by", iso_to_day(q["ask_day"])
    )
    if manager is None or task.answer.code != manager:
        _fail("sealed manager disagrees with the day-after timeline")
    return UniquenessCert(len(order), 1, 0.0)


def _cert_10(world: World, task: Task) -> UniquenessCert:
    q = task.query
    day = iso_to_day(q["day"])
    lo, hi = parse_scaled(q["lo"]), parse_scaled(q["hi"])
    cells = _fund_cells(world, q["metric"], day)
    members = [(code, v) for code, v in cells.items() if lo <= v <= hi]
    members.sort(key=lambda row: (-row[1], row[0]))
    expected = tuple(code for code, _ in members)
    if not 5 <= len(expected) <= 15:
        _fail(f"interval selects {len(expected)} funds, outside 5..15")
    if not isinstance(task.answer, OrderedList) or task.answer.codes != expected:
        _fail("sealed ordering disagrees with filter-then-sort recomputation")
    boundary_values = {v for _, v in members}
    if lo not in boundary_values or hi not in boundary_values:
        _fail("interval boundaries must be attained by member funds")
    return UniquenessCert(len(cells), 1, 0.0)


def _oracle_stat(kind: str, values: list[int]) -> Fraction:
    # definition-level recomputation, kept separate from the generators
    n = len(values)
    if kind == "range":
        return Fraction(max(values) - min(values), SCALE)
    total = sum(values)
    if kind == "mean":
        return Fraction(total, n * SCALE)
    acc = Fraction(0)
    for v in values:
        acc += (Fraction(v, SCALE) - Fraction(total, n * SCALE)) ** 2
    return acc / n


def _cert_11(world: World, task: Task) -> UniquenessCert:
    q = task.query
    day = iso_to_day(q["day"])
    cells = _fund_cells(world, q["rank_metric"], day)
    order = sorted(cells, key=lambda c: (-cells[c], c))[: q["k"]]
    values = [world.panel[(code, q["stat_metric"], day)] for code in order]
    expected = _oracle_stat(q["stat"], values)
    if not isinstance(task.answer, Stat) or task.answer.value != expected:
        _fail("sealed statistic disagrees with panel recomputation")
    return UniquenessCert(len(cells), 1, 0.0)


def _cert_12(world: World, task: Task) -> UniquenessCert:
    q = task.query
    rank_day = iso_to_day(q["rank_day"])
    cells = _fund_cells(world, q["rank_metric"], rank_day)
    order = sorted(cells, key=lambda c: (-cells[c], c))
    fund = order[q["rank"] - 1]
    start, end = (iso_to_day(d) for d in q["window"])
    values = [
        world.panel[(fund, q["stat_metric"], d)] for d in range(start, end + 1)
    ]
    expected = _oracle_stat(q["stat"], values)
    if not isinstance(task.answer, Stat) or task.answer.value != expected:
        _fail("sealed statistic disagrees with window recomputation")
    return UniquenessCert(len(order), 1, 0.0)


def _cert_13(world: World, task: Task) -> UniquenessCert:
    q = task.query
    if not isinstance(task.answer, NullField):
        _fail("kind 13 must seal a null-field table")
    for company, sealed_value in task.answer.cells:
        page = world.pages[f"rq1-{company}"]
        found = None
        for fact in page.facts:
            if getattr(fact, "attr", None) == q["field"]:
                found = fact.value
        if found != sealed_value:
            _fail(f"designed cell for {company}: page says {found!r}, sealed {sealed_value!r}")
    missing = [c for c, v in task.answer.cells if v is None]
    present = [c for c, v in task.answer.cells if v is not None]
    if not missing or not present:
        _fail("designed table must mix null and present cells")
    return UniquenessCert(len(task.answer.cells), 1, 0.0)


def _cert_14(world: World, task: Task) -> UniquenessCert:
    title = task.query["title"]
    hits = scan_text(world, title)
    if hits:
        _fail(f"phantom title occurs on pages {hits}", hits)
    if title not in world.phantoms:
        _fail("probed title is not in the phantom registry")
    if task.answer != Refutation("phantom", title):
        _fail("sealed answer must refute the phantom by title")
    return UniquenessCert(len(world.pages), 1, 0.0)


def _cert_15(world: World, task: Task) -> UniquenessCert:
    section = task.query["section"]
    titles = task.query["reports"]
    holders = []
    for title in titles:
        report = next(
            e for e in world.entities.values() if e.kind == "report" and e.name == title
        )
        idx = int(report.code.split("-")[2])
        page = world.pages[f"ann-CMP-{idx:03d}"]
        if any(
            isinstance(f, ReportSection) and f.section == section for f in page.facts
        ):
            holders.append(report.code)
    if len(holders) > 1:
        _fail("probed section present on both sides", holders)
    witness = holders[0] if holders else "neither"
    if task.answer != Refutation("asymmetric-feature", witness):
        _fail(f"sealed witness disagrees with the presence scan ({witness!r})")
    return UniquenessCert(len(titles), 1, 0.0)


_CERTIFIERS = {
    1: _cert_1,
    2: _cert_2,
    3: _cert_3,
    4: _cert_4,
    5: _cert_5,
    6: _cert_6,
    7: _cert_7,
    8: _cert_8,
    9: _cert_9,
    10: _cert_10,
    11: _cert_11,
    12: _cert_12,
    13: _cert_13,
    14: _cert_14,
    15: _cert_15,
}


def certify_uniqueness(world: World, task: Task) -> UniquenessCert:
    started = time.perf_counter()
    cert = _CERTIFIERS[task.kind](world, task)
    return UniquenessCert(cert.candidate_space, cert.satisfying, time.perf_counter() - started)
