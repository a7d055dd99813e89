"""Generators for the fifteen task paradigms.

Each builder is a pure function of (world, rng, ids); it selects planted
structures, seals the certified answer, and writes a replayable solution
script (decomposition nodes, cumulative retrieval views, grounded claims,
report) for the positive-control agent.  Builders raise ``_Retry`` on an
unlucky draw; ``gen_task`` reseeds up to a cap and certifies every result
before returning it.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import AmbiguousTask, InfeasibleWorld
from ..exact import SCALE, day_to_iso, parse_scaled, render_fraction_decimal, render_scaled
from ..world import World
from ..world.generate import FUND_METRICS, SECTION_PROBE
from ..world.model import CompatibilityFact, ReportSection
from ..world.ops import tokenize
from .answers import Answer, EntityRef, NullField, OrderedList, Refutation, Scalar, Stat
from .certify import certify_uniqueness
from .model import OracleClaim, OracleRetrieval, OracleScript, Task
from .prompts import render_query
from .weights import axis_of_kind, task_weights

RETRY_CAP = 64


class _Retry(Exception):
    """Internal: the seeded draw produced an unusable selection."""


def attr_fraction(value: str) -> Fraction:
    """Attribute strings are plain or 4-decimal numbers; parse exactly."""
    return Fraction(parse_scaled(value), SCALE)


def ranking(world: World, metric: str, day: int) -> list[tuple[str, int]]:
    rows = [
        (code, value)
        for (code, m, d), value in world.panel.items()
        if m == metric and d == day and code.startswith("FND-")
    ]
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows


def managed_by(world: World, fund_code: str, day: int) -> str | None:
    return world.entity(fund_code).attribute_at("managed_by", day)


def _script(
    queries: tuple[tuple[str, ...], ...],
    views: tuple[tuple[str, ...], ...],
    claims: tuple[OracleClaim, ...],
    report: tuple[str, str, str],
    contributing: tuple[str, ...],
) -> OracleScript:
    nodes = tuple(f"q{i}" for i in range(len(views)))
    edges = tuple((nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1))
    retrievals = tuple(
        OracleRetrieval(nodes[i], queries[i], views[i]) for i in range(len(nodes))
    )
    return OracleScript(
        nodes=nodes,
        edges=edges,
        retrievals=retrievals,
        chains=(nodes,) if len(nodes) >= 3 else (),
        claims=claims,
        report=report,
        report_contributing=contributing,
    )


def _title_query(world: World, page_id: str) -> tuple[str, ...]:
    return tuple(tokenize(world.pages[page_id].title))


def _three_views(chain: tuple[str, ...], extra=()) -> tuple[tuple[str, ...], ...]:
    """Cumulative views along a three-page chain; extras join the last view."""
    a, b, c = chain
    return ((a,), (a, b), tuple(dict.fromkeys((a, b, c) + tuple(extra))))


def _finish(world, task_id, kind, seed, query, answer, chain, script, meta=None):
    pages = set(chain)
    for r in script.retrievals:
        pages.update(r.pages)
    for c in script.claims:
        pages.update(c.cited_path)
    s_weight, r_weight = task_weights(kind)
    return Task(
        task_id=task_id,
        kind=kind,
        axis=axis_of_kind(kind),
        prompt=render_query(kind, query),
        query=query,
        answer=answer,
        evidence_pages=tuple(sorted(pages)),
        evidence_chain=chain,
        s_weight=s_weight,
        r_weight=r_weight,
        seed=seed,
        script=script,
        meta=meta or {},
    )


# ---------------------------------------------------------------------------
# Type I: linear chains


def _gen_1(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    persons = world.entities_of_kind("person")
    if not persons or not world.panel:
        raise InfeasibleWorld("kind 1 needs persons with activity logs")
    idx = rng.randrange(len(persons))
    person = persons[idx]
    doc_id = f"doc-{idx:03d}"
    if doc_id not in world.pages:
        raise InfeasibleWorld("kind 1 needs authored snippet documents")
    day = rng.choice(list(world.panel_days_range()))
    value = world.panel.get((person.code, "contributions", day))
    if value is None:
        raise _Retry("no contribution cell that day")
    snippet = world.pages[doc_id].facts[0].text
    iso = day_to_iso(day)
    query = {"snippet": snippet, "day": iso}

    from ..world.generate import COMMON_TOKENS
    from ..world.ops import search_scores

    commons = [t for t in tokenize(snippet) if t in COMMON_TOKENS][:6]
    scores = search_scores(world, commons)
    target_score = scores.get(doc_id, 0)
    collisions = sum(
        1 for pid, s in scores.items() if pid.startswith("decoy-") and s >= target_score
    )

    chain = (doc_id, f"prs-{person.code}", f"act-{person.code}")
    claims = (
        OracleClaim("c1", (person.code, "snippet", snippet), (), (doc_id,)),
        OracleClaim(
            "c2",
            (person.code, f"contributions@{iso}", render_scaled(value)),
            ("c1",),
            chain,
        ),
        OracleClaim(
            "c3",
            (person.code, f"contributions@{iso}", render_scaled(value)),
            ("c1",),
            (),
            ("c1", "c2"),
        ),
    )
    script = _script(
        (tuple(tokenize(snippet)), _title_query(world, chain[1]), _title_query(world, chain[2])),
        _three_views(chain),
        claims,
        claims[1].conclusion,
        ("c1", "c2"),
    )
    return _finish(
        world, task_id, 1, seed, query, Scalar(Fraction(value, SCALE)), chain, script,
        meta={"collision_count": collisions, "common_query": commons},
    )


def _gen_2(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    funds = world.entities_of_kind("fund")
    if not funds:
        raise InfeasibleWorld("kind 2 needs funds with disclosure pages")
    fund = funds[rng.randrange(len(funds))]
    days = list(world.panel_days_range())
    t1, t2 = rng.choice(days), rng.choice(days)
    if t1 == t2:
        raise _Retry("temporal constraints must use two windows")
    v1 = world.panel.get((fund.code, "nav", t1))
    v2 = world.panel.get((fund.code, "shares", t2))
    if v1 is None or v2 is None:
        raise _Retry("panel gap under the constraint pair")
    registry = fund.attribute_at("advisor_registry", t1)
    iso1, iso2 = day_to_iso(t1), day_to_iso(t2)
    query = {
        "nav": render_scaled(v1),
        "nav_day": iso1,
        "shares": render_scaled(v2),
        "shares_day": iso2,
        "ask": "advisor_registry",
    }
    chain = ("idx-funds", f"fund-{fund.code}", f"disc-{fund.code}")
    disc = chain[2]
    claims = (
        OracleClaim("c1", (fund.code, f"nav@{iso1}", render_scaled(v1)), (), (disc,)),
        OracleClaim(
            "c2", (fund.code, f"shares@{iso2}", render_scaled(v2)), ("c1",), (disc,)
        ),
        OracleClaim(
            "c3", (fund.code, "advisor_registry", registry), ("c2",), (disc,)
        ),
        OracleClaim("c4", (fund.code, "advisor_registry", registry), ("c1",), (), ("c1", "c2", "c3")),
    )
    script = _script(
        ((query["nav"],), _title_query(world, chain[1]), _title_query(world, disc)),
        _three_views(chain),
        claims,
        claims[2].conclusion,
        ("c1", "c2", "c3"),
    )
    return _finish(
        world, task_id, 2, seed, query, Scalar(attr_fraction(registry)), chain, script
    )


def _rank_vector(world: World, fund_code: str, day: int) -> tuple[int, ...] | None:
    vector = []
    for metric in FUND_METRICS:
        rows = ranking(world, metric, day)
        codes = [code for code, _ in rows]
        if fund_code not in codes:
            return None
        vector.append(codes.index(fund_code) + 1)
    return tuple(vector)


def _gen_3(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    funds = world.entities_of_kind("fund")
    if len(funds) < 9:
        raise InfeasibleWorld("kind 3 needs enough funds for tercile bands")
    days = list(world.panel_days_range())
    rng.shuffle(days)
    n = len(funds)
    lo, hi = n // 3, 2 * n // 3
    for day in days:
        candidates = []
        for fund in funds:
            vector = _rank_vector(world, fund.code, day)
            if vector and all(lo < r <= hi for r in vector):
                candidates.append((fund, vector))
        if not candidates:
            continue
        fund, vector = candidates[rng.randrange(len(candidates))]
        manager_code = managed_by(world, fund.code, day)
        if manager_code is None:
            continue
        past = day - 3650
        employer = world.entity(manager_code).attribute_at("employer", past)
        if employer is None:
            continue
        iso, iso_past = day_to_iso(day), day_to_iso(past)
        query = {
            "day": iso,
            "ranks": {m: vector[i] for i, m in enumerate(FUND_METRICS)},
            "ask": "employer",
            "ask_day": iso_past,
        }
        chain = (f"rank-nav-{iso}", f"fund-{fund.code}", f"mgr-{manager_code}")
        nav_value = world.panel[(fund.code, "nav", day)]
        claims = (
            OracleClaim(
                "c1", (fund.code, f"nav@{iso}", render_scaled(nav_value)), (), (chain[0],)
            ),
            OracleClaim(
                "c2",
                (fund.code, f"managed_by@{iso}", manager_code),
                ("c1",),
                (chain[0], chain[1]),
            ),
            OracleClaim(
                "c3",
                (manager_code, f"employer@{iso_past}", employer),
                ("c2",),
                (chain[1], chain[2]),
            ),
            OracleClaim(
                "c4",
                (manager_code, f"employer@{iso_past}", employer),
                ("c1",),
                (),
                ("c1", "c2", "c3"),
            ),
        )
        script = _script(
            (
                _title_query(world, chain[0]),
                _title_query(world, chain[1]),
                _title_query(world, chain[2]),
            ),
            _three_views(chain, extra=(f"cmp-{employer}",) + tuple(
                f"rank-{m}-{iso}" for m in FUND_METRICS
            )),
            claims,
            claims[2].conclusion,
            ("c1", "c2", "c3"),
        )
        return _finish(world, task_id, 3, seed, query, EntityRef(employer), chain, script)
    raise _Retry("no fund with an all-mid-tercile rank vector this shuffle")


# ---------------------------------------------------------------------------
# Type II: multi-source intersections


def _gen_4(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    metric = "cumulative_value"
    days = list(world.panel_days_range())
    day = rng.choice(days)
    rows = ranking(world, metric, day)
    if len(rows) < 6:
        raise InfeasibleWorld("kind 4 needs a populated ranking")
    rank = rng.randrange(len(rows) // 2, len(rows) - 1) + 1  # long-tail, 1-based
    fund_code = rows[rank - 1][0]
    base = world.panel.get((fund_code, "nav", day))
    if base is None:
        raise _Retry("target fund lacks nav that day")
    delta = (rng.randrange(1, 20_000)) * rng.choice((-1, 1))
    iso = day_to_iso(day)
    query = {
        "metric": metric,
        "day": iso,
        "rank": rank,
        "delta": render_scaled(delta),
    }
    chain = (f"rank-{metric}-{iso}", f"fund-{fund_code}", f"disc-{fund_code}")
    claims = (
        OracleClaim(
            "c1",
            (fund_code, f"{metric}@{iso}", render_scaled(rows[rank - 1][1])),
            (),
            (chain[0],),
        ),
        OracleClaim(
            "c2", (fund_code, f"nav@{iso}", render_scaled(base)), ("c1",), chain
        ),
        OracleClaim(
            "c3",
            (fund_code, f"nav_plus_delta@{iso}", render_scaled(base + delta)),
            ("c2",),
        ),
        OracleClaim(
            "c4",
            (fund_code, f"nav@{iso}", render_scaled(base)),
            ("c1",),
            (),
            ("c1", "c2"),
        ),
    )
    script = _script(
        (
            _title_query(world, chain[0]),
            _title_query(world, chain[1]),
            _title_query(world, chain[2]),
        ),
        _three_views(chain),
        claims,
        claims[2].conclusion,
        ("c1", "c2", "c3"),
    )
    return _finish(
        world, task_id, 4, seed, query,
        Scalar(Fraction(base + delta, SCALE)), chain, script,
    )


def _page_in_degree(world: World, page_id: str) -> int:
    return sum(1 for p in world.pages.values() if page_id in p.links)


def _gen_5(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    pairs = world.config.collision_pairs
    if pairs < 1:
        raise InfeasibleWorld("kind 5 needs designed display-name collisions")
    k = rng.randrange(pairs)
    persons = world.entities_of_kind("person")
    target, distractor = persons[2 * k], persons[2 * k + 1]
    if _page_in_degree(world, f"prs-{distractor.code}") <= _page_in_degree(
        world, f"prs-{target.code}"
    ):
        raise InfeasibleWorld("collision distractor must out-degree the target")
    birth = target.attribute_at("birth_year", 0)
    query = {"name": target.name, "code": target.code, "ask": "birth_year"}
    chain = ("idx-root", "idx-persons", f"prs-{target.code}")
    claims = (
        OracleClaim("c1", (target.code, "birth_year", birth), (), (chain[2],)),
        OracleClaim("c2", (target.code, "resolved_birth_year", birth), ("c1",)),
        OracleClaim("c3", (target.code, "resolved_birth_year", birth), ("c1",), (), ("c1", "c2")),
    )
    script = _script(
        ((target.code.lower(),), _title_query(world, chain[1]), _title_query(world, chain[2])),
        _three_views(chain, extra=(f"prs-{distractor.code}",)),
        claims,
        claims[1].conclusion,
        ("c1", "c2"),
    )
    return _finish(
        world, task_id, 5, seed, query, Scalar(attr_fraction(birth)), chain, script,
        meta={"distractor": distractor.code},
    )


def order_bound(fraction_scaled: int, shares_scaled: int) -> Fraction:
    """Units allowed by a fraction-of-shares rule, exactly."""
    return Fraction(fraction_scaled * shares_scaled, SCALE * SCALE)


def _gen_6(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    if "reg-REG-001" not in world.pages:
        raise InfeasibleWorld("kind 6 needs the order-limit regulation page")
    funds = world.entities_of_kind("fund")
    fund = funds[rng.randrange(len(funds))]
    day = rng.choice(list(world.panel_days_range()))
    shares = world.panel.get((fund.code, "shares", day))
    if shares is None:
        raise _Retry("no shares value that day")
    rule = world.pages["reg-REG-001"].facts[0]
    bound = order_bound(rule.fraction, shares)
    factor = Fraction(12 + rng.randrange(9), 10)  # 1.2x .. 2.0x the limit
    units_scaled = int(bound * factor * SCALE) + 1
    iso = day_to_iso(day)
    bound_str = render_fraction_decimal(bound)
    witness = f"REG-001|{fund.code}|{bound_str}"
    query = {"fund": fund.code, "day": iso, "units": render_scaled(units_scaled)}
    chain = ("idx-root", "idx-regulations", "reg-REG-001")
    disc = f"disc-{fund.code}"
    claims = (
        OracleClaim(
            "c1",
            ("REG-001", "max_fraction", render_scaled(rule.fraction)),
            (),
            ("reg-REG-001",),
        ),
        OracleClaim(
            "c2", (fund.code, f"shares@{iso}", render_scaled(shares)), ("c1",), (disc,)
        ),
        OracleClaim(
            "c3", (fund.code, f"order_bound@{iso}", bound_str), ("c2",)
        ),
        OracleClaim(
            "c4", (fund.code, f"order_violation@{iso}", witness), ("c3",)
        ),
        OracleClaim(
            "c5", (fund.code, f"order_violation@{iso}", witness), ("c1",), (), ("c1", "c2", "c3", "c4")
        ),
    )
    script = _script(
        (
            ("reg-001", "regulation"),
            _title_query(world, "reg-REG-001"),
            _title_query(world, disc),
        ),
        (("idx-root",), ("idx-root", "idx-regulations"), ("idx-root", "idx-regulations", "reg-REG-001", disc)),
        claims,
        claims[3].conclusion,
        ("c1", "c2", "c3", "c4"),
    )
    return _finish(
        world, task_id, 6, seed, query,
        Refutation("constraint-violation", witness), chain, script,
    )


def _gen_7(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    records = sorted(p for p in world.pages if p.startswith("risk-"))
    if not records:
        raise InfeasibleWorld("kind 7 needs risk registry records")
    page = world.pages[records[rng.randrange(len(records))]]
    record = page.facts[0]
    fields = dict(record.fields)
    query = {
        "surname": fields["surname"],
        "idfrag": fields["idfrag"],
        "region": fields["region"],
    }
    chain = ("idx-root", "idx-risk", page.page_id)
    joined = ";".join(f"{k}={v}" for k, v in record.fields)
    claims = (
        OracleClaim("c1", (record.record_id, "risk_fields", joined), (), (page.page_id,)),
        OracleClaim("c2", (record.record_id, "request_match", "true"), ("c1",)),
        OracleClaim("c3", (record.record_id, "request_match", "true"), ("c1",), (), ("c1", "c2")),
    )
    script = _script(
        (
            (fields["surname"], fields["idfrag"]),
            _title_query(world, "idx-risk"),
            _title_query(world, page.page_id),
        ),
        _three_views(chain),
        claims,
        claims[1].conclusion,
        ("c1", "c2"),
    )
    return _finish(
        world, task_id, 7, seed, query,
        Refutation("risk-match", record.record_id), chain, script,
    )


def library_versions(world: World, lib_code: str) -> list[CompatibilityFact]:
    page = world.pages.get(f"lib-{lib_code}")
    if page is None:
        raise InfeasibleWorld(f"no compatibility history for {lib_code}")
    return [f for f in page.facts if isinstance(f, CompatibilityFact)]


def installed_version(facts: list[CompatibilityFact], day: int) -> CompatibilityFact | None:
    from ..world.generate import version_key

    released = [f for f in facts if f.release_day <= day]
    return max(released, key=lambda f: version_key(f.version), default=None)


def ranges_disjoint(a: CompatibilityFact, b: CompatibilityFact) -> bool:
    from ..world.generate import version_key

    return version_key(a.hi_version) < version_key(b.lo_version) or version_key(
        b.hi_version
    ) < version_key(a.lo_version)


def _gen_8(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    libs = [e.code for e in world.entities_of_kind("library")][1:]  # skip the runtime
    if len(libs) < 3:
        raise InfeasibleWorld("kind 8 needs at least three dependent libraries")
    rng.shuffle(libs)
    early_lib, late_lib, filler = libs[0], libs[1], libs[2]

    def _fact(code, version):
        return next(f for f in library_versions(world, code) if f.version == version)

    early = _fact(early_lib, "1.0")
    early_next = _fact(early_lib, "2.0")
    late = _fact(late_lib, "3.0")
    mid = _fact(filler, "2.0")
    mid_next = _fact(filler, "3.0")
    d_early = early.release_day + rng.randrange(max(1, early_next.release_day - early.release_day))
    d_mid = mid.release_day + rng.randrange(max(1, mid_next.release_day - mid.release_day))
    d_late = late.release_day + rng.randrange(world.config.last_day - late.release_day + 1)
    installs = sorted(
        [
            (day_to_iso(d_early), early_lib, world.entity(early_lib).name),
            (day_to_iso(d_mid), filler, world.entity(filler).name),
            (day_to_iso(d_late), late_lib, world.entity(late_lib).name),
        ]
    )
    query = {"installs": [list(i) for i in installs]}
    pair = tuple(sorted((f"{early_lib}@1.0", f"{late_lib}@3.0")))
    witness = "+".join(pair)
    chain = ("idx-root", "idx-libraries", f"lib-{early_lib}")
    claims = (
        OracleClaim(
            "c1",
            (f"{early_lib}@1.0", "requires", f"{early.requires_code}[{early.lo_version},{early.hi_version}]"),
            (),
            (f"lib-{early_lib}",),
        ),
        OracleClaim(
            "c2",
            (f"{late_lib}@3.0", "requires", f"{late.requires_code}[{late.lo_version},{late.hi_version}]"),
            ("c1",),
            (f"lib-{late_lib}",),
        ),
        OracleClaim("c3", (witness, "dependency_conflict", "true"), ("c1", "c2")),
        OracleClaim("c4", (f"{late_lib}@3.0", "requires", f"{late.requires_code}[{late.lo_version},{late.hi_version}]"), ("c1",), (), ("c1", "c2")),
    )
    script = _script(
        (
            tuple(tokenize(world.entity(early_lib).name)),
            _title_query(world, f"lib-{early_lib}"),
            _title_query(world, f"lib-{late_lib}"),
        ),
        (
            ("idx-libraries",),
            ("idx-libraries", f"lib-{early_lib}"),
            ("idx-libraries", f"lib-{early_lib}", f"lib-{late_lib}", f"lib-{filler}"),
        ),
        claims,
        claims[2].conclusion,
        ("c1", "c2", "c3"),
    )
    return _finish(
        world, task_id, 8, seed, query,
        Refutation("dependency-conflict", witness), chain, script,
    )


# ---------------------------------------------------------------------------
# Type III: ordering and aggregation


def _gen_9(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    funds = world.entities_of_kind("fund")
    movers = [
        f
        for f in funds
        if len([e for e in f.timeline if e.attr == "managed_by"]) == 2
    ]
    if not movers:
        raise InfeasibleWorld("kind 9 needs funds with a manager handover")
    fund = movers[rng.randrange(len(movers))]
    segs = sorted(
        (e for e in fund.timeline if e.attr == "managed_by"),
        key=lambda e: e.day_from,
    )
    transition = segs[1].day_from
    ask_day = transition + 1
    metric = rng.choice(("nav", "growth_rate"))
    rank_day = rng.choice(list(world.panel_days_range()))
    rows = ranking(world, metric, rank_day)
    codes = [code for code, _ in rows]
    if fund.code not in codes:
        raise _Retry("fund missing from that ranking")
    rank = codes.index(fund.code) + 1
    manager = segs[1].value
    iso_rank, iso_ask = day_to_iso(rank_day), day_to_iso(ask_day)
    query = {
        "metric": metric,
        "rank_day": iso_rank,
        "rank": rank,
        "ask": "managed_by",
        "ask_day": iso_ask,
    }
    chain = (f"rank-{metric}-{iso_rank}", f"fund-{fund.code}", f"mgr-{manager}")
    value = rows[rank - 1][1]
    claims = (
        OracleClaim(
            "c1", (fund.code, f"{metric}@{iso_rank}", render_scaled(value)), (), (chain[0],)
        ),
        OracleClaim(
            "c2",
            (fund.code, f"managed_by@{iso_ask}", manager),
            ("c1",),
            (chain[0], chain[1]),
        ),
        OracleClaim("c3", (fund.code, f"managed_by@{iso_ask}", manager), ("c1",), (), ("c1", "c2")),
    )
    script = _script(
        (
            _title_query(world, chain[0]),
            _title_query(world, chain[1]),
            _title_query(world, chain[2]),
        ),
        _three_views(chain),
        claims,
        claims[1].conclusion,
        ("c1", "c2"),
    )
    return _finish(
        world, task_id, 9, seed, query, EntityRef(manager), chain, script,
        meta={"transition_day": day_to_iso(transition)},
    )


def _gen_10(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    metric = "growth_rate"
    days = list(world.panel_days_range())
    rng.shuffle(days)
    for day in days:
        rows = ranking(world, metric, day)
        if len(rows) < 8:
            continue
        ascending = sorted(rows, key=lambda r: (r[1], r[0]))
        values = [v for _, v in ascending]
        n = len(values)

        def crowd(v):  # entities within one least-significant unit
            return sum(1 for u in values if abs(u - v) <= 1)

        starts = list(range(n))
        rng.shuffle(starts)
        sizes = list(range(5, 16))
        rng.shuffle(sizes)
        for i in starts:
            for size in sizes:
                j = i + size - 1
                if j >= n:
                    continue
                lo_v, hi_v = values[i], values[j]
                if i > 0 and values[i - 1] >= lo_v:
                    continue  # interval would sweep in extra ties
                if j < n - 1 and values[j + 1] <= hi_v:
                    continue
                if crowd(lo_v) < 2 or crowd(hi_v) < 2:
                    continue
                members = [
                    (code, v) for code, v in rows if lo_v <= v <= hi_v
                ]  # rows are descending already
                iso = day_to_iso(day)
                query = {
                    "metric": metric,
                    "day": iso,
                    "lo": render_scaled(lo_v),
                    "hi": render_scaled(hi_v),
                }
                chain = ("idx-root", "idx-panel", f"rank-{metric}-{iso}")
                rank_page = chain[2]
                claims = []
                prev = ()
                for idx, (code, v) in enumerate(members, 1):
                    cid = f"c{idx}"
                    claims.append(
                        OracleClaim(
                            cid,
                            (code, f"{metric}@{iso}", render_scaled(v)),
                            prev,
                            (rank_page,),
                        )
                    )
                    prev = (cid,)
                order = tuple(code for code, _ in members)
                claims.append(
                    OracleClaim(
                        "cr",
                        ("interval", f"{metric}@{iso}", ";".join(order)),
                        prev,
                    )
                )
                claims.append(
                    OracleClaim(
                        "cc",
                        claims[len(members) - 1].conclusion,
                        (claims[0].claim_id,),
                        (),
                        tuple(c.claim_id for c in claims[: len(members)]),
                    )
                )
                script = _script(
                    (
                        (metric.replace("_", "-"), "ranking"),
                        _title_query(world, "idx-panel"),
                        _title_query(world, rank_page),
                    ),
                    _three_views(chain),
                    tuple(claims),
                    claims[len(members)].conclusion,
                    tuple(c.claim_id for c in claims[: len(members) + 1]),
                )
                return _finish(
                    world, task_id, 10, seed, query, OrderedList(order), chain, script
                )
    raise _Retry("no interval with crowded boundaries this shuffle")


def exact_stat(kind: str, values: list[int]) -> Fraction:
    units = [Fraction(v, SCALE) for v in values]
    if kind == "range":
        return max(units) - min(units)
    mean = sum(units, Fraction(0)) / len(units)
    if kind == "mean":
        return mean
    return sum((u - mean) ** 2 for u in units) / len(units)


def _stat_claims(member_rows, metric, iso, source_page):
    claims = []
    prev = ()
    for idx, (code, v) in enumerate(member_rows, 1):
        cid = f"c{idx}"
        claims.append(
            OracleClaim(cid, (code, f"{metric}@{iso}", render_scaled(v)), prev, (source_page,))
        )
        prev = (cid,)
    return claims, prev


def _gen_11(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    k = 20
    funds = world.entities_of_kind("fund")
    if len(funds) < k:
        raise InfeasibleWorld(f"kind 11 needs at least {k} funds")
    rank_metric, stat_metric = "growth_rate", "nav"
    day = rng.choice(list(world.panel_days_range()))
    iso = day_to_iso(day)
    top = ranking(world, rank_metric, day)[:k]
    stat_rows = []
    for code, _ in top:
        value = world.panel.get((code, stat_metric, day))
        if value is None:
            raise _Retry("stat metric gap inside the top block")
        stat_rows.append((code, value))
    stat_kind = rng.choice(("range", "mean", "variance"))
    value = exact_stat(stat_kind, [v for _, v in stat_rows])
    query = {
        "rank_metric": rank_metric,
        "day": iso,
        "k": k,
        "stat_metric": stat_metric,
        "stat": stat_kind,
    }
    chain = (f"rank-{rank_metric}-{iso}", "idx-panel", f"rank-{stat_metric}-{iso}")
    claims, prev = _stat_claims(stat_rows, stat_metric, iso, chain[2])
    boundary = OracleClaim(
        "cb",
        (top[-1][0], f"{rank_metric}@{iso}", render_scaled(top[-1][1])),
        (),
        (chain[0],),
    )
    claims[0] = OracleClaim(
        claims[0].claim_id, claims[0].conclusion, ("cb",), claims[0].cited_path
    )
    final = OracleClaim(
        "cs",
        ("topk", f"{stat_kind}:{stat_metric}@{iso}", str(value)),
        prev,
    )
    composite = OracleClaim(
        "cc", claims[-1].conclusion, ("cb",), (),
        ("cb",) + tuple(c.claim_id for c in claims),
    )
    all_claims = (boundary, *claims, final, composite)
    script = _script(
        (
            _title_query(world, chain[0]),
            _title_query(world, "idx-panel"),
            _title_query(world, chain[2]),
        ),
        _three_views(chain),
        all_claims,
        final.conclusion,
        ("cb",) + tuple(c.claim_id for c in claims) + ("cs",),
    )
    return _finish(
        world, task_id, 11, seed, query, Stat(stat_kind, value), chain, script
    )


def _gen_12(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    funds = world.entities_of_kind("fund")
    if not funds:
        raise InfeasibleWorld("kind 12 needs funds")
    rank_metric, stat_metric = "nav", "cumulative_value"
    days = list(world.panel_days_range())
    rank_day = rng.choice(days)
    rows = ranking(world, rank_metric, rank_day)
    rank = rng.randrange(len(rows)) + 1
    fund_code = rows[rank - 1][0]
    length = 5 + rng.randrange(6)
    start_idx = rng.randrange(max(1, len(days) - length))
    window = days[start_idx : start_idx + length]
    series = []
    for d in window:
        value = world.panel.get((fund_code, stat_metric, d))
        if value is None:
            raise _Retry("window gap in the stat series")
        series.append((d, value))
    stat_kind = rng.choice(("range", "mean", "variance"))
    value = exact_stat(stat_kind, [v for _, v in series])
    iso_rank = day_to_iso(rank_day)
    query = {
        "rank_metric": rank_metric,
        "rank_day": iso_rank,
        "rank": rank,
        "stat_metric": stat_metric,
        "stat": stat_kind,
        "window": [day_to_iso(window[0]), day_to_iso(window[-1])],
    }
    chain = (f"rank-{rank_metric}-{iso_rank}", f"fund-{fund_code}", f"disc-{fund_code}")
    claims = [
        OracleClaim(
            "c0",
            (fund_code, f"{rank_metric}@{iso_rank}", render_scaled(rows[rank - 1][1])),
            (),
            (chain[0],),
        )
    ]
    prev = ("c0",)
    for idx, (d, v) in enumerate(series, 1):
        cid = f"c{idx}"
        claims.append(
            OracleClaim(
                cid,
                (fund_code, f"{stat_metric}@{day_to_iso(d)}", render_scaled(v)),
                prev,
                (chain[2],),
            )
        )
        prev = (cid,)
    final = OracleClaim(
        "cs",
        (fund_code, f"{stat_kind}:{stat_metric}", str(value)),
        prev,
    )
    composite = OracleClaim(
        "cc", claims[-1].conclusion, ("c0",), (), tuple(c.claim_id for c in claims)
    )
    script = _script(
        (
            _title_query(world, chain[0]),
            _title_query(world, chain[1]),
            _title_query(world, chain[2]),
        ),
        _three_views(chain),
        (*claims, final, composite),
        final.conclusion,
        tuple(c.claim_id for c in claims) + ("cs",),
    )
    return _finish(
        world, task_id, 12, seed, query, Stat(stat_kind, value), chain, script
    )


# ---------------------------------------------------------------------------
# Type IV: designed absence


def report_field_value(world: World, company_code: str, field: str) -> str | None:
    page = world.pages.get(f"rq1-{company_code}")
    if page is None:
        return None
    for fact in page.facts:
        if getattr(fact, "attr", None) == field:
            return fact.value
    return None


def _gen_13(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    n = 5
    companies = [e.code for e in world.entities_of_kind("company")]
    if len(companies) < n:
        raise InfeasibleWorld(f"kind 13 needs at least {n} companies with reports")
    rng.shuffle(companies)
    batch = sorted(companies[:n])
    field = "largest_holding_scale"
    cells = tuple((c, report_field_value(world, c, field)) for c in batch)
    present = [c for c, v in cells if v is not None]
    missing = [c for c, v in cells if v is None]
    if not present or not missing:
        raise _Retry("batch must mix present and designed-null fields")
    query = {"companies": batch, "field": field}
    answer = NullField(field, cells)
    chain = ("idx-companies", f"cmp-{batch[0]}", f"rq1-{batch[0]}")
    claims = []
    prev = ()
    for idx, (company, value) in enumerate(cells, 1):
        report_code = f"RPT-Q-{int(company.split('-')[1]):03d}"
        page_id = f"rq1-{company}"
        cid = f"c{idx}"
        if value is not None:
            conclusion = (report_code, field, value)
        else:
            names = sorted(
                f.attr
                for f in world.pages[page_id].facts
                if getattr(f, "attr", None)
            )
            conclusion = (report_code, "listed_attributes", ";".join(names))
        claims.append(OracleClaim(cid, conclusion, prev, (page_id,)))
        prev = (cid,)
    final = OracleClaim("cs", ("batch", field, answer.canonical()), prev)
    composite = OracleClaim(
        "cc", claims[-1].conclusion, (claims[0].claim_id,), (),
        tuple(c.claim_id for c in claims),
    )
    script = _script(
        (
            ("q1", "2025", "investment", "report"),
            _title_query(world, chain[1]),
            _title_query(world, chain[2]),
        ),
        (
            (chain[0],),
            (chain[0], chain[1]),
            (chain[0], chain[1]) + tuple(f"rq1-{c}" for c in batch),
        ),
        (*claims, final, composite),
        final.conclusion,
        tuple(c.claim_id for c in claims) + ("cs",),
    )
    return _finish(world, task_id, 13, seed, query, answer, chain, script)


def _gen_14(world: World, rng: random.Random, task_id: str, seed: int) -> Task:
    if not world.phantoms:
        raise InfeasibleWorld("kind 14 needs a phantom registry")
    title = world.phantoms[rng.randrange(len(world.phantoms))]
    companies = world.entities_of_kind("company")
    authority = companies[0]
    reports_attr = world.entity(authority.code).code  # authority profile facts
    profile = world.pages[f"cmp-{authority.code}"]
    published = next(
        f.value for f in profile.facts if getattr(f, "attr", None) == "published_reports"
    )
    query = {"title": title}
    chain = ("idx-root", "idx-companies", f"cmp-{authority.code}")
    claims = (
        OracleClaim(
            "c1",
            (authority.code, "published_reports", published),
            (),
            (chain[2],),
        ),
        OracleClaim("c2", (title, "existence", "absent"), ("c1",)),
        OracleClaim("c3", (title, "existence", "absent"), ("c1",), (), ("c1", "c2")),
    )
    script = _script(
        (
            tuple(tokenize(title))[:6],
            _title_query(world, "idx-companies"),
            _title_query(world, chain[2]),
        ),
        _three_views(chain),
        claims,
        claims[1].conclusion,
        ("c1", "c2"),
    )
    return _finish(
        world, task_id, 14, seed, query, Refutation("phantom", title), chain, script,
        meta={"authority": authority.code},
    )


def annual_sections(world: World, company_code: str) -> list[str]:
    page = world.pages.get(f"ann-{company_code}")
    if page is None:
        return []
    return sorted(
        f.section for f in page.facts if isinstance(f, ReportSection)
    )


def _gen_15(
    world: World, rng: random.Random, task_id: str, seed: int, zero_side: bool = False
) -> Task:
    companies = [e.code for e in world.entities_of_kind("company")]
    if len(companies) < 2:
        raise InfeasibleWorld("kind 15 needs two companies with annual reports")
    rng.shuffle(companies)
    picked = None
    for i in range(len(companies)):
        for j in range(i + 1, len(companies)):
            a, b = companies[i], companies[j]
            has_a = SECTION_PROBE in annual_sections(world, a)
            has_b = SECTION_PROBE in annual_sections(world, b)
            if zero_side and not has_a and not has_b:
                picked = (a, b, "neither")
                break
            if not zero_side and has_a != has_b:
                holder = a if has_a else b
                report = f"RPT-A-{int(holder.split('-')[1]):03d}"
                picked = (a, b, report)
                break
        if picked:
            break
    if picked is None:
        raise _Retry("no report pair with the designed asymmetry")
    a, b, witness = picked
    title_a = world.entity(f"RPT-A-{int(a.split('-')[1]):03d}").name
    title_b = world.entity(f"RPT-A-{int(b.split('-')[1]):03d}").name
    query = {"reports": sorted((title_a, title_b)), "section": SECTION_PROBE}
    chain = ("idx-companies", f"cmp-{a}", f"ann-{a}")
    rpt_a = f"RPT-A-{int(a.split('-')[1]):03d}"
    rpt_b = f"RPT-A-{int(b.split('-')[1]):03d}"
    sections_b = (rpt_b, "listed_sections", ";".join(annual_sections(world, b)))
    claims = (
        OracleClaim(
            "c1",
            (rpt_a, "listed_sections", ";".join(annual_sections(world, a))),
            (),
            (f"ann-{a}",),
        ),
        OracleClaim("c2", sections_b, ("c1",), (f"ann-{b}",)),
        OracleClaim("c3", (SECTION_PROBE, "asymmetric_presence", witness), ("c1", "c2")),
        OracleClaim("c4", sections_b, ("c1",), (), ("c1", "c2")),
    )
    script = _script(
        (
            ("annual", "report", "2025"),
            _title_query(world, f"ann-{a}"),
            _title_query(world, f"ann-{b}"),
        ),
        (
            ("idx-companies",),
            ("idx-companies", f"ann-{a}"),
            ("idx-companies", f"ann-{a}", f"ann-{b}", f"cmp-{a}"),
        ),
        claims,
        claims[2].conclusion,
        ("c1", "c2", "c3"),
    )
    return _finish(
        world, task_id, 15, seed, query,
        Refutation("asymmetric-feature", witness), chain, script,
    )


_BUILDERS = {
    1: _gen_1,
    2: _gen_2,
    3: _gen_3,
    4: _gen_4,
    5: _gen_5,
    6: _gen_6,
    7: _gen_7,
    8: _gen_8,
    9: _gen_9,
    10: _gen_10,
    11: _gen_11,
    12: _gen_12,
    13: _gen_13,
    14: _gen_14,
    15: _gen_15,
}


def gen_task(world: World, kind: int, seed: int, zero_side_probe: bool = False) -> Task:
    """Generate one certified task; reseeds internally on ambiguity."""
    if kind not in _BUILDERS:
        raise ValueError(f"unknown task kind {kind}")
    builder = _BUILDERS[kind]
    task_id = f"k{kind:02d}-s{seed:05d}"
    failures: list[str] = []
    for attempt in range(RETRY_CAP):
        rng = random.Random(
            f"task:{world.content_hash}:{kind}:{seed}:{attempt}"
        )
        try:
            if kind == 15:
                task = builder(world, rng, task_id, seed, zero_side=zero_side_probe)
            else:
                task = builder(world, rng, task_id, seed)
            certify_uniqueness(world, task)
            return task
        except (_Retry, AmbiguousTask) as exc:
            failures.append(str(exc))
    raise AmbiguousTask(
        f"kind {kind} seed {seed}: no certified task in {RETRY_CAP} attempts "
        f"(last: {failures[-1] if failures else 'none'})",
    )
