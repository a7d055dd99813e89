"""Deterministic world generation.

Layout: one profile page per entity, per-fund disclosure pages mirroring the
numeric panel, per-day ranking tables for every fund metric, activity logs,
authored snippet documents with unique rare-token fingerprints, decoy pages
saturated with the high-frequency lexicon, company report pages with designed
field/section gaps, a risk registry, regulation pages and library
compatibility histories.  Every structure a task generator selects from is
planted here; generation is a pure function of the config (which embeds the
seed), and the RNG is split into named streams so sections stay independent.
"""

from __future__ import annotations

import random

from .. import jsonio
from ..errors import InfeasibleConfig
from ..exact import SCALE, day_to_iso
from .model import (
    AttributeFact,
    CompatibilityFact,
    Entity,
    Page,
    RegulationFact,
    RiskRecord,
    ReportSection,
    Snippet,
    TableFact,
    TimelineEntry,
    World,
    WorldConfig,
)

GIVEN_NAMES = (
    "adrian", "bela", "carmen", "daria", "elior", "fen", "goran", "hana",
    "ilya", "jun", "kavya", "lorenzo", "mira", "noor", "oskar", "priya",
)
SURNAMES = (
    "abano", "bicker", "cordale", "dunmore", "ellison", "farrow", "gatlin",
    "hobbes", "ivers", "jassim", "keller", "lindqvist", "moray", "nakata",
    "okafor", "pellerin", "quist", "rahimi", "sandoval", "tiernan",
    "ulrich", "varga", "wrenfield", "yoshida",
)
COMPANY_WORDS = (
    "meridian", "harborlight", "cobalt", "summit", "lattice", "trellis",
    "vanguardia", "ridgeline", "solstice", "arcadia", "pinewood", "bastion",
    "crescent", "halcyon", "ironbark", "jetstream",
)
COMPANY_SUFFIXES = ("capital", "partners", "holdings", "advisors", "trust", "group")
FUND_WORDS = (
    "alpha", "balanced", "dividend", "emergent", "frontier", "granite",
    "horizon", "income", "junction", "keystone", "lighthouse", "momentum",
    "northstar", "orchard", "pioneer", "quarry", "redwood", "sterling",
)
FUND_SUFFIXES = ("fund", "index fund", "growth fund", "value fund")
LIB_NAMES = (
    "corebase", "quicklens", "fastgrid", "deepcache", "softquery",
    "ironparse", "flexmodel", "tidyflow", "glowplot", "neatconfig",
)
REGIONS = ("north-harbor", "east-basin", "south-ridge", "west-vale", "mid-plateau")
COMMON_TOKENS = (
    "market", "fund", "report", "annual", "growth", "analysis", "data",
    "value", "asset", "portfolio", "return", "quarterly", "investment",
    "strategy", "risk", "exposure", "capital", "income", "holdings",
    "performance", "outlook", "allocation", "benchmark", "liquidity",
    "sector", "equity", "bond", "yield", "index", "volatility", "margin",
    "dividend", "balance", "statement", "disclosure", "summary", "review",
    "trend", "forecast", "position", "daily", "weekly", "fiscal", "net",
    "gross", "total", "rate", "share", "price", "volume",
)
RARE_TOKENS = (
    "zephyrine", "quillon", "bramblewick", "ostracon", "veldwort", "cinnabar",
    "thornquist", "maravel", "ixtle", "pellucid", "gossamer", "wrenlock",
    "fathomline", "oblivette", "saxifrage", "tumbrel", "yarrowind", "kestrel",
    "vymbral", "ashgrove", "lorikeet", "dravine", "murkwell", "siltstone",
    "embergale", "nocturnel", "pyrite", "wanderlight", "counterpane", "mistral",
    "quagmire", "sablewood", "tarnhelm", "umbriel", "vesperine", "willowisp",
    "xanthic", "yewbranch", "zibeline", "arquebus", "bowsprit", "cantilever",
    "dulcimer", "eiderdown", "fenugreek", "gadabout", "halyard", "inkhorn",
    "jacquard", "kilnfire", "lodestar", "marrowbone", "nettlesome", "oarlock",
    "palimpsest", "quixotic", "runecarve", "spindrift", "thimbleful", "uplander",
)
ABSURD_TOPICS = (
    "quantum encryption for orchard irrigation",
    "hyperglacial yodeling acoustics in vault design",
    "xenobotanical tax arbitrage on lunar greenhouses",
    "submarine alpaca grooming logistics",
    "telepathic actuarial tables for comet mining",
    "bioluminescent escrow rituals in polar finance",
    "orbital sourdough fermentation derivatives",
    "cryogenic bagpipe maintenance underwriting",
    "holographic topiary risk in desert monasteries",
    "antigravity knitting circles and bond spreads",
    "interdimensional mollusk census methodology",
    "volcanic harp tuning as collateral management",
)
SECTION_BASE = ("overview", "holdings summary", "performance review")
SECTION_PROBE = "geopolitical risk exposure"
SECTION_EXTRA = ("liquidity outlook", "fee schedule", "governance notes")

FUND_METRICS = ("nav", "growth_rate", "shares", "cumulative_value")
REGULATIONS = (
    ("REG-001", "order_units_vs_shares", 500),        # 5% of outstanding shares
    ("REG-002", "transfer_notional_vs_nav", 2500),    # 25% of net asset value
    ("REG-003", "disclosure_delay_days", 30_000),     # 3 days, scaled
)


def _rng(cfg: WorldConfig, stream: str) -> random.Random:
    return random.Random(f"world:{cfg.seed}:{stream}")


def _full_span(attr: str, value: str, cfg: WorldConfig) -> TimelineEntry:
    return TimelineEntry(attr, value, 0, cfg.last_day)


def version_key(version: str) -> tuple[int, ...]:
    return tuple(int(p) for p in version.split("."))


def version_in_range(version: str, lo: str, hi: str) -> bool:
    return version_key(lo) <= version_key(version) <= version_key(hi)


def generate_world(cfg: WorldConfig) -> World:
    _check_feasible(cfg)
    entities: dict[str, Entity] = {}
    pages: dict[str, Page] = {}
    panel: dict[tuple[str, str, int], int] = {}

    companies = _make_companies(cfg, entities)
    managers = _make_managers(cfg, entities, companies)
    funds = _make_funds(cfg, entities, managers)
    persons = _make_persons(cfg, entities)
    _make_panel(cfg, panel, funds, persons)
    libraries = _make_libraries(cfg, entities)
    reports = _make_reports(cfg, entities, companies)

    _company_pages(cfg, pages, companies, reports)
    _fund_pages(cfg, pages, funds, panel)
    _manager_pages(cfg, pages, managers, funds)
    _person_pages(cfg, pages, persons, panel)
    _snippet_pages(cfg, pages, persons)
    _decoy_pages(cfg, pages)
    _news_pages(cfg, pages, persons)
    _ranking_pages(cfg, pages, funds, panel)
    _regulation_pages(cfg, pages)
    _risk_pages(cfg, pages)
    _library_pages(cfg, pages, libraries)
    _index_pages(cfg, pages)

    phantoms = _phantoms(cfg, companies)

    world = World(
        config=cfg,
        seed=cfg.seed,
        entities=entities,
        pages=pages,
        panel=panel,
        phantoms=phantoms,
    )
    _assert_phantom_isolation(world)
    world.content_hash = jsonio.content_hash(world.body_json())
    return world


def _check_feasible(cfg: WorldConfig) -> None:
    if cfg.funds > 0 and cfg.managers < 1:
        raise InfeasibleConfig("funds require managers >= 1")
    if cfg.managers > 0 and cfg.companies < 1:
        raise InfeasibleConfig("managers require companies >= 1 (employers)")
    if cfg.persons < 2 * cfg.collision_pairs:
        raise InfeasibleConfig(
            f"collision_pairs={cfg.collision_pairs} needs persons >= {2 * cfg.collision_pairs}"
        )
    if cfg.persons > len(RARE_TOKENS) // 2:
        raise InfeasibleConfig(
            f"persons <= {len(RARE_TOKENS) // 2} (two rare fingerprint tokens each)"
        )
    if cfg.phantom_count > 0 and cfg.companies < 1:
        raise InfeasibleConfig("phantom titles require companies >= 1 (authority anchor)")


def _make_companies(cfg, entities) -> list[Entity]:
    rng = _rng(cfg, "companies")
    out = []
    for i in range(cfg.companies):
        code = f"CMP-{i:03d}"
        name = (
            f"{COMPANY_WORDS[i % len(COMPANY_WORDS)]} "
            f"{COMPANY_SUFFIXES[(i // len(COMPANY_WORDS) + i) % len(COMPANY_SUFFIXES)]}"
        )
        founded = 1950 + rng.randrange(60)
        entity = Entity(
            code,
            "company",
            name,
            (_full_span("founded_year", str(founded), cfg),),
        )
        entities[code] = entity
        out.append(entity)
    return out


def _make_managers(cfg, entities, companies) -> list[Entity]:
    rng = _rng(cfg, "managers")
    out = []
    for i in range(cfg.managers):
        code = f"MGR-{i:03d}"
        name = (
            f"{GIVEN_NAMES[rng.randrange(len(GIVEN_NAMES))]} "
            f"{SURNAMES[rng.randrange(len(SURNAMES))]}"
        )
        timeline = []
        if companies:
            b1 = 800 + rng.randrange(700)
            b2 = 2200 + rng.randrange(800)
            picks = []
            for _ in range(3):
                choice = companies[rng.randrange(len(companies))].code
                while picks and choice == picks[-1] and len(companies) > 1:
                    choice = companies[rng.randrange(len(companies))].code
                picks.append(choice)
            timeline = [
                TimelineEntry("employer", picks[0], 0, b1),
                TimelineEntry("employer", picks[1], b1 + 1, b2),
                TimelineEntry("employer", picks[2], b2 + 1, cfg.last_day),
            ]
        entity = Entity(code, "manager", name, tuple(timeline))
        entities[code] = entity
        out.append(entity)
    return out


def _make_funds(cfg, entities, managers) -> list[Entity]:
    rng = _rng(cfg, "funds")
    window = range(cfg.last_day - cfg.panel_days + 1, cfg.last_day + 1)
    out = []
    for i in range(cfg.funds):
        code = f"FND-{i:03d}"
        name = (
            f"{FUND_WORDS[i % len(FUND_WORDS)]} "
            f"{FUND_SUFFIXES[(i // len(FUND_WORDS) + i) % len(FUND_SUFFIXES)]}"
        )
        timeline = [
            _full_span("advisor_registry", str(2000 + 7 * i), cfg),
            _full_span("inception", day_to_iso(rng.randrange(0, 2000)), cfg),
        ]
        first = managers[i % len(managers)].code
        if i % 3 == 0 and len(managers) > 1:
            # a mid-window manager handover; day-after probes target these
            t = window.start + 5 + rng.randrange(len(window) - 10)
            second = managers[(i + 7) % len(managers)].code
            if second == first:
                second = managers[(i + 1) % len(managers)].code
            timeline.append(TimelineEntry("managed_by", first, 0, t - 1))
            timeline.append(TimelineEntry("managed_by", second, t, cfg.last_day))
        else:
            timeline.append(TimelineEntry("managed_by", first, 0, cfg.last_day))
        entity = Entity(code, "fund", name, tuple(timeline))
        entities[code] = entity
        out.append(entity)
    return out


def _make_persons(cfg, entities) -> list[Entity]:
    rng = _rng(cfg, "persons")
    names = []
    for i in range(cfg.persons):
        names.append(
            f"{GIVEN_NAMES[rng.randrange(len(GIVEN_NAMES))]} "
            f"{SURNAMES[rng.randrange(len(SURNAMES))]}"
        )
    # designed display-name collisions: pair 2k+1 copies pair 2k
    for pair in range(cfg.collision_pairs):
        names[2 * pair + 1] = names[2 * pair]
    out = []
    for i in range(cfg.persons):
        code = f"PRS-{i:03d}"
        birth = 1950 + rng.randrange(46)
        entity = Entity(
            code,
            "person",
            names[i],
            (_full_span("birth_year", str(birth), cfg),),
        )
        entities[code] = entity
        out.append(entity)
    return out


def _make_panel(cfg, panel, funds, persons) -> None:
    rng = _rng(cfg, "panel")
    window = list(range(cfg.last_day - cfg.panel_days + 1, cfg.last_day + 1))
    ranges = {
        "nav": (5_000, 30_000),
        "growth_rate": (-90_000, 90_000),
        "shares": (1_000_000, 90_000_000),
        "cumulative_value": (10_000, 50_000),
    }
    for day in window:
        for metric in FUND_METRICS:
            lo, hi = ranges[metric]
            values = {}
            for fund in funds:
                if cfg.panel_density_pct < 100 and rng.randrange(100) >= cfg.panel_density_pct:
                    continue
                values[fund.code] = lo + rng.randrange(hi - lo + 1)
            if metric == "growth_rate" and len(values) >= 12:
                # plant near-boundary crowds: pairs within one scaled unit
                codes = sorted(values)
                for _ in range(5):
                    anchor = codes[rng.randrange(len(codes))]
                    for _ in range(2):
                        follower = codes[rng.randrange(len(codes))]
                        if follower != anchor:
                            values[follower] = values[anchor] + rng.randrange(-1, 2)
            for code, value in values.items():
                panel[(code, metric, day)] = value
    for person in persons:
        for day in window:
            panel[(person.code, "contributions", day)] = rng.randrange(0, 13) * SCALE


def _make_libraries(cfg, entities) -> list[Entity]:
    out = []
    for i in range(cfg.libraries):
        code = f"LIB-{i:03d}"
        name = LIB_NAMES[i % len(LIB_NAMES)]
        entity = Entity(code, "library", name, ())
        entities[code] = entity
        out.append(entity)
    return out


def _library_versions(cfg, library_index: int) -> list[CompatibilityFact]:
    """Version history; requirement windows widen with the version so a very
    old install and a very new install of two libraries are mutually
    exclusive while mid versions overlap everything."""
    rng = _rng(cfg, f"libver:{library_index}")
    code = f"LIB-{library_index:03d}"
    base = "LIB-000"
    if library_index == 0:
        return [
            CompatibilityFact(code, v, code, v, v, day)
            for v, day in (("1.0", 0), ("2.0", 1200), ("3.0", 2400), ("4.0", 3600))
        ]
    return [
        CompatibilityFact(code, "1.0", base, "1.0", "2.9", 100 + rng.randrange(800)),
        CompatibilityFact(code, "2.0", base, "2.0", "3.9", 1400 + rng.randrange(800)),
        CompatibilityFact(code, "3.0", base, "3.0", "4.9", 2600 + rng.randrange(800)),
    ]


def _make_reports(cfg, entities, companies) -> dict[str, dict]:
    """Per company: a Q1 investment report and an annual report entity, with
    designed field and section gaps (company 0 always has the probed field
    and section, company 1 never does, the rest are seeded)."""
    rng = _rng(cfg, "reports")
    out: dict[str, dict] = {}
    for i, company in enumerate(companies):
        q1_code, ann_code = f"RPT-Q-{i:03d}", f"RPT-A-{i:03d}"
        q1_title = f"{company.name} q1 2025 investment report"
        ann_title = f"{company.name} 2025 annual report"
        entities[q1_code] = Entity(q1_code, "report", q1_title, ())
        entities[ann_code] = Entity(ann_code, "report", ann_title, ())
        has_field = True if i == 0 else False if i == 1 else rng.randrange(100) < 60
        has_probe = True if i == 0 else False if i == 1 else rng.randrange(100) < 50
        extra = tuple(s for s in SECTION_EXTRA if rng.randrange(100) < 40)
        out[company.code] = {
            "q1": q1_code,
            "q1_title": q1_title,
            "annual": ann_code,
            "annual_title": ann_title,
            "has_field": has_field,
            "has_probe_section": has_probe,
            "extra_sections": extra,
            "total_scale": 200_000 + rng.randrange(3_000_000),
            "holding_scale": 50_000 + rng.randrange(900_000),
            "holder_count": 1_000 + rng.randrange(90_000),
        }
    return out


def _company_pages(cfg, pages, companies, reports) -> None:
    for i, company in enumerate(companies):
        info = reports[company.code]
        titles = ";".join((info["q1_title"], info["annual_title"]))
        profile = Page(
            f"cmp-{company.code}",
            f"{company.code} {company.name} company profile",
            (
                AttributeFact(company.code, "founded_year",
                              company.attribute_at("founded_year", 0), 0, cfg.last_day),
                AttributeFact(company.code, "published_reports", titles, 0, cfg.last_day),
            ),
            (f"rq1-{company.code}", f"ann-{company.code}"),
        )
        pages[profile.page_id] = profile

        q1_facts = [
            AttributeFact(info["q1"], "total_scale",
                          _money(info["total_scale"]), 0, cfg.last_day),
            AttributeFact(info["q1"], "holder_count",
                          str(info["holder_count"]), 0, cfg.last_day),
        ]
        if info["has_field"]:
            q1_facts.insert(1, AttributeFact(
                info["q1"], "largest_holding_scale",
                _money(info["holding_scale"]), 0, cfg.last_day,
            ))
        pages[f"rq1-{company.code}"] = Page(
            f"rq1-{company.code}",
            f"{info['q1']} {info['q1_title']}",
            tuple(q1_facts),
            (f"cmp-{company.code}",),
        )

        sections = list(SECTION_BASE)
        if info["has_probe_section"]:
            sections.append(SECTION_PROBE)
        sections.extend(info["extra_sections"])
        pages[f"ann-{company.code}"] = Page(
            f"ann-{company.code}",
            f"{info['annual']} {info['annual_title']}",
            tuple(ReportSection(info["annual"], s) for s in sorted(sections)),
            (f"cmp-{company.code}",),
        )


def _money(value: int) -> str:
    return f"{value}.0000"


def _fund_pages(cfg, pages, funds, panel) -> None:
    window = range(cfg.last_day - cfg.panel_days + 1, cfg.last_day + 1)
    for fund in funds:
        manager_links = tuple(
            dict.fromkeys(
                f"mgr-{e.value}" for e in fund.timeline if e.attr == "managed_by"
            )
        )
        profile_facts = tuple(
            AttributeFact(fund.code, e.attr, e.value, e.day_from, e.day_to)
            for e in fund.timeline
        )
        pages[f"fund-{fund.code}"] = Page(
            f"fund-{fund.code}",
            f"{fund.code} {fund.name} fund profile",
            profile_facts,
            manager_links + (f"disc-{fund.code}",),
        )
        disc_facts = []
        for metric in ("nav", "shares", "cumulative_value"):
            for day in window:
                value = panel.get((fund.code, metric, day))
                if value is not None:
                    disc_facts.append(TableFact(metric, day, ((fund.code, value),)))
        pages[f"disc-{fund.code}"] = Page(
            f"disc-{fund.code}",
            f"{fund.code} {fund.name} disclosure filings",
            tuple(disc_facts),
            (f"fund-{fund.code}",),
        )


def _manager_pages(cfg, pages, managers, funds) -> None:
    managed: dict[str, list[str]] = {}
    for fund in funds:
        for entry in fund.timeline:
            if entry.attr == "managed_by":
                managed.setdefault(entry.value, []).append(f"fund-{fund.code}")
    for manager in managers:
        employers = tuple(
            dict.fromkeys(
                f"cmp-{e.value}" for e in manager.timeline if e.attr == "employer"
            )
        )
        fund_links = tuple(dict.fromkeys(managed.get(manager.code, [])))
        pages[f"mgr-{manager.code}"] = Page(
            f"mgr-{manager.code}",
            f"{manager.code} {manager.name} manager profile",
            tuple(
                AttributeFact(manager.code, e.attr, e.value, e.day_from, e.day_to)
                for e in manager.timeline
            ),
            employers + fund_links,
        )


def _person_pages(cfg, pages, persons, panel) -> None:
    window = range(cfg.last_day - cfg.panel_days + 1, cfg.last_day + 1)
    for person in persons:
        pages[f"prs-{person.code}"] = Page(
            f"prs-{person.code}",
            f"{person.code} {person.name} profile",
            tuple(
                AttributeFact(person.code, e.attr, e.value, e.day_from, e.day_to)
                for e in person.timeline
            ),
            (f"act-{person.code}",),
        )
        activity = tuple(
            TableFact("contributions", day, ((person.code, panel[(person.code, "contributions", day)]),))
            for day in window
            if (person.code, "contributions", day) in panel
        )
        pages[f"act-{person.code}"] = Page(
            f"act-{person.code}",
            f"{person.code} {person.name} activity log",
            activity,
            (f"prs-{person.code}",),
        )


def snippet_fingerprint(person_index: int) -> tuple[str, str]:
    return RARE_TOKENS[2 * person_index], RARE_TOKENS[2 * person_index + 1]


def _snippet_pages(cfg, pages, persons) -> None:
    rng = _rng(cfg, "snippets")
    for i, person in enumerate(persons):
        words = [COMMON_TOKENS[rng.randrange(len(COMMON_TOKENS))] for _ in range(14)]
        rare1, rare2 = snippet_fingerprint(i)
        words[6:6] = [rare1, rare2]
        pages[f"doc-{i:03d}"] = Page(
            f"doc-{i:03d}",
            f"course notes {i:03d}",
            (Snippet(person.code, " ".join(words)),),
            (f"prs-{person.code}",),
        )


def _decoy_pages(cfg, pages) -> None:
    # every decoy carries the whole high-frequency lexicon, so any query made
    # purely of common tokens ties every decoy with the planted document
    for i in range(cfg.decoy_pages):
        rotated = COMMON_TOKENS[i % len(COMMON_TOKENS):] + COMMON_TOKENS[: i % len(COMMON_TOKENS)]
        pages[f"decoy-{i:03d}"] = Page(
            f"decoy-{i:03d}",
            f"market commentary {i:03d}",
            (Snippet("", " ".join(rotated)),),
            (),
        )


def _news_pages(cfg, pages, persons) -> None:
    # collision distractors (odd pair members) get strictly higher in-degree
    famous = [persons[2 * k + 1] for k in range(cfg.collision_pairs)]
    if not famous:
        return
    for i in range(3):
        mentioned = [p for j, p in enumerate(famous) if j % 3 == i % 3] or famous
        text = " ".join(f"{p.name} interviewed" for p in mentioned)
        pages[f"news-{i:03d}"] = Page(
            f"news-{i:03d}",
            f"market news digest {i:03d}",
            (Snippet("", text),),
            tuple(f"prs-{p.code}" for p in mentioned),
        )


def _ranking_pages(cfg, pages, funds, panel) -> None:
    if not funds:
        return
    window = range(cfg.last_day - cfg.panel_days + 1, cfg.last_day + 1)
    fund_links = tuple(f"fund-{f.code}" for f in funds)
    for metric in FUND_METRICS:
        for day in window:
            rows = sorted(
                (
                    (fund.code, panel[(fund.code, metric, day)])
                    for fund in funds
                    if (fund.code, metric, day) in panel
                ),
                key=lambda row: (-row[1], row[0]),
            )
            if not rows:
                continue
            pid = f"rank-{metric}-{day_to_iso(day)}"
            pages[pid] = Page(
                pid,
                f"{metric} ranking {day_to_iso(day)}",
                (TableFact(metric, day, tuple(rows)),),
                ("idx-panel",) + fund_links,
            )


def _regulation_pages(cfg, pages) -> None:
    if not cfg.funds:
        return
    for rule_id, scope, fraction in REGULATIONS:
        pid = f"reg-{rule_id}"
        pages[pid] = Page(
            pid,
            f"{rule_id} trading regulation {scope}",
            (RegulationFact(rule_id, scope, fraction),),
            (),
        )


def _risk_pages(cfg, pages) -> None:
    if not cfg.persons:
        return
    rng = _rng(cfg, "risk")
    used = set()
    for i in range(15):
        record_id = f"RSK-{i:03d}"
        while True:
            frag = f"{rng.randrange(1000, 10000)}"
            if frag not in used:
                used.add(frag)
                break
        fields = (
            ("idfrag", frag),
            ("region", REGIONS[rng.randrange(len(REGIONS))]),
            ("surname", SURNAMES[rng.randrange(len(SURNAMES))]),
        )
        pid = f"risk-{record_id}"
        pages[pid] = Page(
            pid, f"{record_id} risk registry record", (RiskRecord(record_id, fields),), ()
        )


def _library_pages(cfg, pages, libraries) -> None:
    for i, lib in enumerate(libraries):
        pid = f"lib-{lib.code}"
        pages[pid] = Page(
            pid,
            f"{lib.code} {lib.name} compatibility history",
            tuple(_library_versions(cfg, i)),
            (),
        )


def _index_pages(cfg, pages) -> None:
    groups = {
        "idx-funds": ("funds index", "fund-"),
        "idx-managers": ("managers index", "mgr-"),
        "idx-companies": ("companies index", "cmp-"),
        "idx-persons": ("persons index", "prs-"),
        "idx-libraries": ("libraries index", "lib-"),
        "idx-panel": ("panel rankings index", "rank-"),
        "idx-regulations": ("regulations index", "reg-"),
        "idx-risk": ("risk registry index", "risk-"),
    }
    made = []
    for pid, (title, prefix) in groups.items():
        members = tuple(sorted(p for p in pages if p.startswith(prefix)))
        if not members:
            continue
        pages[pid] = Page(pid, title, (), members)
        made.append(pid)
    if made:
        pages["idx-root"] = Page("idx-root", "root index", (), tuple(sorted(made)))


def _phantoms(cfg, companies) -> tuple[str, ...]:
    if not cfg.phantom_count or not companies:
        return ()
    authority = companies[0]
    titles = []
    for i in range(cfg.phantom_count):
        topic = ABSURD_TOPICS[i % len(ABSURD_TOPICS)]
        suffix = "" if i < len(ABSURD_TOPICS) else f" volume {i // len(ABSURD_TOPICS) + 1}"
        titles.append(f"{authority.name} briefing on {topic}{suffix}")
    return tuple(titles)


def _assert_phantom_isolation(world: World) -> None:
    from .ops import scan_text

    for title in world.phantoms:
        hits = scan_text(world, title)
        if hits:
            raise InfeasibleConfig(f"phantom {title!r} leaked into pages {hits}")
