"""Deterministic synthetic web: entities, pages, numeric panel, flat search."""

from .generate import generate_world, snippet_fingerprint
from .model import (
    AttributeFact,
    CompatibilityFact,
    Entity,
    Page,
    RegulationFact,
    ReportSection,
    RiskRecord,
    Snippet,
    TableFact,
    TimelineEntry,
    World,
    WorldConfig,
    page_supports,
    parse_fact,
    parse_page,
    render_fact,
)
from .ops import (
    is_link_path,
    link_graph,
    load_world,
    open_page,
    panel_query,
    phantom_probe,
    save_world,
    scan_text,
    search,
    search_scores,
    subgraph_inclusion,
    tokenize,
    web_category,
)
