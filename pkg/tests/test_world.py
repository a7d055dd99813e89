"""World generation, search behavior, page round-trips, panel exactness."""

import random

import pytest

from catbench.errors import InfeasibleConfig, UnknownEntityOrMetric, UnknownPage
from catbench.exact import parse_scaled, render_scaled
from catbench.fincat import hom_set
from catbench.world import (
    World,
    WorldConfig,
    generate_world,
    load_world,
    open_page,
    panel_query,
    parse_page,
    phantom_probe,
    save_world,
    scan_text,
    search,
    search_scores,
    subgraph_inclusion,
    tokenize,
    web_category,
)

from util import count_paths_oracle

SMALL = WorldConfig(
    funds=10,
    managers=6,
    companies=6,
    persons=8,
    libraries=4,
    panel_days=12,
    collision_pairs=2,
    decoy_pages=6,
    phantom_count=4,
    seed=7,
)


@pytest.fixture(scope="module")
def world() -> World:
    return generate_world(SMALL)


EMPTY = WorldConfig(
    funds=0, managers=0, companies=0, persons=0, libraries=0,
    collision_pairs=0, decoy_pages=0, phantom_count=0, seed=0,
)


class TestGeneration:
    def test_zero_entities_gives_valid_empty_world(self):
        w = generate_world(EMPTY)
        assert w.pages == {} and w.panel == {} and w.entities == {}

    def test_determinism_same_config_same_bytes(self):
        a, b = generate_world(SMALL), generate_world(SMALL)
        assert a.content_hash == b.content_hash
        assert a.body_json() == b.body_json()

    def test_different_seed_different_hash(self):
        other = generate_world(WorldConfig(**{**SMALL.to_json(), "seed": 8}))
        assert other.content_hash != generate_world(SMALL).content_hash

    def test_infeasible_config_names_bound(self):
        with pytest.raises(InfeasibleConfig, match="collision_pairs"):
            generate_world(WorldConfig(persons=1, collision_pairs=1))

    def test_phantom_isolation_across_seeds(self):
        for seed in range(10):
            cfg = WorldConfig(**{**SMALL.to_json(), "seed": 100 + seed})
            w = generate_world(cfg)
            for title in w.phantoms:
                assert scan_text(w, title) == []

    def test_world_json_roundtrip_is_byte_identical(self, world, tmp_path):
        path = tmp_path / "world.json"
        save_world(world, path)
        first = path.read_bytes()
        again = load_world(path)
        assert again.content_hash == world.content_hash
        save_world(again, path)
        assert path.read_bytes() == first


class TestSearch:
    def test_absent_tokens_give_empty_result(self, world):
        assert search(world, ["xylophoneee", "zzzznope"], 5) == []

    def test_snippet_query_puts_planted_page_first(self, world):
        doc = world.pages["doc-000"]
        result = search(world, tokenize(doc.facts[0].text), 5)
        assert result[0] == "doc-000"

    def test_common_token_query_floods_with_decoys(self, world):
        doc = world.pages["doc-000"]
        commons = [t for t in tokenize(doc.facts[0].text) if not t.startswith(("zephyrine", "quillon"))]
        commons = commons[:6]
        scores = search_scores(world, commons)
        target = scores["doc-000"]
        decoys = [p for p, s in scores.items() if p.startswith("decoy-") and s >= target]
        assert len(decoys) >= SMALL.decoy_pages  # every decoy ties or beats

    def test_ties_break_by_page_id_ascending(self, world):
        result = search(world, ["market"], 50)
        scores = search_scores(world, ["market"])
        for a, b in zip(result, result[1:]):
            assert (-scores[a], a) <= (-scores[b], b)

    def test_every_page_findable_by_its_title(self, world):
        for pid, page in world.pages.items():
            assert pid in search(world, tokenize(page.title), 50), pid


class TestPages:
    def test_open_known_page_contains_all_facts(self, world):
        page = open_page(world, "fund-FND-000")
        text = page.render()
        from catbench.world import render_fact

        for fact in page.facts:
            assert render_fact(fact) in text

    def test_open_unknown_page_raises(self, world):
        with pytest.raises(UnknownPage):
            open_page(world, "nope-000")

    def test_render_parse_inverse_on_every_page(self, world):
        for page in world.pages.values():
            again = parse_page(page.render())
            assert again == page


class TestPanel:
    def test_empty_day_range_gives_empty_series(self, world):
        assert panel_query(world, "FND-000", "nav", range(0)) == []

    def test_single_day_value(self, world):
        day = world.panel_days_range()[0]
        value = world.panel[("FND-000", "nav", day)]
        assert panel_query(world, "FND-000", "nav", [day]) == [(day, value)]

    def test_unknown_metric_raises(self, world):
        with pytest.raises(UnknownEntityOrMetric):
            panel_query(world, "FND-000", "sharpe", [0])

    def test_disclosure_table_facts_match_panel(self, world):
        from catbench.world import TableFact

        page = world.pages["disc-FND-003"]
        for fact in page.facts:
            if isinstance(fact, TableFact):
                (code, value), = fact.rows
                assert world.panel[(code, fact.metric, fact.day)] == value

    def test_values_are_scaled_integers_roundtrip(self, world):
        for value in list(world.panel.values())[:200]:
            assert parse_scaled(render_scaled(value)) == value


class TestStructure:
    def test_subgraph_inclusion_trivia(self):
        assert subgraph_inclusion(set(), {"p"})
        assert subgraph_inclusion({"p"}, {"p"})
        assert not subgraph_inclusion({"p", "q"}, {"p"})

    def test_web_category_hom_counts_match_walk_oracle(self, world):
        cat = web_category(world)
        rng = random.Random(4)
        pages = sorted(world.pages)
        for _ in range(6):
            x = pages[rng.randrange(len(pages))]
            y = pages[rng.randrange(len(pages))]
            assert len(hom_set(cat, x, y, 3)) == count_paths_oracle(cat.graph, x, y, 3)

    def test_linkless_world_has_only_identities(self):
        w = generate_world(EMPTY)
        cat = web_category(w)
        assert cat.objects == ()

    def test_single_link_hom_sets(self, world):
        cat = web_category(world)
        assert len(hom_set(cat, "doc-000", "prs-PRS-000", 1)) == 1
        assert hom_set(cat, "prs-PRS-000", "doc-000", 1) == ()

    def test_phantom_probe_is_fully_empty(self, world):
        for title in world.phantoms:
            probe = phantom_probe(world, title)
            assert probe == {"mentions": [], "incoming": [], "outgoing": []}
