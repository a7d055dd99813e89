"""Functor-law checking and its mutation sensitivity."""

import random

from catbench.fincat import (
    DirectedMultigraph,
    Edge,
    FunctorRep,
    Morphism,
    check_functor_laws,
    free_category,
    identity,
    identity_functor,
)

from util import random_free_category


def chain_category():
    g = DirectedMultigraph(
        ("a", "b", "c"), (Edge("e1", "a", "b"), Edge("e2", "b", "c"))
    )
    return free_category(g)


def test_identity_functor_is_clean():
    rng = random.Random(3)
    for _ in range(20):
        c = random_free_category(rng)
        assert check_functor_laws(identity_functor(c)).ok


def test_corrupted_endpoint_yields_exactly_one_endpoint_violation():
    c = chain_category()
    f = identity_functor(c)
    bad = dict(f.gen_map)
    bad["e1"] = Morphism("b", "c", ("e2",))  # image endpoints no longer match
    report = check_functor_laws(FunctorRep(c, c, f.obj_map, bad))
    assert len(report.endpoint_violations) == 1
    assert report.endpoint_violations[0][0] == "e1"
    assert not report.identity_violations


def test_truncating_path_map_yields_composition_violation_with_witness():
    c = chain_category()

    def truncate(m):
        # Drops e1 from any composite path, keeping single steps intact.
        path = m.path if len(m.path) < 2 else tuple(e for e in m.path if e != "e1")
        src = m.src if len(m.path) < 2 or m.path[0] != "e1" else "b"
        return Morphism(src, m.dst, path)

    report = check_functor_laws(
        FunctorRep(c, c, {o: o for o in c.objects}, None, truncate)
    )
    assert report.composition_violations
    witness_pair = report.composition_violations[0][0]
    assert witness_pair == ("e1", "e2")


def test_corrupted_identity_detected():
    c = chain_category()
    base = identity_functor(c)

    def warp(m):
        if m == identity("a"):
            return Morphism("a", "b", ("e1",))
        return base.map_morphism(m)

    report = check_functor_laws(
        FunctorRep(c, c, base.obj_map, None, warp)
    )
    assert report.identity_violations == ("a",)


def test_sampling_budget_still_detects_dense_corruption():
    rng = random.Random(11)
    c = random_free_category(rng, n_objects=4, n_edges=18)
    base = identity_functor(c)

    def drop_all_composites(m):
        if len(m.path) >= 2:
            return identity(base.obj_map[m.src]) if m.src == m.dst else Morphism(
                m.src, m.dst, m.path[:1]
            )
        return base.map_morphism(m)

    # Any composable sample witnesses the corruption, so a small budget is fine.
    pairs = [
        (a, b) for a in c.graph.edges for b in c.graph.edges if a.dst == b.src
    ]
    if pairs:
        report = check_functor_laws(
            FunctorRep(c, c, base.obj_map, None, drop_all_composites),
            sample_budget=5,
        )
        assert report.composition_violations
