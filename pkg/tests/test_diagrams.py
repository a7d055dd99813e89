"""Pullbacks, limits, colimits, thin joins and the universal property."""

import itertools
import random

import pytest

from catbench.errors import NonComposable, UnknownObject
from catbench.fincat import (
    NO_COLIMIT,
    Cocone,
    Cone,
    Diagram,
    DirectedMultigraph,
    Edge,
    Infeasible,
    SetMap,
    ThinCategory,
    colimit,
    cospan,
    limit,
    lub_thin,
    pullback,
    verify_universal_property,
)

from util import (
    equivalence_classes_oracle,
    limit_tuples_oracle,
    random_finset_diagram,
)

# Frozen from the independent oracle below: X={1,2,3}, Y={a,b}, Z={p,q},
# f: 1,3 -> p, 2 -> q and g: a -> p, b -> q give pairs (1,a), (2,b), (3,a).
PB_EXAMPLE_F = SetMap.from_dict("X", "Z", {"1": "p", "2": "q", "3": "p"})
PB_EXAMPLE_G = SetMap.from_dict("Y", "Z", {"a": "p", "b": "q"})
PB_EXAMPLE_EXPECTED = (("1", "a"), ("2", "b"), ("3", "a"))


def pairs_oracle(f: SetMap, g: SetMap) -> set:
    fm, gm = f.as_dict(), g.as_dict()
    return {(x, y) for x, y in itertools.product(fm, gm) if fm[x] == gm[y]}


class TestPullback:
    def test_worked_example_matches_filter_oracle(self):
        elems, p1, p2 = pullback(PB_EXAMPLE_F, PB_EXAMPLE_G)
        assert elems == PB_EXAMPLE_EXPECTED
        assert set(elems) == pairs_oracle(PB_EXAMPLE_F, PB_EXAMPLE_G)
        for x, y in elems:
            assert p1.apply((x, y)) == x
            assert p2.apply((x, y)) == y

    def test_identity_leg_gives_graph_of_f(self):
        f = SetMap.from_dict("X", "Z", {"1": "p", "2": "q"})
        g = SetMap.from_dict("Z2", "Z", {"p": "p", "q": "q"})
        elems, _, _ = pullback(f, g)
        assert len(elems) == 2  # isomorphic to X

    def test_terminal_codomain_gives_product(self):
        f = SetMap.from_dict("X", "One", {"1": "*", "2": "*"})
        g = SetMap.from_dict("Y", "One", {"a": "*", "b": "*", "c": "*"})
        elems, _, _ = pullback(f, g)
        assert len(elems) == 6

    def test_codomain_mismatch_raises(self):
        f = SetMap.from_dict("X", "Z", {"1": "p"})
        g = SetMap.from_dict("Y", "W", {"a": "w"})
        with pytest.raises(NonComposable):
            pullback(f, g)

    def test_symmetry_under_coordinate_swap(self):
        rng = random.Random(5)
        for _ in range(40):
            zs = [f"z{i}" for i in range(rng.randrange(1, 4))]
            f = SetMap.from_dict(
                "X", "Z", {f"x{i}": rng.choice(zs) for i in range(rng.randrange(0, 5))}
            )
            g = SetMap.from_dict(
                "Y", "Z", {f"y{i}": rng.choice(zs) for i in range(rng.randrange(0, 5))}
            )
            left, _, _ = pullback(f, g)
            right, _, _ = pullback(g, f)
            assert sorted((y, x) for x, y in left) == sorted(right)


def discrete_diagram(sets: dict) -> Diagram:
    index = DirectedMultigraph(tuple(sorted(sets)), ())
    return Diagram(index, sets, {})


class TestLimit:
    def test_empty_diagram_is_terminal(self):
        cone = limit(discrete_diagram({}))
        assert cone.apex == ((),)  # exactly one (empty) tuple

    def test_discrete_two_objects_is_full_product(self):
        cone = limit(discrete_diagram({"A": ("1", "2"), "B": ("x", "y", "z")}))
        assert len(cone.apex) == 6

    def test_cospan_limit_matches_pullback_elementwise(self):
        rng = random.Random(9)
        for _ in range(30):
            zs = tuple(f"z{i}" for i in range(rng.randrange(1, 4)))
            f = SetMap.from_dict(
                "X", "Z", {f"x{i}": rng.choice(zs) for i in range(rng.randrange(0, 5))}
            )
            g = SetMap.from_dict(
                "Y", "Z", {f"y{i}": rng.choice(zs) for i in range(rng.randrange(0, 5))}
            )
            pb, _, _ = pullback(f, g)
            cone = limit(cospan(f, g, zs))
            # Index objects sort X < Y < Z, so drop the Z coordinate.
            assert sorted((x, y) for x, y, _ in cone.apex) == sorted(pb)


def span_diagram():
    """Two 3-element sets glued along one shared point via a span."""
    index = DirectedMultigraph(
        ("A", "B", "S"), (Edge("l", "S", "A"), Edge("r", "S", "B"))
    )
    return Diagram(
        index,
        {"A": ("a1", "a2", "a3"), "B": ("b1", "b2", "b3"), "S": ("s",)},
        {"l": {"s": "a1"}, "r": {"s": "b1"}},
    )


class TestColimit:
    def test_empty_diagram_is_initial(self):
        assert colimit(discrete_diagram({})).apex == ()

    def test_discrete_diagram_is_disjoint_union(self):
        cc = colimit(discrete_diagram({"A": ("1", "2"), "B": ("1", "2", "3")}))
        assert len(cc.apex) == 5

    def test_span_glueing_shares_one_element(self):
        cc = colimit(span_diagram())
        assert len(cc.apex) == 5  # 3 + 3 + 1 - gluing of {a1, b1, s}
        assert cc.legs["A"]["a1"] == cc.legs["B"]["b1"] == cc.legs["S"]["s"]

    def test_union_find_matches_generated_equivalence_oracle(self):
        rng = random.Random(21)
        for _ in range(60):
            d = random_finset_diagram(rng)
            cc = colimit(d)
            classes = equivalence_classes_oracle(d)
            assert len(cc.apex) == len(classes)
            # legs must be constant on each oracle class and injective across
            rep_of = {}
            for cls in classes:
                images = {cc.legs[obj][elem] for obj, elem in cls}
                assert len(images) == 1
                rep_of[cls] = images.pop()
            assert len(set(rep_of.values())) == len(classes)


class TestLubThin:
    def test_singleton_is_its_own_join(self):
        c = ThinCategory(("a", "b"), (("a", "b"),))
        assert lub_thin(c, ["a"]) == "a"

    def test_common_successor_found_by_brute_force(self):
        c = ThinCategory(("a", "b", "c", "d"), (("a", "c"), ("b", "c"), ("c", "d")))
        # upper bounds of {a, b} are c and d; c is least
        assert lub_thin(c, ["a", "b"]) == "c"

    def test_no_common_successor_reports_conflict(self):
        c = ThinCategory(("a", "b"), ())
        assert lub_thin(c, ["a", "b"]) is NO_COLIMIT

    def test_incomparable_minimal_uppers_report_conflict(self):
        c = ThinCategory(
            ("a", "b", "u", "v"),
            (("a", "u"), ("b", "u"), ("a", "v"), ("b", "v")),
        )
        assert lub_thin(c, ["a", "b"]) is NO_COLIMIT

    def test_mutually_reachable_minimals_count_once(self):
        c = ThinCategory(
            ("a", "u", "v"), (("a", "u"), ("u", "v"), ("v", "u"))
        )
        assert lub_thin(c, ["a"]) == "a"
        assert lub_thin(c, ["u", "v"]) == "u"

    def test_unknown_object_raises(self):
        c = ThinCategory(("a",), ())
        with pytest.raises(UnknownObject):
            lub_thin(c, ["zzz"])


def mediators_for_cone(diagram, cone, apex, legs):
    """Literal mediator enumeration for a competitor cone (tiny cases only)."""
    objs = sorted(diagram.index.objects)
    mediators = []
    for images in itertools.product(cone.apex, repeat=len(apex)) if apex else [()]:
        h = dict(zip(apex, images))
        if all(
            cone.legs[o][h[a]] == legs[o][a] for o in objs for a in apex
        ):
            mediators.append(h)
    return mediators


class TestUniversalProperty:
    def test_pullback_cone_verifies(self):
        elems, p1, p2 = pullback(PB_EXAMPLE_F, PB_EXAMPLE_G)
        d = cospan(PB_EXAMPLE_F, PB_EXAMPLE_G, ("p", "q"))
        legs = {
            "X": {e: e[0] for e in elems},
            "Y": {e: e[1] for e in elems},
            "Z": {e: PB_EXAMPLE_F.apply(e[0]) for e in elems},
        }
        assert verify_universal_property(Cone(elems, legs), d) is True

    def test_spurious_apex_element_fails(self):
        elems, _, _ = pullback(PB_EXAMPLE_F, PB_EXAMPLE_G)
        d = cospan(PB_EXAMPLE_F, PB_EXAMPLE_G, ("p", "q"))
        bloated = elems + (("1", "a", "dup"),)
        legs = {
            "X": {e: e[0] for e in bloated},
            "Y": {e: e[1] for e in bloated},
            "Z": {e: PB_EXAMPLE_F.apply(e[0]) for e in bloated},
        }
        assert verify_universal_property(Cone(bloated, legs), d) is False

    def test_overmerged_colimit_fails(self):
        d = span_diagram()
        cc = colimit(d)
        merged = {x: (x if x != cc.legs["A"]["a2"] else cc.legs["A"]["a3"]) for x in cc.apex}
        legs = {
            obj: {e: merged[v] for e, v in leg.items()} for obj, leg in cc.legs.items()
        }
        apex = tuple(sorted(set(merged.values())))
        assert verify_universal_property(Cocone(apex, legs), d) is False

    def test_junk_colimit_element_fails(self):
        d = span_diagram()
        cc = colimit(d)
        assert (
            verify_universal_property(Cocone(cc.apex + (("junk",),), cc.legs), d)
            is False
        )

    def test_cap_below_deciding_size_is_infeasible(self):
        d = span_diagram()
        cc = colimit(d)
        out = verify_universal_property(cc, d, size_cap=1)
        assert isinstance(out, Infeasible)

    def test_agrees_with_literal_mediator_enumeration_on_tiny_cones(self):
        rng = random.Random(33)
        for _ in range(15):
            d = random_finset_diagram(rng, max_objects=3, max_elems=2)
            cone = limit(d)
            assert verify_universal_property(cone, d) is True
            # literal check: every singleton competitor has exactly one mediator
            objs = sorted(d.index.objects)
            from catbench.fincat import consistent_tuples

            for t in consistent_tuples(d):
                apex = ("q0",)
                legs = {o: {"q0": t[i]} for i, o in enumerate(objs)}
                assert len(mediators_for_cone(d, cone, apex, legs)) == 1
