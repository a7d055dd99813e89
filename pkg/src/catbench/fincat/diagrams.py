"""Diagrams over finite sets: pullbacks, limits, colimits, thin joins.

Limits are computed as the consistent subset of the product; colimits as a
union-find quotient of the tagged disjoint union.  Element and pair order
is canonical (lexicographic) everywhere so outputs are byte-stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import NonComposable, UnknownObject
from .core import DirectedMultigraph, Elem, SetMap, ThinCategory


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        elif self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        self.parent[ry] = rx

    def classes(self) -> list[frozenset]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), set()).add(x)
        return [frozenset(g) for g in groups.values()]


@dataclass(frozen=True)
class Diagram:
    """A finite diagram of sets: an index graph, a set per index object,
    and a total map per index edge."""

    index: DirectedMultigraph
    objects: dict
    arrows: dict

    def __post_init__(self):
        for obj in self.index.objects:
            if obj not in self.objects:
                raise UnknownObject(f"diagram has no set for index object {obj!r}")
        edges = self.index.edge_map()
        for eid, mapping in self.arrows.items():
            edge = edges.get(eid)
            if edge is None:
                raise UnknownObject(f"diagram arrow {eid!r} has no index edge")
            src, dst = self.objects[edge.src], self.objects[edge.dst]
            if sorted(mapping) != sorted(src):
                raise NonComposable(f"arrow {eid!r} is not total on {edge.src!r}")
            if not set(mapping.values()) <= set(dst):
                raise NonComposable(f"arrow {eid!r} maps outside {edge.dst!r}")
        for e in self.index.edges:
            if e.edge_id not in self.arrows:
                raise UnknownObject(f"diagram missing arrow for edge {e.edge_id!r}")


@dataclass(frozen=True)
class Cone:
    apex: tuple[Elem, ...]
    legs: dict  # index object -> {apex elem -> D(j) elem}


@dataclass(frozen=True)
class Cocone:
    apex: tuple[Elem, ...]
    legs: dict  # index object -> {D(j) elem -> apex elem}


class NoColimit:
    """Sentinel: the diagram has no least upper bound (conflict or gap)."""

    def __repr__(self):
        return "NoColimit"


NO_COLIMIT = NoColimit()


class Infeasible:
    """Sentinel: the requested exhaustive check exceeds its cap."""

    def __init__(self, reason: str):
        self.reason = reason

    def __repr__(self):
        return f"Infeasible({self.reason!r})"


def pullback(f: SetMap, g: SetMap):
    """All pairs (x, y) with f(x) = g(y), in lexicographic order.

    Returns (elements, projection_to_X, projection_to_Y).
    """
    if f.dst != g.dst:
        raise NonComposable(f"codomain mismatch: {f.dst!r} vs {g.dst!r}")
    fm, gm = f.as_dict(), g.as_dict()
    elems = tuple(
        sorted((x, y) for x in fm for y in gm if fm[x] == gm[y])
    )
    apex_name = f"pb({f.src},{g.src})"
    p1 = SetMap.from_dict(apex_name, f.src, {e: e[0] for e in elems})
    p2 = SetMap.from_dict(apex_name, g.src, {e: e[1] for e in elems})
    return elems, p1, p2


def cospan(f: SetMap, g: SetMap, z_set) -> Diagram:
    """The two-arrow diagram X -f-> Z <-g- Y over explicit element sets."""
    if f.dst != g.dst:
        raise NonComposable(f"codomain mismatch: {f.dst!r} vs {g.dst!r}")
    if len({f.src, g.src, f.dst}) != 3:
        raise NonComposable("cospan needs three distinctly named sets")
    from .core import Edge

    index = DirectedMultigraph(
        objects=(f.src, g.src, f.dst),
        edges=(Edge("f", f.src, f.dst), Edge("g", g.src, g.dst)),
    )
    objects = {f.src: f.domain(), g.src: g.domain(), f.dst: tuple(z_set)}
    return Diagram(index, objects, {"f": f.as_dict(), "g": g.as_dict()})


def consistent_tuples(diagram: Diagram) -> tuple[tuple[Elem, ...], ...]:
    """Families (e_j) compatible with every diagram arrow, index-sorted."""
    objs = sorted(diagram.index.objects)
    pos = {o: i for i, o in enumerate(objs)}
    edges = diagram.index.edge_map()
    out = []
    for combo in itertools.product(*(diagram.objects[o] for o in objs)):
        ok = True
        for eid, mapping in diagram.arrows.items():
            e = edges[eid]
            if mapping[combo[pos[e.src]]] != combo[pos[e.dst]]:
                ok = False
                break
        if ok:
            out.append(tuple(combo))
    out.sort()
    return tuple(out)


def limit(diagram: Diagram) -> Cone:
    """Apex = consistent subset of the product; legs = projections."""
    objs = sorted(diagram.index.objects)
    apex = consistent_tuples(diagram)
    legs = {
        o: {elem: elem[i] for elem in apex} for i, o in enumerate(objs)
    }
    return Cone(apex, legs)


def colimit(diagram: Diagram) -> Cocone:
    """Apex = tagged disjoint union quotiented by the equivalence generated
    by x ~ D(m)(x), via union-find; legs = quotient injections."""
    tagged = [
        (obj, elem)
        for obj in sorted(diagram.index.objects)
        for elem in diagram.objects[obj]
    ]
    uf = UnionFind(tagged)
    edges = diagram.index.edge_map()
    for eid, mapping in sorted(diagram.arrows.items()):
        e = edges[eid]
        for x, y in mapping.items():
            uf.union((e.src, x), (e.dst, y))
    rep = {item: min(cls) for cls in uf.classes() for item in cls}
    apex = tuple(sorted(set(rep.values())))
    legs = {
        obj: {elem: rep[(obj, elem)] for elem in diagram.objects[obj]}
        for obj in diagram.index.objects
    }
    return Cocone(apex, legs)


def lub_thin(category: ThinCategory, objs):
    """Least upper bound of ``objs`` under reachability.

    Returns NO_COLIMIT when no common upper bound exists or several
    incomparable minimal upper bounds tie; mutually reachable minimal
    bounds count as one (the smallest id is returned).
    """
    objs = list(objs)
    if not objs:
        raise UnknownObject("lub of an empty object set")
    for o in objs:
        if not category.has_object(o):
            raise UnknownObject(o)
    uppers = [
        u for u in category.objects if all(category.leq(o, u) for o in objs)
    ]
    if not uppers:
        return NO_COLIMIT
    minimal = [
        u
        for u in uppers
        if not any(category.leq(v, u) and not category.leq(u, v) for v in uppers)
    ]
    first = min(minimal)
    if all(category.leq(first, m) and category.leq(m, first) for m in minimal):
        return first
    return NO_COLIMIT


def _is_cone(result: Cone, diagram: Diagram) -> bool:
    edges = diagram.index.edge_map()
    for obj in diagram.index.objects:
        leg = result.legs.get(obj)
        if leg is None or sorted(leg) != sorted(result.apex):
            return False
        if not set(leg.values()) <= set(diagram.objects[obj]):
            return False
    for eid, mapping in diagram.arrows.items():
        e = edges[eid]
        for a in result.apex:
            if mapping[result.legs[e.src][a]] != result.legs[e.dst][a]:
                return False
    return True


def _is_cocone(result: Cocone, diagram: Diagram) -> bool:
    edges = diagram.index.edge_map()
    for obj in diagram.index.objects:
        leg = result.legs.get(obj)
        if leg is None or sorted(leg) != sorted(diagram.objects[obj]):
            return False
        if not set(leg.values()) <= set(result.apex):
            return False
    for eid, mapping in diagram.arrows.items():
        e = edges[eid]
        for x, y in mapping.items():
            if result.legs[e.dst][y] != result.legs[e.src][x]:
                return False
    return True


def verify_universal_property(result, diagram: Diagram, size_cap: int = 2):
    """Decide whether a cone/cocone is the limit/colimit of the diagram.

    The sweep over competitors is exhaustive up to two reductions that lose
    nothing over finite sets: mediators into a cone factor pointwise, so
    one-element competitor cones decide the cone case (needs size_cap >= 1);
    cocone legs factor through the generated quotient, so the constant and
    the single-class indicator cocones on a two-element apex decide the
    cocone case (needs size_cap >= 2).  A cap below the deciding size is
    reported as Infeasible, never silently truncated.
    """
    if isinstance(result, Cone):
        if size_cap < 1:
            return Infeasible("cone check needs competitors of size 1")
        if not _is_cone(result, diagram):
            return False
        objs = sorted(diagram.index.objects)
        tuples = consistent_tuples(diagram)
        seen: dict[tuple, int] = {}
        for a in result.apex:
            key = tuple(result.legs[o][a] for o in objs)
            seen[key] = seen.get(key, 0) + 1
        # Each one-element competitor cone is a consistent tuple; a unique
        # mediator for it means exactly one apex element projects onto it.
        return all(seen.get(t, 0) == 1 for t in tuples) and set(seen) <= set(tuples)

    if isinstance(result, Cocone):
        if size_cap < 2:
            return Infeasible("cocone check needs competitors of size 2")
        if not _is_cocone(result, diagram):
            return False
        tagged = [
            (obj, elem)
            for obj in sorted(diagram.index.objects)
            for elem in diagram.objects[obj]
        ]
        uf = UnionFind(tagged)
        edges = diagram.index.edge_map()
        for eid, mapping in diagram.arrows.items():
            e = edges[eid]
            for x, y in mapping.items():
                uf.union((e.src, x), (e.dst, y))
        image = {}
        for obj, elem in tagged:
            image[uf.find((obj, elem))] = None
        # Constant competitor on two elements: a mediator is unique only
        # when every apex element is hit by some leg.
        hit = {result.legs[obj][elem] for obj, elem in tagged}
        if set(result.apex) - hit:
            return False
        # Indicator competitor of each class: a mediator exists only when
        # legs never merge two distinct classes.
        class_image: dict = {}
        for obj, elem in tagged:
            root = uf.find((obj, elem))
            target = result.legs[obj][elem]
            if class_image.setdefault(root, target) != target:
                return False  # cocone legs split a class: not a cocone at all
        merged: dict = {}
        for root, target in class_image.items():
            if target in merged and merged[target] != root:
                return False
            merged[target] = root
        return True

    raise TypeError(f"expected Cone or Cocone, got {type(result).__name__}")
