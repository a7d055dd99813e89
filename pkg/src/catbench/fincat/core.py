"""Finite categories in three presentations.

* ``FreeCategory`` — all edge-paths of a directed multigraph; morphism
  equality is exact generator-sequence equality (no relations).
* ``ThinCategory`` — a preorder; at most one morphism per ordered pair,
  stored implicitly as the reflexive-transitive closure of a base relation.
* ``FinSetCategory`` — named finite sets with total element maps.

Every value is immutable after construction and every operation is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Union

from ..errors import (
    InfeasibleEnumeration,
    MalformedGraph,
    NonComposable,
    UnknownObject,
)

# Elements of finite sets: plain strings, or tuples of elements for apexes
# built by limits/colimits (pairs, consistent tuples, tagged classes).
Elem = Union[str, tuple]


@dataclass(frozen=True)
class Edge:
    edge_id: str
    src: str
    dst: str
    label: str = ""


@dataclass(frozen=True)
class DirectedMultigraph:
    objects: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        obj_set = set(self.objects)
        if len(obj_set) != len(self.objects):
            raise MalformedGraph("duplicate object ids")
        seen = set()
        for e in self.edges:
            if e.edge_id in seen:
                raise MalformedGraph(f"duplicate edge id {e.edge_id!r}")
            seen.add(e.edge_id)
            if e.src not in obj_set or e.dst not in obj_set:
                raise MalformedGraph(f"edge {e.edge_id!r} has a dangling endpoint")

    def edge_map(self) -> dict[str, Edge]:
        return {e.edge_id: e for e in self.edges}

    def out_edges(self, obj: str) -> list[Edge]:
        return [e for e in self.edges if e.src == obj]


@dataclass(frozen=True)
class Morphism:
    """A path of edge ids; the empty path is the identity at its anchor.

    In a thin category the path is always empty and only the endpoints
    matter (there is at most one arrow per ordered pair).
    """

    src: str
    dst: str
    path: tuple[str, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.path and self.src == self.dst


def identity(obj: str) -> Morphism:
    return Morphism(obj, obj, ())


@dataclass(frozen=True)
class SetMap:
    """A total map between named finite sets, stored as sorted pairs."""

    src: str
    dst: str
    pairs: tuple[tuple[Elem, Elem], ...]

    @staticmethod
    def from_dict(src: str, dst: str, mapping: dict) -> "SetMap":
        return SetMap(src, dst, tuple(sorted(mapping.items())))

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def apply(self, elem: Elem) -> Elem:
        for k, v in self.pairs:
            if k == elem:
                return v
        raise KeyError(elem)

    def domain(self) -> tuple[Elem, ...]:
        return tuple(k for k, _ in self.pairs)


def compose_set_maps(f: SetMap, g: SetMap) -> SetMap:
    """Elementwise composition g(f(x)); f then g."""
    if f.dst != g.src:
        raise NonComposable(f"cannot compose {f.src}->{f.dst} with {g.src}->{g.dst}")
    gm = g.as_dict()
    return SetMap(f.src, g.dst, tuple(sorted((k, gm[v]) for k, v in f.pairs)))


class FreeCategory:
    """The free category on a directed multigraph."""

    kind = "free"

    def __init__(self, graph: DirectedMultigraph):
        self.graph = graph
        self.objects = graph.objects
        self._edges = graph.edge_map()

    def has_object(self, obj: str) -> bool:
        return obj in set(self.objects)

    def validate(self, m: Morphism) -> None:
        if m.src not in set(self.objects) or m.dst not in set(self.objects):
            raise UnknownObject(f"{m.src!r} or {m.dst!r} not in category")
        at = m.src
        for eid in m.path:
            e = self._edges.get(eid)
            if e is None or e.src != at:
                raise NonComposable(f"path breaks at edge {eid!r}")
            at = e.dst
        if at != m.dst:
            raise NonComposable("path does not end at the declared target")
        if not m.path and m.src != m.dst:
            raise NonComposable("empty path must be anchored at a single object")

    def identity(self, obj: str) -> Morphism:
        if not self.has_object(obj):
            raise UnknownObject(obj)
        return identity(obj)

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if f.dst != g.src:
            raise NonComposable(f"target {f.dst!r} != source {g.src!r}")
        return Morphism(f.src, g.dst, f.path + g.path)

    def hom_set(
        self, x: str, y: str, max_path_len: int = 8, fail_if_truncated: bool = False
    ) -> tuple[Morphism, ...]:
        """All paths x -> y of length <= max_path_len, shortest first.

        On cyclic graphs hom-sets are infinite, so the cap is part of the
        contract; with ``fail_if_truncated`` the call raises instead of
        silently returning a proper subset (needed for Hom = empty probes).
        """
        if not self.has_object(x) or not self.has_object(y):
            raise UnknownObject(f"{x!r} or {y!r} not in category")
        if fail_if_truncated and not self.hom_is_complete(x, y, max_path_len):
            raise InfeasibleEnumeration(
                f"paths {x!r} -> {y!r} longer than {max_path_len} exist"
            )
        found: list[tuple[int, tuple[str, ...]]] = []
        stack: list[tuple[str, tuple[str, ...]]] = [(x, ())]
        while stack:
            at, path = stack.pop()
            if at == y:
                found.append((len(path), path))
            if len(path) < max_path_len:
                for e in self.graph.out_edges(at):
                    stack.append((e.dst, path + (e.edge_id,)))
        found.sort()
        return tuple(Morphism(x, y, p) for _, p in found)

    def _reaches(self, y: str) -> set[str]:
        reaches = {y}
        changed = True
        while changed:
            changed = False
            for e in self.graph.edges:
                if e.dst in reaches and e.src not in reaches:
                    reaches.add(e.src)
                    changed = True
        return reaches

    def hom_is_complete(self, x: str, y: str, max_path_len: int) -> bool:
        """False iff some path x -> y longer than the cap exists: any walk
        beyond the cap passes a length-cap prefix standing at a node that
        still reaches y."""
        if not self.has_object(x) or not self.has_object(y):
            raise UnknownObject(f"{x!r} or {y!r} not in category")
        reaches_y = self._reaches(y)
        frontier = {x}
        for _ in range(max_path_len):
            frontier = {
                e.dst for at in frontier for e in self.graph.out_edges(at)
            }
            if not frontier:
                return True
        return not any(
            e.dst in reaches_y for at in frontier for e in self.graph.out_edges(at)
        )


def free_category(graph: DirectedMultigraph) -> FreeCategory:
    return FreeCategory(graph)


class ThinCategory:
    """A preorder presented by objects and a base reachability relation."""

    kind = "thin"

    def __init__(self, objects: tuple[str, ...], relation: tuple[tuple[str, str], ...]):
        obj_set = set(objects)
        for a, b in relation:
            if a not in obj_set or b not in obj_set:
                raise MalformedGraph(f"relation pair ({a!r}, {b!r}) has a dangling end")
        self.objects = tuple(objects)
        self.base = tuple(sorted(set(relation)))
        self._closure = self._close(obj_set, self.base)

    @staticmethod
    def _close(objects: set[str], base) -> frozenset[tuple[str, str]]:
        succ: dict[str, set[str]] = {o: {o} for o in objects}
        for a, b in base:
            succ[a].add(b)
        changed = True
        while changed:
            changed = False
            for o in objects:
                extra = set()
                for t in succ[o]:
                    extra |= succ[t]
                if not extra <= succ[o]:
                    succ[o] |= extra
                    changed = True
        return frozenset((a, b) for a, targets in succ.items() for b in targets)

    def has_object(self, obj: str) -> bool:
        return obj in set(self.objects)

    def leq(self, a: str, b: str) -> bool:
        if not self.has_object(a) or not self.has_object(b):
            raise UnknownObject(f"{a!r} or {b!r} not in category")
        return (a, b) in self._closure

    def identity(self, obj: str) -> Morphism:
        if not self.has_object(obj):
            raise UnknownObject(obj)
        return identity(obj)

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if f.dst != g.src:
            raise NonComposable(f"target {f.dst!r} != source {g.src!r}")
        if not self.leq(f.src, g.dst):
            raise NonComposable("composite pair is not in the closure")
        return Morphism(f.src, g.dst, ())

    def hom_set(self, x: str, y: str, max_path_len: int = 8) -> tuple[Morphism, ...]:
        if not self.has_object(x) or not self.has_object(y):
            raise UnknownObject(f"{x!r} or {y!r} not in category")
        return (Morphism(x, y, ()),) if self.leq(x, y) else ()


class FinSetCategory:
    """Named finite sets; morphisms are total element maps."""

    kind = "finset"

    def __init__(self, sets: dict[str, tuple[Elem, ...]]):
        self.sets = {name: tuple(elems) for name, elems in sorted(sets.items())}
        self.objects = tuple(self.sets)
        for name, elems in self.sets.items():
            if len(set(elems)) != len(elems):
                raise MalformedGraph(f"set {name!r} has duplicate elements")

    def has_object(self, obj: str) -> bool:
        return obj in self.sets

    def validate(self, m: SetMap) -> None:
        if not self.has_object(m.src) or not self.has_object(m.dst):
            raise UnknownObject(f"{m.src!r} or {m.dst!r} not in category")
        if sorted(m.domain()) != sorted(self.sets[m.src]):
            raise NonComposable(f"map out of {m.src!r} is not total")
        targets = set(self.sets[m.dst])
        for _, v in m.pairs:
            if v not in targets:
                raise NonComposable(f"image element {v!r} outside {m.dst!r}")

    def identity(self, obj: str) -> SetMap:
        if not self.has_object(obj):
            raise UnknownObject(obj)
        return SetMap.from_dict(obj, obj, {e: e for e in self.sets[obj]})

    def compose(self, f: SetMap, g: SetMap) -> SetMap:
        return compose_set_maps(f, g)

    def hom_set(self, x: str, y: str, max_maps: int = 10_000) -> tuple[SetMap, ...]:
        """All total maps x -> y; guarded because the count is |y|^|x|."""
        if not self.has_object(x) or not self.has_object(y):
            raise UnknownObject(f"{x!r} or {y!r} not in category")
        xs, ys = self.sets[x], self.sets[y]
        if xs and not ys:
            return ()
        count = len(ys) ** len(xs) if xs else 1
        if count > max_maps:
            raise NonComposable(f"hom set of size {count} exceeds the cap {max_maps}")
        maps = []
        for images in itertools.product(ys, repeat=len(xs)):
            maps.append(SetMap.from_dict(x, y, dict(zip(xs, images))))
        return tuple(maps)


FinCategory = Union[FreeCategory, ThinCategory, FinSetCategory]


def compose(category: FinCategory, f, g):
    """Composite of f then g in any presentation."""
    return category.compose(f, g)


def hom_set(category: FinCategory, x: str, y: str, max_path_len: int = 8):
    return category.hom_set(x, y, max_path_len)
