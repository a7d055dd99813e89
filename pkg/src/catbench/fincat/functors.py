"""Functor representations and the law checker.

A functor between finite presentations carries an object map plus either a
generator map (extended homomorphically to paths) or an explicit path-level
map.  Path-level maps exist so that agent-supplied mappings, which may not
respect composition, can be audited rather than trusted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .core import FreeCategory, Morphism, identity


@dataclass(frozen=True)
class LawReport:
    identity_violations: tuple[str, ...] = ()
    composition_violations: tuple[tuple, ...] = ()
    endpoint_violations: tuple[tuple, ...] = ()

    @property
    def ok(self) -> bool:
        return not (
            self.identity_violations
            or self.composition_violations
            or self.endpoint_violations
        )


@dataclass(frozen=True)
class FunctorRep:
    """F: src -> dst given by an object map and a generator or path map."""

    src: FreeCategory
    dst: FreeCategory
    obj_map: dict
    gen_map: dict | None = None
    path_map: Callable[[Morphism], Morphism] | None = None

    def map_object(self, obj: str) -> str:
        return self.obj_map[obj]

    def map_morphism(self, m: Morphism) -> Morphism:
        if self.path_map is not None:
            return self.path_map(m)
        if self.gen_map is None:
            raise ValueError("functor has neither a generator map nor a path map")
        result = identity(self.map_object(m.src))
        for eid in m.path:
            result = self.dst.compose(result, self.gen_map[eid])
        return Morphism(self.map_object(m.src), self.map_object(m.dst), result.path)


def identity_functor(category: FreeCategory) -> FunctorRep:
    gens = {
        e.edge_id: Morphism(e.src, e.dst, (e.edge_id,)) for e in category.graph.edges
    }
    return FunctorRep(category, category, {o: o for o in category.objects}, gens)


def check_functor_laws(
    functor: FunctorRep, sample_budget: int = 2000, seed: int = 0
) -> LawReport:
    """Check endpoints on all generators, identities on all objects, and
    composition on composable generator pairs (sampled past the budget).

    Violations are reported, never raised.
    """
    src, dst = functor.src, functor.dst
    for obj in src.objects:
        if obj not in functor.obj_map:
            raise ValueError(f"object map is not total: missing {obj!r}")

    endpoint = []
    for edge in src.graph.edges:
        want = (functor.map_object(edge.src), functor.map_object(edge.dst))
        try:
            image = functor.map_morphism(Morphism(edge.src, edge.dst, (edge.edge_id,)))
            dst.validate(image)
            got = (image.src, image.dst)
        except Exception:
            raw = functor.gen_map.get(edge.edge_id) if functor.gen_map else None
            got = (raw.src, raw.dst) if raw is not None else ("?", "?")
        if got != want:
            endpoint.append((edge.edge_id, want, got))

    identities = []
    for obj in src.objects:
        image = functor.map_morphism(identity(obj))
        if image != identity(functor.map_object(obj)):
            identities.append(obj)

    pairs = [
        (a, b)
        for a in src.graph.edges
        for b in src.graph.edges
        if a.dst == b.src
    ]
    if len(pairs) > sample_budget:
        rng = random.Random(seed)
        pairs = [pairs[rng.randrange(len(pairs))] for _ in range(sample_budget)]

    composition = []
    bad_edges = {v[0] for v in endpoint}
    for a, b in pairs:
        if a.edge_id in bad_edges or b.edge_id in bad_edges:
            continue  # already reported as endpoint violations
        fa = Morphism(a.src, a.dst, (a.edge_id,))
        fb = Morphism(b.src, b.dst, (b.edge_id,))
        try:
            whole = functor.map_morphism(src.compose(fa, fb))
            stepwise = dst.compose(functor.map_morphism(fa), functor.map_morphism(fb))
        except Exception:
            composition.append(((a.edge_id, b.edge_id), None, None))
            continue
        if whole != stepwise:
            composition.append(((a.edge_id, b.edge_id), whole, stepwise))

    return LawReport(tuple(identities), tuple(composition), tuple(endpoint))
