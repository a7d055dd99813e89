"""Versioned JSON forms for graphs, categories, functors and diagrams.

Used by the golden tests; keys are sorted and elements keep their canonical
order, so serialization is byte-stable.
"""

from __future__ import annotations

from .core import (
    DirectedMultigraph,
    Edge,
    Elem,
    FinSetCategory,
    FreeCategory,
    Morphism,
    SetMap,
    ThinCategory,
)
from .diagrams import Diagram

GRAPH_SCHEMA = "catbench/graph@1"
CATEGORY_SCHEMA = "catbench/category@1"
FUNCTOR_SCHEMA = "catbench/functor@1"
DIAGRAM_SCHEMA = "catbench/diagram@1"


def elem_to_json(elem: Elem):
    if isinstance(elem, tuple):
        return [elem_to_json(e) for e in elem]
    return elem


def elem_from_json(data) -> Elem:
    if isinstance(data, list):
        return tuple(elem_from_json(e) for e in data)
    return data


def graph_to_json(g: DirectedMultigraph) -> dict:
    return {
        "schema": GRAPH_SCHEMA,
        "objects": sorted(g.objects),
        "edges": sorted(
            [e.edge_id, e.src, e.dst, e.label] for e in g.edges
        ),
    }


def graph_from_json(data: dict) -> DirectedMultigraph:
    assert data["schema"] == GRAPH_SCHEMA
    return DirectedMultigraph(
        tuple(data["objects"]),
        tuple(Edge(*row) for row in data["edges"]),
    )


def morphism_to_json(m: Morphism) -> dict:
    return {"src": m.src, "dst": m.dst, "path": list(m.path)}


def morphism_from_json(data: dict) -> Morphism:
    return Morphism(data["src"], data["dst"], tuple(data["path"]))


def category_to_json(c) -> dict:
    if isinstance(c, FreeCategory):
        return {"schema": CATEGORY_SCHEMA, "kind": "free", "graph": graph_to_json(c.graph)}
    if isinstance(c, ThinCategory):
        return {
            "schema": CATEGORY_SCHEMA,
            "kind": "thin",
            "objects": sorted(c.objects),
            "relation": sorted(list(pair) for pair in c.base),
        }
    if isinstance(c, FinSetCategory):
        return {
            "schema": CATEGORY_SCHEMA,
            "kind": "finset",
            "sets": {
                name: [elem_to_json(e) for e in elems]
                for name, elems in c.sets.items()
            },
        }
    raise TypeError(f"not a finite category: {type(c).__name__}")


def category_from_json(data: dict):
    assert data["schema"] == CATEGORY_SCHEMA
    kind = data["kind"]
    if kind == "free":
        return FreeCategory(graph_from_json(data["graph"]))
    if kind == "thin":
        return ThinCategory(
            tuple(data["objects"]),
            tuple((a, b) for a, b in data["relation"]),
        )
    if kind == "finset":
        return FinSetCategory(
            {
                name: tuple(elem_from_json(e) for e in elems)
                for name, elems in data["sets"].items()
            }
        )
    raise ValueError(f"unknown category kind {kind!r}")


def functor_to_json(f) -> dict:
    if f.gen_map is None:
        raise ValueError("only generator-map functors serialize")
    return {
        "schema": FUNCTOR_SCHEMA,
        "source": category_to_json(f.src),
        "target": category_to_json(f.dst),
        "objects": dict(sorted(f.obj_map.items())),
        "generators": {
            gid: morphism_to_json(m) for gid, m in sorted(f.gen_map.items())
        },
    }


def functor_from_json(data: dict):
    from .functors import FunctorRep

    assert data["schema"] == FUNCTOR_SCHEMA
    return FunctorRep(
        category_from_json(data["source"]),
        category_from_json(data["target"]),
        dict(data["objects"]),
        {gid: morphism_from_json(m) for gid, m in data["generators"].items()},
    )


def diagram_to_json(d: Diagram) -> dict:
    return {
        "schema": DIAGRAM_SCHEMA,
        "index": graph_to_json(d.index),
        "objects": {
            name: [elem_to_json(e) for e in elems]
            for name, elems in sorted(d.objects.items())
        },
        "arrows": {
            eid: sorted(
                [elem_to_json(k), elem_to_json(v)] for k, v in mapping.items()
            )
            for eid, mapping in sorted(d.arrows.items())
        },
    }


def diagram_from_json(data: dict) -> Diagram:
    assert data["schema"] == DIAGRAM_SCHEMA
    return Diagram(
        graph_from_json(data["index"]),
        {
            name: tuple(elem_from_json(e) for e in elems)
            for name, elems in data["objects"].items()
        },
        {
            eid: {elem_from_json(k): elem_from_json(v) for k, v in pairs}
            for eid, pairs in data["arrows"].items()
        },
    )
