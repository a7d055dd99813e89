"""Shared random-structure builders for the test suite.

Everything is seeded; the oracles here are deliberately naive so they stay
independent of the library code paths they cross-check.
"""

from __future__ import annotations

import itertools
import random

from catbench.fincat import (
    Diagram,
    DirectedMultigraph,
    Edge,
    FreeCategory,
    free_category,
)


def random_graph(rng: random.Random, n_objects=None, n_edges=None) -> DirectedMultigraph:
    n_objects = n_objects if n_objects is not None else rng.randrange(1, 7)
    n_edges = n_edges if n_edges is not None else rng.randrange(0, 21)
    objects = tuple(f"o{i}" for i in range(n_objects))
    edges = tuple(
        Edge(
            f"e{i}",
            objects[rng.randrange(n_objects)],
            objects[rng.randrange(n_objects)],
        )
        for i in range(n_edges)
    )
    return DirectedMultigraph(objects, edges)


def random_free_category(rng: random.Random, **kw) -> FreeCategory:
    return free_category(random_graph(rng, **kw))


def count_paths_oracle(graph: DirectedMultigraph, src: str, dst: str, cap: int) -> int:
    """Naive recursive path enumeration, independent of hom_set's DFS."""
    adjacency: dict[str, list[str]] = {o: [] for o in graph.objects}
    for e in graph.edges:
        adjacency[e.src].append(e.dst)

    def walk(at: str, length: int) -> int:
        total = 1 if at == dst else 0
        if length == cap:
            return total
        return total + sum(walk(nxt, length + 1) for nxt in adjacency[at])

    return walk(src, 0)


def random_finset_diagram(rng: random.Random, max_objects=6, max_elems=5) -> Diagram:
    n = rng.randrange(0, max_objects + 1)
    names = tuple(f"D{i}" for i in range(n))
    sets = {
        name: tuple(f"{name}x{j}" for j in range(rng.randrange(0, max_elems + 1)))
        for name in names
    }
    edges = []
    arrows = {}
    if n:
        for i in range(rng.randrange(0, n + 2)):
            src = names[rng.randrange(n)]
            dst = names[rng.randrange(n)]
            if not sets[dst]:
                continue
            eid = f"m{i}"
            edges.append(Edge(eid, src, dst))
            arrows[eid] = {
                x: sets[dst][rng.randrange(len(sets[dst]))] for x in sets[src]
            }
    index = DirectedMultigraph(names, tuple(edges))
    return Diagram(index, sets, arrows)


def equivalence_classes_oracle(diagram: Diagram) -> set[frozenset]:
    """Smallest equivalence relation containing x ~ arrow(x), grown naively."""
    classes: list[set] = [
        {(obj, elem)}
        for obj in diagram.index.objects
        for elem in diagram.objects[obj]
    ]

    def merge(a, b):
        ca = next(c for c in classes if a in c)
        cb = next(c for c in classes if b in c)
        if ca is not cb:
            ca |= cb
            classes.remove(cb)

    edges = diagram.index.edge_map()
    for eid, mapping in diagram.arrows.items():
        e = edges[eid]
        for x, y in mapping.items():
            merge((e.src, x), (e.dst, y))
    return {frozenset(c) for c in classes}


def limit_tuples_oracle(diagram: Diagram) -> set[tuple]:
    """Filter the raw product by every arrow constraint, written from scratch."""
    objs = sorted(diagram.index.objects)
    edges = diagram.index.edge_map()
    result = set()
    for combo in itertools.product(*(diagram.objects[o] for o in objs)):
        assignment = dict(zip(objs, combo))
        if all(
            mapping[assignment[edges[eid].src]] == assignment[edges[eid].dst]
            for eid, mapping in diagram.arrows.items()
        ):
            result.add(tuple(combo))
    return result
