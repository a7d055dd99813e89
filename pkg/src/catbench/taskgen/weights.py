"""Per-paradigm search/reasoning weights and the axis map.

Each row splits 100% of a task's difficulty between the retrieval path and
the cognitive load on retrieved context.  The table is fixed; the scoring
module consumes it as-is.
"""

from __future__ import annotations

WEIGHTS: dict[int, tuple[int, int]] = {
    1: (90, 10),
    2: (80, 20),
    3: (85, 15),
    4: (50, 50),
    5: (30, 70),
    6: (30, 70),
    7: (40, 60),
    8: (40, 60),
    9: (60, 40),
    10: (30, 70),
    11: (20, 80),
    12: (40, 60),
    13: (30, 70),
    14: (10, 90),
    15: (20, 80),
}

AXES = ("I", "II", "III", "IV")

_AXIS_OF_KIND = {
    **{k: "I" for k in (1, 2, 3)},
    **{k: "II" for k in (4, 5, 6, 7, 8)},
    **{k: "III" for k in (9, 10, 11, 12)},
    **{k: "IV" for k in (13, 14, 15)},
}


def task_weights(kind: int) -> tuple[int, int]:
    if kind not in WEIGHTS:
        raise ValueError(f"unknown task kind {kind}")
    return WEIGHTS[kind]


def axis_of_kind(kind: int) -> str:
    if kind not in _AXIS_OF_KIND:
        raise ValueError(f"unknown task kind {kind}")
    return _AXIS_OF_KIND[kind]


def kinds_of_axis(axis: str) -> tuple[int, ...]:
    return tuple(k for k, a in sorted(_AXIS_OF_KIND.items()) if a == axis)
