"""Sealed answer payloads and their canonical JSON forms.

Six shapes cover all fifteen paradigms.  Values are exact Fractions; list
and table cells are rigid entity codes, so grading never touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..exact import fraction_str, parse_fraction

REFUTATION_REASONS = (
    "phantom",
    "asymmetric-feature",
    "constraint-violation",
    "dependency-conflict",
    "risk-match",
)

STAT_KINDS = ("range", "mean", "variance")


@dataclass(frozen=True)
class Scalar:
    value: Fraction
    tolerance: Fraction = Fraction(0)


@dataclass(frozen=True)
class EntityRef:
    code: str


@dataclass(frozen=True)
class OrderedList:
    codes: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.codes)) != len(self.codes):
            raise ValueError("ordered list must not contain duplicates")


@dataclass(frozen=True)
class Stat:
    kind: str
    value: Fraction
    rel_tolerance: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in STAT_KINDS:
            raise ValueError(f"unknown stat kind {self.kind!r}")


@dataclass(frozen=True)
class NullField:
    """A table with explicit empty cells: value None marks a designed gap."""

    field: str
    cells: tuple[tuple[str, Union[str, None]], ...]  # sorted by subject code

    def canonical(self) -> str:
        return ";".join(f"{k}={'null' if v is None else v}" for k, v in self.cells)


@dataclass(frozen=True)
class Refutation:
    reason: str
    witness: str

    def __post_init__(self):
        if self.reason not in REFUTATION_REASONS:
            raise ValueError(f"unknown refutation reason {self.reason!r}")


Answer = Union[Scalar, EntityRef, OrderedList, Stat, NullField, Refutation]


def answer_to_json(answer: Answer) -> dict:
    if isinstance(answer, Scalar):
        return {
            "type": "scalar",
            "value": fraction_str(answer.value),
            "tolerance": fraction_str(answer.tolerance),
        }
    if isinstance(answer, EntityRef):
        return {"type": "entity", "code": answer.code}
    if isinstance(answer, OrderedList):
        return {"type": "ordered_list", "codes": list(answer.codes)}
    if isinstance(answer, Stat):
        return {
            "type": "stat",
            "kind": answer.kind,
            "value": fraction_str(answer.value),
            "rel_tolerance": fraction_str(answer.rel_tolerance),
        }
    if isinstance(answer, NullField):
        return {
            "type": "null_field",
            "field": answer.field,
            "cells": {k: v for k, v in answer.cells},
        }
    if isinstance(answer, Refutation):
        return {"type": "refutation", "reason": answer.reason, "witness": answer.witness}
    raise TypeError(f"not an answer: {type(answer).__name__}")


def answer_from_json(data: dict) -> Answer:
    kind = data["type"]
    if kind == "scalar":
        return Scalar(parse_fraction(data["value"]), parse_fraction(data.get("tolerance", "0/1")))
    if kind == "entity":
        return EntityRef(data["code"])
    if kind == "ordered_list":
        return OrderedList(tuple(data["codes"]))
    if kind == "stat":
        return Stat(
            data["kind"],
            parse_fraction(data["value"]),
            parse_fraction(data.get("rel_tolerance", "0/1")),
        )
    if kind == "null_field":
        return NullField(data["field"], tuple(sorted(data["cells"].items())))
    if kind == "refutation":
        return Refutation(data["reason"], data["witness"])
    raise ValueError(f"unknown answer type {kind!r}")
