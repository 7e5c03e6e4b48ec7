"""Labelings ``f: V -> {0, ..., k+1}`` of a grid and the [k]-RDF check.

A labeling is a [k]-Roman dominating function when every vertex ``v`` with
``f(v) < k`` satisfies ``f(N[v]) >= k + |AN(v)|``, where ``AN(v)`` are the
neighbours of ``v`` carrying a positive label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .grid import Family, GridSpec, Vertex, closed_neighborhood, neighbors, vertices


@dataclass(frozen=True)
class Labeling:
    """Weights on an ``n x m`` grid, stored fibre-major: ``values[i][j]``."""

    spec: GridSpec
    k: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 1:
            raise InputError(f"k must be >= 1, got {self.k}")
        rows = tuple(tuple(int(x) for x in row) for row in self.values)
        if len(rows) != self.spec.n or any(len(r) != self.spec.m for r in rows):
            raise InputError(
                f"values must be {self.spec.n} fibres of {self.spec.m} entries"
            )
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if not 0 <= x <= self.k + 1:
                    raise InputError(
                        f"entry {x} at {(i, j)} outside codomain [0, {self.k + 1}]"
                    )
        object.__setattr__(self, "values", rows)

    @classmethod
    def zeros(cls, spec: GridSpec, k: int) -> "Labeling":
        return cls(spec, k, tuple((0,) * spec.m for _ in range(spec.n)))

    @classmethod
    def constant(cls, spec: GridSpec, k: int, value: int) -> "Labeling":
        return cls(spec, k, tuple((value,) * spec.m for _ in range(spec.n)))

    def __getitem__(self, v) -> int:
        i, j = v
        return self.values[i][j]

    def replace(self, v, value: int) -> "Labeling":
        i, j = v
        rows = [list(r) for r in self.values]
        rows[i][j] = value
        return Labeling(self.spec, self.k, tuple(map(tuple, rows)))

    def as_rows(self) -> list[list[int]]:
        return [list(r) for r in self.values]


@dataclass(frozen=True)
class Violation:
    vertex: Vertex
    closed_sum: int
    active_neighbors: int
    required: int

    @property
    def deficit(self) -> int:
        return self.required - self.closed_sum

    def to_dict(self) -> dict:
        return {
            "vertex": list(self.vertex),
            "closed_sum": self.closed_sum,
            "active_neighbors": self.active_neighbors,
            "required": self.required,
        }


def weight(lab: Labeling) -> int:
    return sum(sum(row) for row in lab.values)


def active_neighborhood_size(lab: Labeling, v) -> int:
    return sum(1 for u in neighbors(lab.spec, v) if lab[u] > 0)


def closed_sum(lab: Labeling, v) -> int:
    return sum(lab[u] for u in closed_neighborhood(lab.spec, v))


def vertex_violation(lab: Labeling, v) -> Violation | None:
    """The violation at ``v``, or None when ``v`` satisfies the condition."""
    if lab[v] >= lab.k:
        return None
    s = closed_sum(lab, v)
    a = active_neighborhood_size(lab, v)
    if s >= lab.k + a:
        return None
    return Violation(Vertex(*v), s, a, lab.k + a)


def validate(lab: Labeling) -> list[Violation]:
    """Every vertex failing the [k]-RDF condition; empty iff ``lab`` is a [k]-RDF."""
    out = []
    for v in vertices(lab.spec):
        bad = vertex_violation(lab, v)
        if bad is not None:
            out.append(bad)
    return out


def is_rdf(lab: Labeling) -> bool:
    return not validate(lab)


def level_sets(lab: Labeling) -> tuple[frozenset[Vertex], ...]:
    """``(V_0, ..., V_{k+1})`` with ``V_t`` the vertices labelled ``t``."""
    buckets: list[set[Vertex]] = [set() for _ in range(lab.k + 2)]
    for v in vertices(lab.spec):
        buckets[lab[v]].add(v)
    return tuple(frozenset(b) for b in buckets)


# JSON document: {"family", "m", "n", "k", "values"}


def to_dict(lab: Labeling) -> dict:
    return {
        "family": lab.spec.family.value,
        "m": lab.spec.m,
        "n": lab.spec.n,
        "k": lab.k,
        "values": lab.as_rows(),
    }


def dumps(lab: Labeling) -> str:
    return json.dumps(to_dict(lab), separators=(",", ":")) + "\n"


def from_dict(doc: dict) -> Labeling:
    try:
        family = Family(doc["family"])
        spec = GridSpec(family, int(doc["m"]), int(doc["n"]))
        values = doc["values"]
        k = int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed labeling document: {exc}") from exc
    if not isinstance(values, list) or not all(isinstance(r, list) for r in values):
        raise InputError("'values' must be an array of arrays")
    for row in values:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"labeling entries must be integers, got {x!r}")
    return Labeling(spec, k, tuple(tuple(r) for r in values))


def loads(text: str) -> Labeling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("labeling document must be a JSON object")
    return from_dict(doc)


def from_vertex_weights(spec: GridSpec, k: int, weights: Iterable[tuple[Vertex, int]]) -> Labeling:
    rows = [[0] * spec.m for _ in range(spec.n)]
    for (i, j), x in weights:
        rows[i][j] = x
    return Labeling(spec, k, tuple(map(tuple, rows)))
