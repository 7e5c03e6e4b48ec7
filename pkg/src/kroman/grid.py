"""Implicit cylindrical (C_m x P_n) and toroidal (C_m x C_n) grid graphs.

A vertex is a pair ``(i, j)`` where ``i`` in ``[0, n)`` is the path (or second
cycle) coordinate and ``j`` in ``[0, m)`` the cycle coordinate.  Fibre ``i`` is
the copy of ``C_m`` made of all vertices sharing the path coordinate ``i``.
Adjacency is computed from coordinates; no graph is ever materialized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import InputError


class Family(str, enum.Enum):
    CYLINDER = "cylinder"
    TORUS = "torus"


class Vertex(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class GridSpec:
    family: Family
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.m < 3:
            raise InputError(f"cycle length m must be >= 3, got {self.m}")
        min_n = 3 if self.family is Family.TORUS else 1
        if self.n < min_n:
            raise InputError(f"{self.family.value} needs n >= {min_n}, got {self.n}")

    @classmethod
    def cylinder(cls, m: int, n: int) -> "GridSpec":
        return cls(Family.CYLINDER, m, n)

    @classmethod
    def torus(cls, m: int, n: int) -> "GridSpec":
        return cls(Family.TORUS, m, n)

    @property
    def order(self) -> int:
        return self.m * self.n

    @property
    def is_torus(self) -> bool:
        return self.family is Family.TORUS

    def __str__(self):
        second = "C" if self.is_torus else "P"
        return f"C_{self.m}xP_{self.n}" if second == "P" else f"C_{self.m}xC_{self.n}"


def _check(spec: GridSpec, v) -> Vertex:
    i, j = v
    if not (0 <= i < spec.n and 0 <= j < spec.m):
        raise InputError(f"vertex {(i, j)} is outside {spec}")
    return Vertex(i, j)


def vertices(spec: GridSpec) -> Iterator[Vertex]:
    """All vertices, fibre-major."""
    for i in range(spec.n):
        for j in range(spec.m):
            yield Vertex(i, j)


def neighbors(spec: GridSpec, v) -> set[Vertex]:
    i, j = _check(spec, v)
    m, n = spec.m, spec.n
    out = {Vertex(i, (j + 1) % m), Vertex(i, (j - 1) % m)}
    if spec.is_torus:
        out.add(Vertex((i + 1) % n, j))
        out.add(Vertex((i - 1) % n, j))
    else:
        if i > 0:
            out.add(Vertex(i - 1, j))
        if i < n - 1:
            out.add(Vertex(i + 1, j))
    return out


def closed_neighborhood(spec: GridSpec, v) -> set[Vertex]:
    return neighbors(spec, v) | {Vertex(*v)}


def fibre(spec: GridSpec, i: int) -> list[Vertex]:
    if not 0 <= i < spec.n:
        raise InputError(f"fibre index {i} out of range [0, {spec.n})")
    return [Vertex(i, j) for j in range(spec.m)]


def degree_bounds(spec: GridSpec) -> tuple[int, int]:
    """Minimum and maximum degree ``(delta, Delta)``."""
    if spec.is_torus:
        return 4, 4
    if spec.n == 1:
        return 2, 2
    if spec.n == 2:
        return 3, 3
    return 3, 4


def is_regular(spec: GridSpec) -> bool:
    lo, hi = degree_bounds(spec)
    return lo == hi


def edge_count(spec: GridSpec) -> int:
    return sum(len(neighbors(spec, v)) for v in vertices(spec)) // 2
