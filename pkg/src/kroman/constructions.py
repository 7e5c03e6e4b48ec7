"""Explicit labelings for C_3 x P_n, C_4 x P_n, C_4t x P_2 and 5-divisible tori.

Every builder returns a :class:`Labeling` whose weight equals the closed-form
bound it certifies.  With ``check=True`` (the default) the result is run
through :func:`validate` and a :class:`ConstructionError` carrying the
violations is raised if the recipe does not yield a [k]-RDF.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ApplicabilityError, ConstructionError, InputError
from .grid import GridSpec, Vertex, closed_neighborhood
from .labeling import Labeling, validate

SD_EXCLUDED = frozenset({1, 8, 11, 12})
SD_MAX_K = 13


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def sd_admissible(k: int) -> bool:
    return 1 <= k <= SD_MAX_K and k not in SD_EXCLUDED


@dataclass(frozen=True)
class SDParams:
    """Interior weight ``A``, boundary weight ``B`` and facing weight ``C``."""

    A: int
    B: int
    C: int

    @classmethod
    def from_k(cls, k: int) -> "SDParams":
        a = ceil_div(k + 4, 4)
        return cls(a, ceil_div(3 * a - 2, 2), k + 4 - 3 * a)


def uniform_weights(k: int, shift: int) -> tuple[int, int]:
    """Interior and per-boundary-vertex weight of the uniform (U/C, P/B) schemes.

    ``shift`` is 4 for the plain scheme and 5 for the packing-reduced one.
    """
    interior = ceil_div(k + shift, 5)
    boundary = ceil_div(k + 3 - interior, 3)
    return interior, boundary


def _require_n(n: int, least: int, name: str):
    if n < least:
        raise ApplicabilityError(f"construction {name} needs n >= {least}, got n={n}")


def _require_k(k: int):
    if k < 1:
        raise ApplicabilityError(f"k must be >= 1, got {k}")


def _finish(spec: GridSpec, k: int, rows, name: str, check: bool) -> Labeling:
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x < 0:
                raise ConstructionError(
                    f"{name}: entry at {(i, j)} would be {x} < 0 for {spec}, k={k}"
                )
    try:
        lab = Labeling(spec, k, tuple(map(tuple, rows)))
    except InputError as exc:
        raise ConstructionError(f"{name}: {exc}") from exc
    if check:
        bad = validate(lab)
        if bad:
            raise ConstructionError(
                f"{name} on {spec} with k={k} is not a [{k}]-RDF: "
                f"{len(bad)} violating vertices, first at {tuple(bad[0].vertex)}",
                bad,
            )
    return lab


def construct_toroidal_efficient(m: int, n: int, k: int, check: bool = True) -> Labeling:
    """``k+1`` on the diagonal ``2i + j = 0 (mod 5)``; weight ``(k+1)mn/5``."""
    _require_k(k)
    if m < 5 or n < 5 or m % 5 or n % 5:
        raise ApplicabilityError(
            f"toroidal efficient pattern needs 5 | m and 5 | n (m, n >= 5), got m={m}, n={n}"
        )
    rows = [[k + 1 if (2 * i + j) % 5 == 0 else 0 for j in range(m)] for i in range(n)]
    return _finish(GridSpec.torus(m, n), k, rows, "torus-efficient", check)


def construct_c4t_p2(t: int, k: int, check: bool = True) -> Labeling:
    """Efficient labeling of C_4t x P_2 of weight ``2(k+1)t``."""
    _require_k(k)
    if t < 1:
        raise ApplicabilityError(f"c4t-p2 needs t >= 1, got t={t}")
    m = 4 * t
    rows = [
        [k + 1 if j % 4 == 0 else 0 for j in range(m)],
        [k + 1 if j % 4 == 2 else 0 for j in range(m)],
    ]
    return _finish(GridSpec.cylinder(m, 2), k, rows, "c4t-p2", check)


def construct_L(n: int, k: int, check: bool = True) -> Labeling:
    """C_3 x P_n: one ``k`` per interior fibre on a diagonal, ``k+1`` at each end."""
    _require_k(k)
    _require_n(n, 4, "L")
    rows = [[0, 0, 0] for _ in range(n)]
    for i in range(1, n - 1):
        rows[i][i % 3] = k
    rows[0][0] = k + 1
    rows[n - 1][((n - 2) % 3 + 1) % 3] = k + 1
    return _finish(GridSpec.cylinder(3, n), k, rows, "L", check)


def _uniform(m: int, n: int, interior: int, boundary: int) -> list[list[int]]:
    rows = [[interior] * m for _ in range(n)]
    rows[0] = [boundary] * m
    rows[n - 1] = [boundary] * m
    return rows


def construct_U(n: int, k: int, check: bool = True) -> Labeling:
    _require_k(k)
    _require_n(n, 4, "U")
    rows = _uniform(3, n, *uniform_weights(k, 4))
    return _finish(GridSpec.cylinder(3, n), k, rows, "U", check)


def construct_C4_C(n: int, k: int, check: bool = True) -> Labeling:
    _require_k(k)
    _require_n(n, 4, "C")
    rows = _uniform(4, n, *uniform_weights(k, 4))
    return _finish(GridSpec.cylinder(4, n), k, rows, "C", check)


def _packing_reduced(m: int, n: int, k: int, name: str, check: bool) -> Labeling:
    _require_k(k)
    _require_n(n, 4, name)
    rows = _uniform(m, n, *uniform_weights(k, 5))
    for i, j in sorted(packing_pattern(m, n)):
        rows[i][j] -= 1
    return _finish(GridSpec.cylinder(m, n), k, rows, name, check)


def construct_P(n: int, k: int, check: bool = True) -> Labeling:
    """Uniform scheme with base ``ceil((k+5)/5)``, minus one on a maximum packing."""
    return _packing_reduced(3, n, k, "P", check)


def construct_C4_B(n: int, k: int, check: bool = True) -> Labeling:
    return _packing_reduced(4, n, k, "B", check)


def _zero_row_pattern(m: int, n: int, k: int, name: str, check: bool) -> Labeling:
    _require_k(k)
    _require_n(n, 4, name)
    if not sd_admissible(k):
        raise ApplicabilityError(
            f"construction {name} needs k <= {SD_MAX_K} and k not in "
            f"{{1,8,11,12}}, got k={k}"
        )
    p = SDParams.from_k(k)
    if p.C < 0:
        raise ApplicabilityError(f"construction {name}: C = k+4-3A = {p.C} < 0 for k={k}")
    rows = [[p.A] * m for _ in range(n)]
    for i in range(1, n - 1):
        rows[i][i % m] = 0
    for edge, inner in ((0, 1), (n - 1, n - 2)):
        rows[edge] = [p.B] * m
        rows[edge][inner % m] = p.C
    return _finish(GridSpec.cylinder(m, n), k, rows, name, check)


def construct_S(n: int, k: int, check: bool = True) -> Labeling:
    """C_3 x P_n: interior fibres ``A`` except one rotating 0; boundary ``B, B, C``."""
    return _zero_row_pattern(3, n, k, "S", check)


def construct_C4_D(n: int, k: int, check: bool = True) -> Labeling:
    return _zero_row_pattern(4, n, k, "D", check)


def construct_A(n: int, k: int, check: bool = True) -> Labeling:
    """C_4 x P_n: a single ``k+1`` per fibre, alternating between rows 0 and 2."""
    _require_k(k)
    _require_n(n, 1, "A")
    rows = [[0] * 4 for _ in range(n)]
    for i in range(n):
        rows[i][0 if i % 2 == 0 else 2] = k + 1
    return _finish(GridSpec.cylinder(4, n), k, rows, "A", check)


def packing_pattern(m: int, n: int) -> frozenset[Vertex]:
    """A maximum packing of C_m x P_n for ``m`` in {3, 4}.

    m=3: one vertex in every second fibre, the row advancing by one each
    time so consecutive picks stay at distance 3.  m=4: blocks of three fibres with
    stars in the first two, the row pair moving back by one per block
    (rows 0,2 then 3,1 then 2,0, ...).
    """
    if m not in (3, 4):
        raise InputError(f"packing pattern is defined for m in {{3, 4}}, got m={m}")
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if m == 3:
        return frozenset(Vertex(i, (i // 2) % 3) for i in range(0, n, 2))
    out = set()
    for i in range(n):
        b, r = divmod(i, 3)
        if r == 0:
            out.add(Vertex(i, (-b) % 4))
        elif r == 1:
            out.add(Vertex(i, (2 - b) % 4))
    return frozenset(out)


def is_packing(spec: GridSpec, vs) -> bool:
    seen: set[Vertex] = set()
    for v in vs:
        nb = closed_neighborhood(spec, v)
        if seen & nb:
            return False
        seen |= nb
    return True


CONSTRUCTORS = {
    "L": construct_L,
    "U": construct_U,
    "P": construct_P,
    "S": construct_S,
    "A": construct_A,
    "C": construct_C4_C,
    "B": construct_C4_B,
    "D": construct_C4_D,
}

CYCLE_LENGTH = {"L": 3, "U": 3, "P": 3, "S": 3, "A": 4, "C": 4, "B": 4, "D": 4}
