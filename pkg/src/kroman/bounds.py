"""Closed-form upper and lower bounds on the [k]-Roman domination number.

Upper bounds exist for m = 3 (``L, U, P, S``) and m = 4 (``A, C, B, D``).
Each bound carries its exact ceiling value and, where one is known, its
linear relaxation as an exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .constructions import SDParams, ceil_div, sd_admissible, uniform_weights
from .errors import InputError
from .grid import GridSpec, degree_bounds, is_regular

COLUMNS = {3: ("L", "U", "P", "S"), 4: ("A", "C", "B", "D")}
# relaxation of C is strict (value < relaxed); the others are value <= relaxed
STRICT_RELAXATION = frozenset({"C"})


@dataclass(frozen=True)
class BoundValue:
    name: str
    applicable: bool
    value: int | None = None
    relaxed: Fraction | None = None
    condition: str = ""

    def relaxation_holds(self) -> bool:
        if not self.applicable or self.relaxed is None:
            return True
        if self.name in STRICT_RELAXATION:
            return self.value < self.relaxed
        return self.value <= self.relaxed


@dataclass(frozen=True)
class ComparisonRow:
    m: int
    k: int
    n: int
    values: dict = field(hash=False)
    best: tuple[str, ...] = ()


def _check_m(m: int):
    if m not in COLUMNS:
        raise InputError(f"upper bounds are available for m in {{3, 4}}, got m={m}")


def _ul(m, n, k, shift, packing):
    """Uniform scheme total: ``m(n-2)c + 2m*b - packing``."""
    c, b = uniform_weights(k, shift)
    return m * (n - 2) * c + 2 * m * b - packing


def _bound_L(n, k):
    cond = "k >= 1, n >= 4"
    if n < 4:
        return BoundValue("L", False, condition=cond)
    return BoundValue("L", True, n * k + 2, None, cond)


def _bound_U(n, k):
    cond = "k >= 1, n >= 4"
    if n < 4:
        return BoundValue("U", False, condition=cond)
    return BoundValue("U", True, _ul(3, n, k, 4, 0), Fraction(3 * n * k + 27 * n + 2 * k - 2, 5), cond)


def _bound_P(n, k):
    cond = "k >= 1, n >= 4"
    if n < 4:
        return BoundValue("P", False, condition=cond)
    return BoundValue(
        "P", True, _ul(3, n, k, 5, ceil_div(n, 2)), Fraction(6 * k * n + 4 * k + 55 * n - 20, 10), cond
    )


_SD_COND = "n >= 4, k <= 13, k not in {1,8,11,12}"


def _bound_S(n, k):
    if n < 4 or not sd_admissible(k):
        return BoundValue("S", False, condition=_SD_COND)
    p = SDParams.from_k(k)
    value = 2 * (n - 2) * p.A + 4 * p.B + 2 * p.C
    return BoundValue("S", True, value, Fraction(n * k + 2 * k + 8 * n + 12, 2), _SD_COND)


def _bound_A(n, k):
    cond = "k >= 1, n >= 1"
    return BoundValue("A", n >= 1, n * (k + 1), None, cond)


def _bound_C(n, k):
    cond = "k >= 1, n >= 4"
    if n < 4:
        return BoundValue("C", False, condition=cond)
    return BoundValue("C", True, _ul(4, n, k, 4, 0), Fraction(12 * n * k + 8 * k + 108 * n - 8, 15), cond)


def _bound_B(n, k):
    cond = "k >= 1, n >= 4"
    if n < 4:
        return BoundValue("B", False, condition=cond)
    return BoundValue(
        "B", True, _ul(4, n, k, 5, ceil_div(2 * n, 3)), Fraction(12 * n * k + 8 * k + 110 * n - 40, 15), cond
    )


def _bound_D(n, k):
    if n < 4 or not sd_admissible(k):
        return BoundValue("D", False, condition=_SD_COND)
    p = SDParams.from_k(k)
    value = 3 * (n - 2) * p.A + 6 * p.B + 2 * p.C
    return BoundValue("D", True, value, Fraction(3 * n * k + 5 * k + 24 * n + 32, 4), _SD_COND)


_FORMULAS = {
    "L": _bound_L,
    "U": _bound_U,
    "P": _bound_P,
    "S": _bound_S,
    "A": _bound_A,
    "C": _bound_C,
    "B": _bound_B,
    "D": _bound_D,
}


def upper_bound(name: str, n: int, k: int) -> BoundValue:
    try:
        formula = _FORMULAS[name]
    except KeyError:
        raise InputError(f"unknown bound {name!r}") from None
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    return formula(n, k)


def upper_bounds(m: int, n: int, k: int) -> list[BoundValue]:
    """All upper bounds for C_m x P_n in column order, inapplicable ones flagged."""
    _check_m(m)
    if n < 1 or k < 1:
        raise InputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    return [upper_bound(name, n, k) for name in COLUMNS[m]]


def best_upper_bound(m: int, n: int, k: int) -> BoundValue | None:
    live = [b for b in upper_bounds(m, n, k) if b.applicable]
    return min(live, key=lambda b: b.value) if live else None


def lower_bounds(spec: GridSpec, k: int) -> list[BoundValue]:
    """Rational lower bounds that apply to ``spec``, each rounded up in ``value``."""
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    out = []
    if is_regular(spec):
        delta = degree_bounds(spec)[1]
        q = Fraction((k + 1) * spec.order, delta + 1)
        out.append(BoundValue("LowerRegular", True, ceil_div(q.numerator, q.denominator), q, f"{delta}-regular"))
    if not spec.is_torus:
        # C_m x P_n is a spanning subgraph of the 4-regular C_m x C_n
        q = Fraction((k + 1) * spec.order, 5)
        out.append(
            BoundValue("LowerCylinder", True, ceil_div(q.numerator, q.denominator), q, "spanning subgraph of torus")
        )
    return out


def lower_bound(spec: GridSpec, k: int) -> BoundValue:
    """The strongest applicable lower bound (ties go to the regular bound)."""
    return max(lower_bounds(spec, k), key=lambda b: b.value)


def _rows_for(m: int, k: int, n: int) -> ComparisonRow:
    values = {b.name: b.value for b in upper_bounds(m, n, k) if b.applicable}
    if not values:
        return ComparisonRow(m, k, n, {}, ())
    low = min(values.values())
    best = tuple(name for name in COLUMNS[m] if values.get(name) == low)
    return ComparisonRow(m, k, n, values, best)


def compare(m: int, ks: Iterable[int], ns: Iterable[int]) -> list[ComparisonRow]:
    """Every applicable upper bound and all minimizers, k-major then n."""
    _check_m(m)
    ks, ns = list(ks), list(ns)
    if not ks or not ns:
        raise InputError("compare needs non-empty k and n ranges")
    rows = []
    for k in ks:
        for n in ns:
            if k < 1 or n < 1:
                raise InputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
            rows.append(_rows_for(m, k, n))
    return rows


def expected_dominance(m: int, k: int) -> str:
    """Large-n winner according to the mod-5 rule."""
    _check_m(m)
    if m == 3:
        return "U" if k % 5 == 1 else "P"
    return "C" if k % 5 == 1 else "B"


def dominance_pattern(m: int, k: int, n_large: int = 200) -> str:
    """The computed minimizer at ``n_large``; ties come back joined by ``+``."""
    _check_m(m)
    return "+".join(_rows_for(m, k, n_large).best)


def dominance_mismatches(m: int, ks: Iterable[int], n_large: int = 200) -> list[tuple[int, str, str]]:
    """``(k, computed, expected)`` for every k where the mod-5 rule is wrong."""
    out = []
    for k in ks:
        got = dominance_pattern(m, k, n_large)
        want = expected_dominance(m, k)
        if got != want:
            out.append((k, got, want))
    return out


def dominance_regions(rows: Sequence[ComparisonRow]) -> list[tuple[int, int, int, tuple[str, ...]]]:
    """Collapse rows into ``(k, n_first, n_last, best)`` runs of constant winner set."""
    regions = []
    for row in rows:
        if regions:
            k, lo, hi, best = regions[-1]
            if k == row.k and best == row.best and row.n == hi + 1:
                regions[-1] = (k, lo, row.n, best)
                continue
        regions.append((row.k, row.n, row.n, row.best))
    return regions


def rows_to_csv(rows: Sequence[ComparisonRow], m: int) -> str:
    cols = COLUMNS[m]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "k", "n", *cols, "best"])
    for r in rows:
        w.writerow([r.m, r.k, r.n, *(r.values.get(c, "") for c in cols), "+".join(r.best)])
    return buf.getvalue()
