"""Exact solvers for small grids.

``solve_cylinder`` / ``solve_torus`` sweep the grid fibre by fibre.  A vertex
``u`` adjacent to ``v`` adds ``f(u) - [f(u) > 0]`` towards the condition of
``v``, so ``v`` (with ``f(v) < k``) is satisfied iff ``f(v)`` plus those
contributions reaches ``k``.  After placing fibre ``i`` the only facts the
future needs are the contribution vector of fibre ``i`` (what it gives to
fibre ``i+1``) and the residual demand of each fibre-``i`` vertex (what its
fibre-``i+1`` neighbour still has to give).  Both live in ``{0..k}^m``, so a
layer is a dense ``(k+1)^m x (k+1)^m`` table of minimum weights.

``brute_force`` is an independent oracle: a depth-first enumeration of
labelings that checks the definition directly.
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityError, InputError
from .grid import GridSpec, Vertex, closed_neighborhood, degree_bounds, neighbors, vertices
from .labeling import Labeling, validate, weight

DEFAULT_BUDGET = 30_000_000
BRUTE_FORCE_BUDGET = 10**8
MAX_ORDER = 40
INF = np.int32(2**30)


class Method(str, enum.Enum):
    DP = "DP"
    BRUTE_FORCE = "BruteForce"
    BRANCH_AND_BOUND = "BranchAndBound"
    EXACT_COVER = "ExactCover"


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: object = None
    states_explored: int = 0
    method: Method = Method.DP


def default_budget() -> int:
    env = os.environ.get("ROMAN_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise InputError(f"ROMAN_BUDGET must be a number, got {env!r}") from None
    return DEFAULT_BUDGET


def dp_estimate(m: int, k: int) -> int:
    """Per-layer work of the fibre sweep, ``((k+2)(k+1))^m``."""
    return ((k + 2) * (k + 1)) ** m


def _check_capacity(m, k, budget, factor=1):
    budget = default_budget() if budget is None else budget
    estimate = dp_estimate(m, k) * factor
    if estimate > budget:
        raise CapacityError(
            f"estimated {estimate:.3g} state transitions per fibre for m={m}, k={k} "
            f"exceeds the budget of {budget:.3g}",
            estimate,
            budget,
        )


def _canonical_under_dihedral(u: tuple[int, ...]) -> bool:
    m = len(u)
    for s in range(m):
        rot = u[s:] + u[:s]
        if rot < u or rot[::-1] < u:
            return False
    return True


class _Sweep:
    """Precomputed per-fibre data for one ``(m, k)`` pair."""

    def __init__(self, m: int, k: int, allow_one: bool = True, workers: int = 1):
        self.m, self.k, self.workers = m, k, max(1, workers)
        self.base_k = k + 1  # size of the contribution / demand alphabet
        self.H = self.base_k**m
        labels = [
            u for u in itertools.product(range(k + 2), repeat=m) if allow_one or k < 2 or 1 not in u
        ]
        self.U = np.array(labels, dtype=np.int64).reshape(len(labels), m)
        self.tuples = labels
        self.sums = self.U.sum(axis=1)
        g = np.maximum(self.U - 1, 0)
        self.strides = self.base_k ** np.arange(m - 1, -1, -1)
        self.gidx = g @ self.strides
        # own fibre part of each vertex's sum: itself plus its two cycle neighbours
        self.own = self.U + np.roll(g, 1, axis=1) + np.roll(g, -1, axis=1)
        self.high = self.U >= k
        self.vecs = np.array(list(itertools.product(range(self.base_k), repeat=m)), dtype=np.int64).reshape(
            self.H, m
        )

    def demands(self, t: int, back: np.ndarray) -> np.ndarray:
        """Flat residual demand of fibre ``t`` for each back-contribution row of ``back``."""
        d = self.k - self.own[t] - back
        np.maximum(d, 0, out=d)
        d[:, self.high[t]] = 0
        return d @ self.strides

    def downward_min(self, T: np.ndarray, daxis: int) -> np.ndarray:
        """Min over all demand vectors componentwise <= each index (axis ``daxis`` is flat D)."""
        shape = T.shape
        full = T.reshape(shape[:daxis] + (self.base_k,) * self.m + shape[daxis + 1 :])
        out = full
        for ax in range(daxis, daxis + self.m):
            out = np.minimum.accumulate(out, axis=ax)
        return out.reshape(shape)

    def _chunks(self, order):
        if self.workers == 1 or len(order) < 2 * self.workers:
            return [order]
        size = -(-len(order) // self.workers)
        return [order[i : i + size] for i in range(0, len(order), size)]

    def _map_reduce(self, fn, order, shape):
        chunks = self._chunks(order)
        if len(chunks) == 1:
            return fn(chunks[0], np.full(shape, INF, dtype=np.int32))
        with ThreadPoolExecutor(self.workers) as pool:
            parts = list(pool.map(lambda c: fn(c, np.full(shape, INF, dtype=np.int32)), chunks))
        return np.minimum.reduce(parts)

    def step(self, T: np.ndarray, order) -> np.ndarray:
        """Cylinder transition on a ``(H, D)`` table."""
        M = self.downward_min(T, 1)

        def run(chunk, new):
            for t in chunk:
                cand = M[:, self.gidx[t]]
                live = cand < INF
                if not live.any():
                    continue
                nd = self.demands(t, self.vecs[live])
                np.minimum.at(new[self.gidx[t]], nd, cand[live] + self.sums[t])
            return new

        return self._map_reduce(run, order, T.shape)

    def step_carry(self, T: np.ndarray, order) -> np.ndarray:
        """Torus transition on a ``(H, D, R)`` table; the last axis rides along."""
        M = self.downward_min(T, 1)
        R = T.shape[2]

        def run(chunk, new):
            for t in chunk:
                cand = M[:, self.gidx[t], :]
                hs = np.flatnonzero((cand < INF).any(axis=1))
                if hs.size == 0:
                    continue
                nd = self.demands(t, self.vecs[hs])
                sub = cand[hs] + self.sums[t]
                np.minimum.at(new[self.gidx[t]], (np.repeat(nd, R), np.tile(np.arange(R), hs.size)), sub.ravel())
            return new

        return self._map_reduce(run, order, T.shape)

    def order(self, symmetric_first: bool = False):
        if not symmetric_first:
            return list(range(len(self.tuples)))
        return [t for t, u in enumerate(self.tuples) if _canonical_under_dihedral(u)]


def _count(T) -> int:
    return int(np.count_nonzero(T < INF))


def _check_params(m, n, k):
    if m < 3 or n < 1 or k < 1:
        raise InputError(f"need m >= 3, n >= 1, k >= 1; got m={m}, n={n}, k={k}")


def solve_cylinder(
    m: int,
    n: int,
    k: int,
    want_witness: bool = False,
    *,
    budget: int | None = None,
    symmetry: bool = False,
    allow_one: bool = True,
    workers: int = 1,
) -> SolveResult:
    """Exact ``gamma_[k]R(C_m x P_n)`` by a fibre sweep.

    ``symmetry`` restricts fibre 0 to dihedral-canonical label vectors;
    ``allow_one=False`` drops label 1 (sound for k >= 2).  Neither changes the
    optimum.
    """
    _check_params(m, n, k)
    _check_capacity(m, k, budget)
    sw = _Sweep(m, k, allow_one, workers)
    full = sw.order()
    # virtual fibre -1: contributes nothing, demands nothing
    T = np.full((sw.H, sw.H), INF, dtype=np.int32)
    T[0, 0] = 0
    tables = []
    explored = 0
    for i in range(n):
        T = sw.step(T, sw.order(True) if symmetry and i == 0 else full)
        explored += _count(T)
        if want_witness:
            tables.append(T)
    value = int(T[:, 0].min())
    if value >= INF:
        raise RuntimeError(f"no [k]-RDF found for C_{m}xP_{n}, k={k}")  # cannot happen: all k+1 is valid
    witness = None
    if want_witness:
        rows = _backtrack_cylinder(sw, tables, value)
        witness = Labeling(GridSpec.cylinder(m, n), k, tuple(rows))
        _assert_witness(witness, value)
    return SolveResult(value, witness, explored, Method.DP)


def _assert_witness(lab: Labeling, value: int):
    bad = validate(lab)
    if bad or weight(lab) != value:
        raise AssertionError(f"witness reconstruction failed: weight {weight(lab)} vs {value}, {len(bad)} violations")


def _backtrack_cylinder(sw: _Sweep, tables, value):
    n = len(tables)
    last = tables[-1]
    hs = np.flatnonzero(last[:, 0] == value)
    # final state: smallest contribution index among optimal ones
    h, d = int(hs[0]), 0
    rows = []
    for i in range(n - 1, -1, -1):
        prev = tables[i - 1] if i > 0 else None
        target = tables[i][h, d]
        found = False
        for t in np.flatnonzero(sw.gidx == h):
            s = int(sw.sums[t])
            if prev is None:
                if s == target and sw.demands(t, np.zeros((1, sw.m), dtype=np.int64))[0] == d:
                    rows.append(sw.tuples[t])
                    found = True
                    break
                continue
            nd = sw.demands(t, sw.vecs)
            e = np.unravel_index(int(sw.gidx[t]), (sw.base_k,) * sw.m)
            sub = prev.reshape((sw.H,) + (sw.base_k,) * sw.m)[(slice(None),) + tuple(slice(0, x + 1) for x in e)]
            sub = sub.reshape(sw.H, -1)
            best = sub.min(axis=1)
            ok = np.flatnonzero((nd == d) & (best + s == target))
            if ok.size:
                h_prev = int(ok[0])
                d_prev = _first_index_leq(sw, prev[h_prev], e, target - s)
                rows.append(sw.tuples[t])
                h, d = h_prev, d_prev
                found = True
                break
        if not found:
            raise AssertionError("back-link missing during witness reconstruction")
    rows.reverse()
    return rows


def _first_index_leq(sw: _Sweep, row: np.ndarray, e, value) -> int:
    """Smallest flat demand index ``d <= e`` (componentwise) with ``row[d] == value``."""
    for d in np.flatnonzero(row == value):
        if all(x <= y for x, y in zip(sw.vecs[d], e)):
            return int(d)
    raise AssertionError("no predecessor demand found")


def solve_torus(
    m: int,
    n: int,
    k: int,
    want_witness: bool = False,
    *,
    budget: int | None = None,
    symmetry: bool = False,
    allow_one: bool = True,
    workers: int = 1,
) -> SolveResult:
    """Exact ``gamma_[k]R(C_m x C_n)``.

    Fibre 0 is fixed up front (grouped by its contribution vector); its
    residual demand after fibre 1 rides along the sweep and must be covered
    by fibre ``n-1``, whose own demand must in turn be covered by fibre 0.
    """
    if n < 3:
        raise InputError(f"torus needs n >= 3, got n={n}")
    _check_params(m, n, k)
    _check_capacity(m, k, budget, factor=(k + 1) ** m)
    sw = _Sweep(m, k, allow_one, workers)
    first = sw.order(symmetry)
    full = sw.order()
    best_value, best_e0, explored = int(INF), None, 0
    for e0 in range(sw.H):
        run = _torus_group(sw, e0, first, full, n, keep=False)
        if run is None:
            continue
        value, count, _ = run
        explored += count
        if value < best_value:
            best_value, best_e0 = value, e0
    witness = None
    if want_witness:
        _, _, tables = _torus_group(sw, best_e0, first, full, n, keep=True)
        rows = _backtrack_torus(sw, best_e0, tables, best_value, first)
        witness = Labeling(GridSpec.torus(m, n), k, tuple(rows))
        _assert_witness(witness, best_value)
    return SolveResult(best_value, witness, explored, Method.DP)


def _torus_group(sw: _Sweep, e0: int, first, full, n: int, keep: bool):
    H = sw.H
    zero_back = np.zeros((1, sw.m), dtype=np.int64)
    # layer 0: demand vector of fibre 0 from its own fibre only
    T0 = np.full(H, INF, dtype=np.int32)
    members = [t for t in first if sw.gidx[t] == e0]
    if not members:
        return None
    for t in members:
        d0 = sw.demands(t, zero_back)[0]
        T0[d0] = min(T0[d0], sw.sums[t])
    count = _count(T0)
    live0 = np.flatnonzero(T0 < INF)
    e0vec = sw.vecs[e0][None, :]
    # layer 1: no feasibility test, fibre 0's leftover moves into the carried axis
    T = np.full((H, H, H), INF, dtype=np.int32)
    for t in full:
        nd = sw.demands(t, e0vec)[0]
        r = np.maximum(sw.vecs[live0] - np.maximum(sw.U[t] - 1, 0), 0) @ sw.strides
        np.minimum.at(T[sw.gidx[t], nd], r, T0[live0] + sw.sums[t])
    count += _count(T)
    tables = [T0, T] if keep else None
    for _ in range(2, n):
        T = sw.step_carry(T, full)
        count += _count(T)
        if keep:
            tables.append(T)
    # closing: fibre n-1 demand <= g(fibre 0), carried residual <= g(fibre n-1)
    closing = _closing_mask(sw, e0)
    value = int(np.where(closing, T, INF).min())
    return value, count, tables


def _closing_mask(sw: _Sweep, e0: int) -> np.ndarray:
    e = sw.vecs[e0]
    d_ok = (sw.vecs <= e).all(axis=1)
    r_ok = (sw.vecs[None, :, :] <= sw.vecs[:, None, :]).all(axis=2)  # [h, r]: r <= h
    return d_ok[None, :, None] & r_ok[:, None, :]


def _backtrack_torus(sw: _Sweep, e0, tables, value, first):
    n = len(tables)
    last = tables[-1]
    mask = _closing_mask(sw, e0)
    cells = np.argwhere(mask & (last == value))
    h, d, r = (int(x) for x in cells[0])
    rows = []
    for i in range(n - 1, 1, -1):
        prev = tables[i - 1]
        target = tables[i][h, d, r]
        for t in np.flatnonzero(sw.gidx == h):
            s = int(sw.sums[t])
            nd = sw.demands(t, sw.vecs)
            e = sw.vecs[int(sw.gidx[t])]
            dmask = (sw.vecs <= e).all(axis=1)
            cand = np.where(dmask[None, :], prev[:, :, r], INF).min(axis=1)
            ok = np.flatnonzero((nd == d) & (cand + s == target))
            if ok.size:
                h_prev = int(ok[0])
                d_prev = int(np.flatnonzero(dmask & (prev[h_prev, :, r] == target - s))[0])
                rows.append(sw.tuples[t])
                h, d = h_prev, d_prev
                break
        else:
            raise AssertionError("back-link missing during torus witness reconstruction")
    # fibre 1
    T0 = tables[0]
    target = tables[1][h, d, r]
    e0vec = sw.vecs[e0][None, :]
    for t in np.flatnonzero(sw.gidx == h):
        s = int(sw.sums[t])
        if sw.demands(t, e0vec)[0] != d:
            continue
        rr = np.maximum(sw.vecs - np.maximum(sw.U[t] - 1, 0), 0) @ sw.strides
        ok = np.flatnonzero((rr == r) & (T0 + s == target))
        if ok.size:
            d0 = int(ok[0])
            rows.append(sw.tuples[t])
            break
    else:
        raise AssertionError("back-link missing at fibre 1")
    zero_back = np.zeros((1, sw.m), dtype=np.int64)
    for t in first:
        if sw.gidx[t] == e0 and sw.sums[t] == T0[d0] and sw.demands(t, zero_back)[0] == d0:
            rows.append(sw.tuples[t])
            break
    else:
        raise AssertionError("back-link missing at fibre 0")
    rows.reverse()
    return rows


# -- brute force oracle ------------------------------------------------------


def brute_force(
    spec: GridSpec, k: int, *, budget: int = BRUTE_FORCE_BUDGET, skip_label_one: bool = False
) -> SolveResult:
    """Minimum weight [k]-RDF by exhaustive depth-first enumeration.

    Labels are assigned in fibre-major order; a vertex is checked as soon as
    its whole closed neighbourhood is assigned, and branches whose weight
    already reaches the incumbent are cut.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    size = (k + 2) ** spec.order
    if size > budget:
        raise CapacityError(
            f"brute force over {size:.3g} labelings exceeds the budget of {budget:.3g}", size, budget
        )
    order = list(vertices(spec))
    pos = {v: p for p, v in enumerate(order)}
    nbr = [[pos[u] for u in neighbors(spec, v)] for v in order]
    ready: list[list[int]] = [[] for _ in order]
    for p, v in enumerate(order):
        ready[max([p, *nbr[p]])].append(p)
    labels = [x for x in range(k + 2) if not (skip_label_one and k >= 2 and x == 1)]
    f = [0] * len(order)
    best = [sum(k + 1 for _ in order) + 1, None]
    nodes = [0]

    def ok(p):
        if f[p] >= k:
            return True
        total = f[p] + sum(f[q] for q in nbr[p])
        active = sum(1 for q in nbr[p] if f[q] > 0)
        return total >= k + active

    def dfs(p, w):
        nodes[0] += 1
        if w >= best[0]:
            return
        if p == len(order):
            best[0], best[1] = w, list(f)
            return
        for x in labels:
            if w + x >= best[0]:
                break
            f[p] = x
            if all(ok(q) for q in ready[p]):
                dfs(p + 1, w + x)
        f[p] = 0

    dfs(0, 0)
    m = spec.m
    rows = tuple(tuple(best[1][i * m : (i + 1) * m]) for i in range(spec.n))
    lab = Labeling(spec, k, rows)
    if validate(lab):
        raise AssertionError("brute force produced an invalid labeling")
    return SolveResult(best[0], lab, nodes[0], Method.BRUTE_FORCE)


# -- packing, efficient domination, domination --------------------------------


def _check_order(spec: GridSpec, limit: int):
    if spec.order > limit:
        raise CapacityError(f"{spec} has {spec.order} vertices, limit is {limit}", spec.order, limit)


def max_packing(spec: GridSpec, *, max_order: int = MAX_ORDER) -> SolveResult:
    """Maximum packing by branch and bound.

    A chosen vertex needs its whole closed neighbourhood inside the still-free
    region, so ``free // (delta + 1)`` more picks is an upper bound.
    """
    _check_order(spec, max_order)
    order = list(vertices(spec))
    closed = {v: frozenset(closed_neighborhood(spec, v)) for v in order}
    per = degree_bounds(spec)[0] + 1
    best: list = [0, frozenset()]
    nodes = [0]

    def rec(p, free, chosen):
        nodes[0] += 1
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), frozenset(chosen)
        if p == len(order) or len(chosen) + len(free) // per <= best[0]:
            return
        v = order[p]
        if closed[v] <= free:
            chosen.append(v)
            rec(p + 1, free - closed[v], chosen)
            chosen.pop()
        rec(p + 1, free, chosen)

    rec(0, frozenset(order), [])
    return SolveResult(best[0], best[1], nodes[0], Method.BRANCH_AND_BOUND)


def efficient_dominating_sets(spec: GridSpec, *, max_order: int = MAX_ORDER) -> Iterator[frozenset[Vertex]]:
    """Every efficient dominating set: exact covers of V by closed neighbourhoods."""
    _check_order(spec, max_order)
    rows = {v: frozenset(closed_neighborhood(spec, v)) for v in vertices(spec)}
    cols: dict[Vertex, set[Vertex]] = {v: set() for v in rows}
    for r, cells in rows.items():
        for c in cells:
            cols[c].add(r)
    yield from (frozenset(s) for s in _algorithm_x(cols, rows, []))


def _algorithm_x(cols, rows, partial):
    if not cols:
        yield list(partial)
        return
    c = min(cols, key=lambda c: (len(cols[c]), c))
    for r in sorted(cols[c]):
        partial.append(r)
        removed = _select(cols, rows, r)
        yield from _algorithm_x(cols, rows, partial)
        _deselect(cols, rows, r, removed)
        partial.pop()


def _select(cols, rows, r):
    removed = []
    for c in rows[r]:
        for other in cols[c]:
            for c2 in rows[other]:
                if c2 != c:
                    cols[c2].remove(other)
        removed.append(cols.pop(c))
    return removed


def _deselect(cols, rows, r, removed):
    for c in reversed(list(rows[r])):
        cols[c] = removed.pop()
        for other in cols[c]:
            for c2 in rows[other]:
                if c2 != c:
                    cols[c2].add(other)


def find_efficient_dominating_set(spec: GridSpec, *, max_order: int = MAX_ORDER) -> frozenset[Vertex] | None:
    return next(efficient_dominating_sets(spec, max_order=max_order), None)


def has_efficient_dominating_set(spec: GridSpec, *, max_order: int = MAX_ORDER) -> bool:
    return find_efficient_dominating_set(spec, max_order=max_order) is not None


def eds_theorem_predicts(m: int, n: int) -> bool:
    """Which cylinders C_m x P_n are efficient: n=1 with 3 | m, or n=2 with 4 | m."""
    return (n == 1 and m % 3 == 0) or (n == 2 and m % 4 == 0)


def domination_number(spec: GridSpec, *, max_order: int = 30) -> SolveResult:
    """Exact ``gamma(G)`` by branching on the dominators of the first undominated vertex."""
    _check_order(spec, max_order)
    order = list(vertices(spec))
    closed = {v: frozenset(closed_neighborhood(spec, v)) for v in order}
    per = degree_bounds(spec)[1] + 1
    best: list = [len(order) + 1, None]
    nodes = [0]

    def rec(undominated, chosen):
        nodes[0] += 1
        if not undominated:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), frozenset(chosen)
            return
        if len(chosen) + -(-len(undominated) // per) >= best[0]:
            return
        v = min(undominated)
        for u in sorted(closed[v], key=lambda u: (-len(closed[u] & undominated), u)):
            chosen.append(u)
            rec(undominated - closed[u], chosen)
            chosen.pop()

    rec(frozenset(order), [])
    return SolveResult(best[0], best[1], nodes[0], Method.BRANCH_AND_BOUND)
