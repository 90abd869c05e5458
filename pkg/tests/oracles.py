"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately written from the definitions, sharing no code
with the implementations under test: occurrence counting by explicit pairwise
order comparison, simple cycles by edge-subset filtering, affine rank by its
own Gaussian elimination, and convex-hull membership by an exact phase-1
simplex over the vertex list.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence


# -- pattern counting ------------------------------------------------------


def order_isomorphic(values: Sequence, pattern: Sequence[int]) -> bool:
    k = len(pattern)
    return all(
        (values[i] < values[j]) == (pattern[i] < pattern[j])
        for i in range(k)
        for j in range(i + 1, k)
    )


def naive_occ(pattern: Sequence[int], sigma: Sequence[int]) -> int:
    n, k = len(sigma), len(pattern)
    return sum(
        1
        for comb in itertools.combinations(range(n), k)
        if order_isomorphic([sigma[i] for i in comb], pattern)
    )


def naive_cocc(pattern: Sequence[int], sigma: Sequence[int]) -> int:
    n, k = len(sigma), len(pattern)
    return sum(1 for i in range(n - k + 1) if order_isomorphic(sigma[i : i + k], pattern))


# -- simple cycles by subset filtering --------------------------------------


def _subset_as_cycle(g, subset: tuple[int, ...]) -> tuple[int, ...] | None:
    """Canonical edge tuple if the subset forms one simple cycle, else None."""
    starts = [g.st(e) for e in subset]
    arrivals = [g.ar(e) for e in subset]
    if len(set(starts)) != len(subset) or len(set(arrivals)) != len(subset):
        return None
    if set(starts) != set(arrivals):
        return None
    by_start = {g.st(e): e for e in subset}
    first = min(subset)
    seq = [first]
    while True:
        nxt = by_start.get(g.ar(seq[-1]))
        if nxt is None or (nxt in seq and nxt != first):
            return None
        if nxt == first:
            break
        seq.append(nxt)
    if len(seq) != len(subset):
        return None
    return tuple(seq)


def brute_force_simple_cycles(g) -> set[tuple[int, ...]]:
    found = set()
    for r in range(1, g.n_edges + 1):
        for subset in itertools.combinations(range(g.n_edges), r):
            cycle = _subset_as_cycle(g, subset)
            if cycle is not None:
                found.add(cycle)
    return found


def count_simple_cycles_dp(g) -> int:
    """Count simple cycles by subset DP over vertices, multiplying parallel
    edge counts; independent of the enumeration under test and usable on
    graphs too dense for subset filtering."""
    n = g.n_vertices
    adjacency = [[0] * n for _ in range(n)]
    total = 0
    for eid in range(g.n_edges):
        u, v = g.st(eid), g.ar(eid)
        if u == v:
            total += 1  # every loop is its own cycle
        else:
            adjacency[u][v] += 1
    for s in range(n):
        # simple paths s -> v through vertices > s; anchor cycles at their
        # minimum vertex s. paths[mask][v]: #paths visiting exactly mask.
        paths: dict[int, dict[int, int]] = {}
        for v in range(s + 1, n):
            if adjacency[s][v]:
                paths.setdefault(1 << v, {})[v] = adjacency[s][v]
        for mask in range(1, 1 << n):  # adding a vertex only increases the mask
            layer = paths.get(mask)
            if not layer:
                continue
            for v, ways in layer.items():
                total += ways * adjacency[v][s]
                for w in range(s + 1, n):
                    if not mask & (1 << w) and adjacency[v][w]:
                        nxt = paths.setdefault(mask | (1 << w), {})
                        nxt[w] = nxt.get(w, 0) + ways * adjacency[v][w]
    return total


# -- exact linear algebra ----------------------------------------------------


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Rank of the differences to the first point, by Gaussian elimination."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[Fraction(x) - Fraction(b) for x, b in zip(p, base)] for p in points[1:]]
    rank = 0
    cols = len(base)
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank][col]
        rows[rank] = [x / head for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# -- exact convex-hull membership (phase-1 simplex, Bland's rule) -------------


def in_convex_hull(points: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> bool:
    """Is x a convex combination of the given points?  Exact rational LP."""
    n = len(points)
    if n == 0:
        return False
    d = len(x)
    rows = [[Fraction(points[j][i]) for j in range(n)] for i in range(d)]
    rows.append([Fraction(1)] * n)
    rhs = [Fraction(v) for v in x] + [Fraction(1)]
    return _phase1_feasible(rows, rhs)


def _phase1_feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    m, n = len(rows), len(rows[0])
    tableau = []
    for i in range(m):
        row, b = rows[i], rhs[i]
        if b < 0:
            row, b = [-a for a in row], -b
        art = [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        tableau.append(row + art + [b])
    basis = list(range(n, n + m))
    ncols = n + m
    while True:
        in_basis = set(basis)
        entering = None
        for j in range(ncols):
            if j in in_basis:
                continue
            # reduced cost for min(sum of artificials): c_j - sum of tableau
            # rows whose basic variable is artificial
            reduced = (1 if j >= n else 0) - sum(
                tableau[i][j] for i in range(m) if basis[i] >= n
            )
            if reduced < 0:
                entering = j  # Bland: first improving index
                break
        if entering is None:
            break
        leaving = None
        best_ratio = None
        for i in range(m):
            if tableau[i][entering] > 0:
                ratio = tableau[i][ncols] / tableau[i][entering]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio, leaving = ratio, i
        assert leaving is not None, "phase-1 objective is bounded below"
        pivot = tableau[leaving][entering]
        tableau[leaving] = [v / pivot for v in tableau[leaving]]
        for i in range(m):
            if i != leaving and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[leaving])]
        basis[leaving] = entering
    objective = sum(tableau[i][ncols] for i in range(m) if basis[i] >= n)
    return objective == 0
