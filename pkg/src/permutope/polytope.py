"""The cycle polytope of a directed multigraph, in exact rational arithmetic.

The polytope lives in R^{E(G)}: it is the convex hull of the normalized
edge-frequency vectors of the simple cycles of G.  Everything here is a
certificate, not an approximation: membership tests check the defining
equations over ``Fraction``, positive answers come with an explicit convex
decomposition into cycle vectors, and faces are handled through the full
subgraphs that index them.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import limits
from .errors import CapacityError, EmptyError, EmptyPolytopeError, NotFullError, NotInPolytopeError
from .graphs import Multigraph, SimpleCycle, iter_simple_cycles
from .rationals import as_fraction


@dataclass(frozen=True)
class CycleVector:
    """The point of the polytope carried by one simple cycle: entry 1/|C| on
    each cycle edge, 0 elsewhere."""

    cycle: SimpleCycle
    entries: tuple[Fraction, ...]

    @classmethod
    def from_cycle(cls, graph: Multigraph, cycle: SimpleCycle) -> "CycleVector":
        if cycle.graph is not graph:
            raise IndexError("cycle references edges of a different graph")
        weight = Fraction(1, len(cycle))
        entries = [Fraction(0)] * graph.n_edges
        for eid in cycle.edge_ids:
            entries[eid] = weight
        return cls(cycle, tuple(entries))

    def support(self) -> frozenset[int]:
        return frozenset(self.cycle.edge_ids)


def cycle_vector(graph: Multigraph, cycle: SimpleCycle) -> CycleVector:
    return CycleVector.from_cycle(graph, cycle)


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a membership test, with a certificate either way: the
    violated constraint, or a convex decomposition into cycle vectors."""

    member: bool
    violation: str | None = None
    decomposition: tuple[tuple[Fraction, SimpleCycle], ...] | None = None

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class FaceHandle:
    """A face of the polytope, identified by the full subgraph carrying it."""

    polytope: "CyclePolytope" = field(repr=False)
    edge_ids: tuple[int, ...]

    def dimension(self) -> int:
        return self.polytope.face_dimension(self)

    def __len__(self) -> int:
        return len(self.edge_ids)


@dataclass(frozen=True)
class FacePoset:
    """All non-empty full subgraphs of the graph, ordered by inclusion."""

    polytope: "CyclePolytope" = field(repr=False)
    faces: tuple[FaceHandle, ...]

    @staticmethod
    def leq(a: FaceHandle, b: FaceHandle) -> bool:
        return set(a.edge_ids) <= set(b.edge_ids)

    def by_dimension(self) -> dict[int, tuple[FaceHandle, ...]]:
        grouped: dict[int, list[FaceHandle]] = {}
        for face in self.faces:
            grouped.setdefault(face.dimension(), []).append(face)
        return {dim: tuple(handles) for dim, handles in sorted(grouped.items())}

    def facets(self) -> tuple[FaceHandle, ...]:
        if not self.faces:
            return ()
        top = self.polytope.dimension()
        return tuple(f for f in self.faces if f.dimension() == top - 1)


def _matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    work = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    n_cols = len(work[0]) if work else 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


class CyclePolytope:
    """P(G) = conv{ cycle vectors of simple cycles of G }.

    The defining system is the per-vertex flow balance plus the normalization
    row; dropping the normalization row describes the cone of non-negative
    circulations that the polytope spans.
    """

    __slots__ = ("graph", "full_edge_ids", "_full_part", "_equation_rows", "_equation_rhs")

    def __init__(self, graph: Multigraph) -> None:
        self.graph = graph
        self.full_edge_ids = graph.cyclic_edge_ids()
        self._full_part: tuple[Multigraph, tuple[int, ...]] | None = None
        # Flow conservation at every vertex (+1 incoming, -1 outgoing; a loop
        # contributes to both sides and cancels), then the normalization row.
        rows: list[list[int]] = []
        rhs: list[int] = []
        for v in range(graph.n_vertices):
            row = [0] * graph.n_edges
            for eid, (st, ar, _) in enumerate(graph.edges):
                if st != ar:
                    if ar == v:
                        row[eid] += 1
                    if st == v:
                        row[eid] -= 1
            rows.append(row)
            rhs.append(0)
        rows.append([1] * graph.n_edges)
        rhs.append(1)
        self._equation_rows = tuple(tuple(row) for row in rows)
        self._equation_rhs = tuple(rhs)

    # -- vertices --------------------------------------------------------

    def simple_cycles(self, *, max_cycles: int = limits.CYCLE_CAP) -> Iterator[SimpleCycle]:
        return iter_simple_cycles(self.graph, max_cycles=max_cycles)

    def vertices(self, *, max_cycles: int = limits.CYCLE_CAP) -> tuple[CycleVector, ...]:
        """One vertex per simple cycle, sorted by canonical cycle ids.

        Distinct simple cycles have distinct vectors, so the vertex count
        equals the simple-cycle count.
        """
        vectors = [
            CycleVector.from_cycle(self.graph, c)
            for c in iter_simple_cycles(self.graph, max_cycles=max_cycles)
        ]
        vectors.sort(key=lambda cv: cv.cycle.edge_ids)
        return tuple(vectors)

    # -- dimension ---------------------------------------------------------

    def full_part(self) -> tuple[Multigraph, tuple[int, ...]]:
        """The largest full subgraph (cached) and its new->old edge id map."""
        if self._full_part is None:
            self._full_part = self.graph.subgraph_with_edges(self.full_edge_ids)
        return self._full_part

    def dimension(self) -> int:
        """|E(H)| - |V(G)| + #components(H) - 1 on the largest full subgraph H
        (isolated vertices count as components)."""
        if not self.full_edge_ids:
            raise EmptyPolytopeError("the graph has no cycle; the polytope is empty")
        sub, _ = self.full_part()
        comps = len(sub.connected_components())
        return len(self.full_edge_ids) - self.graph.n_vertices + comps - 1

    def ambient_affine_dimension(self) -> int:
        """Dimension of the affine space cut out by the defining equations.

        Equals ``dimension()`` whenever the graph is full and strongly
        connected (in particular for every overlap graph); used as the
        equation-rank route to the dimension.
        """
        return self.graph.n_edges - _matrix_rank(self._equation_rows)

    # -- membership ---------------------------------------------------------

    def equation_system(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """(rows, rhs): per-vertex conservation rows (= 0) and the sum row (= 1)."""
        return self._equation_rows, self._equation_rhs

    def _coerce_point(self, point: Sequence) -> list[Fraction]:
        values = [as_fraction(x) for x in point]
        if len(values) != self.graph.n_edges:
            raise IndexError(
                f"point has {len(values)} entries, graph has {self.graph.n_edges} edges"
            )
        return values

    def _equation_violation(self, x: list[Fraction]) -> str | None:
        g = self.graph
        for eid, value in enumerate(x):
            if value < 0:
                return f"negative entry x[{eid}] = {value}"
        total = sum(x, Fraction(0))
        if total != 1:
            return f"entries sum to {total}, not 1"
        for v in range(g.n_vertices):
            outflow = sum((x[eid] for eid in g.out_edges(v)), Fraction(0))
            inflow = sum((x[eid] for eid in g.in_edges(v)), Fraction(0))
            if outflow != inflow:
                return (
                    f"flow not conserved at vertex {g.vertex_names[v]!r}: "
                    f"out {outflow} != in {inflow}"
                )
        # Implied by the equations; kept as an explicit consistency check.
        for eid, value in enumerate(x):
            if value > 0 and eid not in self.full_edge_ids:
                return f"support edge {eid} lies on no cycle"
        return None

    def membership(self, point: Sequence) -> MembershipResult:
        """Exact test of the defining equations, with a certificate."""
        x = self._coerce_point(point)
        violation = self._equation_violation(x)
        if violation is not None:
            return MembershipResult(False, violation=violation)
        return MembershipResult(True, decomposition=tuple(self._greedy_decomposition(x)))

    def convex_decomposition(self, point: Sequence) -> tuple[tuple[Fraction, SimpleCycle], ...]:
        """Write a member point as an exact convex combination of cycle vectors.

        Greedy flow extraction: walk the support along smallest-id
        continuations until a vertex repeats, peel that simple cycle off with
        the largest weight keeping all entries non-negative.  Uses at most |E|
        cycles since every round zeroes at least one edge.
        """
        x = self._coerce_point(point)
        violation = self._equation_violation(x)
        if violation is not None:
            raise NotInPolytopeError(violation)
        return tuple(self._greedy_decomposition(x))

    def _greedy_decomposition(self, x: list[Fraction]) -> list[tuple[Fraction, SimpleCycle]]:
        g = self.graph
        remaining = list(x)
        result: list[tuple[Fraction, SimpleCycle]] = []
        while True:
            start = next((eid for eid, v in enumerate(remaining) if v > 0), None)
            if start is None:
                break
            seen = {g.st(start): 0}
            edges = [start]
            while True:
                v = g.ar(edges[-1])
                if v in seen:
                    cycle_edges = edges[seen[v] :]
                    break
                seen[v] = len(edges)
                # Conservation guarantees an outgoing support edge exists.
                edges.append(min(e for e in g.out_edges(v) if remaining[e] > 0))
            flow = min(remaining[e] for e in cycle_edges)
            for e in cycle_edges:
                remaining[e] -= flow
            cycle = SimpleCycle(g, tuple(cycle_edges))
            result.append((flow * len(cycle_edges), cycle))
        return result

    # -- faces ---------------------------------------------------------------

    def face(self, edge_ids: Iterable[int]) -> FaceHandle:
        """The face carried by a full subgraph, given as an edge subset."""
        ids = tuple(sorted(set(edge_ids)))
        if not ids:
            raise EmptyError("the empty subgraph does not index a face")
        sub, kept = self.graph.subgraph_with_edges(ids)
        cyclic = sub.cyclic_edge_ids()
        if len(cyclic) != len(ids):
            dead = [kept[i] for i in range(len(ids)) if i not in cyclic]
            raise NotFullError(f"edges {dead} lie on no cycle of the subgraph")
        return FaceHandle(self, ids)

    def face_dimension(self, handle: FaceHandle) -> int:
        sub, _ = self.graph.subgraph_with_edges(handle.edge_ids)
        comps = len(sub.connected_components())
        return len(handle.edge_ids) - self.graph.n_vertices + comps - 1

    def face_poset(self, *, max_edges: int = limits.FACE_EDGE_CAP) -> FacePoset:
        """All faces, via enumeration of the non-empty full edge subsets.

        Exponential in |E| of the full part, hence guarded by ``max_edges``.
        """
        full = sorted(self.full_edge_ids)
        if len(full) > max_edges:
            raise CapacityError(
                f"face enumeration over {len(full)} edges exceeds the cap {max_edges}"
            )
        faces: list[FaceHandle] = []
        for r in range(1, len(full) + 1):
            for subset in itertools.combinations(full, r):
                sub, _ = self.graph.subgraph_with_edges(subset)
                if len(sub.cyclic_edge_ids()) == len(subset):
                    faces.append(FaceHandle(self, subset))
        faces.sort(key=lambda f: (f.dimension(), f.edge_ids))
        return FacePoset(self, tuple(faces))

    def skeleton_adjacent(self, c1: SimpleCycle, c2: SimpleCycle) -> bool:
        """Whether two polytope vertices are joined by an edge of the polytope.

        True exactly when the union of the two cycles carries a 1-dimensional
        face, which happens when the cycles are vertex-disjoint or one is a
        single chord of the other.
        """
        if c1.graph is not self.graph or c2.graph is not self.graph:
            raise IndexError("cycle references edges of a different graph")
        if set(c1.edge_ids) == set(c2.edge_ids):
            return False
        union = self.face(set(c1.edge_ids) | set(c2.edge_ids))
        return self.face_dimension(union) == 1

    # -- export ----------------------------------------------------------------

    def to_json_dict(self, *, max_cycles: int = limits.CYCLE_CAP) -> dict:
        rows, rhs = self.equation_system()
        return {
            "edge_labels": [label for _, _, label in self.graph.edges],
            "equations": [
                {"coefficients": [str(c) for c in row], "rhs": str(b)}
                for row, b in zip(rows, rhs)
            ],
            "vertices": {
                ",".join(map(str, cv.cycle.edge_ids)): [str(v) for v in cv.entries]
                for cv in self.vertices(max_cycles=max_cycles)
            },
        }

    def to_json(self, *, max_cycles: int = limits.CYCLE_CAP) -> str:
        return json.dumps(self.to_json_dict(max_cycles=max_cycles), indent=2, sort_keys=True) + "\n"

    def hrep_text(self) -> str:
        """H-representation interchange text: 'A x >= b' block, 'C x = d' block."""
        lines = ["A x >= b"]
        for eid in range(self.graph.n_edges):
            row = ["0"] * self.graph.n_edges
            row[eid] = "1"
            lines.append(" ".join(row) + " >= 0")
        lines.append("C x = d")
        rows, rhs = self.equation_system()
        for row, b in zip(rows, rhs):
            lines.append(" ".join(str(c) for c in row) + f" = {b}")
        return "\n".join(lines) + "\n"
