"""Directed multigraphs with parallel edges and loops.

Edges carry dense integer ids ``0..|E|-1`` plus an opaque string label.
Graphs are immutable after construction; everything downstream (walks,
simple-cycle enumeration, the cycle polytope) identifies edges by id.

The simple-cycle enumerator is an iterative Johnson-style search adapted to
multigraphs: parallel edges are distinguished by id, a loop is a cycle of
length one, and each cycle is reported once in canonical rotation (smallest
edge id first).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from . import limits
from .errors import CapacityError


class Multigraph:
    """An immutable directed multigraph."""

    __slots__ = ("vertex_names", "edges", "_index_of", "_out", "_in")

    def __init__(
        self,
        vertex_names: Sequence[str],
        edges: Sequence[tuple[int, int, str]],
    ) -> None:
        names = tuple(str(v) for v in vertex_names)
        if len(set(names)) != len(names):
            raise ValueError("vertex names must be unique")
        n = len(names)
        checked = []
        for st, ar, label in edges:
            if not (0 <= st < n and 0 <= ar < n):
                raise IndexError(f"edge ({st}, {ar}) references a missing vertex")
            checked.append((int(st), int(ar), str(label)))
        self.vertex_names = names
        self.edges = tuple(checked)
        self._index_of = {name: i for i, name in enumerate(names)}
        out: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for eid, (st, ar, _) in enumerate(self.edges):
            out[st].append(eid)
            inc[ar].append(eid)
        self._out = tuple(tuple(ids) for ids in out)
        self._in = tuple(tuple(ids) for ids in inc)

    # -- basic accessors ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, name: str) -> int:
        return self._index_of[name]

    def st(self, eid: int) -> int:
        return self.edges[eid][0]

    def ar(self, eid: int) -> int:
        return self.edges[eid][1]

    def label(self, eid: int) -> str:
        return self.edges[eid][2]

    def is_loop(self, eid: int) -> bool:
        st, ar, _ = self.edges[eid]
        return st == ar

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def continuations(self, eid: int) -> tuple[int, ...]:
        """Edge ids that can follow ``eid`` in a walk (a loop continues itself)."""
        if not 0 <= eid < self.n_edges:
            raise IndexError(f"no edge with id {eid}")
        return self._out[self.ar(eid)]

    def __repr__(self) -> str:
        return f"Multigraph({self.n_vertices} vertices, {self.n_edges} edges)"

    # -- matrices and connectivity ------------------------------------------

    def incidence_matrix(self) -> list[list[int]]:
        """Vertex-by-edge signed incidence matrix; a loop contributes a lone +1."""
        mat = [[0] * self.n_edges for _ in range(self.n_vertices)]
        for eid, (st, ar, _) in enumerate(self.edges):
            if st == ar:
                mat[st][eid] = 1
            else:
                mat[st][eid] = -1
                mat[ar][eid] = 1
        return mat

    def connected_components(self) -> list[list[int]]:
        """Components in the undirected sense, ordered by smallest vertex id."""
        parent = list(range(self.n_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for st, ar, _ in self.edges:
            ra, rb = find(st), find(ar)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return [sorted(groups[r]) for r in sorted(groups)]

    def strongly_connected_components(self) -> list[list[int]]:
        """Tarjan's algorithm, iterative; components ordered by smallest vertex id."""
        n = self.n_vertices
        index = [-1] * n
        low = [0] * n
        on_stack = [False] * n
        stack: list[int] = []
        components: list[list[int]] = []
        counter = 0
        for root in range(n):
            if index[root] != -1:
                continue
            work: list[tuple[int, int]] = [(root, 0)]
            while work:
                v, ei = work[-1]
                if ei == 0:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                advanced = False
                for j in range(ei, len(self._out[v])):
                    w = self.ar(self._out[v][j])
                    if index[w] == -1:
                        work[-1] = (v, j + 1)
                        work.append((w, 0))
                        advanced = True
                        break
                    if on_stack[w]:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    components.append(sorted(comp))
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
        components.sort(key=lambda comp: comp[0])
        return components

    def is_strongly_connected(self) -> bool:
        return len(self.strongly_connected_components()) == 1

    # -- full subgraphs ------------------------------------------------------

    def cyclic_edge_ids(self) -> frozenset[int]:
        """Ids of edges lying on some cycle: loops, plus edges inside one SCC."""
        comp_of = [0] * self.n_vertices
        for ci, comp in enumerate(self.strongly_connected_components()):
            for v in comp:
                comp_of[v] = ci
        keep = []
        for eid, (st, ar, _) in enumerate(self.edges):
            if st == ar or comp_of[st] == comp_of[ar]:
                keep.append(eid)
        return frozenset(keep)

    def subgraph_with_edges(self, edge_ids: Iterable[int]) -> tuple["Multigraph", tuple[int, ...]]:
        """Same vertices, only the given edges (re-numbered densely).

        Returns the subgraph and the tuple mapping new edge ids to old ones.
        """
        kept = sorted(set(edge_ids))
        for eid in kept:
            if not 0 <= eid < self.n_edges:
                raise IndexError(f"no edge with id {eid}")
        sub = Multigraph(self.vertex_names, [self.edges[eid] for eid in kept])
        return sub, tuple(kept)

    def largest_full_subgraph(self) -> tuple["Multigraph", tuple[int, ...]]:
        """Drop every edge that lies on no cycle; vertices (even isolated ones)
        are retained.  Idempotent."""
        return self.subgraph_with_edges(self.cyclic_edge_ids())

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertex_names),
            "edges": [{"st": st, "ar": ar, "label": label} for st, ar, label in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "Multigraph":
        edges = [(e["st"], e["ar"], e["label"]) for e in data["edges"]]
        return cls(data["vertices"], edges)

    @classmethod
    def from_json(cls, text: str) -> "Multigraph":
        return cls.from_json_dict(json.loads(text))

    def to_dot(self, *, name: str = "G") -> str:
        def quote(s: str) -> str:
            return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

        lines = [f"digraph {name} {{"]
        for v in self.vertex_names:
            lines.append(f"  {quote(v)};")
        for st, ar, label in self.edges:
            lines.append(
                f"  {quote(self.vertex_names[st])} -> {quote(self.vertex_names[ar])}"
                f" [label={quote(label)}];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Walk:
    """A non-empty chained sequence of edge ids on a fixed graph."""

    graph: Multigraph = field(repr=False)
    edge_ids: tuple[int, ...]

    def __post_init__(self) -> None:
        ids = tuple(self.edge_ids)
        object.__setattr__(self, "edge_ids", ids)
        if not ids:
            raise ValueError("walks are non-empty")
        g = self.graph
        for eid in ids:
            if not 0 <= eid < g.n_edges:
                raise IndexError(f"no edge with id {eid}")
        for prev, nxt in zip(ids, ids[1:]):
            if g.ar(prev) != g.st(nxt):
                raise ValueError(
                    f"edges {prev} and {nxt} do not chain: "
                    f"arrival {g.ar(prev)} != start {g.st(nxt)}"
                )

    def __len__(self) -> int:
        return len(self.edge_ids)

    def vertices(self) -> tuple[int, ...]:
        """The |w|+1 vertices visited, in order."""
        g = self.graph
        first = g.st(self.edge_ids[0])
        return (first,) + tuple(g.ar(eid) for eid in self.edge_ids)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.graph.label(eid) for eid in self.edge_ids)

    def is_cycle(self) -> bool:
        g = self.graph
        return g.st(self.edge_ids[0]) == g.ar(self.edge_ids[-1])

    def concat(self, other: "Walk") -> "Walk":
        if other.graph is not self.graph:
            raise ValueError("walks live on different graphs")
        return Walk(self.graph, self.edge_ids + other.edge_ids)


def _canonical_rotation(edge_ids: Sequence[int]) -> tuple[int, ...]:
    pivot = edge_ids.index(min(edge_ids))
    return tuple(edge_ids[pivot:]) + tuple(edge_ids[:pivot])


@dataclass(frozen=True)
class SimpleCycle(Walk):
    """A closed walk with all edges and all visited vertices distinct.

    Stored in canonical rotation: the smallest edge id comes first.
    """

    def __post_init__(self) -> None:
        ids = tuple(self.edge_ids)
        if ids:
            ids = _canonical_rotation(ids)
        object.__setattr__(self, "edge_ids", ids)
        super().__post_init__()
        g = self.graph
        if g.st(self.edge_ids[0]) != g.ar(self.edge_ids[-1]):
            raise ValueError("cycle is not closed")
        if len(set(self.edge_ids)) != len(self.edge_ids):
            raise ValueError("cycle repeats an edge")
        starts = [g.st(eid) for eid in self.edge_ids]
        if len(set(starts)) != len(starts):
            raise ValueError("cycle repeats a vertex")


def iter_simple_cycles(
    g: Multigraph, *, max_cycles: int = limits.CYCLE_CAP
) -> Iterator[SimpleCycle]:
    """Yield every simple cycle of ``g`` exactly once.

    Each cycle is anchored at its smallest vertex; start vertices are scanned
    in increasing order and out-edges in increasing id order, so the emission
    order is deterministic.  Blocked-set bookkeeping follows Johnson's
    circuit-enumeration scheme (without the SCC pre-pass, which is only a
    speed-up).  Raises CapacityError after ``max_cycles`` cycles.
    """
    emitted = 0
    for s in range(g.n_vertices):
        # DFS over vertices >= s; cycles found here have minimum vertex s.
        blocked: set[int] = {s}
        barriers: dict[int, set[int]] = {}
        epath: list[int] = []
        vpath: list[int] = [s]
        stack: list[Iterator[int]] = [iter(g.out_edges(s))]
        closed: list[bool] = [False]
        while stack:
            advanced = False
            for eid in stack[-1]:
                w = g.ar(eid)
                if w < s:
                    continue
                if w == s:
                    emitted += 1
                    if emitted > max_cycles:
                        raise CapacityError(
                            f"more than {max_cycles} simple cycles; raise the cap to continue"
                        )
                    yield SimpleCycle(g, tuple(epath) + (eid,))
                    closed[-1] = True
                elif w not in blocked:
                    epath.append(eid)
                    vpath.append(w)
                    blocked.add(w)
                    stack.append(iter(g.out_edges(w)))
                    closed.append(False)
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            v = vpath.pop()
            if epath:
                epath.pop()
            if closed.pop():
                if closed:
                    closed[-1] = True
                pending = {v}
                while pending:
                    u = pending.pop()
                    if u in blocked:
                        blocked.discard(u)
                        pending.update(barriers.pop(u, ()))
            else:
                for eid in g.out_edges(v):
                    w = g.ar(eid)
                    if w >= s:
                        barriers.setdefault(w, set()).add(v)


def enumerate_simple_cycles(
    g: Multigraph,
    sink: Callable[[SimpleCycle], None] | None = None,
    *,
    max_cycles: int = limits.CYCLE_CAP,
) -> int:
    """Stream every simple cycle into ``sink`` and return the count."""
    count = 0
    for cycle in iter_simple_cycles(g, max_cycles=max_cycles):
        count += 1
        if sink is not None:
            sink(cycle)
    return count


@dataclass(frozen=True)
class WalkDecomposition:
    """A walk's edge multiset split into simple cycles plus a vertex-distinct tail."""

    cycles: tuple[SimpleCycle, ...]
    tail: Walk | None

    def edge_multiset(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for cycle in self.cycles:
            for eid in cycle.edge_ids:
                counts[eid] = counts.get(eid, 0) + 1
        if self.tail is not None:
            for eid in self.tail.edge_ids:
                counts[eid] = counts.get(eid, 0) + 1
        return counts


def decompose_walk(walk: Walk) -> WalkDecomposition:
    """Split a walk into simple cycles and a tail by repeatedly pruning the
    cycle closed at the first vertex repetition.

    The identity ``walk = C_1 + ... + C_l + tail`` holds as edge multisets;
    the pruned pieces are generally not contiguous in the original walk.
    """
    g = walk.graph
    cycles: list[SimpleCycle] = []
    stack_edges: list[int] = []
    stack_vertices: list[int] = [g.st(walk.edge_ids[0])]
    position: dict[int, int] = {stack_vertices[0]: 0}
    for eid in walk.edge_ids:
        v = g.ar(eid)
        stack_edges.append(eid)
        if v in position:
            # Everything pushed since the earlier visit of v closes a cycle.
            at = position[v]
            cycle_edges = stack_edges[at:]
            del stack_edges[at:]
            for u in stack_vertices[at + 1 :]:
                del position[u]
            del stack_vertices[at + 1 :]
            cycles.append(SimpleCycle(g, tuple(cycle_edges)))
        else:
            stack_vertices.append(v)
            position[v] = len(stack_vertices) - 1
    tail = Walk(g, tuple(stack_edges)) if stack_edges else None
    return WalkDecomposition(tuple(cycles), tail)


def eulerian_circuit(g: Multigraph, start: int) -> Walk:
    """An Eulerian circuit from ``start`` (Hierholzer, smallest edge id first).

    Requires the usual balance and connectivity conditions; raises ValueError
    when the graph has no Eulerian circuit through ``start``.
    """
    if g.n_edges == 0:
        raise ValueError("graph has no edges")
    for v in range(g.n_vertices):
        if g.in_degree(v) != g.out_degree(v):
            raise ValueError(f"vertex {v} is unbalanced; no Eulerian circuit")
    next_ptr = [0] * g.n_vertices
    vertex_stack = [start]
    edge_stack: list[int] = []
    circuit: list[int] = []
    while vertex_stack:
        v = vertex_stack[-1]
        out = g.out_edges(v)
        if next_ptr[v] < len(out):
            eid = out[next_ptr[v]]
            next_ptr[v] += 1
            vertex_stack.append(g.ar(eid))
            edge_stack.append(eid)
        else:
            vertex_stack.pop()
            if edge_stack:
                circuit.append(edge_stack.pop())
    circuit.reverse()
    if len(circuit) != g.n_edges:
        raise ValueError("graph is not connected enough for an Eulerian circuit")
    return Walk(g, tuple(circuit))
