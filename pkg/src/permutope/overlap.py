"""The overlap graph of size k and the walk correspondence for permutations.

Vertices are the patterns of size k-1; every pattern p of size k contributes
one edge from the pattern of its first k-1 entries to the pattern of its last
k-1 entries.  Sliding a width-k window along a permutation then traces a walk
in this graph, and conversely every walk is realized by some permutation via
a greedy point-insertion construction.

Vertex ids and edge ids follow the lexicographic order of the one-line words,
so edge id i always denotes the i-th pattern of size k.
"""

from __future__ import annotations

from functools import lru_cache

from . import limits
from .errors import CapacityError, SizeError
from .graphs import Multigraph, SimpleCycle, Walk, eulerian_circuit
from .perms import Permutation, all_patterns, pattern_at, window_pattern


def _word_from_insert_ranks(ranks: list[int]) -> list[int]:
    """Final values of points inserted one by one at given value-ranks.

    Processing in reverse, the point inserted at step t (1-based rank r among
    the then-present t points) occupies the r-th still-free slot of 1..n.
    Fenwick tree with binary lifting gives O(n log n) overall.
    """
    n = len(ranks)
    tree = [0] * (n + 1)
    for i in range(1, n + 1):
        tree[i] = i & -i
    log = n.bit_length()

    def take_kth(j: int) -> int:
        pos = 0
        bit = 1 << log
        while bit:
            nxt = pos + bit
            if nxt <= n and tree[nxt] < j:
                pos = nxt
                j -= tree[nxt]
            bit >>= 1
        slot = pos + 1
        i = slot
        while i <= n:
            tree[i] -= 1
            i += i & -i
        return slot

    word = [0] * n
    for t in range(n - 1, -1, -1):
        word[t] = take_kth(ranks[t])
    return word


def begin_pattern(pattern: Permutation) -> Permutation:
    """Pattern of the first k-1 entries."""
    k = len(pattern)
    if k < 2:
        raise SizeError("need size >= 2 to drop an endpoint")
    return pattern_at(pattern, range(1, k))


def end_pattern(pattern: Permutation) -> Permutation:
    """Pattern of the last k-1 entries."""
    k = len(pattern)
    if k < 2:
        raise SizeError("need size >= 2 to drop an endpoint")
    return pattern_at(pattern, range(2, k + 1))


class OverlapGraph:
    """The overlap graph for patterns of size ``k``.

    (k-1)! vertices, k! edges, strongly connected, every vertex has in- and
    out-degree k.  Edge labels are the size-k pattern words and are unique,
    so the label doubles as the edge identity.
    """

    __slots__ = ("k", "graph", "_vertex_perms", "_edge_perms", "_edge_of")

    def __init__(self, k: int) -> None:
        vertex_perms = all_patterns(k - 1)
        edge_perms = all_patterns(k)
        vertex_id = {p: i for i, p in enumerate(vertex_perms)}
        edges = [
            (vertex_id[begin_pattern(p)], vertex_id[end_pattern(p)], str(p))
            for p in edge_perms
        ]
        self.k = k
        self.graph = Multigraph([str(p) for p in vertex_perms], edges)
        self._vertex_perms = vertex_perms
        self._edge_perms = edge_perms
        self._edge_of = {p: i for i, p in enumerate(edge_perms)}

    def __repr__(self) -> str:
        return f"OverlapGraph(k={self.k})"

    def vertex_permutation(self, vid: int) -> Permutation:
        return self._vertex_perms[vid]

    def edge_permutation(self, eid: int) -> Permutation:
        return self._edge_perms[eid]

    def edge_of(self, pattern: Permutation) -> int:
        return self._edge_of[pattern]

    def walk_of(self, sigma: Permutation) -> Walk:
        """The walk traced by the width-k windows of ``sigma``."""
        k, n = self.k, len(sigma)
        if n < k:
            raise SizeError(f"permutation of size {n} has no window of width {k}")
        ids = tuple(
            self._edge_of[window_pattern(sigma, i, k)] for i in range(1, n - k + 2)
        )
        return Walk(self.graph, ids)

    def walk_labels(self, walk: Walk) -> tuple[Permutation, ...]:
        return tuple(self._edge_perms[eid] for eid in walk.edge_ids)

    def permutation_of_walk(self, walk: Walk) -> Permutation:
        """A permutation of size |walk| + k - 1 whose window walk is ``walk``.

        Built greedily: start from the first edge label and repeatedly append
        a point on the right so that the last k points induce the next label.
        Among the admissible heights the lowest slot that stays above the
        current bottom row is chosen (the absolute bottom only when forced),
        which makes the construction deterministic.

        Only the insertion ranks and the sliding window are tracked while
        walking; the final word is assembled in one O(n log n) pass.
        """
        if walk.graph is not self.graph:
            raise ValueError("walk does not live on this overlap graph")
        k = self.k
        first = self._edge_perms[walk.edge_ids[0]].word
        # Rank of each entry within its prefix: re-inserting at these ranks
        # rebuilds the first label.
        ranks = [sum(1 for u in first[:i] if u < v) + 1 for i, v in enumerate(first)]
        window = list(first[1:])  # current values of the last k-1 points
        size = k
        for eid in walk.edge_ids[1:]:
            label = self._edge_perms[eid].word
            ordered = sorted(window)
            rank = label[-1]
            lo = 1 if rank == 1 else ordered[rank - 2] + 1
            hi = size + 1 if rank == k else ordered[rank - 1]
            new = lo if lo >= 2 else (2 if hi >= 2 else 1)
            window = [v + 1 if v >= new else v for v in window[1:]]
            window.append(new)
            ranks.append(new)
            size += 1
        return Permutation(tuple(_word_from_insert_ranks(ranks)))


@lru_cache(maxsize=None)
def build_overlap_graph(k: int, *, max_k: int = limits.OVERLAP_K_CAP) -> OverlapGraph:
    """Construct (and cache) the overlap graph for size ``k``."""
    if k < 2 or k > max_k:
        raise CapacityError(f"overlap graphs are built for 2 <= k <= {max_k}, got {k}")
    return OverlapGraph(k)


def walk_of(sigma: Permutation, k: int) -> Walk:
    return build_overlap_graph(k).walk_of(sigma)


def permutation_of_walk(og: OverlapGraph, walk: Walk) -> Permutation:
    return og.permutation_of_walk(walk)


def cocc_via_walk(pattern: Permutation, sigma: Permutation) -> int:
    """Consecutive occurrences counted as label hits along the window walk.

    Independent route to the same number as ``perms.cocc``; exists for
    cross-validation.
    """
    k = len(pattern)
    if k < 2:
        raise SizeError("walk counting needs patterns of size >= 2")
    if len(sigma) < k:
        raise SizeError(f"pattern size {k} exceeds permutation size {len(sigma)}")
    og = build_overlap_graph(k)
    target = og.edge_of(pattern)
    return sum(1 for eid in og.walk_of(sigma).edge_ids if eid == target)


def eulerian_universal_permutation(k: int, *, max_k: int = limits.OVERLAP_K_CAP) -> Permutation:
    """A permutation of size k! + k - 1 containing every size-k pattern exactly
    once consecutively, from an Eulerian circuit of the overlap graph."""
    og = build_overlap_graph(k, max_k=max_k)
    circuit = eulerian_circuit(og.graph, 0)
    return og.permutation_of_walk(circuit)


def hamiltonian_cycle(k: int, *, max_k: int = limits.OVERLAP_K_CAP) -> SimpleCycle:
    """A simple cycle through every vertex of the overlap graph exactly once.

    Depth-first search in lexicographic vertex order; the graph is rich enough
    that this is fast for every buildable k.
    """
    og = build_overlap_graph(k, max_k=max_k)
    g = og.graph
    n = g.n_vertices
    if n == 1:
        loop = min(eid for eid in range(g.n_edges) if g.is_loop(eid))
        return SimpleCycle(g, (loop,))
    visited = [False] * n
    visited[0] = True
    edges: list[int] = []

    def extend(v: int) -> bool:
        if len(edges) == n - 1:
            for eid in g.out_edges(v):
                if g.ar(eid) == 0:
                    edges.append(eid)
                    return True
            return False
        for eid in g.out_edges(v):
            w = g.ar(eid)
            if not visited[w]:
                visited[w] = True
                edges.append(eid)
                if extend(w):
                    return True
                edges.pop()
                visited[w] = False
        return False

    if not extend(0):
        raise CapacityError(f"no Hamiltonian cycle found in the overlap graph for k={k}")
    return SimpleCycle(g, tuple(edges))
