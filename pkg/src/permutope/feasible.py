"""The feasible region of consecutive-pattern proportion vectors.

For each k the region is the cycle polytope of the overlap graph, so
membership reduces to the flow equations over the patterns of size k.  This
module adds the constructive side: given a feasible rational target, build
explicit permutations whose consecutive proportions approach it with an
explicit O(1/size) bound, derandomize a finitely supported distribution into
a single block permutation, and combine a consecutive target with a classical
one through substitution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable, Iterable, Mapping, Sequence

from . import limits
from .errors import CapacityError, DistributionError, NotInPolytopeError
from .graphs import SimpleCycle, Walk
from .overlap import build_overlap_graph
from .perms import (
    PatternVector,
    Permutation,
    direct_sum,
    proportion_vector,
    repeat_sum,
    substitute,
)
from .polytope import CyclePolytope, MembershipResult
from .rationals import as_fraction


class FeasibleRegion:
    """P_k as the cycle polytope of the overlap graph, with pattern-vector I/O.

    Edge id i of the overlap graph is the i-th pattern of size k in
    lexicographic order, so a PatternVector converts to a polytope point by
    listing its entries in pattern order.
    """

    __slots__ = ("k", "overlap", "polytope")

    def __init__(self, k: int, *, max_k: int = limits.OVERLAP_K_CAP) -> None:
        self.overlap = build_overlap_graph(k, max_k=max_k)
        self.k = k
        self.polytope = CyclePolytope(self.overlap.graph)

    def __repr__(self) -> str:
        return f"FeasibleRegion(k={self.k})"

    def dimension(self) -> int:
        return self.polytope.dimension()

    def point_of(self, vector: PatternVector) -> list[Fraction]:
        if vector.k != self.k:
            raise IndexError(f"vector over S_{vector.k}, region over S_{self.k}")
        return vector.values_by_pattern()

    def vector_of(self, point: Sequence) -> PatternVector:
        return PatternVector.from_values(self.k, [as_fraction(x) for x in point])

    def membership(self, vector: PatternVector) -> MembershipResult:
        return self.polytope.membership(self.point_of(vector))

    def realize(self, vector: PatternVector, m: int) -> tuple[Permutation, "RealizationPlan"]:
        """A permutation whose consecutive proportions at size k approximate
        the feasible target ``vector``, plus the reusable plan behind it."""
        plan = self.plan(vector)
        return plan.generate(m), plan

    def plan(self, vector: PatternVector) -> "RealizationPlan":
        result = self.membership(vector)
        if not result.member:
            raise NotInPolytopeError(result.violation)
        decomposition = result.decomposition
        assert decomposition is not None
        weight_den = math.lcm(*(w.denominator for w, _ in decomposition))
        numerators = tuple(int(w * weight_den) for w, _ in decomposition)
        cycle_lcm = math.lcm(*(len(c) for _, c in decomposition))
        return RealizationPlan(
            region=self,
            target=vector,
            decomposition=decomposition,
            numerators=numerators,
            weight_denominator=weight_den,
            cycle_lcm=cycle_lcm,
        )


@lru_cache(maxsize=None)
def feasible_region(k: int) -> FeasibleRegion:
    return FeasibleRegion(k)


def feasible_membership(k: int, vector: PatternVector) -> MembershipResult:
    """Exact membership of a pattern vector in the feasible region, with a
    certificate (violated equation, or convex decomposition into cycles)."""
    return feasible_region(k).membership(vector)


def realize(k: int, vector: PatternVector, m: int) -> tuple[Permutation, "RealizationPlan"]:
    return feasible_region(k).realize(vector, m)


@dataclass(frozen=True)
class RealizationPlan:
    """Block construction realizing a feasible target.

    The target is written as a convex combination of cycle vectors; for a
    size parameter m, each cycle C with weight p/q contributes a block
    realizing the walk C repeated m*p*(L/|C|) times (L = lcm of the cycle
    lengths), and the blocks are joined by direct sums.  Block lengths are
    then exactly proportional to the weights, and the only deviation from the
    target comes from block boundaries and the tail of each walk.
    """

    region: FeasibleRegion = field(repr=False)
    target: PatternVector
    decomposition: tuple[tuple[Fraction, SimpleCycle], ...]
    numerators: tuple[int, ...]
    weight_denominator: int
    cycle_lcm: int

    def block_count(self) -> int:
        return len(self.decomposition)

    def size_for(self, m: int) -> int:
        k = self.region.k
        return m * self.cycle_lcm * self.weight_denominator + self.block_count() * (k - 1)

    def sup_error_bound(self, m: int) -> Fraction:
        """Bound on the sup-distance between the size-k consecutive
        proportions of generate(m) and the target: block-boundary windows
        contribute at most k per block, the walk tails at most (k-1)!."""
        k = self.region.k
        return Fraction(
            k * self.block_count() + math.factorial(k - 1), self.size_for(m)
        )

    def generate(self, m: int) -> Permutation:
        """The realizing permutation for size parameter m >= 1; sizes are
        strictly increasing in m."""
        if m < 1:
            raise ValueError(f"size parameter must be >= 1, got {m}")
        og = self.region.overlap
        blocks = []
        for (_, cycle), p in zip(self.decomposition, self.numerators):
            copies = m * p * (self.cycle_lcm // len(cycle))
            walk = Walk(og.graph, cycle.edge_ids * copies)
            blocks.append(og.permutation_of_walk(walk))
        return reduce(direct_sum, blocks)

    def to_json_dict(self) -> dict:
        og = self.region.overlap
        return {
            "k": self.region.k,
            "target": self.target.to_json_dict(),
            "decomposition": [
                {
                    "weight": str(w),
                    "cycle_edges": list(c.edge_ids),
                    "cycle_labels": [str(og.edge_permutation(e)) for e in c.edge_ids],
                }
                for w, c in self.decomposition
            ],
            "weight_denominator": self.weight_denominator,
            "cycle_lcm": self.cycle_lcm,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def derandomize_weights(
    distribution: Mapping[Permutation, object], epsilon: Fraction | None = None
) -> dict[Permutation, int]:
    """Integer multiplicities q approximating a distribution: |q/sum(q) - p|
    is zero when the exact denominators are affordable, and at most epsilon
    after largest-remainder rounding otherwise."""
    if not distribution:
        raise DistributionError("empty distribution")
    support = sorted(distribution, key=lambda p: p.word)
    sizes = {len(p) for p in support}
    if len(sizes) != 1:
        raise DistributionError(f"support mixes sizes {sorted(sizes)}")
    probs = {p: as_fraction(distribution[p]) for p in support}
    if any(v < 0 for v in probs.values()):
        raise DistributionError("negative probability")
    total = sum(probs.values(), Fraction(0))
    if total != 1:
        raise DistributionError(f"probabilities sum to {total}, not 1")
    if epsilon is None:
        epsilon = Fraction(1, len(support) * 10**6)
    epsilon = as_fraction(epsilon)
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    exact_denominator = math.lcm(*(v.denominator for v in probs.values()))
    if epsilon == 0 or exact_denominator <= math.ceil(1 / epsilon):
        weights = {p: int(v * exact_denominator) for p, v in probs.items()}
    else:
        scale = math.ceil(1 / epsilon)
        floors = {p: math.floor(v * scale) for p, v in probs.items()}
        remainders = sorted(
            support, key=lambda p: (probs[p] * scale - floors[p], p.word), reverse=True
        )
        deficit = scale - sum(floors.values())
        weights = dict(floors)
        for p in remainders[:deficit]:
            weights[p] += 1
    shrink = math.gcd(*weights.values())
    return {p: q // shrink for p, q in weights.items()}


def derandomize(
    distribution: Mapping[Permutation, object],
    epsilon: Fraction | None = None,
    *,
    size_cap: int = limits.MIX_SIZE_CAP,
) -> Permutation:
    """A single permutation built from integer-weighted blocks of the support,
    whose consecutive proportions match the distribution's expectation up to
    epsilon plus a boundary term of |pattern|/n."""
    weights = derandomize_weights(distribution, epsilon)
    block_size = len(next(iter(weights)))
    total_copies = sum(weights.values())
    if block_size * total_copies > size_cap:
        raise CapacityError(
            f"derandomized permutation would have size {block_size * total_copies}"
        )
    parts = [repeat_sum(q, p) for p, q in sorted(weights.items()) if q > 0]
    return reduce(direct_sum, parts)


def mix(
    generator_consecutive: Callable[[int], Permutation],
    generator_classical: Callable[[int], Permutation],
    m: int,
    *,
    size_cap: int = limits.MIX_SIZE_CAP,
) -> Permutation:
    """Substitute copies of the consecutive-side permutation into the
    classical-side permutation.

    The result inherits the consecutive statistics of A = generator_consecutive(m)
    up to |pattern|/|A| and the classical statistics of B = generator_classical(m)
    up to C(|pattern|, 2)/|B|, both exactly in rational arithmetic.
    """
    inner = generator_consecutive(m)
    outer = generator_classical(m)
    if len(inner) * len(outer) > size_cap:
        raise CapacityError(
            f"mixed permutation would have size {len(inner) * len(outer)}, cap {size_cap}"
        )
    return substitute(outer, [inner] * len(outer))


def monotone_sum_generator(block: Permutation) -> Callable[[int], Permutation]:
    """m -> direct sum of m copies of ``block``; a basic classical-side witness."""

    def gen(m: int) -> Permutation:
        return repeat_sum(m, block)

    return gen


@dataclass(frozen=True)
class ReportRow:
    m: int
    size: int
    consecutive: PatternVector
    classical: PatternVector | None
    linf_consecutive: Fraction | None
    linf_classical: Fraction | None


@dataclass(frozen=True)
class ConvergenceReport:
    k: int
    rows: tuple[ReportRow, ...]

    def sizes_strictly_increasing(self) -> bool:
        sizes = [row.size for row in self.rows]
        return all(a < b for a, b in zip(sizes, sizes[1:]))

    def to_csv(self) -> str:
        from .perms import all_patterns

        patterns = all_patterns(self.k)
        header = (
            ["m", "size"]
            + [f"cocc_{p}" for p in patterns]
            + [f"occ_{p}" for p in patterns]
            + ["linf_consec", "linf_class"]
        )
        lines = [",".join(header)]
        for row in self.rows:
            cells = [str(row.m), str(row.size)]
            cells += [str(row.consecutive[p]) for p in patterns]
            if row.classical is None:
                cells += ["" for _ in patterns]
            else:
                cells += [str(row.classical[p]) for p in patterns]
            cells.append("" if row.linf_consecutive is None else str(row.linf_consecutive))
            cells.append("" if row.linf_classical is None else str(row.linf_classical))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def convergence_report(
    generator: Callable[[int], Permutation],
    k: int,
    m_values: Iterable[int],
    *,
    consecutive_target: PatternVector | None = None,
    classical_target: PatternVector | None = None,
    include_classical: bool = True,
    enum_n_cap: int = limits.ENUM_N_CAP,
) -> ConvergenceReport:
    """Evaluate proportion vectors of generator(m) for each m.

    Rows are produced in increasing m.  Classical columns are left empty when
    counting them is not affordable for the generated size (pattern sizes
    >= 4 beyond the enumeration cap).
    """
    rows = []
    for m in sorted(set(m_values)):
        sigma = generator(m)
        consecutive = proportion_vector(k, sigma, "consecutive")
        classical: PatternVector | None = None
        if include_classical:
            try:
                classical = proportion_vector(k, sigma, "classical", enum_n_cap=enum_n_cap)
            except CapacityError:
                classical = None
        linf_consec = (
            consecutive.linf_distance(consecutive_target) if consecutive_target else None
        )
        linf_class = (
            classical.linf_distance(classical_target)
            if (classical is not None and classical_target is not None)
            else None
        )
        rows.append(ReportRow(m, len(sigma), consecutive, classical, linf_consec, linf_class))
    return ConvergenceReport(k, tuple(rows))
