"""Permutations in one-line notation, pattern extraction and occurrence counts.

A permutation of size ``n`` is a word over ``{1..n}`` in which every value
appears exactly once.  Pattern positions and index sets are 1-based, matching
the usual combinatorial convention: ``pattern_at(p, (2, 4, 7))`` looks at the
second, fourth and seventh entry of ``p``.

Occurrence counts are exact integers and proportions are exact
``fractions.Fraction`` values.  Classical counts for pattern sizes up to 3 use
O(n log n) order-statistic scans and therefore work for very long
permutations; sizes >= 4 fall back to guarded subset enumeration.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import limits
from .errors import (
    ArityError,
    CapacityError,
    DistinctnessError,
    EmptyError,
    SizeError,
)
from .rationals import as_fraction


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of ``{1..n}`` stored as its one-line word."""

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise ValueError("permutations are non-empty")
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation word: {word!r}")

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __str__(self) -> str:
        # Digit strings stay unambiguous only up to size 9.
        if len(self.word) <= 9:
            return "".join(str(v) for v in self.word)
        return ",".join(str(v) for v in self.word)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    @property
    def size(self) -> int:
        return len(self.word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse the text format produced by ``str``: digits up to size 9,
        comma-separated integers beyond."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation text")
        if "," in text:
            word = tuple(int(part) for part in text.split(","))
        else:
            if not text.isdigit():
                raise ValueError(f"not a permutation word: {text!r}")
            word = tuple(int(ch) for ch in text)
        return cls(word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


@lru_cache(maxsize=None)
def all_patterns(k: int) -> tuple[Permutation, ...]:
    """All permutations of size ``k`` in lexicographic order of their words."""
    if k < 1:
        raise ValueError("pattern size must be >= 1")
    return tuple(Permutation(w) for w in itertools.permutations(range(1, k + 1)))


def _std_word(values: Sequence) -> tuple[int, ...]:
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for rank, idx in enumerate(order, start=1):
        ranks[idx] = rank
    return tuple(ranks)


def standardize(values: Sequence) -> Permutation:
    """The unique permutation whose entries are in the same relative order as
    ``values``.  Values may be any mutually comparable numbers; ties are an
    error, not broken."""
    values = list(values)
    if not values:
        raise EmptyError("cannot standardize an empty sequence")
    if len(set(values)) != len(values):
        raise DistinctnessError(f"values are not distinct: {values!r}")
    return Permutation(_std_word(values))


def is_interval(indices: Sequence[int]) -> bool:
    """True when a sorted index set is contiguous."""
    return bool(indices) and indices[-1] - indices[0] == len(indices) - 1


def pattern_at(sigma: Permutation, indices: Iterable[int]) -> Permutation:
    """The pattern induced by ``sigma`` on a set of 1-based positions."""
    idx = sorted(indices)
    if not idx:
        raise EmptyError("index set is empty")
    if len(set(idx)) != len(idx):
        raise ValueError(f"index set has repeats: {idx!r}")
    if idx[0] < 1 or idx[-1] > len(sigma):
        raise IndexError(f"index set {idx!r} out of range for size {len(sigma)}")
    return Permutation(_std_word([sigma.word[i - 1] for i in idx]))


def window_pattern(sigma: Permutation, start: int, k: int) -> Permutation:
    """Pattern of the width-``k`` window beginning at 1-based position ``start``."""
    if start < 1 or start + k - 1 > len(sigma):
        raise IndexError(f"window [{start}, {start + k - 1}] out of range")
    return Permutation(_std_word(sigma.word[start - 1 : start - 1 + k]))


class _Fenwick:
    """Binary indexed tree counting inserted values (1-based)."""

    __slots__ = ("n", "tree")

    def __init__(self, n: int) -> None:
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i: int) -> None:
        while i <= self.n:
            self.tree[i] += 1
            i += i & -i

    def count_leq(self, i: int) -> int:
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total


def _side_counts(sigma: Permutation) -> tuple[list[int], list[int], list[int], list[int]]:
    """For every position j: how many earlier entries are smaller/larger (A/B)
    and how many later entries are larger/smaller (C/D)."""
    word = sigma.word
    n = len(word)
    smaller_before = [0] * n
    larger_before = [0] * n
    left = _Fenwick(n)
    for j, v in enumerate(word):
        smaller_before[j] = left.count_leq(v - 1)
        larger_before[j] = j - smaller_before[j]
        left.add(v)
    larger_after = [0] * n
    smaller_after = [0] * n
    right = _Fenwick(n)
    for j in range(n - 1, -1, -1):
        v = word[j]
        smaller_after[j] = right.count_leq(v - 1)
        larger_after[j] = (n - 1 - j) - smaller_after[j]
        right.add(v)
    return smaller_before, larger_before, larger_after, smaller_after


def _occ_counts_small(sigma: Permutation, k: int) -> dict[tuple[int, ...], int]:
    """Exact classical counts for all patterns of size k <= 3, any length."""
    n = len(sigma)
    if k == 1:
        return {(1,): n}
    a, b, c, d = _side_counts(sigma)
    if k == 2:
        inversions = sum(b)
        return {(1, 2): math.comb(n, 2) - inversions, (2, 1): inversions}
    # Size 3: count by the position of the middle element, then split the
    # remaining patterns by where the extreme value sits.
    occ123 = sum(ai * ci for ai, ci in zip(a, c))
    occ321 = sum(bi * di for bi, di in zip(b, d))
    occ213 = sum(ai * (ai - 1) // 2 for ai in a) - occ123
    occ132 = sum(ci * (ci - 1) // 2 for ci in c) - occ123
    occ312 = sum(di * (di - 1) // 2 for di in d) - occ321
    occ231 = sum(bi * (bi - 1) // 2 for bi in b) - occ321
    return {
        (1, 2, 3): occ123,
        (1, 3, 2): occ132,
        (2, 1, 3): occ213,
        (2, 3, 1): occ231,
        (3, 1, 2): occ312,
        (3, 2, 1): occ321,
    }


def _occ_counts_enumerated(
    sigma: Permutation, k: int, enum_n_cap: int
) -> dict[tuple[int, ...], int]:
    n = len(sigma)
    if n > enum_n_cap:
        raise CapacityError(
            f"classical counting of size-{k} patterns enumerates subsets; "
            f"permutation size {n} exceeds the cap {enum_n_cap}"
        )
    counts: dict[tuple[int, ...], int] = {}
    word = sigma.word
    for comb in itertools.combinations(range(n), k):
        pat = _std_word([word[i] for i in comb])
        counts[pat] = counts.get(pat, 0) + 1
    return counts


def occ(pattern: Permutation, sigma: Permutation, *, enum_n_cap: int = limits.ENUM_N_CAP) -> int:
    """Number of classical occurrences of ``pattern`` in ``sigma``."""
    k, n = len(pattern), len(sigma)
    if k > n:
        raise SizeError(f"pattern size {k} exceeds permutation size {n}")
    if k <= 3:
        return _occ_counts_small(sigma, k).get(pattern.word, 0)
    return _occ_counts_enumerated(sigma, k, enum_n_cap).get(pattern.word, 0)


def cocc(pattern: Permutation, sigma: Permutation) -> int:
    """Number of consecutive occurrences (contiguous windows) of ``pattern``."""
    k, n = len(pattern), len(sigma)
    if k > n:
        raise SizeError(f"pattern size {k} exceeds permutation size {n}")
    word = sigma.word
    target = pattern.word
    return sum(1 for i in range(n - k + 1) if _std_word(word[i : i + k]) == target)


def _cocc_counts(sigma: Permutation, k: int) -> dict[tuple[int, ...], int]:
    word = sigma.word
    counts: dict[tuple[int, ...], int] = {}
    for i in range(len(word) - k + 1):
        pat = _std_word(word[i : i + k])
        counts[pat] = counts.get(pat, 0) + 1
    return counts


def occ_proportion(
    pattern: Permutation, sigma: Permutation, *, enum_n_cap: int = limits.ENUM_N_CAP
) -> Fraction:
    """occ(pattern, sigma) / C(n, k) as an exact rational."""
    return Fraction(occ(pattern, sigma, enum_n_cap=enum_n_cap), math.comb(len(sigma), len(pattern)))


def cocc_proportion(
    pattern: Permutation, sigma: Permutation, *, window_denominator: bool = False
) -> Fraction:
    """cocc(pattern, sigma) divided by n (the convention used throughout this
    package), or by the window count n-k+1 when ``window_denominator`` is set."""
    n, k = len(sigma), len(pattern)
    den = n - k + 1 if window_denominator else n
    return Fraction(cocc(pattern, sigma), den)


class PatternVector:
    """A map assigning an exact rational in [0, 1] to every pattern of size k.

    This is the common container for proportion vectors of a permutation and
    for candidate points of the feasible region.
    """

    __slots__ = ("k", "_entries")

    def __init__(self, k: int, entries: Mapping[Permutation, object]) -> None:
        if k > limits.VECTOR_K_CAP:
            raise CapacityError(f"pattern vectors carry k! entries; k={k} exceeds cap")
        domain = all_patterns(k)
        converted: dict[Permutation, Fraction] = {}
        for perm in domain:
            if perm not in entries:
                raise ValueError(f"missing entry for pattern {perm}")
            value = as_fraction(entries[perm])
            if value < 0 or value > 1:
                raise ValueError(f"entry for {perm} not in [0, 1]: {value}")
            converted[perm] = value
        if len(entries) != len(domain):
            extra = set(entries) - set(domain)
            raise ValueError(f"entries outside S_{k}: {sorted(map(str, extra))}")
        self.k = k
        self._entries = converted

    def __getitem__(self, pattern: Permutation) -> Fraction:
        return self._entries[pattern]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PatternVector)
            and self.k == other.k
            and self._entries == other._entries
        )

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {v}" for p, v in self.items())
        return f"PatternVector(k={self.k}, {{{inner}}})"

    def items(self) -> list[tuple[Permutation, Fraction]]:
        return [(p, self._entries[p]) for p in all_patterns(self.k)]

    def values_by_pattern(self) -> list[Fraction]:
        """Entries in lexicographic pattern order."""
        return [self._entries[p] for p in all_patterns(self.k)]

    def total(self) -> Fraction:
        return sum(self._entries.values(), Fraction(0))

    def linf_distance(self, other: "PatternVector") -> Fraction:
        if other.k != self.k:
            raise ValueError("pattern vectors of different sizes")
        return max(abs(self._entries[p] - other._entries[p]) for p in all_patterns(self.k))

    @classmethod
    def uniform(cls, k: int) -> "PatternVector":
        w = Fraction(1, math.factorial(k))
        return cls(k, {p: w for p in all_patterns(k)})

    @classmethod
    def point_mass(cls, pattern: Permutation) -> "PatternVector":
        k = len(pattern)
        return cls(k, {p: Fraction(1 if p == pattern else 0) for p in all_patterns(k)})

    @classmethod
    def from_values(cls, k: int, values: Sequence) -> "PatternVector":
        """Build from entries listed in lexicographic pattern order."""
        domain = all_patterns(k)
        if len(values) != len(domain):
            raise ValueError(f"expected {len(domain)} entries, got {len(values)}")
        return cls(k, dict(zip(domain, values)))

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "entries": {str(p): str(v) for p, v in self.items()},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PatternVector":
        k = int(data["k"])
        entries = {Permutation.parse(word): value for word, value in data["entries"].items()}
        return cls(k, entries)


def proportion_vector(
    k: int,
    sigma: Permutation,
    kind: str,
    *,
    enum_n_cap: int = limits.ENUM_N_CAP,
) -> PatternVector:
    """The full vector of pattern proportions of ``sigma`` at size ``k``.

    ``kind`` is ``"classical"`` (entries sum to 1) or ``"consecutive"``
    (entries sum to (n-k+1)/n).
    """
    n = len(sigma)
    if k > n:
        raise SizeError(f"pattern size {k} exceeds permutation size {n}")
    if kind == "classical":
        if k <= 3:
            counts = _occ_counts_small(sigma, k)
        else:
            counts = _occ_counts_enumerated(sigma, k, enum_n_cap)
        den = math.comb(n, k)
    elif kind == "consecutive":
        counts = _cocc_counts(sigma, k)
        den = n
    else:
        raise ValueError(f"kind must be 'classical' or 'consecutive', got {kind!r}")
    entries = {p: Fraction(counts.get(p.word, 0), den) for p in all_patterns(k)}
    return PatternVector(k, entries)


def direct_sum(tau: Permutation, sigma: Permutation) -> Permutation:
    """Diagonal concatenation: ``sigma`` shifted above and after ``tau``."""
    m = len(tau)
    return Permutation(tau.word + tuple(v + m for v in sigma.word))


def repeat_sum(copies: int, sigma: Permutation) -> Permutation:
    """Direct sum of ``copies`` copies of ``sigma``."""
    if copies < 1:
        raise EmptyError("need at least one copy")
    n = len(sigma)
    word: list[int] = []
    for i in range(copies):
        word.extend(v + i * n for v in sigma.word)
    return Permutation(tuple(word))


def substitute(skeleton: Permutation, blocks: Sequence[Permutation]) -> Permutation:
    """Inflate each point of ``skeleton`` by the corresponding block.

    Block ``i`` occupies a contiguous column range in input order; the value
    ranges of the blocks are stacked in the order given by the skeleton.
    """
    d = len(skeleton)
    if len(blocks) != d:
        raise ArityError(f"skeleton of size {d} needs {d} blocks, got {len(blocks)}")
    sizes = [len(b) for b in blocks]
    # Values below block i: total size of blocks placed at lower skeleton values.
    value_offset = [0] * d
    running = 0
    for i in sorted(range(d), key=skeleton.word.__getitem__):
        value_offset[i] = running
        running += sizes[i]
    word: list[int] = []
    for i, block in enumerate(blocks):
        word.extend(v + value_offset[i] for v in block.word)
    return Permutation(tuple(word))
