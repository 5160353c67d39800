"""Subsets of [1, n] as bitmasks, and uniform families of them.

Element ``i`` of the ground set is bit ``i - 1`` of the mask.  With that
encoding the colexicographic order on k-subsets is plain numeric order of
the masks, so canonical families are just sorted, duplicate-free tuples of
integers.  Bulk work (pair scans, shadows) goes through ``numpy.uint64``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CardinalityError,
    DuplicateError,
    GroundMismatchError,
    NotContainedError,
    RangeError,
)

MAX_GROUND = 64

# Row-block size for pairwise scans; keeps the m x m work matrix bounded.
_PAIR_CHUNK = 2048


def _check_ground(n: int) -> None:
    if not 0 <= n <= MAX_GROUND:
        raise RangeError(f"ground set size {n} outside [0, {MAX_GROUND}]")


def mask_of(elements: Iterable[int], n: int) -> int:
    mask = 0
    for e in elements:
        if not isinstance(e, (int, np.integer)) or not 1 <= e <= n:
            raise RangeError(f"element {e!r} outside [1, {n}]")
        bit = 1 << (int(e) - 1)
        if mask & bit:
            raise DuplicateError(f"element {e} repeated")
        mask |= bit
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount_array(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).astype(np.int64)


@dataclass(frozen=True)
class Subset:
    """A subset of [1, ground_n], stored as a bitmask."""

    ground_n: int
    mask: int

    def __post_init__(self):
        _check_ground(self.ground_n)
        if self.mask < 0 or self.mask >> self.ground_n:
            raise RangeError(f"mask {self.mask:#x} has bits outside [1, {self.ground_n}]")

    @classmethod
    def of(cls, ground_n: int, elements: Iterable[int]) -> "Subset":
        _check_ground(ground_n)
        return cls(ground_n, mask_of(elements, ground_n))

    @property
    def members(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.ground_n and bool(self.mask >> (element - 1) & 1)

    def __lt__(self, other: "Subset") -> bool:
        _same_ground(self, other)
        return self.mask < other.mask

    def issubset(self, other: "Subset") -> bool:
        _same_ground(self, other)
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def _same_ground(a, b) -> None:
    if a.ground_n != b.ground_n:
        raise GroundMismatchError(f"ground sizes differ: {a.ground_n} vs {b.ground_n}")


@dataclass(frozen=True)
class UniformFamily:
    """A duplicate-free family of k-subsets of [1, ground_n] in colex order.

    ``masks`` is always the canonical form: strictly increasing bitmasks.
    Construct through :func:`make_family` when starting from element lists.
    """

    ground_n: int
    k: int
    masks: tuple[int, ...]

    def __post_init__(self):
        _check_ground(self.ground_n)
        if not 0 <= self.k <= self.ground_n:
            raise RangeError(f"uniformity {self.k} outside [0, {self.ground_n}]")
        limit = 1 << self.ground_n
        for m in self.masks:
            if m < 0 or m >= limit:
                raise RangeError(f"set {elements_of(m)} has elements outside [1, {self.ground_n}]")
            if m.bit_count() != self.k:
                raise CardinalityError(f"set {elements_of(m)} does not have {self.k} elements")
        ordered = tuple(sorted(self.masks))
        for x, y in zip(ordered, ordered[1:]):
            if x == y:
                raise DuplicateError(f"set {elements_of(x)} appears twice")
        object.__setattr__(self, "masks", ordered)

    @classmethod
    def _trusted(cls, ground_n: int, k: int, masks) -> "UniformFamily":
        # Caller guarantees canonical, valid masks; skips the O(m) checks.
        fam = object.__new__(cls)
        object.__setattr__(fam, "ground_n", ground_n)
        object.__setattr__(fam, "k", k)
        object.__setattr__(fam, "masks", tuple(int(m) for m in masks))
        return fam

    @classmethod
    def from_array(cls, ground_n: int, k: int, arr: np.ndarray) -> "UniformFamily":
        """Build from a uint64 array of masks (any order, duplicates removed)."""
        return cls._trusted(ground_n, k, np.unique(arr).tolist())

    @classmethod
    def empty(cls, ground_n: int, k: int) -> "UniformFamily":
        return cls(ground_n, k, ())

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.masks, dtype=np.uint64)
        arr.setflags(write=False)
        return arr

    @property
    def sets(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground_n, m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.sets)

    def __contains__(self, s: Subset) -> bool:
        return s.ground_n == self.ground_n and s.mask in self._mask_set

    @cached_property
    def _mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    def union_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out

    def common_mask(self) -> int:
        """Bitmask of the elements lying in every member (all of [n] if empty)."""
        out = (1 << self.ground_n) - 1
        for m in self.masks:
            out &= m
        return out

    def to_lists(self) -> list[list[int]]:
        return [list(elements_of(m)) for m in self.masks]

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.sets) + "}"


def make_family(ground_n: int, k: int, raw_sets: Iterable[Sequence[int]]) -> UniformFamily:
    """Validate element lists and return the canonical family."""
    _check_ground(ground_n)
    if not 0 <= k <= ground_n:
        raise RangeError(f"uniformity {k} outside [0, {ground_n}]")
    masks = []
    for raw in raw_sets:
        raw = list(raw)
        m = mask_of(raw, ground_n)
        if len(raw) != k:
            raise CardinalityError(f"set {raw} does not have {k} elements")
        masks.append(m)
    return UniformFamily(ground_n, k, tuple(masks))


def intersection_size(a: Subset, b: Subset) -> int:
    _same_ground(a, b)
    return (a.mask & b.mask).bit_count()


def complement_within(a: Subset, window: Subset) -> Subset:
    _same_ground(a, window)
    if a.mask & ~window.mask:
        raise NotContainedError(f"{a} is not contained in {window}")
    return Subset(a.ground_n, window.mask ^ a.mask)


def interval(ground_n: int, lo: int, hi: int) -> Subset:
    """The window [lo, hi] as a Subset of [1, ground_n]."""
    return Subset.of(ground_n, range(lo, hi + 1))


def _pair_blocks(arr: np.ndarray) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (row offset, meets, upper) over row blocks of the pair matrix.

    ``meets[i, j] = A_{off+i} & A_j`` and ``upper`` marks the pairs with
    j > off + i, so each unordered pair is seen once.
    """
    m = arr.shape[0]
    cols = np.arange(m)
    for off in range(0, m, _PAIR_CHUNK):
        rows = arr[off:off + _PAIR_CHUNK]
        upper = cols[None, :] > (off + np.arange(rows.shape[0]))[:, None]
        yield off, rows[:, None] & arr[None, :], upper


def min_pairwise_intersection(family: UniformFamily) -> int | None:
    if len(family) <= 1:
        return None
    best = family.k
    for _, meets, upper in _pair_blocks(family.array):
        sizes = popcount_array(meets[upper])
        if sizes.size:
            best = min(best, int(sizes.min()))
    return best


def intersection_sizes(family: UniformFamily) -> frozenset[int]:
    out: set[int] = set()
    for _, meets, upper in _pair_blocks(family.array):
        out.update(np.unique(popcount_array(meets[upper])).tolist())
    return frozenset(out)


def pair_below(family: UniformFamily, b: int) -> tuple[Subset, Subset] | None:
    """First pair (colex order) of distinct members meeting in fewer than ``b`` elements."""
    if b <= 0:
        return None
    for off, meets, upper in _pair_blocks(family.array):
        bad = (meets == 0) if b == 1 else (popcount_array(meets) < b)
        bad &= upper
        if bad.any():
            i, j = np.argwhere(bad)[0]
            n = family.ground_n
            return Subset(n, family.masks[off + int(i)]), Subset(n, family.masks[int(j)])
    return None


def is_intersecting(family: UniformFamily) -> bool:
    return pair_below(family, 1) is None


def colex_masks(n: int, k: int) -> list[int]:
    """All k-subsets of [1, n] as masks, in colex (= numeric) order."""
    if not 0 <= k <= n:
        raise RangeError(f"need 0 <= k <= n, got n={n}, k={k}")
    return list(_colex_masks(n, k))


@lru_cache(maxsize=256)
def _colex_masks(n: int, k: int) -> tuple[int, ...]:
    if k == 0:
        return (0,)
    out = []
    m = (1 << k) - 1
    limit = 1 << n
    while m < limit:
        out.append(m)
        # Gosper's hack: next integer with the same popcount.
        low = m & -m
        ripple = m + low
        m = (((ripple ^ m) >> 2) // low) | ripple
    return tuple(out)


def all_k_subsets(n: int, k: int) -> UniformFamily:
    _check_ground(n)
    return UniformFamily._trusted(n, k, colex_masks(n, k))


def subsets_within(window: Subset, r: int) -> UniformFamily:
    """All r-subsets of ``window``, as a family on the window's ground set."""
    elems = window.members
    if not 0 <= r <= len(elems):
        raise RangeError(f"need 0 <= r <= |window|, got r={r}, |window|={len(elems)}")
    masks = sorted(sum(1 << (e - 1) for e in combo) for combo in combinations(elems, r))
    return UniformFamily._trusted(window.ground_n, r, masks)


def colex_rank(s: Subset) -> int:
    return sum(math.comb(e - 1, j + 1) for j, e in enumerate(s.members))


def colex_unrank(n: int, k: int, r: int) -> Subset:
    _check_ground(n)
    if not 0 <= k <= n:
        raise RangeError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 0 <= r < math.comb(n, k):
        raise RangeError(f"rank {r} outside [0, C({n},{k}))")
    mask = 0
    c = n
    for j in range(k, 0, -1):
        # Largest c with C(c, j) <= r; the element is c + 1.
        c -= 1
        while math.comb(c, j) > r:
            c -= 1
        r -= math.comb(c, j)
        mask |= 1 << c
    return Subset(n, mask)


# -- family text format ----------------------------------------------------

def format_family(family: UniformFamily) -> str:
    lines = [f"{family.ground_n} {family.k}"]
    lines += [" ".join(map(str, elements_of(m))) for m in family.masks]
    return "\n".join(lines) + "\n"


class FamilyFormatError(RangeError):
    """Family text does not follow the ``n k`` + one-set-per-line format."""


def _parse_ints(line: str, lineno: int) -> list[int]:
    if line == "":
        return []
    parts = line.split(" ")
    if not all(p.isdigit() for p in parts):
        raise FamilyFormatError(f"line {lineno}: not a list of integers: {line!r}")
    return [int(p) for p in parts]


def parse_family_lines(lines: Sequence[str], start: int = 1) -> UniformFamily:
    if not lines:
        raise FamilyFormatError("missing 'n k' header")
    header = _parse_ints(lines[0], start)
    if len(header) != 2:
        raise FamilyFormatError(f"line {start}: header must be 'n k', got {lines[0]!r}")
    n, k = header
    raw = []
    for i, line in enumerate(lines[1:], start + 1):
        elems = _parse_ints(line, i)
        if elems != sorted(set(elems)):
            raise FamilyFormatError(f"line {i}: elements must be strictly increasing")
        raw.append(elems)
    return make_family(n, k, raw)


def parse_family(text: str) -> UniformFamily:
    """Parse the family text format; raises FamilyFormatError or a validation error."""
    if not text.endswith("\n"):
        raise FamilyFormatError("family text must end with a newline")
    return parse_family_lines(text[:-1].split("\n"))
