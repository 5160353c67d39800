"""Shadows of uniform families and the intersecting-shadow inequality.

``shadow(A, s)`` is the family of s-sets lying inside some member of ``A``.
For an a-uniform family whose members pairwise share at least ``b``
elements, ``|A| <= |shadow(A, a - b)|``; :func:`katona_check` evaluates that
inequality on one family and :func:`katona_exhaustive` on every subfamily
of a complete family at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotBIntersectingError, RangeError, ScaleError
from .setcore import (
    UniformFamily,
    colex_masks,
    pair_below,
    popcount_array,
)


class ExtremalCase(str, enum.Enum):
    EQUAL_A_B = "EQUAL_A_B"
    EMPTY = "EMPTY"
    COMPLETE_ON_2A_MINUS_B = "COMPLETE_ON_2A_MINUS_B"
    STRICT = "STRICT"


def _drop_one(arr: np.ndarray, n: int) -> np.ndarray:
    """All sets obtained from members of ``arr`` by deleting one element."""
    parts = []
    for i in range(n):
        bit = np.uint64(1) << np.uint64(i)
        hit = arr[(arr & bit) != 0]
        if hit.size:
            parts.append(hit ^ bit)
    if not parts:
        return np.empty(0, dtype=np.uint64)
    return np.unique(np.concatenate(parts))


def shadow(family: UniformFamily, s: int) -> UniformFamily:
    """The s-shadow, computed by peeling one element at a time."""
    if not 0 <= s <= family.k:
        raise RangeError(f"shadow level {s} outside [0, {family.k}]")
    arr = family.array
    for _ in range(family.k - s):
        if arr.size == 0:
            break
        arr = _drop_one(arr, family.ground_n)
    if family.k == s:
        return family
    return UniformFamily._trusted(family.ground_n, s, arr.tolist())


@dataclass(frozen=True)
class KatonaReport:
    a: int
    b: int
    family_size: int
    shadow_size: int
    holds: bool
    extremal_class: ExtremalCase

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "extremal_class": self.extremal_class.value,
            "family_size": self.family_size,
            "holds": self.holds,
            "shadow_size": self.shadow_size,
        }


def _validate_b(family: UniformFamily, b: int) -> None:
    if not 0 <= b <= family.k:
        raise RangeError(f"b={b} outside [0, {family.k}]")
    witness = pair_below(family, b)
    if witness is not None:
        x, y = witness
        raise NotBIntersectingError(f"{x} and {y} share fewer than {b} elements", witness)


def _classify(a: int, b: int, size: int, union_size: int) -> ExtremalCase:
    if size == 0:
        return ExtremalCase.EMPTY
    if a == b:
        return ExtremalCase.EQUAL_A_B
    m = 2 * a - b
    if union_size == m and size == math.comb(m, a):
        return ExtremalCase.COMPLETE_ON_2A_MINUS_B
    return ExtremalCase.STRICT


def classify_katona_equality(family: UniformFamily, b: int) -> ExtremalCase:
    """Which equality clause, if any, the family falls under.

    The complete-family clause is detected up to relabelling: the members
    cover exactly 2a - b points and there are C(2a - b, a) of them.
    """
    _validate_b(family, b)
    return _classify(family.k, b, len(family), family.union_mask().bit_count())


def katona_check(family: UniformFamily, b: int) -> KatonaReport:
    _validate_b(family, b)
    a = family.k
    size = len(family)
    shadow_size = len(shadow(family, a - b))
    return KatonaReport(
        a=a,
        b=b,
        family_size=size,
        shadow_size=shadow_size,
        holds=size <= shadow_size,
        extremal_class=_classify(a, b, size, family.union_mask().bit_count()),
    )


# -- exhaustive sweep over all subfamilies --------------------------------

@dataclass
class KatonaSweep:
    """Outcome of checking every nonempty subfamily of a complete family.

    Subfamily ``f`` (an integer) holds member ``i`` of the complete family,
    in colex order, iff bit ``i`` of ``f`` is set; the same order as
    :func:`ekrtools.oracle.enumerate_subfamilies`.
    """

    n: int
    a: int
    families: int
    violations: int
    equalities: int
    by_class: dict[str, int] = field(default_factory=dict)
    # equality cases falling under no clause, grouped by b
    unclassified_by_b: dict[int, int] = field(default_factory=dict)
    first_violation: int | None = None
    first_unclassified: int | None = None

    def subfamily(self, f: int) -> UniformFamily:
        members = colex_masks(self.n, self.a)
        return UniformFamily._trusted(self.n, self.a, [m for i, m in enumerate(members) if f >> i & 1])


def _or_closure(values: np.ndarray) -> np.ndarray:
    """out[f] = OR of values[i] over set bits i of f, for all f < 2**len(values)."""
    count = values.shape[0]
    out = np.zeros((1 << count,) + values.shape[1:], dtype=values.dtype)
    for i in range(count):
        half = 1 << i
        out[half:2 * half] = out[:half] | values[i]
    return out


def _level_cover(members: list[int], n: int, s: int) -> np.ndarray:
    """cover[i] = bit-vector (uint64 words) of the s-subsets of member i."""
    index = {m: r for r, m in enumerate(colex_masks(n, s))}
    words = max(1, -(-len(index) // 64))
    cover = np.zeros((len(members), words), dtype=np.uint64)
    for i, m in enumerate(members):
        fam = UniformFamily._trusted(n, bin(m).count("1"), [m])
        for sub in shadow(fam, s).masks:
            r = index[sub]
            cover[i, r // 64] |= np.uint64(1) << np.uint64(r % 64)
    return cover


def katona_exhaustive(n: int, a: int, max_binom: int = 20) -> KatonaSweep:
    """Check the shadow inequality on all 2**C(n, a) - 1 nonempty subfamilies.

    ``b`` is taken as each subfamily's actual minimum pairwise intersection;
    singletons use ``b = a``.  All per-subfamily quantities are built by
    OR-closure over the subset lattice, so the sweep is a handful of numpy
    passes over arrays of length 2**C(n, a).
    """
    members = colex_masks(n, a)
    count = len(members)
    if count > max_binom:
        raise ScaleError(f"C({n},{a}) = {count} exceeds the scale guard {max_binom}")
    arr = np.array(members, dtype=np.uint64)
    total = 1 << count
    fams = np.arange(total, dtype=np.int64)

    size = np.bitwise_count(fams.astype(np.uint64)).astype(np.int64)
    union = _or_closure(arr)
    union_size = popcount_array(union)

    # has_v[f]: some pair in f meets in exactly v points; pairs enter when
    # their larger-index member does.
    inter = popcount_array(arr[:, None] & arr[None, :])
    b = np.full(total, a, dtype=np.int64)
    for v in range(a - 1, -1, -1):
        nb = np.array(
            [sum(1 << j for j in range(i) if inter[i, j] == v) for i in range(count)],
            dtype=np.int64,
        )
        has = np.zeros(total, dtype=bool)
        for i in range(count):
            half = 1 << i
            has[half:2 * half] = has[:half] | ((fams[:half] & nb[i]) != 0)
        b[has] = v

    shadow_size = size.copy()  # s = a (b = 0): the family itself
    shadow_size[b == a] = 1  # s = 0: {emptyset}
    for s in range(1, a):
        sel = b == a - s
        if not sel.any():
            continue
        covered = _or_closure(_level_cover(members, n, s))
        shadow_size[sel] = popcount_array(covered[sel]).sum(axis=1)

    nonempty = size > 0
    holds = size <= shadow_size
    equal = (size == shadow_size) & nonempty
    m = 2 * a - b
    comb_m = np.array([math.comb(int(x), a) if 0 <= x <= 2 * a else -1 for x in range(2 * a + 1)])
    complete = (union_size == m) & (size == comb_m[np.clip(m, 0, 2 * a)])
    cls = np.where(b == a, 1, np.where(complete, 2, 3))  # 0 EMPTY, 1 EQUAL_A_B, 2 COMPLETE, 3 STRICT
    cls[~nonempty] = 0

    names = [ExtremalCase.EMPTY, ExtremalCase.EQUAL_A_B, ExtremalCase.COMPLETE_ON_2A_MINUS_B, ExtremalCase.STRICT]
    by_class = {names[c].value: int(np.count_nonzero(equal & (cls == c))) for c in range(4)}
    unclassified = equal & (cls == 3)
    bad = nonempty & ~holds
    return KatonaSweep(
        n=n,
        a=a,
        families=int(nonempty.sum()),
        violations=int(bad.sum()),
        equalities=int(equal.sum()),
        by_class=by_class,
        unclassified_by_b={int(v): int(c) for v, c in zip(*np.unique(b[unclassified], return_counts=True))},
        first_violation=int(np.flatnonzero(bad)[0]) if bad.any() else None,
        first_unclassified=int(np.flatnonzero(unclassified)[0]) if unclassified.any() else None,
    )
