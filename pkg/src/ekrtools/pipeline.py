"""The complementation proof of the EKR bound, as a checkable pipeline.

Given an intersecting k-uniform family F on [n] and a pivot element p:

* F1 are the members containing p, G1 the same sets with p removed;
* F0 are the members avoiding p, G0 their complements inside [n] - {p};
* G1 never meets the (k-1)-shadow of G0, G0 is (n - 2k)-intersecting, so
  |F| = |G1| + |G0| <= |G1| + |shadow(G0)| <= C(n-1, k-1).

:func:`run_chain` evaluates each link separately and records a witness when
one breaks.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundNotApplicableError, NotBIntersectingError, NotIntersectingError, RangeError
from .setcore import (
    Subset,
    UniformFamily,
    colex_masks,
    elements_of,
    min_pairwise_intersection,
    pair_below,
    popcount_array,
)
from .shadows import katona_check, shadow


@dataclass(frozen=True)
class EkrDecomposition:
    n: int
    k: int
    pivot: int
    family: UniformFamily
    F0: UniformFamily
    F1: UniformFamily
    G1: UniformFamily
    G0: UniformFamily

    @property
    def window(self) -> int:
        """Mask of [n] - {pivot}."""
        return ((1 << self.n) - 1) ^ (1 << (self.pivot - 1))


def require_intersecting(family: UniformFamily) -> None:
    witness = pair_below(family, 1)
    if witness is not None:
        x, y = witness
        raise NotIntersectingError(f"{x} and {y} are disjoint", witness)


def decompose(family: UniformFamily, pivot: int = 1, *, validate: bool = True) -> EkrDecomposition:
    """Split ``family`` at ``pivot`` into F0, F1 and their images G0, G1.

    ``validate=False`` skips the intersecting check; it exists so tests can
    feed the later stages an input the proof does not cover.
    """
    n, k = family.ground_n, family.k
    if not 1 <= pivot <= n:
        raise RangeError(f"pivot {pivot} outside [1, {n}]")
    if not 1 <= k <= n - 1:
        raise RangeError(f"decomposition needs 1 <= k <= n - 1, got n={n}, k={k}")
    if validate:
        require_intersecting(family)
    bit = 1 << (pivot - 1)
    window = ((1 << n) - 1) ^ bit
    f1 = [m for m in family.masks if m & bit]
    f0 = [m for m in family.masks if not m & bit]
    return EkrDecomposition(
        n=n,
        k=k,
        pivot=pivot,
        family=family,
        F0=UniformFamily._trusted(n, k, f0),
        F1=UniformFamily._trusted(n, k, f1),
        # deleting the pivot keeps colex order; complementing reverses it
        G1=UniformFamily._trusted(n, k - 1, [m ^ bit for m in f1]),
        G0=UniformFamily._trusted(n, n - 1 - k, [window ^ m for m in reversed(f0)]),
    )


def g0_shadow(d: EkrDecomposition) -> UniformFamily:
    """The (k-1)-shadow of G0; empty when G0's sets are too small to have one."""
    if d.k - 1 > d.G0.k:
        return UniformFamily.empty(d.n, d.k - 1)
    return shadow(d.G0, d.k - 1)


def check_shadow_disjoint(d: EkrDecomposition) -> tuple[bool, Subset | None]:
    common = np.intersect1d(d.G1.array, g0_shadow(d).array)
    if common.size:
        return False, Subset(d.n, int(common[0]))
    return True, None


def g0_min_intersection(d: EkrDecomposition) -> int | None:
    return min_pairwise_intersection(d.G0)


def check_intersection_identity(d: EkrDecomposition) -> tuple[bool, tuple[Subset, Subset] | None]:
    """Check |G & G'| = (n-1) - 2k + |F & F'| for every pair of F0 members.

    Returns (True, None) or (False, the first offending F0 pair).
    """
    f0 = d.F0.array
    if f0.size < 2:
        return True, None
    g0 = np.uint64(d.window) ^ f0
    lhs = popcount_array(g0[:, None] & g0[None, :])
    rhs = (d.n - 1) - 2 * d.k + popcount_array(f0[:, None] & f0[None, :])
    bad = np.argwhere(np.triu(lhs != rhs, 1))
    if bad.size:
        i, j = bad[0]
        return False, (Subset(d.n, int(f0[i])), Subset(d.n, int(f0[j])))
    return True, None


@dataclass(frozen=True)
class ChainReport:
    n: int
    k: int
    pivot: int
    family_size: int
    bound: int
    sizes: tuple[int, int, int, int, int]  # |F1|, |F0|, |G1|, |G0|, |shadow(G0)|
    partition_step: bool
    bijection_step: bool
    disjoint: bool
    katona_step: bool
    packing_step: bool
    final_bound: bool
    witness: Subset | None = None

    @property
    def all_steps(self) -> bool:
        return (self.partition_step and self.bijection_step and self.disjoint
                and self.katona_step and self.packing_step and self.final_bound)

    def to_dict(self) -> dict:
        return {
            "bijection_step": self.bijection_step,
            "bound": self.bound,
            "disjoint": self.disjoint,
            "family_size": self.family_size,
            "final_bound": self.final_bound,
            "k": self.k,
            "katona_step": self.katona_step,
            "n": self.n,
            "packing_step": self.packing_step,
            "partition_step": self.partition_step,
            "pivot": self.pivot,
            "sizes": list(self.sizes),
            "witness": None if self.witness is None else list(self.witness.members),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def run_chain(d: EkrDecomposition) -> ChainReport:
    n, k = d.n, d.k
    if n < 2 * k:
        raise BoundNotApplicableError(f"the EKR bound needs n >= 2k, got n={n}, k={k}")
    bound = math.comb(n - 1, k - 1)
    sh = g0_shadow(d)

    disjoint, witness = check_shadow_disjoint(d)
    try:
        katona_step = katona_check(d.G0, n - 2 * k).holds
    except NotBIntersectingError as exc:
        katona_step = False
        if witness is None:
            witness = exc.witness[0]

    in_window = all(m & ~d.window == 0 for m in d.G1.masks + sh.masks)
    packing_step = in_window and len(d.G1) + len(sh) <= bound
    size = len(d.family)
    return ChainReport(
        n=n,
        k=k,
        pivot=d.pivot,
        family_size=size,
        bound=bound,
        sizes=(len(d.F1), len(d.F0), len(d.G1), len(d.G0), len(sh)),
        partition_step=size == len(d.F1) + len(d.F0),
        bijection_step=len(d.G1) == len(d.F1) and len(d.G0) == len(d.F0),
        disjoint=disjoint,
        katona_step=katona_step,
        packing_step=packing_step,
        final_bound=size <= bound,
        witness=witness,
    )


# -- extremal families -----------------------------------------------------

class ExtremalKind(str, enum.Enum):
    STAR = "STAR"
    NOT_MAXIMUM = "NOT_MAXIMUM"
    MAXIMUM_NON_STAR = "MAXIMUM_NON_STAR"


@dataclass(frozen=True)
class ExtremalClass:
    kind: ExtremalKind
    center: int | None = None

    def to_dict(self) -> dict:
        return {"center": self.center, "kind": self.kind.value}


def classify_extremal(family: UniformFamily) -> ExtremalClass:
    n, k = family.ground_n, family.k
    require_intersecting(family)
    if n < 2 * k:
        raise BoundNotApplicableError(f"the EKR bound needs n >= 2k, got n={n}, k={k}")
    bound = math.comb(n - 1, k - 1)
    if len(family) < bound:
        return ExtremalClass(ExtremalKind.NOT_MAXIMUM)
    common = family.common_mask()
    if len(family) == bound and common:
        return ExtremalClass(ExtremalKind.STAR, elements_of(common)[0])
    return ExtremalClass(ExtremalKind.MAXIMUM_NON_STAR)


def equality_branch(d: EkrDecomposition) -> tuple[str, int] | None:
    """Which case of the equality analysis a decomposition falls under.

    ``("pivot", p)``: G0 is empty and the pivot lies in every member.
    ``("other", x)``: G0 is every (n-1-k)-subset of [n] - {p, x}, and x lies
    in every member.  ``None`` when neither shape occurs.
    """
    if not d.G0.masks:
        if d.family.masks and all(m >> (d.pivot - 1) & 1 for m in d.family.masks):
            return "pivot", d.pivot
        return None
    missing = d.window & ~d.G0.union_mask()
    if missing.bit_count() != 1:
        return None
    x = elements_of(missing)[0]
    if len(d.G0) != math.comb(d.n - 2, d.n - 1 - d.k):
        return None
    if all(m & missing for m in d.family.masks):
        return "other", x
    return None


def star(n: int, k: int, center: int) -> UniformFamily:
    """All k-subsets of [1, n] containing ``center``."""
    if not 1 <= center <= n or not 1 <= k <= n:
        raise RangeError(f"star needs 1 <= center <= n and 1 <= k <= n, got n={n}, k={k}, center={center}")
    bit = 1 << (center - 1)
    low = bit - 1
    masks = []
    for m in colex_masks(n - 1, k - 1):
        # spread the (n-1)-bit mask around the center bit
        masks.append((m & low) | bit | ((m & ~low) << 1))
    return UniformFamily._trusted(n, k, sorted(masks))
