"""Brute-force ground truth, independent of the proof machinery.

Maximum t-intersecting families are maximum cliques of the graph on
k-subsets joining pairs that share at least t points; the search here is a
plain branch and bound with greedy-colouring bounds on Python-int bitsets.
Nothing in this module imports the shadow, pipeline, or algebra code.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import RangeError, ScaleError
from .setcore import UniformFamily, colex_masks

DEFAULT_MAX_BINOM = 40
# Above this many vertices the number of maximum families is not reported.
COUNT_LIMIT = 25


@dataclass(frozen=True)
class OracleResult:
    n: int
    k: int
    t: int
    max_size: int
    num_maximum_families: int | None
    all_maximum_are_stars: bool
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        # elapsed is left out so that reports are byte-deterministic
        return {
            "all_maximum_are_stars": self.all_maximum_are_stars,
            "k": self.k,
            "max_size": self.max_size,
            "n": self.n,
            "num_maximum_families": self.num_maximum_families,
            "t": self.t,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


class _CliqueSearch:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj

    def _colour_order(self, p: int) -> list[tuple[int, int]]:
        """Vertices of p with greedy colour numbers, non-decreasing colour."""
        adj = self.adj
        order = []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                uncoloured &= ~low
                order.append((v, colour))
        return order

    def max_size(self, incumbent: int) -> int:
        """Largest clique size, given that a clique of size ``incumbent`` exists."""
        self.best = incumbent
        self._grow(0, (1 << len(self.adj)) - 1)
        return self.best

    def _grow(self, depth: int, p: int) -> None:
        for v, colour in reversed(self._colour_order(p)):
            if depth + colour <= self.best:
                return
            newp = p & self.adj[v]
            if newp:
                self._grow(depth + 1, newp)
            elif depth + 1 > self.best:
                self.best = depth + 1
            p &= ~(1 << v)

    def cliques_of_size(self, target: int, visit: Callable[[list[int]], bool]) -> None:
        """Call ``visit`` on every clique of exactly ``target`` vertices; stop if it returns False."""
        self.target = target
        self.visit = visit
        self.stopped = False
        self._enumerate([], (1 << len(self.adj)) - 1)

    def _enumerate(self, chosen: list[int], p: int) -> None:
        for v, colour in reversed(self._colour_order(p)):
            if self.stopped or len(chosen) + colour < self.target:
                return
            chosen.append(v)
            if len(chosen) == self.target:
                if not self.visit(chosen):
                    self.stopped = True
            else:
                newp = p & self.adj[v]
                if newp:
                    self._enumerate(chosen, newp)
            chosen.pop()
            p &= ~(1 << v)


def _guard(n: int, k: int, max_binom: int) -> int:
    if not 0 <= k <= n:
        raise RangeError(f"need 0 <= k <= n, got n={n}, k={k}")
    count = math.comb(n, k)
    if count > max_binom:
        raise ScaleError(f"C({n},{k}) = {count} exceeds the scale guard {max_binom}")
    return count


def max_t_intersecting_bruteforce(n: int, k: int, t: int, max_binom: int = DEFAULT_MAX_BINOM) -> OracleResult:
    """Exact maximum size of a k-uniform family on [n] with pairwise intersections >= t.

    ``all_maximum_are_stars`` asks whether every maximum family has t points
    common to all its members.
    """
    _guard(n, k, max_binom)
    if not 1 <= t <= k:
        raise RangeError(f"need 1 <= t <= k, got t={t}, k={k}")
    start = time.perf_counter()
    verts = colex_masks(n, k)
    adj = [0] * len(verts)
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if i != j and (a & b).bit_count() >= t:
                adj[i] |= 1 << j
    search = _CliqueSearch(adj)

    # a family through a fixed t-set is a clique; check it, then use its size
    core = (1 << t) - 1
    through = [i for i, m in enumerate(verts) if m & core == core]
    for i in through:
        if any(not adj[i] >> j & 1 for j in through if j != i):
            raise AssertionError("family through a fixed t-set is not a clique")
    best = search.max_size(len(through))

    count = 0
    all_stars = True

    def visit(clique: list[int]) -> bool:
        nonlocal count, all_stars
        count += 1
        common = (1 << n) - 1
        for v in clique:
            common &= verts[v]
        if common.bit_count() < t:
            all_stars = False
        return all_stars or len(verts) <= COUNT_LIMIT

    search.cliques_of_size(best, visit)
    return OracleResult(
        n=n,
        k=k,
        t=t,
        max_size=best,
        num_maximum_families=count if len(verts) <= COUNT_LIMIT else None,
        all_maximum_are_stars=all_stars,
        elapsed=time.perf_counter() - start,
    )


def max_intersecting_bruteforce(n: int, k: int, max_binom: int = DEFAULT_MAX_BINOM) -> OracleResult:
    return max_t_intersecting_bruteforce(n, k, 1, max_binom)


# -- exhaustive subfamilies ----------------------------------------------------

def iter_subfamilies(n: int, a: int, max_binom: int = 20) -> Iterator[UniformFamily]:
    """Every subfamily of the complete a-uniform family, empty first.

    Subfamily number f holds the members whose colex rank is a set bit of f.
    """
    _guard(n, a, max_binom)
    members = colex_masks(n, a)
    for f in range(1 << len(members)):
        chosen = [m for i, m in enumerate(members) if f >> i & 1]
        yield UniformFamily._trusted(n, a, chosen)


def enumerate_subfamilies(n: int, a: int, callback: Callable[[UniformFamily], object], max_binom: int = 20) -> int:
    """Call ``callback`` on every subfamily in order; returns how many were visited."""
    count = 0
    for fam in iter_subfamilies(n, a, max_binom):
        callback(fam)
        count += 1
    return count


def all_intersecting_subfamilies(n: int, k: int, t: int = 1, max_binom: int = 20) -> Iterator[UniformFamily]:
    """Every nonempty t-intersecting subfamily of the complete k-uniform family.

    Depth-first over members in colex order, extending only by later
    members compatible with everything chosen so far.
    """
    _guard(n, k, max_binom)
    verts = colex_masks(n, k)
    adj = [0] * len(verts)
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if (a & verts[j]).bit_count() >= t:
                adj[i] |= 1 << j
    chosen: list[int] = []

    def extend(p: int) -> Iterator[UniformFamily]:
        while p:
            low = p & -p
            v = low.bit_length() - 1
            p ^= low
            chosen.append(verts[v])
            yield UniformFamily._trusted(n, k, chosen)
            yield from extend(p & adj[v])
            chosen.pop()

    yield from extend((1 << len(verts)) - 1)


# -- seeded generators -----------------------------------------------------

def derive_seed(*parts: int) -> int:
    """Stable 64-bit seed from integers (independent of PYTHONHASHSEED)."""
    text = ":".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


def random_maximal_intersecting(n: int, k: int, seed: int) -> UniformFamily:
    """A maximal intersecting family built greedily from a shuffled candidate list.

    Candidates are all k-subsets in colex order, shuffled by Python's
    Mersenne Twister ``random.Random(seed)``; each is added if it meets every
    member chosen so far.  One pass suffices for maximality because a
    rejected set is disjoint from a member that stays.
    """
    if not 1 <= k or 2 * k > n:
        raise RangeError(f"need n >= 2k >= 2, got n={n}, k={k}")
    masks = colex_masks(n, k)
    random.Random(seed).shuffle(masks)
    arr = np.array(masks, dtype=np.uint64)
    allowed = np.ones(arr.shape[0], dtype=bool)
    chosen = []
    for i, m in enumerate(masks):
        if allowed[i]:
            chosen.append(m)
            allowed &= (arr & arr[i]) != 0
    return UniformFamily._trusted(n, k, sorted(chosen))


def random_l_intersecting(n: int, k: int, allowed_sizes: frozenset[int], seed: int, attempts: int | None = None) -> UniformFamily:
    """Greedy random family whose pairwise intersection sizes all lie in ``allowed_sizes``."""
    if not 1 <= k <= n:
        raise RangeError(f"need 1 <= k <= n, got n={n}, k={k}")
    masks = colex_masks(n, k)
    random.Random(seed).shuffle(masks)
    if attempts is not None:
        masks = masks[:attempts]
    chosen: list[int] = []
    for m in masks:
        if all((m & c).bit_count() in allowed_sizes for c in chosen):
            chosen.append(m)
    return UniformFamily(n, k, tuple(chosen))


# -- rank by rational Gaussian elimination ---------------------------------

def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Textbook Gauss-Jordan over Fraction; slow, used only to cross-check."""
    mat = [[Fraction(int(x)) for x in row] for row in rows]
    if not mat:
        return 0
    width = len(mat[0])
    rank = 0
    for c in range(width):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                factor = mat[r][c] / mat[rank][c]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank
