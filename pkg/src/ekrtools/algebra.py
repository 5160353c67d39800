"""Inclusion matrices, exact rank, and the multilinear-polynomial view.

Everything here is exact integer arithmetic.  ``exact_rank`` row-reduces
with integer row operations only (no fractions, no floats) and keeps
entries small by dividing each updated row by the gcd of its entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BoundNotApplicableError, GroundMismatchError, PreconditionError, RangeError
from .pipeline import EkrDecomposition, decompose
from .setcore import (
    FamilyFormatError,
    Subset,
    UniformFamily,
    all_k_subsets,
    format_family,
    intersection_sizes,
    parse_family_lines,
    subsets_within,
)


@dataclass(frozen=True, eq=False)
class InclusionMatrix:
    """0/1 matrix with entry (i, j) = 1 iff row_labels[i] contains col_labels[j]."""

    row_labels: tuple[Subset, ...]
    col_labels: tuple[Subset, ...]
    entries: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InclusionMatrix):
            return NotImplemented
        return (self.row_labels == other.row_labels and self.col_labels == other.col_labels
                and np.array_equal(self.entries, other.entries))


def _as_subsets(labels) -> tuple[Subset, ...]:
    if isinstance(labels, UniformFamily):
        return labels.sets
    return tuple(labels)


def inclusion_matrix(rows: UniformFamily | Iterable[Subset], cols: UniformFamily | Iterable[Subset]) -> InclusionMatrix:
    """I(rows, cols).  Rows keep the given order, so mixed-size rows are allowed."""
    row_labels = _as_subsets(rows)
    col_labels = _as_subsets(cols)
    grounds = {s.ground_n for s in row_labels + col_labels}
    if len(grounds) > 1:
        raise GroundMismatchError(f"labels live on different ground sets: {sorted(grounds)}")
    for labels, what in ((row_labels, "row"), (col_labels, "column")):
        if len({s.mask for s in labels}) != len(labels):
            raise PreconditionError(f"duplicate {what} label")
    r = np.array([s.mask for s in row_labels], dtype=np.uint64)
    c = np.array([s.mask for s in col_labels], dtype=np.uint64)
    entries = ((r[:, None] & c[None, :]) == c[None, :]).astype(np.int64)
    entries = entries.reshape(len(row_labels), len(col_labels))
    entries.setflags(write=False)
    return InclusionMatrix(row_labels, col_labels, entries)


# -- exact rank ------------------------------------------------------------

_INT64_SAFE = 1 << 62


def _to_matrix(m) -> np.ndarray:
    if isinstance(m, InclusionMatrix):
        return m.entries.astype(np.int64)
    if isinstance(m, np.ndarray) and m.ndim == 2 and m.dtype.kind in "iu":
        if m.size == 0 or int(np.abs(m).max()) < _INT64_SAFE:
            return m.astype(np.int64)
    rows = [list(r) for r in m]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise RangeError("ragged matrix")
    for r in rows:
        for x in r:
            if not isinstance(x, (int, np.integer)):
                raise RangeError(f"exact rank needs integer entries, got {x!r}")
    vals = [[int(x) for x in r] for r in rows]
    big = max((abs(x) for r in vals for x in r), default=0)
    arr = np.array(vals, dtype=np.int64 if big < _INT64_SAFE else object)
    return arr.reshape(len(rows), widths.pop() if widths else 0)


def _max_abs(a: np.ndarray) -> int:
    return int(np.abs(a).max()) if a.size else 0


def exact_rank(m) -> int:
    """Rank over the rationals by integer row reduction.

    Pivots of magnitude 1 are preferred (plain row subtraction); otherwise
    rows are cross-multiplied and then divided by their content.  Entries
    start as int64 and move to Python ints if they could overflow.
    """
    a = _to_matrix(m).copy()
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        col = a[rank:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        p = rank + int(nz[np.argmin(np.abs(col[nz]))])
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            piv = a[rank, c]
            prow = a[rank, c:]
            block = a[below, c:]
            f = block[:, 0]
            if a.dtype != object:
                bound = abs(int(piv)) * _max_abs(block) + _max_abs(f) * _max_abs(prow)
                if bound >= _INT64_SAFE:
                    a = a.astype(object)
                    prow, block, f, piv = a[rank, c:], a[below, c:], a[below, c], a[rank, c]
            if abs(piv) == 1:
                block = block - (f * piv)[:, None] * prow[None, :]
            else:
                block = piv * block - f[:, None] * prow[None, :]
                g = np.gcd.reduce(block, axis=1)
                g[g == 0] = 1
                block = block // g[:, None]
            a[below, c:] = block
        rank += 1
    return rank


# -- FRW and EKR independence ---------------------------------------------

def frw_independence_check(family: UniformFamily, s: int) -> bool:
    """Rows of I(family, all s-subsets of [n]) are independent for an L-intersecting family with |L| <= s <= k."""
    sizes = intersection_sizes(family)
    if s < 0 or s > family.k:
        raise PreconditionError(f"need 0 <= s <= k = {family.k}, got s={s}", sizes)
    if len(sizes) > s:
        raise PreconditionError(f"family is L-intersecting with |L| = {len(sizes)} > s = {s}", sizes)
    mat = inclusion_matrix(family, all_k_subsets(family.ground_n, s))
    return exact_rank(mat) == len(family)


def ekr_columns(d: EkrDecomposition) -> UniformFamily:
    return subsets_within(Subset(d.n, d.window), d.k - 1)


def ekr_inclusion_matrix(d: EkrDecomposition) -> InclusionMatrix:
    """I(G0 then G1, (k-1)-subsets of [n] - {pivot})."""
    return inclusion_matrix(d.G0.sets + d.G1.sets, ekr_columns(d))


def ekr_matrix_proof(d: EkrDecomposition) -> bool:
    if d.n < 2 * d.k:
        raise BoundNotApplicableError(f"the EKR bound needs n >= 2k, got n={d.n}, k={d.k}")
    mat = ekr_inclusion_matrix(d)
    rank = exact_rank(mat)
    rows, cols = mat.shape
    return rank == rows == len(d.family) and rank <= cols == math.comb(d.n - 1, d.k - 1)


# -- polynomials -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultilinearPolynomial:
    """Homogeneous multilinear polynomial in x_i, i != pivot; monomial x_S keyed by S."""

    n: int
    degree: int
    pivot: int
    coefficients: Mapping[Subset, int]

    def __post_init__(self):
        bit = 1 << (self.pivot - 1)
        for s in self.coefficients:
            if len(s) != self.degree or s.mask & bit:
                raise RangeError(f"monomial {s} is not a degree-{self.degree} monomial avoiding x{self.pivot}")
        object.__setattr__(self, "coefficients", MappingProxyType(dict(self.coefficients)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilinearPolynomial):
            return NotImplemented
        return (self.n, self.degree, self.pivot) == (other.n, other.degree, other.pivot) and \
            dict(self.coefficients) == dict(other.coefficients)

    def coefficient_row(self, basis: Sequence[Subset]) -> list[int]:
        return [self.coefficients.get(s, 0) for s in basis]

    def evaluate(self, x: Mapping[int, int]) -> int:
        return sum(c * math.prod(x[i] for i in s.members) for s, c in self.coefficients.items())

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for s in sorted(self.coefficients):
            c = self.coefficients[s]
            mono = "*".join(f"x{i}" for i in s.members) or "1"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def build_polynomial(f: Subset, n: int, k: int, pivot: int = 1) -> MultilinearPolynomial:
    """p(F, x): x_{F - pivot} if the pivot is in F, else the sum of x_S over
    (k-1)-sets S inside [n] - {pivot} - F."""
    if not 1 <= pivot <= n or f.ground_n != n:
        raise RangeError(f"pivot {pivot} or set {f} not on [1, {n}]")
    if len(f) != k or k < 1:
        raise RangeError(f"{f} is not a {k}-set")
    bit = 1 << (pivot - 1)
    if f.mask & bit:
        return MultilinearPolynomial(n, k - 1, pivot, {Subset(n, f.mask ^ bit): 1})
    free = [i for i in range(1, n + 1) if i != pivot and i not in f]
    coeffs = {Subset.of(n, combo): 1 for combo in combinations(free, k - 1)}
    return MultilinearPolynomial(n, k - 1, pivot, coeffs)


def coefficient_matrix(family: UniformFamily, pivot: int = 1) -> tuple[np.ndarray, tuple[Subset, ...]]:
    """Coefficient vectors of p(F, .) in the x_S basis, rows F0 block then F1 block.

    Within the F0 block rows follow G0's colex order, so the result lines up
    row-for-row with :func:`ekr_inclusion_matrix`.
    """
    n, k = family.ground_n, family.k
    bit = 1 << (pivot - 1)
    window = Subset(n, ((1 << n) - 1) ^ bit)
    basis = subsets_within(window, k - 1).sets
    f0 = [m for m in family.masks if not m & bit]
    f1 = [m for m in family.masks if m & bit]
    # G0 colex order is the reverse of F0 colex order
    ordered = list(reversed(f0)) + f1
    column = {s.mask: j for j, s in enumerate(basis)}
    mat = np.zeros((len(ordered), len(basis)), dtype=np.int64)
    for i, m in enumerate(ordered):
        for mono, c in build_polynomial(Subset(n, m), n, k, pivot).coefficients.items():
            mat[i, column[mono.mask]] = c
    return mat, basis


def polynomials_independent(family: UniformFamily, pivot: int = 1) -> bool:
    d = decompose(family, pivot)
    if d.n < 2 * d.k:
        raise BoundNotApplicableError(f"the EKR bound needs n >= 2k, got n={d.n}, k={d.k}")
    mat, _ = coefficient_matrix(family, pivot)
    return exact_rank(mat) == len(family)


# -- matrix dump format ----------------------------------------------------

def _label_blocks(labels: Sequence[Subset]) -> list[UniformFamily]:
    blocks: list[list[Subset]] = []
    for s in labels:
        # a new block starts on a size change or wherever colex order breaks
        if blocks and len(blocks[-1][0]) == len(s) and blocks[-1][-1].mask < s.mask:
            blocks[-1].append(s)
        else:
            blocks.append([s])
    return [UniformFamily._trusted(b[0].ground_n, len(b[0]), [s.mask for s in b]) for b in blocks]


def format_matrix_dump(mat: InclusionMatrix) -> str:
    """``rows cols``, the 0/1 rows, then row-label and column-label family sections.

    Row labels are written as one family section per increasing run of
    equal-size labels.  A section header ``n k`` is never a valid set line (it is not
    strictly increasing), which keeps the dump re-parseable.
    """
    rows, cols = mat.shape
    out = [f"{rows} {cols}"]
    out += [" ".join(str(int(v)) for v in row) for row in mat.entries]
    text = "\n".join(out) + "\n"
    for block in _label_blocks(mat.row_labels):
        text += format_family(block)
    col_block = _label_blocks(mat.col_labels)
    if len(col_block) > 1:
        raise PreconditionError("column labels must be uniform for the dump format")
    if col_block:
        text += format_family(col_block[0])
    return text


def parse_matrix_dump(text: str) -> InclusionMatrix:
    if not text.endswith("\n"):
        raise FamilyFormatError("dump must end with a newline")
    lines = text[:-1].split("\n")
    rows, cols = (int(x) for x in lines[0].split(" "))
    entries = [[int(x) for x in line.split(" ")] if cols else [] for line in lines[1:1 + rows]]
    pos = 1 + rows

    def section(need: int) -> list[Subset]:
        nonlocal pos
        got: list[Subset] = []
        while len(got) < need:
            n, k = (int(x) for x in lines[pos].split(" "))
            end = pos + 1
            while end < len(lines) and len(got) + (end - pos - 1) < need:
                parts = lines[end].split(" ") if lines[end] else []
                vals = [int(x) for x in parts]
                if len(vals) != k or vals != sorted(set(vals)):
                    break
                end += 1
            got += parse_family_lines(lines[pos:end]).sets
            pos = end
        return got

    row_labels = section(rows)
    col_labels = section(cols)
    mat = inclusion_matrix(row_labels, col_labels)
    if mat.entries.tolist() != entries:
        raise FamilyFormatError("dump entries disagree with the labels")
    return mat
