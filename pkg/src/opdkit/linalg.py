"""Exact rational dense linear algebra.

Row spaces, null spaces, and orthogonal complements with respect to a
diagonal +/-1 bilinear form, all over exact rationals.  Forward elimination
is fraction-free on gcd-reduced integer rows; pivots are normalized to 1
only at the end, so intermediate entries stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "RationalMatrix",
    "DiagonalForm",
    "rref",
    "rank",
    "nullspace",
    "span_equal",
    "span_contains",
    "orthogonal_complement",
]

Row = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalMatrix:
    """A dense matrix of exact rationals; may have zero rows but keeps its width."""

    rows: tuple[Row, ...]
    cols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "RationalMatrix":
        frozen = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if cols is None:
            if not frozen:
                raise ValueError("cannot infer width of an empty matrix")
            cols = len(frozen[0])
        return cls(frozen, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            ),
            n,
        )

    @classmethod
    def empty(cls, cols: int) -> "RationalMatrix":
        return cls((), cols)


@dataclass(frozen=True)
class DiagonalForm:
    """A nondegenerate diagonal bilinear form given by one sign per basis vector."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("diagonal form entries must be +1 or -1")

    def __len__(self) -> int:
        return len(self.signs)


def _row_content(row: list[int]) -> int:
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for row in m.rows:
        scale = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        ints = [int(x.numerator * (scale // x.denominator)) for x in row]
        g = _row_content(ints)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns.  Row space is preserved."""
    rows = _integer_rows(m)
    pivots: list[int] = []
    pr = 0
    for col in range(m.cols):
        pivot_row = None
        for r in range(pr, len(rows)):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        p = rows[pr][col]
        for r in range(len(rows)):
            if r == pr or not rows[r][col]:
                continue
            a = rows[r][col]
            merged = [p * x - a * y for x, y in zip(rows[r], rows[pr])]
            g = _row_content(merged)
            if g > 1:
                merged = [v // g for v in merged]
            rows[r] = merged
        pivots.append(col)
        pr += 1
    reduced = tuple(
        tuple(Fraction(v, rows[r][pivots[r]]) for v in rows[r]) for r in range(pr)
    )
    return RationalMatrix(reduced, m.cols), tuple(pivots)


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: RationalMatrix) -> RationalMatrix:
    """Rows form a basis of the right kernel {x : M x^T = 0}."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced.rows[r][free]
        basis.append(tuple(vec))
    return RationalMatrix(tuple(basis), m.cols)


def _reduce_against(row: Row, reduced: RationalMatrix, pivots: tuple[int, ...]) -> bool:
    """True iff ``row`` reduces to zero against an rref basis."""
    vec = list(row)
    for r, p in enumerate(pivots):
        c = vec[p]
        if c:
            basis_row = reduced.rows[r]
            vec = [x - c * y for x, y in zip(vec, basis_row)]
    return not any(vec)


def span_contains(a: RationalMatrix, b: RationalMatrix) -> bool:
    """True iff every row of ``b`` lies in the row space of ``a``."""
    if a.cols != b.cols:
        raise ValueError(f"column mismatch: {a.cols} vs {b.cols}")
    reduced, pivots = rref(a)
    return all(_reduce_against(row, reduced, pivots) for row in b.rows)


def span_equal(a: RationalMatrix, b: RationalMatrix) -> bool:
    """True iff the row spaces coincide (rref is a canonical form)."""
    if a.cols != b.cols:
        raise ValueError(f"column mismatch: {a.cols} vs {b.cols}")
    return rref(a)[0].rows == rref(b)[0].rows


def orthogonal_complement(relations: RationalMatrix, form: DiagonalForm) -> RationalMatrix:
    """Basis of {x : <x, r> = 0 for all rows r}, the form being diagonal.

    Equals the null space of ``relations`` with columns rescaled by the signs;
    dim(result) + rank(relations) is the ambient dimension.
    """
    if relations.cols != len(form):
        raise ValueError(
            f"dimension mismatch: {relations.cols} columns vs form of size {len(form)}"
        )
    if not relations.rows:
        return RationalMatrix.identity(len(form))
    scaled = RationalMatrix(
        tuple(
            tuple(x * s for x, s in zip(row, form.signs))
            for row in relations.rows
        ),
        relations.cols,
    )
    return nullspace(scaled)
