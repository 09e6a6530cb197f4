"""Exact linear algebra over the rationals for small dense matrices.

Everything here works on `fractions.Fraction` entries, so ranks, spans and
nullspaces are exact: no tolerances, no floating point. Matrices are tiny
(rows and columns on the order of the number of edges/labels of a transition
system), so a straightforward Gauss-Jordan elimination is all we need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = int | Fraction


def _frac(value: Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class RatVector:
    """Immutable vector of rationals."""

    entries: tuple[Fraction, ...]

    @classmethod
    def make(cls, values: Iterable[Scalar]) -> "RatVector":
        return cls(tuple(_frac(v) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def dot(self, other: "RatVector") -> Fraction:
        if len(self) != len(other):
            raise ValueError(
                f"dot of vectors with different lengths ({len(self)} vs {len(other)})"
            )
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def scaled_to_integers(self) -> tuple[int, ...]:
        """Clear denominators: the smallest positive multiple with integer entries."""
        lcm = 1
        for e in self.entries:
            d = e.denominator
            lcm = lcm * d // _gcd(lcm, d)
        return tuple(int(e * lcm) for e in self.entries)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class RatMatrix:
    """Row-major matrix of rationals. `rows` may be 0 (then `cols` still matters)."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "RatMatrix":
        """Build from an iterable of rows; `cols` is required when rows is empty."""
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        flat = tuple(_frac(v) for r in rows for v in r)
        return cls(len(rows), cols, flat)

    def row(self, i: int) -> RatVector:
        start = i * self.cols
        return RatVector(self.entries[start : start + self.cols])

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i).entries) for i in range(self.rows)]

    def stacked_with(self, extra: RatVector) -> "RatMatrix":
        if len(extra) != self.cols:
            raise ValueError(
                f"cannot stack length-{len(extra)} vector under {self.cols}-column matrix"
            )
        return RatMatrix(self.rows + 1, self.cols, self.entries + extra.entries)


@dataclass(frozen=True)
class Echelon:
    """Result of Gauss-Jordan elimination."""

    reduced: RatMatrix
    rank: int
    pivot_cols: tuple[int, ...]


def rref(matrix: RatMatrix) -> Echelon:
    """Reduced row echelon form.

    Deterministic: the pivot for each column is the first row (top to bottom)
    with a nonzero entry there. Pivots are scaled to 1 and their columns
    cleared above and below, so the result is canonical for the row space.
    """
    rows = matrix.row_list()
    n_rows, n_cols = matrix.rows, matrix.cols
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(n_cols):
        if pivot_row == n_rows:
            break
        # first row at or below pivot_row with a nonzero entry in this column
        hit = None
        for r in range(pivot_row, n_rows):
            if rows[r][col] != 0:
                hit = r
                break
        if hit is None:
            continue
        rows[pivot_row], rows[hit] = rows[hit], rows[pivot_row]
        lead = rows[pivot_row][col]
        if lead != 1:
            rows[pivot_row] = [v / lead for v in rows[pivot_row]]
        for r in range(n_rows):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
    flat = tuple(v for r in rows for v in r)
    return Echelon(RatMatrix(n_rows, n_cols, flat), len(pivot_cols), tuple(pivot_cols))


def nullspace_basis(matrix: RatMatrix) -> list[RatVector]:
    """Basis of {v : matrix @ v = 0}, one vector per free column.

    Vectors come out in ascending free-column order with a 1 in the free
    coordinate, which makes the result deterministic.
    """
    ech = rref(matrix)
    pivots = ech.pivot_cols
    pivot_of_col = {c: r for r, c in enumerate(pivots)}
    basis: list[RatVector] = []
    for free in range(matrix.cols):
        if free in pivot_of_col:
            continue
        v = [Fraction(0)] * matrix.cols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -ech.reduced.row(r)[free]
        basis.append(RatVector(tuple(v)))
    return basis


def in_span(rows: RatMatrix, vector: RatVector) -> bool:
    """Is `vector` a rational combination of the matrix rows?"""
    if len(vector) != rows.cols:
        raise ValueError(
            f"length-{len(vector)} vector vs {rows.cols}-column matrix"
        )
    base_rank = rref(rows).rank
    return rref(rows.stacked_with(vector)).rank == base_rank
