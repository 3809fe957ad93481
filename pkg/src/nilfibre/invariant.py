"""Benlolo-Sanderson semi-invariants and their trapezium factors.

An invariant attached to a neighbouring pair (C, C') of height s is realized
as the lowest c-degree coefficient of the (n-s) x (n-s) minor of c*Id + X
obtained by deleting the rows indexed by the entries of C' and the columns
indexed by the entries of C.  This reconstruction is pinned by hard test
vectors; if it ever fails the degree law the build fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .reverse import ColoredTableau, PseudoPair
from .shape import NeighbouringPair, StandardTableau, left_rectangle
from .symalg import (
    DegenerateMinorError,
    Polynomial,
    Variable,
    coord,
    det_symbolic,
)


class DegreeLawError(RuntimeError):
    """An invariant came out with the wrong degree or a repeated coordinate.

    The minor reconstruction is only certified against explicit test vectors;
    any composition where it breaks the degree law must surface, never be
    silently accepted.
    """


@dataclass(frozen=True)
class IndexedMinorSpec:
    """Which rows and columns of the n x n deformation matrix to delete."""

    deleted_rows: frozenset[int]
    deleted_cols: frozenset[int]
    n: int

    def __post_init__(self) -> None:
        universe = range(1, self.n + 1)
        if not set(self.deleted_rows) <= set(universe):
            raise ValueError("deleted rows outside 1..n")
        if not set(self.deleted_cols) <= set(universe):
            raise ValueError("deleted columns outside 1..n")
        if len(self.deleted_rows) != len(self.deleted_cols):
            raise ValueError("row and column deletions must have equal size")

    @property
    def kept_rows(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if v not in self.deleted_rows)

    @property
    def kept_cols(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if v not in self.deleted_cols)


@dataclass(frozen=True)
class BSInvariant:
    """A sign-normalized invariant with its recorded degree and the power of c
    that was divided out."""

    pair: NeighbouringPair
    poly: Polynomial
    degree: int
    c_power: int


def generic_matrix(
    basis: Iterable[tuple[int, int]], n: int, with_deform: bool
) -> list[list[Polynomial]]:
    """The n x n matrix with x_{ij} at the basis positions, c on the diagonal
    when requested, and zeros elsewhere."""
    zero = Polynomial.zero()
    matrix = [[zero for _ in range(n)] for _ in range(n)]
    for (i, j) in basis:
        if not 1 <= i < j <= n:
            raise ValueError(f"basis entry ({i}, {j}) is not strictly upper in 1..{n}")
        matrix[i - 1][j - 1] = Polynomial.coordinate(i, j)
    if with_deform:
        c = Polynomial.deform()
        for i in range(n):
            matrix[i][i] = matrix[i][i] + c
    return matrix


def _minor(matrix: list[list[Polynomial]], rows: Iterable[int], cols: Iterable[int]) -> list[list[Polynomial]]:
    return [[matrix[r - 1][c - 1] for c in cols] for r in rows]


def bs_invariant(
    t: StandardTableau,
    pair: NeighbouringPair,
    basis: Iterable[tuple[int, int]],
) -> BSInvariant:
    """Construct the invariant of a neighbouring pair over the given basis.

    Deletes the s rows indexed by the right column's entries and the s columns
    indexed by the left column's from c*Id + X, takes the exact determinant,
    extracts the lowest c-coefficient and sign-normalizes it.
    """
    spec = IndexedMinorSpec(
        deleted_rows=frozenset(t.column(pair.right)),
        deleted_cols=frozenset(t.column(pair.left)),
        n=t.n,
    )
    matrix = generic_matrix(basis, t.n, with_deform=True)
    det = det_symbolic(_minor(matrix, spec.kept_rows, spec.kept_cols))
    if det.is_zero():
        raise DegenerateMinorError(f"degenerate minor for {pair}")
    poly, power = det.lowest_c_coefficient()
    poly = poly.normalized()
    expected_degree = len(left_rectangle(t, pair))
    if poly.total_degree() != expected_degree or not poly.is_homogeneous():
        raise DegreeLawError(
            f"{pair}: invariant degree {poly.total_degree()} != "
            f"left-rectangle count {expected_degree}"
        )
    if not poly.is_multilinear_in_coords():
        raise DegreeLawError(f"{pair}: invariant repeats a coordinate variable")
    return BSInvariant(pair=pair, poly=poly, degree=expected_degree, c_power=power)


def invariant_table(
    t: StandardTableau,
    pairs: Iterable[NeighbouringPair],
    basis: Iterable[tuple[int, int]],
) -> dict[NeighbouringPair, BSInvariant]:
    basis = frozenset(basis)
    return {p: bs_invariant(t, p, basis) for p in pairs}


def restrict_invariant(inv: BSInvariant, excluded: Iterable[tuple[int, int]]) -> Polynomial:
    """Restriction to the span of the non-excluded coordinates: kill each
    excluded x_{ij}."""
    kill = frozenset(coord(i, j) for (i, j) in excluded)
    return inv.poly.substitute_zero(kill)


def factor_invariant(
    rt: ColoredTableau,
    pseudo: PseudoPair,
    basis: Iterable[tuple[int, int]],
) -> Polynomial:
    """The factor polynomial attached to one pseudo-neighbouring pair.

    Same minor recipe on the sub-matrix indexed by the pseudo-pair's row and
    column value sets, over the given (typically restricted) basis.  Empty
    index sets give the constant 1.
    """
    rows = sorted(pseudo.row_values)
    cols = sorted(pseudo.col_values)
    if not rows and not cols:
        return Polynomial.one()
    matrix = generic_matrix(basis, rt.base.n, with_deform=True)
    det = det_symbolic(_minor(matrix, rows, cols))
    if det.is_zero():
        return Polynomial.zero()
    poly, _ = det.lowest_c_coefficient()
    return poly.normalized()


def kill_set(excluded: Iterable[tuple[int, int]]) -> frozenset[Variable]:
    """Excluded coordinate pairs as symalg variables."""
    return frozenset(coord(i, j) for (i, j) in excluded)


__all__ = [
    "BSInvariant",
    "DegreeLawError",
    "IndexedMinorSpec",
    "bs_invariant",
    "factor_invariant",
    "generic_matrix",
    "invariant_table",
    "kill_set",
    "restrict_invariant",
]
