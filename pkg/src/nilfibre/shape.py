"""Compositions, diagrams, the standard tableau, and neighbouring column pairs.

A composition (c_1, ..., c_k) of n fixes a diagram with k columns of the given
heights.  Its standard tableau is the filling 1..n increasing down columns and
then left to right.  Columns and rows are 1-based, with row 1 on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True, slots=True)
class Composition:
    """An ordered tuple of positive column heights."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("composition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse a comma-separated list of positive integers, e.g. ``1,2,2,1``."""
        try:
            parts = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse composition {text!r}: parts must be positive integers")
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def column_count(self) -> int:
        return len(self.parts)

    def height(self, col: int) -> int:
        return self.parts[col - 1]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True, slots=True)
class Box:
    """A cell of the diagram: 1-based column and row, row 1 topmost."""

    col: int
    row: int


class StandardTableau:
    """The unique filling of the diagram with 1..n, increasing down columns
    and then from left to right.  Every entry of a column is strictly smaller
    than every entry of any column to its right."""

    __slots__ = ("composition", "columns", "_position")

    def __init__(self, composition: Composition) -> None:
        self.composition = composition
        cols: list[tuple[int, ...]] = []
        value = 1
        for height in composition.parts:
            cols.append(tuple(range(value, value + height)))
            value += height
        self.columns: tuple[tuple[int, ...], ...] = tuple(cols)
        self._position: dict[int, Box] = {}
        for c, column in enumerate(self.columns, start=1):
            for r, entry in enumerate(column, start=1):
                self._position[entry] = Box(c, r)

    @property
    def n(self) -> int:
        return self.composition.n

    @property
    def column_count(self) -> int:
        return len(self.columns)

    def height(self, col: int) -> int:
        return len(self.columns[col - 1])

    def column(self, col: int) -> tuple[int, ...]:
        return self.columns[col - 1]

    def entry(self, col: int, row: int) -> int:
        return self.columns[col - 1][row - 1]

    def box_of(self, entry: int) -> Box:
        return self._position[entry]

    def column_of(self, entry: int) -> int:
        return self._position[entry].col

    def row_of(self, entry: int) -> int:
        return self._position[entry].row

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StandardTableau):
            return NotImplemented
        return self.composition == other.composition

    def __hash__(self) -> int:
        return hash(self.composition)

    def __repr__(self) -> str:
        return f"StandardTableau({self.composition})"


def standard_tableau(comp: Composition) -> StandardTableau:
    """The standard filling of the diagram of ``comp``."""
    return StandardTableau(comp)


@dataclass(frozen=True, slots=True)
class NeighbouringPair:
    """Two columns of equal height with no column of that height strictly
    between them."""

    left: int
    right: int
    height: int

    def __post_init__(self) -> None:
        if not self.left < self.right:
            raise ValueError("left column must precede right column")

    def __str__(self) -> str:
        return f"(C{self.left},C{self.right})@{self.height}"


def neighbouring_pairs(comp: Composition) -> tuple[NeighbouringPair, ...]:
    """All neighbouring pairs, sorted by height descending then left column.

    For each height the columns of that height chain consecutively, so the
    total count is sum over heights of (#columns of that height - 1).
    """
    by_height: dict[int, list[int]] = {}
    for col, h in enumerate(comp.parts, start=1):
        by_height.setdefault(h, []).append(col)
    pairs = []
    for h, cols in by_height.items():
        for left, right in zip(cols, cols[1:]):
            pairs.append(NeighbouringPair(left, right, h))
    pairs.sort(key=lambda p: (-p.height, p.left))
    return tuple(pairs)


def rectangle(t: StandardTableau, pair: NeighbouringPair) -> tuple[Box, ...]:
    """Boxes of rows 1..s in columns [C, C'], where they exist."""
    out = []
    for col in range(pair.left, pair.right + 1):
        for row in range(1, min(pair.height, t.height(col)) + 1):
            out.append(Box(col, row))
    return tuple(out)


def left_rectangle(t: StandardTableau, pair: NeighbouringPair) -> tuple[Box, ...]:
    """Boxes of rows 1..s in columns ]C, C']; their count is the degree of the
    invariant attached to the pair."""
    return tuple(b for b in rectangle(t, pair) if b.col > pair.left)


def left_rectangle_entries(t: StandardTableau, pair: NeighbouringPair) -> frozenset[int]:
    return frozenset(t.entry(b.col, b.row) for b in left_rectangle(t, pair))


def m_basis(comp: Composition) -> frozenset[tuple[int, int]]:
    """Coordinate pairs (i, j), i < j, with i and j in distinct columns of the
    standard tableau.  These index a basis of the nilradical."""
    t = standard_tableau(comp)
    out = set()
    for i in range(1, t.n + 1):
        for j in range(i + 1, t.n + 1):
            if t.column_of(i) != t.column_of(j):
                out.add((i, j))
    return frozenset(out)


def dim_m(comp: Composition) -> int:
    """Dimension of the nilradical: (n^2 - sum c_i^2) / 2."""
    return (comp.n ** 2 - sum(p * p for p in comp.parts)) // 2


def is_levi_root(t: StandardTableau, i: int, j: int) -> bool:
    """True iff i and j lie in the same column of the standard tableau."""
    if not (1 <= i <= t.n and 1 <= j <= t.n):
        raise ValueError(f"entries must lie in 1..{t.n}")
    return t.column_of(i) == t.column_of(j)


@lru_cache(maxsize=None)
def _compositions_of(n: int) -> tuple[Composition, ...]:
    out: list[Composition] = []

    def build(remaining: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(Composition(prefix))
            return
        for part in range(1, remaining + 1):
            build(remaining - part, prefix + (part,))

    build(n, ())
    return tuple(out)


def all_compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, in lexicographic order of parts."""
    if n < 1:
        raise ValueError("n must be positive")
    return iter(_compositions_of(n))
