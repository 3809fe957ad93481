"""The reverse-tableau state machine.

Starting from the standard tableau (all entries black), a neighbouring pair is
implemented by recolouring one black entry red in its row and dropping a black
copy one row lower and to the left, shifting lower parts of columns leftward
to make room.  Every intermediate state is validated against the structural
invariants; violations raise loudly instead of propagating bad states.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .shape import (
    Box,
    Composition,
    NeighbouringPair,
    StandardTableau,
    left_rectangle,
    m_basis,
)


class StructureError(RuntimeError):
    """A tableau violated one of the structural invariants."""


class EnablingError(RuntimeError):
    """The leftmost eligible column does not have total height exactly s.

    This would falsify the construction at desk scale; it must surface with
    the offending state attached rather than be skipped.
    """


class PairNotImplementableError(RuntimeError):
    """No eligible source column exists besides the left boundary."""


class ColoredTableau:
    """A tableau with values 1..n, each box black or red.

    Structural invariants (checked by :func:`check_structure`):

    * values strictly increase down columns and along rows ("standard with
      multiplicities": one value may occupy several boxes);
    * every value has exactly one black box;
    * the boxes of one value form a string: read left to right they rise by
      exactly one row per step, and only the leftmost (lowest) one is black;
    * no value occurs twice in a row.
    """

    __slots__ = ("base", "columns", "_occurrences", "_black")

    def __init__(
        self,
        base: StandardTableau,
        columns: tuple[tuple[tuple[int, bool], ...], ...],
    ) -> None:
        self.base = base
        self.columns = columns
        occ: dict[int, list[Box]] = {}
        black: dict[int, Box] = {}
        for c, column in enumerate(columns, start=1):
            for r, (value, red) in enumerate(column, start=1):
                occ.setdefault(value, []).append(Box(c, r))
                if not red:
                    if value in black:
                        raise StructureError(f"value {value} has two black boxes")
                    black[value] = Box(c, r)
        self._occurrences = {v: tuple(sorted(b, key=lambda x: x.col)) for v, b in occ.items()}
        self._black = black

    # -- queries -------------------------------------------------------------

    @property
    def column_count(self) -> int:
        return len(self.columns)

    def height(self, col: int) -> int:
        return len(self.columns[col - 1])

    def black_height(self, col: int) -> int:
        """Row of the lowest black entry of the column; 0 if it has none."""
        column = self.columns[col - 1]
        for r in range(len(column), 0, -1):
            if not column[r - 1][1]:
                return r
        return 0

    def has_box(self, col: int, row: int) -> bool:
        return 1 <= col <= len(self.columns) and 1 <= row <= len(self.columns[col - 1])

    def value_at(self, col: int, row: int) -> int:
        return self.columns[col - 1][row - 1][0]

    def red_at(self, col: int, row: int) -> bool:
        return self.columns[col - 1][row - 1][1]

    def occurrences(self, value: int) -> tuple[Box, ...]:
        """All boxes of the value, sorted left to right."""
        return self._occurrences.get(value, ())

    def black_box(self, value: int) -> Box:
        return self._black[value]

    def red_multiset(self) -> Counter:
        out: Counter = Counter()
        for column in self.columns:
            for value, red in column:
                if red:
                    out[value] += 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredTableau):
            return NotImplemented
        return self.columns == other.columns and self.base == other.base

    def __hash__(self) -> int:
        return hash(self.columns)

    def __repr__(self) -> str:
        return f"ColoredTableau({self.columns!r})"

    # -- rendering -------------------------------------------------------------

    def render_ascii(self) -> str:
        """One line per row; red entries bracketed as ``[j]``, black bare."""
        if not self.columns:
            return ""
        depth = max((len(c) for c in self.columns), default=0)
        cells = []
        for column in self.columns:
            col_cells = [f"[{v}]" if red else str(v) for v, red in column]
            cells.append(col_cells)
        widths = [max((len(x) for x in col), default=1) for col in cells]
        lines = []
        for r in range(depth):
            row = [
                (col[r] if r < len(col) else "").ljust(w)
                for col, w in zip(cells, widths)
            ]
            lines.append(" ".join(row).rstrip())
        return "\n".join(lines)

    def to_json_obj(self) -> dict:
        boxes = []
        for c, column in enumerate(self.columns, start=1):
            for r, (value, red) in enumerate(column, start=1):
                boxes.append(
                    {"col": c, "row": r, "value": value, "color": "red" if red else "black"}
                )
        return {"columns": self.column_count, "boxes": boxes}


def init(t: StandardTableau) -> ColoredTableau:
    """The initial state: the standard tableau with every entry black."""
    columns = tuple(tuple((v, False) for v in col) for col in t.columns)
    return ColoredTableau(t, columns)


def check_structure(rt: ColoredTableau) -> None:
    """Validate all structural invariants, raising StructureError on failure."""
    n = rt.base.n
    # strict increase down columns
    for c, column in enumerate(rt.columns, start=1):
        values = [v for v, _ in column]
        if any(a >= b for a, b in zip(values, values[1:])):
            raise StructureError(f"column C{c} not strictly increasing: {values}")
    # strict increase along rows
    depth = max((len(c) for c in rt.columns), default=0)
    for r in range(1, depth + 1):
        previous = 0
        for c in range(1, rt.column_count + 1):
            if rt.has_box(c, r):
                v = rt.value_at(c, r)
                if v <= previous:
                    raise StructureError(f"row R{r} not strictly increasing at C{c}")
                previous = v
    # one black box per value, string shape, one occurrence per row
    for value in range(1, n + 1):
        boxes = rt.occurrences(value)
        if not boxes:
            raise StructureError(f"value {value} missing")
        if value not in rt._black:
            raise StructureError(f"value {value} has no black box")
        if rt._black[value] != boxes[0]:
            raise StructureError(f"value {value}: leftmost box is not the black one")
        rows = {b.row for b in boxes}
        if len(rows) != len(boxes):
            raise StructureError(f"value {value} occurs twice in one row")
        for left, right in zip(boxes, boxes[1:]):
            if right.col <= left.col or right.row != left.row - 1:
                raise StructureError(
                    f"value {value}: boxes {left} -> {right} break the string shape"
                )
            if not rt.red_at(right.col, right.row):
                raise StructureError(f"value {value}: non-leftmost box {right} is black")


# -- trapezium ---------------------------------------------------------------


@dataclass(frozen=True)
class Trapezium:
    """The evolving region tracking a pair's rectangle.

    The left boundary holds, row by row, the rightmost box carrying the value
    of the pair's left column; the right boundary the leftmost box carrying
    the value of the right column (always black).
    """

    pair: NeighbouringPair
    left_boundary: tuple[Box, ...]
    right_boundary: tuple[Box, ...]
    member_boxes: frozenset[Box]
    left_member_boxes: frozenset[Box]


def _row_box(rt: ColoredTableau, value: int, row: int) -> Box:
    for box in rt.occurrences(value):
        if box.row == row:
            return box
    raise StructureError(f"value {value} has no box in row {row}")


def _border_boxes(rt: ColoredTableau, pair: NeighbouringPair) -> tuple[tuple[Box, ...], tuple[Box, ...]]:
    # Row by row: the box carrying the value of the pair's left (resp. right)
    # column; values occur at most once per row, so each box is unique.  The
    # rightmost occurrence of a left-column value always sits in its original
    # row, so this agrees with the rightmost/leftmost description.
    t = rt.base
    left: list[Box] = []
    right: list[Box] = []
    for r in range(1, pair.height + 1):
        left.append(_row_box(rt, t.entry(pair.left, r), r))
        right.append(_row_box(rt, t.entry(pair.right, r), r))
    return tuple(left), tuple(right)


def _assert_right_border_black(rt: ColoredTableau, pair: NeighbouringPair, right: tuple[Box, ...]) -> None:
    # Holds while the pair is not yet implemented.
    for box in right:
        if rt.red_at(box.col, box.row):
            raise StructureError(
                f"right boundary of unimplemented {pair} contains a red entry at {box}\n"
                + rt.render_ascii()
            )


def trapezium(rt: ColoredTableau, pair: NeighbouringPair) -> Trapezium:
    """Locate the pair's trapezium by value matching."""
    left, right = _border_boxes(rt, pair)
    members = set()
    left_members = set()
    for r in range(1, pair.height + 1):
        lo, ro = left[r - 1], right[r - 1]
        for col in range(lo.col, ro.col + 1):
            if rt.has_box(col, r):
                members.add(Box(col, r))
                if col > lo.col:
                    left_members.add(Box(col, r))
    return Trapezium(pair, left, right, frozenset(members), frozenset(left_members))


def black_count(rt: ColoredTableau, pair: NeighbouringPair) -> int:
    """Number of black boxes in the left trapezium (rows 1..s, strictly right
    of the left boundary, up to and including the right boundary)."""
    trap = trapezium(rt, pair)
    return sum(1 for b in trap.left_member_boxes if not rt.red_at(b.col, b.row))


def has_red_in_bottom_row(rt: ColoredTableau, pair: NeighbouringPair) -> bool:
    """True iff row s of the left trapezium holds a red entry.

    This happens exactly when the pair has been implemented; equivalently the
    restricted invariant of the pair vanishes.
    """
    trap = trapezium(rt, pair)
    s = pair.height
    return any(
        rt.red_at(b.col, b.row) for b in trap.left_member_boxes if b.row == s
    )


# -- pair state and implementation choices ------------------------------------


@dataclass(frozen=True)
class PairState:
    """The left boundary column and the eligible source columns of a pair."""

    pair: NeighbouringPair
    left_boundary: int
    eligible: tuple[int, ...]


@dataclass(frozen=True)
class ImplementationChoice:
    """One legal way to implement a pair: which column donates its row-s entry
    and where the leftward shifting of lower parts terminates."""

    source_col: int
    shift_stop: int


def pair_state(rt: ColoredTableau, pair: NeighbouringPair) -> PairState:
    """Compute the eligible columns for implementing a not-yet-implemented pair.

    Eligible are the column of the bottom-left boundary box, every column
    strictly between it and the bottom-right boundary column whose black
    height is exactly s (and height at least s), and the bottom-right boundary
    column itself.  The leftmost eligible column must have total height
    exactly s; anything else falsifies the construction and raises.
    """
    left, right = _border_boxes(rt, pair)
    _assert_right_border_black(rt, pair, right)
    s = pair.height
    lb = left[-1].col
    rb = right[-1].col
    eligible = [lb]
    for col in range(lb + 1, rb):
        if rt.height(col) >= s and rt.black_height(col) == s:
            eligible.append(col)
    eligible.append(rb)
    if rt.height(lb) != s:
        raise EnablingError(
            f"leftmost eligible column C{lb} of {pair} has height {rt.height(lb)} != {s}\n"
            + rt.render_ascii()
        )
    return PairState(pair, lb, tuple(eligible))


def _landing_column(rt: ColoredTableau, source: int, s: int) -> int:
    for col in range(source - 1, 0, -1):
        if rt.height(col) >= s:
            return col
    raise StructureError(f"no column of height >= {s} left of C{source}")


def enumerate_choices(rt: ColoredTableau, pair: NeighbouringPair) -> tuple[ImplementationChoice, ...]:
    """All legal (source, shift stop) combinations, source right-to-left and
    stops right-to-left (ending with extreme shifting at the left boundary)."""
    state = pair_state(rt, pair)
    sources = [c for c in state.eligible if c != state.left_boundary]
    if not sources:
        raise PairNotImplementableError(f"no source column for {pair}\n" + rt.render_ascii())
    s = pair.height
    out: list[ImplementationChoice] = []
    for source in sorted(sources, reverse=True):
        landing = _landing_column(rt, source, s)
        if rt.height(landing) == s:
            stops = [landing]
        else:
            stops = [
                col
                for col in range(landing - 1, state.left_boundary - 1, -1)
                if rt.height(col) == s
            ]
        for stop in stops:
            out.append(ImplementationChoice(source, stop))
    return tuple(out)


def implement_pair(
    rt: ColoredTableau, pair: NeighbouringPair, choice: ImplementationChoice
) -> ColoredTableau:
    """Apply one implementation step and return the new tableau.

    The source's row-s entry j turns red in place; a black j lands in row s+1
    of the nearest column of height >= s to the left.  If that row is occupied
    the lower parts (rows > s) of the columns from there down to the stop
    column shift one slot leftward in unison, jumping over columns of height
    < s and over any height-s columns right of the chosen stop.
    """
    if choice not in enumerate_choices(rt, pair):
        raise ValueError(f"{choice} is not a legal choice for {pair}")
    s = pair.height
    source = choice.source_col
    cols: list[list[tuple[int, bool]]] = [list(c) for c in rt.columns]

    value, red = cols[source - 1][s - 1]
    if red:
        raise StructureError(f"source entry {value} in C{source} is already red")
    cols[source - 1][s - 1] = (value, True)

    landing = _landing_column(rt, source, s)
    if rt.height(landing) == s:
        cols[landing - 1].append((value, False))
    else:
        chain = [choice.shift_stop] + [
            col for col in range(choice.shift_stop + 1, landing + 1) if rt.height(col) > s
        ]
        moved = {col: cols[col - 1][s:] for col in chain[1:]}
        for col in chain[1:]:
            del cols[col - 1][s:]
        for receiver, giver in zip(chain, chain[1:]):
            cols[receiver - 1].extend(moved[giver])
        cols[landing - 1].append((value, False))

    new = ColoredTableau(rt.base, tuple(tuple(c) for c in cols))
    check_structure(new)
    return new


# -- excluded roots ------------------------------------------------------------


def excluded_roots(rt: ColoredTableau) -> frozenset[tuple[int, int]]:
    """Coordinates (i, j) of the nilradical basis zeroed out by the tableau.

    (i, j) is excluded when the rightmost occurrence of i sits above the black
    j in the same column, or in any column strictly to its right.  Pairs in a
    common column of the standard tableau (Levi roots) are never counted.
    """
    out = set()
    for (i, j) in m_basis(rt.base.composition):
        black_j = rt.black_box(j)
        rightmost_i = rt.occurrences(i)[-1]
        if rightmost_i.col > black_j.col or (
            rightmost_i.col == black_j.col and rightmost_i.row < black_j.row
        ):
            out.add((i, j))
    return frozenset(out)


def red_multiset(rt: ColoredTableau) -> Counter:
    """Multiset of red entries; its cardinality equals the number of
    implementations performed."""
    return rt.red_multiset()


# -- pseudo-neighbouring pairs --------------------------------------------------


@dataclass(frozen=True)
class PseudoColumn:
    """A height-s column of a trapezium: either a boundary (col None) or a
    genuine column whose black height equals s."""

    col: int | None
    values: tuple[int, ...]


@dataclass(frozen=True)
class PseudoPair:
    """Consecutive height-s pseudo-columns of a trapezium, together with the
    row/column value sets indexing the factor minor attached to them."""

    left: PseudoColumn
    right: PseudoColumn
    height: int
    row_values: frozenset[int]
    col_values: frozenset[int]


def pseudo_columns(rt: ColoredTableau, pair: NeighbouringPair) -> tuple[PseudoColumn, ...]:
    """The height-s columns of the pair's trapezium, boundaries included."""
    left, right = _border_boxes(rt, pair)
    _assert_right_border_black(rt, pair, right)
    s = pair.height
    lb, rb = left[-1].col, right[-1].col
    out = [PseudoColumn(None, tuple(rt.value_at(b.col, b.row) for b in left))]
    for col in range(lb + 1, rb):
        if rt.height(col) >= s and rt.black_height(col) == s:
            for r in range(1, s + 1):
                if rt.red_at(col, r):
                    raise StructureError(
                        f"pseudo-column C{col} of {pair} carries a red entry in rows 1..{s}"
                    )
                # May touch the left boundary (a shared box re-selected for a
                # repeat red) but never poke strictly outside either boundary.
                if not (left[r - 1].col <= col < right[r - 1].col):
                    raise StructureError(
                        f"pseudo-column C{col} of {pair} pokes outside the boundary in row {r}"
                    )
            out.append(PseudoColumn(col, tuple(rt.value_at(col, r) for r in range(1, s + 1))))
    out.append(PseudoColumn(None, tuple(rt.value_at(b.col, b.row) for b in right)))
    return tuple(out)


def _inner_black_values(
    rt: ColoredTableau, left: tuple[Box, ...], right: tuple[Box, ...], s: int
) -> list[tuple[int, int]]:
    """(column, value) of every black box strictly inside the boundary lines.

    Below row s the boundaries continue straight down from their bottom boxes.
    """
    out = []
    for col in range(left[-1].col, right[0].col + 1):
        for row in range(1, rt.height(col) + 1):
            lb = left[min(row, s) - 1].col
            rb = right[min(row, s) - 1].col
            if lb < col < rb and not rt.red_at(col, row):
                out.append((col, rt.value_at(col, row)))
    return out


def pseudo_pairs(rt: ColoredTableau, pair: NeighbouringPair) -> tuple[PseudoPair, ...]:
    """The pseudo-neighbouring pairs of the trapezium, with factor index sets.

    For consecutive pseudo-columns the row set collects the left column's
    values (red-inclusive on the left boundary) plus the black values strictly
    between, and the column set the between values plus the right column's.
    """
    markers = pseudo_columns(rt, pair)
    left, right = _border_boxes(rt, pair)
    inner = _inner_black_values(rt, left, right, pair.height)
    out = []
    for a, b in zip(markers, markers[1:]):
        lo = a.col if a.col is not None else 0
        hi = b.col if b.col is not None else rt.column_count + 1
        between = {v for col, v in inner if lo < col < hi}
        row_values = frozenset(a.values) | between
        col_values = between | frozenset(b.values)
        if len(row_values) != len(col_values):
            raise StructureError(
                f"pseudo-pair of {pair} has mismatched index sets "
                f"{sorted(row_values)} / {sorted(col_values)}"
            )
        out.append(PseudoPair(a, b, pair.height, row_values, col_values))
    return tuple(out)
