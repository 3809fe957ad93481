"""Exact sparse multivariate polynomial arithmetic over the integers.

Two kinds of indeterminates occur: coordinates ``x_{i,j}`` indexed by strictly
upper pairs ``i < j``, and a single deformation variable ``c``.  Coefficients
are Python ints, so overflow is impossible by construction.  All values are
immutable and safe to share between threads or enumeration workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class DegenerateMinorError(ValueError):
    """A minor that is required to carry an invariant collapsed to zero."""


@dataclass(frozen=True, slots=True)
class Variable:
    """A single indeterminate.

    ``Variable(0, 0)`` is the deformation variable ``c``; every other instance
    is the coordinate ``x_{i,j}`` and must satisfy ``1 <= i < j``.  Variables
    are totally ordered with ``c`` strictly first, then coordinates
    lexicographically by ``(i, j)``.
    """

    i: int
    j: int

    def __post_init__(self) -> None:
        if (self.i, self.j) == (0, 0):
            return
        if not 1 <= self.i < self.j:
            raise ValueError(f"coordinate variable requires 1 <= i < j, got ({self.i}, {self.j})")

    @property
    def is_deform(self) -> bool:
        return self.i == 0

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (0, 0, 0) if self.is_deform else (1, self.i, self.j)

    def __str__(self) -> str:
        return "c" if self.is_deform else f"x_{{{self.i},{self.j}}}"


DEFORM = Variable(0, 0)


def coord(i: int, j: int) -> Variable:
    """The coordinate variable x_{i,j}."""
    v = Variable(i, j)
    if v.is_deform:
        raise ValueError("coordinate indices must be positive")
    return v


@dataclass(frozen=True, slots=True)
class Monomial:
    """A product of variables with positive exponents, kept in canonical order.

    Stored as a sorted tuple of ``(variable, exponent)`` pairs; two monomials
    are equal iff these tuples are equal.
    """

    factors: tuple[tuple[Variable, int], ...] = ()

    @classmethod
    def from_mapping(cls, factors: Mapping[Variable, int]) -> "Monomial":
        items = []
        for v, e in factors.items():
            if e < 0:
                raise ValueError(f"negative exponent {e} for {v}")
            if e:
                items.append((v, e))
        items.sort(key=lambda ve: ve[0].sort_key)
        return cls(tuple(items))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def deform_exponent(self) -> int:
        for v, e in self.factors:
            if v.is_deform:
                return e
        return 0

    @property
    def sort_key(self) -> tuple:
        # Graded order, c least: degree first, then the variable sequence.
        return (self.degree, tuple((v.sort_key, e) for v, e in self.factors))

    def variables(self) -> Iterator[Variable]:
        return (v for v, _ in self.factors)

    def contains_any(self, kill: frozenset[Variable]) -> bool:
        return any(v in kill for v, _ in self.factors)

    def times(self, other: "Monomial") -> "Monomial":
        merged: dict[Variable, int] = dict(self.factors)
        for v, e in other.factors:
            merged[v] = merged.get(v, 0) + e
        return Monomial.from_mapping(merged)

    def without_deform(self) -> "Monomial":
        return Monomial(tuple((v, e) for v, e in self.factors if not v.is_deform))

    def is_multilinear_in_coords(self) -> bool:
        return all(e == 1 for v, e in self.factors if not v.is_deform)

    def to_text(self) -> str:
        parts = []
        for v, e in self.factors:
            parts.append(str(v) if e == 1 else f"{v}^{e}")
        return "*".join(parts)


class Polynomial:
    """A sparse integer polynomial: a map monomial -> nonzero coefficient.

    Addition and multiplication are exact; the zero polynomial is the empty
    map.  Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None) -> None:
        self._terms: dict[Monomial, int] = {
            m: int(c) for m, c in (terms or {}).items() if c != 0
        }

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls({Monomial(): value})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.constant(1)

    @classmethod
    def variable(cls, v: Variable) -> "Polynomial":
        return cls({Monomial(((v, 1),)): 1})

    @classmethod
    def coordinate(cls, i: int, j: int) -> "Polynomial":
        return cls.variable(coord(i, j))

    @classmethod
    def deform(cls) -> "Polynomial":
        return cls.variable(DEFORM)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key))

    def monomials(self) -> Iterator[Monomial]:
        return (m for m, _ in self.terms())

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def total_degree(self) -> int:
        """Maximal term degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {m.degree for m in self._terms}
        return len(degrees) <= 1

    def is_multilinear_in_coords(self) -> bool:
        return all(m.is_multilinear_in_coords() for m in self._terms)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(((m, c) for m, c in self._terms.items()),
                                 key=lambda kv: kv[0].sort_key)))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1.times(m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(out)

    def __rmul__(self, other: int) -> "Polynomial":
        return self.__mul__(other)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"

    # -- the operations used by the invariant machinery ---------------------

    def substitute_zero(self, kill: Iterable[Variable]) -> "Polynomial":
        """Set every variable in ``kill`` to zero.

        Every term containing a killed variable is dropped; the rest survive
        unchanged, so restriction is idempotent and composes by union.
        """
        killset = frozenset(kill)
        if not killset:
            return self
        return Polynomial({m: c for m, c in self._terms.items()
                           if not m.contains_any(killset)})

    def lowest_c_coefficient(self) -> tuple["Polynomial", int]:
        """Split off the minimal power of the deformation variable.

        Returns ``(q, e)`` where ``e`` is the least exponent of ``c`` over all
        terms and ``q`` collects the terms attaining it, with ``c^e`` divided
        out (``q`` contains no deformation variable).
        """
        if not self._terms:
            raise ValueError("zero polynomial has no lowest coefficient")
        power = min(m.deform_exponent for m in self._terms)
        out = {m.without_deform(): c for m, c in self._terms.items()
               if m.deform_exponent == power}
        return Polynomial(out), power

    def least_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no monomials")
        return min(self._terms, key=lambda m: m.sort_key)

    def normalized(self) -> "Polynomial":
        """Sign normalization: the least monomial gets a positive coefficient."""
        if not self._terms:
            return self
        if self._terms[self.least_monomial()] < 0:
            return -self
        return self

    def equals_up_to_sign(self, other: "Polynomial") -> bool:
        return self == other or self == -other

    # -- rendering -----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, e.g. ``x_{2,4}*x_{3,5} - x_{2,5}*x_{3,4}``."""
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for idx, (m, c) in enumerate(self.terms()):
            body = m.to_text()
            mag = abs(c)
            head = (body if mag == 1 else f"{mag}*{body}") if body else str(mag)
            if idx == 0:
                chunks.append(head if c > 0 else f"-{head}")
            else:
                chunks.append(f" + {head}" if c > 0 else f" - {head}")
        return "".join(chunks)

    def to_json_obj(self) -> list[dict]:
        """JSON form: one object per term, variables as [i, j] or "c"."""
        out = []
        for m, c in self.terms():
            variables = []
            for v, e in m.factors:
                variables.append(["c" if v.is_deform else [v.i, v.j], e])
            out.append({"coeff": str(c), "vars": variables})
        return out


def det_symbolic(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Laplace expansion along successive rows, memoized on the set of still
    unused columns; zero entries are skipped, so sparse matrices stay cheap.
    The empty matrix has determinant 1.
    """
    m = len(matrix)
    for row in matrix:
        if len(row) != m:
            raise ValueError("determinant requires a square matrix")
    if m == 0:
        return Polynomial.one()
    rows = [{j: p for j, p in enumerate(row) if p} for row in matrix]
    full_mask = (1 << m) - 1
    memo: dict[int, Polynomial] = {}

    def expand(mask: int) -> Polynomial:
        if mask == 0:
            return Polynomial.one()
        cached = memo.get(mask)
        if cached is not None:
            return cached
        r = m - bin(mask).count("1")
        row = rows[r]
        total = Polynomial.zero()
        position = 0
        rest = mask
        while rest:
            bit = rest & -rest
            j = bit.bit_length() - 1
            entry = row.get(j)
            if entry is not None:
                term = entry * expand(mask & ~bit)
                total = total + term if position % 2 == 0 else total - term
            position += 1
            rest &= rest - 1
        memo[mask] = total
        return total

    return expand(full_mask)
