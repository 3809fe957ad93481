"""Component census of the nilfibre and the verification suites around it.

Complete reverse tableaux are enumerated as a layered DAG (states deduplicated
by implemented-pair set and tableau), deduplicated finals are grouped by Red
multiset into component records, and the vanishing / factorization / Krull /
codimension claims are checked exactly: polynomial identities symbolically,
orbit-closure dimensions by an exact integer rank oracle.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .invariant import (
    BSInvariant,
    factor_invariant,
    invariant_table,
    restrict_invariant,
)
from .reverse import (
    ColoredTableau,
    ImplementationChoice,
    check_structure,
    black_count,
    enumerate_choices,
    excluded_roots,
    has_red_in_bottom_row,
    implement_pair,
    init,
    pseudo_pairs,
    _border_boxes,
)
from .shape import (
    Composition,
    NeighbouringPair,
    StandardTableau,
    dim_m,
    left_rectangle,
    m_basis,
    neighbouring_pairs,
    standard_tableau,
)
from .symalg import Polynomial

DEFAULT_TRACE_LIMIT = 10**6
RANK_TRIALS = 5
RANK_SEED = 1
COORDINATE_BOUND = 10**4


class EnumerationGuardError(RuntimeError):
    def __init__(self, estimated: int, limit: int) -> None:
        super().__init__(
            f"enumeration guard: at least {estimated} complete traces exceed the limit {limit}"
        )
        self.estimated = estimated
        self.limit = limit


class AnnihilatedPairError(RuntimeError):
    """Factorization was requested for a pair whose restriction is zero."""


@dataclass(frozen=True)
class CompleteSequence:
    """A total ordering of all neighbouring pairs."""

    order: tuple[NeighbouringPair, ...]

    def validate(self, comp: Composition) -> None:
        if Counter(self.order) != Counter(neighbouring_pairs(comp)):
            raise ValueError("order is not a permutation of the neighbouring pairs")


@dataclass(frozen=True)
class TraceStep:
    pair: NeighbouringPair
    choice: ImplementationChoice


@dataclass(frozen=True)
class ImplementationTrace:
    """Ordered record of implementations with every intermediate snapshot."""

    steps: tuple[TraceStep, ...]
    snapshots: tuple[ColoredTableau, ...]

    @property
    def final(self) -> ColoredTableau:
        return self.snapshots[-1]

    def to_json_obj(self) -> dict:
        return {
            "steps": [
                {
                    "pair": [s.pair.left, s.pair.right],
                    "source": s.choice.source_col,
                    "stop": s.choice.shift_stop,
                }
                for s in self.steps
            ]
        }


def replay(t: StandardTableau, steps: tuple[TraceStep, ...]) -> ImplementationTrace:
    snapshots = [init(t)]
    for step in steps:
        snapshots.append(implement_pair(snapshots[-1], step.pair, step.choice))
    return ImplementationTrace(tuple(steps), tuple(snapshots))


# -- exploration ---------------------------------------------------------------


@dataclass
class Node:
    rt: ColoredTableau
    implemented: frozenset[NeighbouringPair]
    paths: int
    witness: tuple[TraceStep, ...]

    @property
    def depth(self) -> int:
        return len(self.implemented)


@dataclass
class Edge:
    parent: Node
    pair: NeighbouringPair
    choice: ImplementationChoice
    child: Node


@dataclass
class Exploration:
    composition: Composition
    tableau: StandardTableau
    pairs: tuple[NeighbouringPair, ...]
    layers: list[list[Node]]
    edges: list[Edge]
    trace_total: int

    @property
    def finals(self) -> list[Node]:
        return self.layers[-1]

    def nodes(self) -> list[Node]:
        return [n for layer in self.layers for n in layer]


def explore(comp: Composition, limit: int | None = DEFAULT_TRACE_LIMIT) -> Exploration:
    """Walk every complete sequence and every implementation choice, merging
    states that agree on implemented pairs and tableau.  Path counts are exact,
    and the guard aborts once they exceed the limit."""
    bound = DEFAULT_TRACE_LIMIT if limit is None else limit
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    root = Node(init(t), frozenset(), 1, ())
    layers: list[list[Node]] = [[root]]
    edges: list[Edge] = []
    for _ in range(len(pairs)):
        merged: dict[tuple[frozenset[NeighbouringPair], ColoredTableau], Node] = {}
        layer_paths = 0
        for node in layers[-1]:
            for pair in pairs:
                if pair in node.implemented:
                    continue
                for choice in enumerate_choices(node.rt, pair):
                    child_rt = implement_pair(node.rt, pair, choice)
                    key = (node.implemented | {pair}, child_rt)
                    child = merged.get(key)
                    if child is None:
                        child = Node(
                            child_rt,
                            key[0],
                            0,
                            node.witness + (TraceStep(pair, choice),),
                        )
                        merged[key] = child
                    child.paths += node.paths
                    layer_paths += node.paths
                    edges.append(Edge(node, pair, choice, child))
        if layer_paths > bound:
            raise EnumerationGuardError(layer_paths, bound)
        layers.append(list(merged.values()))
    total = sum(n.paths for n in layers[-1])
    return Exploration(comp, t, pairs, layers, edges, total)


# -- exact rank oracle ----------------------------------------------------------


def _int_rank(rows: list[list[int]]) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free
    elimination (exact, no overflow thanks to Python ints)."""
    matrix = [row[:] for row in rows if any(row)]
    if not matrix:
        return 0
    cols = len(matrix[0])
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, len(matrix)):
            if matrix[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        pv = matrix[rank][c]
        for r in range(rank + 1, len(matrix)):
            if matrix[r][c]:
                f = matrix[r][c]
                matrix[r] = [pv * a - f * b for a, b in zip(matrix[r], matrix[rank])]
        rank += 1
        if rank == len(matrix):
            break
    return rank


def orbit_closure_dim(
    comp: Composition,
    u_basis: frozenset[tuple[int, int]],
    trials: int = RANK_TRIALS,
    seed: int = RANK_SEED,
) -> int:
    """Dimension of the closure of B.u, as the maximal rank of [b, x] + u over
    sampled integer points x of u.

    b is the full upper-triangular algebra (diagonal included); brackets land
    inside the nilradical, so ranks are taken over its coordinate basis.
    Non-generic samples can only shrink the rank, hence the max over trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    basis = sorted(m_basis(comp))
    index = {pair: k for k, pair in enumerate(basis)}
    n = comp.n
    rng = random.Random(seed)
    unit_rows = []
    for pair in sorted(u_basis):
        row = [0] * len(basis)
        row[index[pair]] = 1
        unit_rows.append(row)
    best = 0
    for _ in range(trials):
        x = {pair: rng.randint(-COORDINATE_BOUND, COORDINATE_BOUND) for pair in sorted(u_basis)}
        rows = list(unit_rows)
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                # [E_pq, x]_(a,b) = delta(a,p) x_(q,b) - x_(a,p) delta(b,q)
                row = [0] * len(basis)
                touched = False
                for (a, b), k in index.items():
                    entry = 0
                    if a == p:
                        entry += x.get((q, b), 0)
                    if b == q:
                        entry -= x.get((a, p), 0)
                    if entry:
                        row[k] = entry
                        touched = True
                if touched:
                    rows.append(row)
        best = max(best, _int_rank(rows))
        if best == len(basis):
            break
    return best


def orbit_closure_codim(
    comp: Composition,
    u_basis: frozenset[tuple[int, int]],
    trials: int = RANK_TRIALS,
    seed: int = RANK_SEED,
) -> int:
    return dim_m(comp) - orbit_closure_dim(comp, u_basis, trials, seed)


# -- component records -----------------------------------------------------------


@dataclass(frozen=True)
class ComponentRecord:
    """One irreducible component of the nilfibre, keyed by its Red multiset."""

    red: tuple[int, ...]
    excluded: frozenset[tuple[int, int]]
    u_basis: frozenset[tuple[int, int]]
    codim: int
    witness_trace: ImplementationTrace

    def to_json_obj(self) -> dict:
        return {
            "red": list(self.red),
            "excluded": [list(p) for p in sorted(self.excluded)],
            "codim": self.codim,
            "witness": self.witness_trace.to_json_obj(),
        }


def _red_key(rt: ColoredTableau) -> tuple[int, ...]:
    return tuple(sorted(rt.red_multiset().elements()))


def enumerate_components(
    comp: Composition,
    limit: int | None = DEFAULT_TRACE_LIMIT,
    trials: int = RANK_TRIALS,
    seed: int = RANK_SEED,
) -> list[ComponentRecord]:
    """Depth-complete enumeration: all complete tableaux, deduplicated exactly,
    grouped by Red multiset, one verified record per distinct Red Set."""
    ex = explore(comp, limit)
    groups: dict[tuple[int, ...], list[Node]] = {}
    for node in ex.finals:
        groups.setdefault(_red_key(node.rt), []).append(node)
    basis = m_basis(comp)
    records = []
    for red, nodes in groups.items():
        canonical = nodes[0]
        excl = excluded_roots(canonical.rt)
        u = frozenset(basis - excl)
        codim = orbit_closure_codim(comp, u, trials, seed)
        records.append(
            ComponentRecord(
                red=red,
                excluded=excl,
                u_basis=u,
                codim=codim,
                witness_trace=replay(ex.tableau, canonical.witness),
            )
        )
    return records


# -- verification reports ----------------------------------------------------------


@dataclass
class VanishingReport:
    record: ComponentRecord
    survivors: list[tuple[NeighbouringPair, Polynomial]]

    @property
    def ok(self) -> bool:
        return not self.survivors


def verify_vanishing(
    comp: Composition,
    record: ComponentRecord,
    invariants: dict[NeighbouringPair, BSInvariant] | None = None,
) -> VanishingReport:
    """Every invariant must restrict to the zero polynomial on the record's u."""
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    invariants = invariants or invariant_table(t, pairs, m_basis(comp))
    survivors = []
    for pair in pairs:
        restricted = restrict_invariant(invariants[pair], record.excluded)
        if not restricted.is_zero():
            survivors.append((pair, restricted))
    return VanishingReport(record, survivors)


@dataclass
class FactorCheck:
    left_values: tuple[int, ...]
    right_values: tuple[int, ...]
    poly: Polynomial
    expected_degree: int

    @property
    def degree(self) -> int:
        return self.poly.total_degree()


@dataclass
class FactorizationReport:
    stage: int
    pair: NeighbouringPair
    restriction: Polynomial
    factors: list[FactorCheck]
    product: Polynomial

    @property
    def product_matches(self) -> bool:
        return self.restriction.equals_up_to_sign(self.product)

    @property
    def degrees_add(self) -> bool:
        return self.restriction.total_degree() == sum(f.degree for f in self.factors)

    @property
    def factor_degrees_match_black_counts(self) -> bool:
        return all(f.degree == f.expected_degree for f in self.factors)

    @property
    def ok(self) -> bool:
        return self.product_matches and self.degrees_add and self.factor_degrees_match_black_counts


def _black_slice_count(rt: ColoredTableau, pair: NeighbouringPair, pseudo) -> int:
    """Black boxes of the left trapezium between the pseudo-pair's columns."""
    left, right = _border_boxes(rt, pair)
    s = pair.height
    lo = pseudo.left.col
    hi = pseudo.right.col
    count = 0
    for r in range(1, s + 1):
        lo_col = left[r - 1].col if lo is None else lo
        hi_col = right[r - 1].col if hi is None else hi
        for col in range(lo_col + 1, hi_col + 1):
            if rt.has_box(col, r) and not rt.red_at(col, r):
                count += 1
    return count


def verify_factorization(
    trace: ImplementationTrace,
    stage: int,
    pair: NeighbouringPair,
    invariants: dict[NeighbouringPair, BSInvariant] | None = None,
) -> FactorizationReport:
    """Check the product identity at a stage (stage = number of implemented
    pairs, so stage 0 is the standard tableau)."""
    rt = trace.snapshots[stage]
    comp = rt.base.composition
    invariants = invariants or invariant_table(
        rt.base, neighbouring_pairs(comp), m_basis(comp)
    )
    excl = excluded_roots(rt)
    restriction = restrict_invariant(invariants[pair], excl)
    if restriction.is_zero():
        raise AnnihilatedPairError(f"factorization undefined on annihilated pair {pair}")
    u = frozenset(m_basis(comp) - excl)
    factors = []
    product = Polynomial.one()
    for pseudo in pseudo_pairs(rt, pair):
        poly = factor_invariant(rt, pseudo, u)
        factors.append(
            FactorCheck(
                left_values=pseudo.left.values,
                right_values=pseudo.right.values,
                poly=poly,
                expected_degree=_black_slice_count(rt, pair, pseudo),
            )
        )
        product = product * poly
    return FactorizationReport(stage, pair, restriction, factors, product)


@dataclass
class KrullReport:
    codims: list[int]
    premature_zero: list[tuple[int, NeighbouringPair]]

    @property
    def chain_ok(self) -> bool:
        return self.codims == list(range(len(self.codims)))

    @property
    def ok(self) -> bool:
        return self.chain_ok and not self.premature_zero


def verify_krull_chain(
    comp: Composition,
    trace: ImplementationTrace,
    trials: int = RANK_TRIALS,
    seed: int = RANK_SEED,
    invariants: dict[NeighbouringPair, BSInvariant] | None = None,
) -> KrullReport:
    """Codimension must grow by exactly one per implementation, reaching g,
    and every not-yet-implemented pair must stay free at every stage."""
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    invariants = invariants or invariant_table(t, pairs, m_basis(comp))
    basis = m_basis(comp)
    codims = []
    premature = []
    implemented: set[NeighbouringPair] = set()
    for stage, rt in enumerate(trace.snapshots):
        excl = excluded_roots(rt)
        codims.append(orbit_closure_codim(comp, frozenset(basis - excl), trials, seed))
        for pair in pairs:
            if pair in implemented:
                continue
            if restrict_invariant(invariants[pair], excl).is_zero():
                premature.append((stage, pair))
        if stage < len(trace.steps):
            implemented.add(trace.steps[stage].pair)
    return KrullReport(codims, premature)


# -- subcolumn moves -----------------------------------------------------------------


@dataclass(frozen=True)
class SubcolumnMove:
    """Move the last k boxes of column j below column i (i < j, c_i >= c_j - k)."""

    source_col: int
    length: int
    dest_col: int


def _validate_move(comp: Composition, move: SubcolumnMove) -> None:
    j, k, i = move.source_col, move.length, move.dest_col
    if not (1 <= i < j <= comp.column_count):
        raise ValueError(f"move requires 1 <= i < j <= {comp.column_count}")
    if not 0 <= k <= comp.height(j):
        raise ValueError("subcolumn length out of range")
    if comp.height(i) < comp.height(j) - k:
        raise ValueError("move constraint c_i >= c_j - k violated")


def moved_tableau(comp: Composition, move: SubcolumnMove) -> list[list[int]]:
    """Lower the last k boxes of column j to the rows below height c_i.

    The subcolumn lands under the nearest column of height >= c_i to its
    left; the displaced lower parts shift one slot leftward in unison,
    skipping shorter columns, down to the first column of height exactly
    c_i (C_i itself qualifies, so the shift always terminates).  This is the
    same mechanics as a pair implementation, without colours.
    """
    j, k, i = move.source_col, move.length, move.dest_col
    _validate_move(comp, move)
    s = comp.height(i)
    t = standard_tableau(comp)
    columns = [list(c) for c in t.columns]
    moved = columns[j - 1][comp.height(j) - k :]
    del columns[j - 1][comp.height(j) - k :]
    landing = next(c for c in range(j - 1, 0, -1) if len(columns[c - 1]) >= s)
    if len(columns[landing - 1]) > s:
        stop = next(c for c in range(landing - 1, 0, -1) if len(columns[c - 1]) == s)
        chain = [stop] + [c for c in range(stop + 1, landing + 1) if len(columns[c - 1]) > s]
        lower = {c: columns[c - 1][s:] for c in chain[1:]}
        for c in chain[1:]:
            del columns[c - 1][s:]
        for receiver, giver in zip(chain, chain[1:]):
            columns[receiver - 1].extend(lower[giver])
    columns[landing - 1].extend(moved)
    return columns


def _excluded_of_layout(comp: Composition, columns: list[list[int]]) -> frozenset[tuple[int, int]]:
    position: dict[int, tuple[int, int]] = {}
    for c, column in enumerate(columns, start=1):
        for r, value in enumerate(column, start=1):
            position[value] = (c, r)
    excluded = set()
    for (a, b) in m_basis(comp):
        ca, ra = position[a]
        cb, rb = position[b]
        if ca > cb or (ca == cb and ra < rb):
            excluded.add((a, b))
    return frozenset(excluded)


def subcolumn_move(
    comp: Composition, move: SubcolumnMove
) -> tuple[frozenset[tuple[int, int]], int]:
    """Move the last k boxes of column j below height c_i and return the
    surviving coordinates (excluded-root rule on the moved tableau) together
    with the closed-form codimension k * (c_i - (c_j - k))."""
    if move.length == 0:
        _validate_move(comp, move)
        return frozenset(m_basis(comp)), 0
    excluded = _excluded_of_layout(comp, moved_tableau(comp, move))
    predicted = move.length * (
        comp.height(move.dest_col) - (comp.height(move.source_col) - move.length)
    )
    return frozenset(m_basis(comp) - excluded), predicted


def legal_subcolumn_moves(comp: Composition) -> list[SubcolumnMove]:
    """Every (j, k, i) with i < j, 1 <= k <= c_j and c_i >= c_j - k."""
    out = []
    for j in range(2, comp.column_count + 1):
        for k in range(1, comp.height(j) + 1):
            for i in range(1, j):
                if comp.height(i) >= comp.height(j) - k:
                    out.append(SubcolumnMove(j, k, i))
    return out


# -- global red multiset ----------------------------------------------------------------


def _pair_surrounds(pair: NeighbouringPair, col: int) -> bool:
    # Inclusive of the right member, exclusive of the left.
    return pair.left < col <= pair.right


def global_red_multiset(comp: Composition) -> Counter:
    """Entries that can ever turn red, with multiplicities.

    An entry in row s < h of a column of height h qualifies when, for every
    height in [s, h], some neighbouring pair of that height surrounds the
    column.  The bottom entry's multiplicity is the longest run of heights
    h, h+1, ... each covered by a surrounding pair.
    """
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    heights_around: dict[int, set[int]] = {col: set() for col in range(1, comp.column_count + 1)}
    for pair in pairs:
        for col in range(1, comp.column_count + 1):
            if _pair_surrounds(pair, col):
                heights_around[col].add(pair.height)
    out: Counter = Counter()
    for col in range(1, comp.column_count + 1):
        h = comp.height(col)
        covered = heights_around[col]
        for s in range(1, h):
            if all(x in covered for x in range(s, h + 1)):
                out[t.entry(col, s)] += 1
        run = 0
        while h + run in covered:
            run += 1
        if run:
            out[t.entry(col, h)] += run
    return out


@dataclass
class RedSubsetReport:
    red_sets: list[tuple[int, ...]]
    global_red: Counter
    violations: list[tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_red_subset(
    comp: Composition, limit: int | None = DEFAULT_TRACE_LIMIT
) -> RedSubsetReport:
    """Every enumerated Red multiset must be contained in the global one."""
    ex = explore(comp, limit)
    global_red = global_red_multiset(comp)
    red_sets = sorted({_red_key(node.rt) for node in ex.finals})
    violations = [
        red for red in red_sets if Counter(red) - global_red  # leftover = violation
    ]
    return RedSubsetReport(red_sets, global_red, violations)


# -- census report and full property suite ------------------------------------------------


def census_report(
    comp: Composition,
    limit: int | None = DEFAULT_TRACE_LIMIT,
    trials: int = RANK_TRIALS,
    seed: int = RANK_SEED,
) -> dict:
    """JSON-ready census: components, global red, and findings."""
    ex = explore(comp, limit)
    groups: dict[tuple[int, ...], list[Node]] = {}
    for node in ex.finals:
        groups.setdefault(_red_key(node.rt), []).append(node)
    basis = m_basis(comp)
    findings: list[str] = []
    records = []
    excluded_by_red: dict[tuple[int, ...], frozenset] = {}
    for red, nodes in groups.items():
        excl_sets = {excluded_roots(node.rt) for node in nodes}
        if len(excl_sets) > 1:
            findings.append(
                f"red set {list(red)} reached with {len(excl_sets)} distinct excluded sets"
            )
        canonical = nodes[0]
        excl = excluded_roots(canonical.rt)
        excluded_by_red[red] = excl
        u = frozenset(basis - excl)
        codim = orbit_closure_codim(comp, u, trials, seed)
        records.append(
            ComponentRecord(red, excl, u, codim, replay(ex.tableau, canonical.witness))
        )
    for red_a, excl_a in excluded_by_red.items():
        for red_b, excl_b in excluded_by_red.items():
            if red_a < red_b and excl_a == excl_b:
                findings.append(
                    f"distinct red sets {list(red_a)} and {list(red_b)} share one excluded set"
                )
    for pair in ex.pairs:
        taller = [
            col
            for col in range(pair.left + 1, pair.right)
            if comp.height(col) > pair.height
        ]
        if taller:
            findings.append(
                f"pair {pair} has taller intermediate columns {taller}"
            )
    g = len(ex.pairs)
    return {
        "composition": list(comp.parts),
        "g": g,
        "dim_m": dim_m(comp),
        "components": [r.to_json_obj() for r in records],
        "global_red": sorted(global_red_multiset(comp).elements()),
        "findings": findings,
    }


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: str = ""


@dataclass
class SuiteReport:
    composition: Composition
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, details: str = "") -> None:
        self.checks.append(CheckResult(name, ok, details))


def run_property_suite(
    comp: Composition,
    limit: int | None = DEFAULT_TRACE_LIMIT,
    trials: int = RANK_TRIALS,
    seed: int = RANK_SEED,
    check_stage_codims: bool | None = None,
) -> SuiteReport:
    """Run every verification the construction promises, for one composition.

    Stage-by-stage codimension checks call the rank oracle once per state;
    they default to on for n <= 6 and off above (records are always checked).
    """
    report = SuiteReport(comp)
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    basis = m_basis(comp)
    invariants = invariant_table(t, pairs, basis)
    if check_stage_codims is None:
        check_stage_codims = comp.n <= 6

    # Degree law and coordinate span of every invariant.
    degree_bad = []
    span_bad = []
    for pair in pairs:
        inv = invariants[pair]
        if inv.poly.total_degree() != len(left_rectangle(t, pair)):
            degree_bad.append(pair)
        allowed = set()
        for col in range(pair.left, pair.right + 1):
            allowed.update(t.column(col))
        for mono in inv.poly.monomials():
            for v in mono.variables():
                if not v.is_deform and not {v.i, v.j} <= allowed:
                    span_bad.append((pair, v))
    report.add("degree-law", not degree_bad, f"violations: {degree_bad}")
    report.add(
        "multilinear",
        all(invariants[p].poly.is_multilinear_in_coords() for p in pairs),
    )
    report.add("coordinate-span", not span_bad, f"violations: {span_bad}")

    ex = explore(comp, limit)

    # Structural invariants on every state (implement_pair re-checks; this
    # re-validates finals defensively) and boundary separation of trapezia.
    structure_bad = []
    overlap_bad = []
    for node in ex.nodes():
        try:
            check_structure(node.rt)
        except Exception as err:  # noqa: BLE001 - collected into the report
            structure_bad.append(str(err))
        by_height: dict[int, list[NeighbouringPair]] = {}
        for pair in pairs:
            by_height.setdefault(pair.height, []).append(pair)
        for same in by_height.values():
            for pa, pb in zip(same, same[1:]):
                la, ra = _border_boxes(node.rt, pa)
                lb, rb = _border_boxes(node.rt, pb)
                for r in range(pa.height):
                    if ra[r].col > lb[r].col:
                        overlap_bad.append((node.rt, pa, pb))
                        break
    report.add("structure", not structure_bad, "; ".join(structure_bad[:3]))
    report.add("trapezia-separated", not overlap_bad)

    # Monotone excluded sets along every edge.
    mono_bad = [
        e
        for e in ex.edges
        if not excluded_roots(e.parent.rt) <= excluded_roots(e.child.rt)
    ]
    report.add("excluded-monotone", not mono_bad)

    # Black counts, non-acquisition, and the freeness equivalence per state.
    count_bad = []
    nonacq_bad = []
    equiv_bad = []
    for node in ex.nodes():
        excl = excluded_roots(node.rt)
        for pair in pairs:
            d = len(left_rectangle(t, pair))
            count = black_count(node.rt, pair)
            red_bottom = has_red_in_bottom_row(node.rt, pair)
            restricted_zero = restrict_invariant(invariants[pair], excl).is_zero()
            if pair in node.implemented:
                if count >= d:
                    count_bad.append((pair, "implemented but count not below degree"))
            else:
                if count != d:
                    count_bad.append((pair, f"count {count} != degree {d}"))
                if red_bottom:
                    nonacq_bad.append((node.rt, pair))
            if red_bottom != restricted_zero:
                equiv_bad.append((node.rt, pair))
    report.add("black-count", not count_bad, str(count_bad[:3]))
    report.add("non-acquisition", not nonacq_bad)
    report.add("free-iff-no-red", not equiv_bad)

    # Factorization identity for every free pair at every state.
    factor_bad = []
    for node in ex.nodes():
        trace = ImplementationTrace((), (node.rt,))
        for pair in pairs:
            if pair in node.implemented:
                continue
            fr = verify_factorization(trace, 0, pair, invariants)
            if not fr.ok:
                factor_bad.append((node.rt, pair))
    report.add("factorization", not factor_bad)

    # Vanishing and red cardinality on finals; red subset of global red.
    vanish_bad = []
    red_card_bad = []
    global_red = global_red_multiset(comp)
    subset_bad = []
    for node in ex.finals:
        excl = excluded_roots(node.rt)
        for pair in pairs:
            if not restrict_invariant(invariants[pair], excl).is_zero():
                vanish_bad.append((node.rt, pair))
        reds = node.rt.red_multiset()
        if sum(reds.values()) != len(pairs):
            red_card_bad.append(node.rt)
        if reds - global_red:
            subset_bad.append(node.rt)
    report.add("vanishing", not vanish_bad)
    report.add("red-cardinality", not red_card_bad)
    report.add("red-subset-of-global", not subset_bad)

    # Codimension of every component record; per-state Krull chain if enabled.
    codim_bad = []
    seen_red: set[tuple[int, ...]] = set()
    for node in ex.finals:
        red = _red_key(node.rt)
        if red in seen_red:
            continue
        seen_red.add(red)
        excl = excluded_roots(node.rt)
        codim = orbit_closure_codim(comp, frozenset(basis - excl), trials, seed)
        if codim != len(pairs):
            codim_bad.append((red, codim))
    report.add("component-codim", not codim_bad, str(codim_bad[:3]))

    if check_stage_codims:
        krull_bad = []
        for depth, layer in enumerate(ex.layers):
            for node in layer:
                excl = excluded_roots(node.rt)
                codim = orbit_closure_codim(comp, frozenset(basis - excl), trials, seed)
                if codim != depth:
                    krull_bad.append((depth, codim))
        report.add("krull-chain", not krull_bad, str(krull_bad[:3]))

    # Subcolumn moves: closed-form codimension against the oracle, and the
    # vanishing control when a box of ]C,C'] falls below the pair's row span.
    move_bad = []
    control_bad = []
    for move in legal_subcolumn_moves(comp):
        u_b, predicted = subcolumn_move(comp, move)
        if orbit_closure_codim(comp, u_b, trials, seed) != predicted:
            move_bad.append(move)
        excluded_b = basis - u_b
        j, k, i = move.source_col, move.length, move.dest_col
        top_source_row = comp.height(j) - k + 1
        for pair in pairs:
            if not pair.left < j <= pair.right:
                continue
            s = pair.height
            crosses = any(
                r <= s and comp.height(i) + (r - (comp.height(j) - k)) > s
                for r in range(top_source_row, comp.height(j) + 1)
            )
            if crosses and not restrict_invariant(invariants[pair], excluded_b).is_zero():
                control_bad.append((move, pair))
    report.add("subcolumn-codim-formula", not move_bad, str(move_bad[:3]))
    report.add("subcolumn-vanishing-control", not control_bad, str(control_bad[:3]))

    return report
