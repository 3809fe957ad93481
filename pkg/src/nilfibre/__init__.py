"""Benlolo-Sanderson semi-invariants, reverse tableaux, and the component
census of parabolic nilfibres in type A."""

from .shape import (
    Box,
    Composition,
    NeighbouringPair,
    StandardTableau,
    all_compositions,
    dim_m,
    is_levi_root,
    left_rectangle,
    m_basis,
    neighbouring_pairs,
    standard_tableau,
)
from .symalg import DEFORM, Monomial, Polynomial, Variable, coord, det_symbolic
from .invariant import (
    BSInvariant,
    IndexedMinorSpec,
    bs_invariant,
    factor_invariant,
    generic_matrix,
    invariant_table,
    restrict_invariant,
)
from .reverse import (
    ColoredTableau,
    ImplementationChoice,
    PairState,
    Trapezium,
    black_count,
    check_structure,
    enumerate_choices,
    excluded_roots,
    implement_pair,
    init,
    pair_state,
    pseudo_columns,
    pseudo_pairs,
    red_multiset,
    trapezium,
)
from .census import (
    ComponentRecord,
    CompleteSequence,
    ImplementationTrace,
    SubcolumnMove,
    TraceStep,
    census_report,
    check_red_subset,
    enumerate_components,
    explore,
    global_red_multiset,
    orbit_closure_dim,
    replay,
    run_property_suite,
    subcolumn_move,
    verify_factorization,
    verify_krull_chain,
    verify_vanishing,
)

__version__ = "0.1.0"
