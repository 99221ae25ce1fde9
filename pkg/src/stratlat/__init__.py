"""Finite stratified complete lattices, their inverse-limit representation,
stratified fixed points and an infinite-valued logic-program semantics."""

from .errors import *  # noqa: F401,F403
from .lattice import (
    FiniteLattice,
    GaloisPair,
    LatticeMap,
    Verdict,
    chain,
    is_completely_additive,
    is_locally_completely_additive,
    product,
    projection_adjoint,
    validate_lattice,
)
from .stratified import (
    AxiomReport,
    StratifiedLattice,
    b_axiomatization_round_trip,
    check_axiom,
    check_axioms,
    class_structure,
    classify,
    corestrict,
    discrete,
    dualize,
    from_restrictions,
    is_model,
    is_strong,
    lex_bounds_brute,
    lex_inf,
    lex_leq,
    lex_sup,
    replay_witness,
    restrict,
    sqcup_alpha,
    stratify,
)
from .inverse_limit import (
    InverseSystem,
    LimitModel,
    build_limit,
    classify_limit,
    decompose,
    find_isomorphism,
    representation_isomorphism,
    validate_system,
)
from .fixpoint import (
    EndoFunction,
    check_supp_post_fixed,
    fixed_point_lattice,
    is_weakly_monotone,
    level_components,
    stratified_gfp_below,
    stratified_lfp,
    stratified_lfp_above,
)
from .lp import (
    Program,
    TruthValue,
    collapse3,
    generic_minimum_model,
    parse_program,
    rw_minimum_model,
    v_model,
    v_tower,
    wfs_oracle,
)
from .enumeration import (
    EnumerationBudget,
    enumerate_lattices,
    enumerate_models,
    enumerate_stratifications,
    enumerate_weakly_monotone,
)

__version__ = "0.1.0"
