"""Endomorphism semirings of finite chains, their strings and derivations."""
from .chain_core import (
    AxiomReport,
    Carrier,
    Chain,
    ChainEndomorphism,
    ChainError,
    add,
    all_endomorphisms,
    check_semiring_axioms,
    compose,
    constant,
    count_endomorphisms,
    full_carrier,
    identity,
    make_endomorphism,
)
from .derivations import (
    SelfMap,
    analyze_derivation_set,
    delta,
    delta_on_constants,
    differential_closure,
    is_derivation,
    shift_derivation,
)
from .strings import (
    StringIndexM,
    StringType2,
    StringTypeM,
    SubfamilyKind,
    full_string,
    mul_index_type2,
    mul_index_type_m,
    string_type2,
    string_type_m,
    subfamily,
)
from .verifier import run_suite, search_counterexample, verify_claim

__all__ = [
    "AxiomReport", "Carrier", "Chain", "ChainEndomorphism", "ChainError",
    "add", "all_endomorphisms", "check_semiring_axioms", "compose", "constant",
    "count_endomorphisms", "full_carrier", "identity", "make_endomorphism",
    "SelfMap", "analyze_derivation_set", "delta", "delta_on_constants",
    "differential_closure", "is_derivation", "shift_derivation",
    "StringIndexM", "StringType2", "StringTypeM", "SubfamilyKind", "full_string",
    "mul_index_type2", "mul_index_type_m", "string_type2", "string_type_m", "subfamily",
    "run_suite", "search_counterexample", "verify_claim",
]
