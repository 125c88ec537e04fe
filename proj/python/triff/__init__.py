"""Workbench for (b,k)-hash codes: verification, exact search, solver
encodings, bound formulas, and a finite-model lab for MSO evaluation and
rank-equivalence games."""

from ._triff import (  # noqa: F401
    LabStructure,
    binary_to_ternary,
    brute_force_max,
    canonicalize,
    classic_upper,
    decode_assignment,
    dpll_solve,
    ef_equivalent,
    ef_game_search,
    emit_dimacs,
    emit_smtlib,
    evaluate,
    first_violation,
    improved_upper,
    is_hashed,
    km_lower,
    max_size,
    parse_structure,
    product_word,
    quantifier_rank,
    relation_r,
    sample_sentences,
    search_exact,
    smt_find_model,
    ternary_to_binary,
    witness_family,
)

__all__ = [
    "LabStructure",
    "binary_to_ternary",
    "brute_force_max",
    "canonicalize",
    "classic_upper",
    "decode_assignment",
    "dpll_solve",
    "ef_equivalent",
    "ef_game_search",
    "emit_dimacs",
    "emit_smtlib",
    "evaluate",
    "first_violation",
    "improved_upper",
    "is_hashed",
    "km_lower",
    "max_size",
    "parse_structure",
    "product_word",
    "quantifier_rank",
    "relation_r",
    "sample_sentences",
    "search_exact",
    "smt_find_model",
    "ternary_to_binary",
    "witness_family",
]
