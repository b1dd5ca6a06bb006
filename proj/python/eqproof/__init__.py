"""Equivalence proofs for propositional logic.

Thin wrapper over the C++ engine. Expressions are passed and returned as
strings in any accepted input syntax; results come back in canonical form.
"""

from ._eqproof import (
    SyntaxError,
    canonical,
    classify,
    equivalent,
    fitness,
    frontier,
    hint,
    load_bank,
    make_dataset,
    production_weights,
    proof_gen,
    rules,
    solve,
    tokenize,
    validate_proof,
)

__all__ = [
    "SyntaxError",
    "canonical",
    "classify",
    "equivalent",
    "fitness",
    "frontier",
    "hint",
    "load_bank",
    "make_dataset",
    "production_weights",
    "proof_gen",
    "rules",
    "solve",
    "tokenize",
    "validate_proof",
]
