"""String rewriting and bounded verification for a finitely presented
semigroup with zero whose ideal ``L H`` is infinite but kills every square."""

from .engine import (
    ClassReport,
    NoDerivation,
    NodeBudgetExceeded,
    NotCanonicalizable,
    canonical_form,
    class_enumerate,
    derive,
    equivalent,
    is_zero,
)
from .invariants import classify_shape, ivector, potential, pq_s_invariant
from .presentation import Presentation, Rule, load_rules, save_rules, standard_presentation, validate
from .squarefree import count_squarefree, enumerate_squarefree, gen_morphism
from .trace import DerivationStep, DerivationTrace, replay
from .words import ZERO, Word, find_factor, find_squares, format_word, parse_word

__all__ = [
    "ClassReport", "DerivationStep", "DerivationTrace", "NoDerivation", "NodeBudgetExceeded",
    "NotCanonicalizable", "Presentation", "Rule", "Word", "ZERO",
    "canonical_form", "class_enumerate", "classify_shape", "count_squarefree", "derive",
    "enumerate_squarefree", "equivalent", "find_factor", "find_squares", "format_word",
    "gen_morphism", "is_zero", "ivector", "load_rules", "parse_word", "potential",
    "pq_s_invariant", "replay", "save_rules", "standard_presentation", "validate",
]
