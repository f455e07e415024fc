"""Circular semi-flower automata: transition monoids and syntactic complexity."""

from csfa.automata import (
    AnalysisReport,
    Automaton,
    AutomatonError,
    bpi_set,
    circular_letters,
    classify,
    is_csfa,
    is_minimal,
    is_sfa,
    is_trim,
    minimize,
    normalize_csfa,
    validate,
)
from csfa.families import (
    enumerate_two_bpi_binary,
    figure_1,
    figure_2_ternary,
    one_bpi_csfa,
    unary_cycle,
    witness_aprime,
)
from csfa.monoid import (
    BudgetExceeded,
    TheoremViolation,
    basic_idempotents,
    generate_monoid,
    group_part,
    orbits,
    rank2_form,
    syntactic_complexity,
    two_bpi_profile,
    verify_canonical_form,
)
from csfa.transformations import Transformation, compose, induced
from csfa.verify import verify_paper

__version__ = "0.1.0"
