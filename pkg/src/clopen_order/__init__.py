"""Exact comparability of clopen sets in substitution subshifts and their disjoint unions."""

from .algebraic import (
    AlgebraicContext,
    RealAlgebraic,
    compare_values,
    from_exact,
    isolate_perron_root,
    rational_between,
    to_decimal,
    to_exact,
)
from .clopen import ClopenSet, MeasureVector
from .comparability import Kind, Verdict, compare, find_incomparable, verify_total_comparability
from .group import (
    Decomposition,
    GroupElement,
    Membership,
    Outcome,
    Sign,
    check_pointed,
    check_total_order,
    classify_sign,
    find_nonneg_representative,
    is_in_D,
    lemma_three_check,
    sign_procedure,
    state_evaluate,
    witness_nontotal,
)
from .hopf import HopfMap, search_embedding, search_equivalence, verify
from .systems import SubshiftComponent, Substitution, SystemSpace, fibonacci, thue_morse, tribonacci

__version__ = "0.1.0"
