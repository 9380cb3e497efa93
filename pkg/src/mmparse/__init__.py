"""Weighted parsing over sorted regular tree grammars: pluggable language
algebras (string, tuple, tree, yield) and pluggable complete M-monoid weight
algebras, solved by a deduction-based parser with a fixpoint value computation.
"""

from .terms import Tree, SortedAlphabet, parse_tree
from .rtg import Rule, SortedRtg
from .languages import CfgAlgebra, LcfrsAlgebra, TagAlgebra, YieldAlgebra, factors
from .weights import (
    MMonoid,
    Op,
    tropical_mmonoid,
    viterbi_mmonoid,
    boolean_mmonoid,
    bd_mmonoid,
    nbest_mmonoid,
    intersection_mmonoid,
    adp_mmonoid,
)
from .deduction import canonical_deduction, Item, ItemGrammar
from .engine import (
    WeightedRtgLm,
    value_computation,
    mmonoid_parse,
    oracle_parse,
    extract_intersection,
    solve_adp,
    AdpProblem,
)
from .textfmt import GrammarFile, emit_grammar, load_grammar, loads_grammar

__all__ = [
    "Tree",
    "SortedAlphabet",
    "parse_tree",
    "Rule",
    "SortedRtg",
    "CfgAlgebra",
    "LcfrsAlgebra",
    "TagAlgebra",
    "YieldAlgebra",
    "factors",
    "MMonoid",
    "Op",
    "tropical_mmonoid",
    "viterbi_mmonoid",
    "boolean_mmonoid",
    "bd_mmonoid",
    "nbest_mmonoid",
    "intersection_mmonoid",
    "adp_mmonoid",
    "canonical_deduction",
    "Item",
    "ItemGrammar",
    "WeightedRtgLm",
    "value_computation",
    "mmonoid_parse",
    "oracle_parse",
    "extract_intersection",
    "solve_adp",
    "AdpProblem",
    "GrammarFile",
    "emit_grammar",
    "load_grammar",
    "loads_grammar",
]
