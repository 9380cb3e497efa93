"""The parsing engine: weighted grammars, the iterative value computation, the
full pipeline, and brute-force reference computations."""

import random
from dataclasses import dataclass, field

from .deduction import canonical_deduction, grammar_factor_sets
from .languages import YieldAlgebra, YieldStr, evaluate_rhs
from .rtg import Rule, SortedRtg, enumerate_asts, project_to_terms
from .terms import (
    SortedAlphabet,
    Tree,
    elementary_cycles_in,
    cutout_trees,
    is_k_cyclic,
    label_sequence,
)
from .weights import (
    AdpMMonoid,
    IntersectionMMonoid,
    check_bellman,
    check_objective,
)


@dataclass
class WeightedRtgLm:
    """A grammar, a language algebra, a weight algebra, and per-rule weight ops.

    closed_c and nonlooping are caller assertions about the model class; they
    are trusted, not verified (check_closedness can probe the former)."""

    grammar: SortedRtg
    algebra: object
    mmonoid: object
    wt: dict
    closed_c: int = None
    nonlooping: bool = False

    def __post_init__(self):
        missing = [r.id for r in self.grammar.rules if r.id not in self.wt]
        if missing:
            raise ValueError(f"rules without weights: {missing}")
        for r in self.grammar.rules:
            op = self.wt[r.id]
            k = len(self.grammar.nt_args(r))
            if op.arity != k:
                raise ValueError(
                    f"rule {r.id} has {k} nonterminals but weight op arity {op.arity}"
                )

    def effective_closedness(self):
        """The smallest enumeration degree the model is known to support."""
        if self.closed_c is not None:
            return self.closed_c
        if self.mmonoid.closed_c is not None:
            return self.mmonoid.closed_c
        if not self.grammar.is_recursive():
            return 0
        return None


class IterationLimitError(RuntimeError):
    """Value computation did not stabilize within the pass limit."""

    def __init__(self, passes, previous, last):
        self.passes = passes
        self.previous = previous
        self.last = last
        diffs = [it for it in last if last[it] != previous.get(it)]
        super().__init__(
            f"no fixpoint after {passes} passes; {len(diffs)} items still changing"
        )
        self.changing = diffs


@dataclass
class ValueMap:
    values: dict
    passes: int
    updates: int
    order: tuple
    history: list = None

    def __getitem__(self, item):
        return self.values[item]


def value_computation(ig, order=None, limit=None, tol=None, instrumented=False):
    """Iterate the rule equations over the item grammar until nothing changes.

    Items are revisited in `order` (default: children-first when the grammar is
    acyclic, declaration order otherwise); values read live within a pass."""
    if order is None:
        seq = ig.topological_order()
        if seq is None:
            seq = ig.items
    elif order == "declaration":
        seq = ig.items
    elif callable(order):
        seq = tuple(order(ig))
    else:
        seq = tuple(order)
    if set(seq) != set(ig.items):
        raise ValueError("order must cover exactly the items of the grammar")

    m = ig.mmonoid
    if limit is None:
        limit = max(10 * len(ig.items), 10)
    values = {it: m.zero for it in ig.items}
    passes = updates = 0
    history = [] if instrumented else None
    while True:
        passes += 1
        before = dict(values)
        changed = False
        for it in seq:
            rules = ig.by_lhs.get(it, ())
            if not rules:
                continue
            new = m.sum(
                m.apply(r.weight, [values[c] for c in r.children]) for r in rules
            )
            if not m.equals(values[it], new, tol):
                values[it] = new
                changed = True
                updates += 1
        if instrumented:
            history.append(dict(values))
        if not changed:
            break
        if passes >= limit:
            raise IterationLimitError(passes, before, dict(values))
    return ValueMap(values, passes, updates, tuple(seq), history)


@dataclass
class ParseResult:
    value: object
    item_grammar: object
    value_map: ValueMap


def mmonoid_parse(
    wlm, target, order=None, limit=None, tol=None, instrumented=False, max_items=200_000
):
    """The full pipeline: canonical deduction, then value computation; the
    result is the computed weight of the goal item."""
    ig = canonical_deduction(wlm, target, max_items=max_items)
    vm = value_computation(ig, order=order, limit=limit, tol=tol, instrumented=instrumented)
    return ParseResult(vm[ig.goal], ig, vm)


def derivation_weight(wlm, d):
    """Weight of an abstract syntax tree: fold the rule ops bottom-up."""
    op = wlm.wt[d.label]
    return wlm.mmonoid.apply(op, [derivation_weight(wlm, c) for c in d.children])


def oracle_parse(wlm, target, c=None, max_trees=200_000):
    """Reference result computed without deduction: enumerate all ASTs of
    bounded cyclicity, keep those evaluating to the target, sum their weights."""
    if c is None:
        c = wlm.effective_closedness()
    if c is None:
        raise ValueError("no known enumeration bound; pass c explicitly")
    g, alg, m = wlm.grammar, wlm.algebra, wlm.mmonoid
    total = m.zero
    for d in enumerate_asts(g, cyclicity=c, max_trees=max_trees):
        term = project_to_terms(g, d)
        obj = evaluate_rhs(alg, term, frozenset(), ())
        if obj == target:
            total = m.plus(total, derivation_weight(wlm, d))
    return total


@dataclass
class IntersectionResult:
    grammar: SortedRtg
    psi: dict  # new nonterminal name -> original nonterminal
    collected: frozenset
    parse_result: ParseResult


def intersection_wlm(grammar, algebra, target, factor_sets=None):
    """The weighted model whose parse value collects intersection rules."""
    if factor_sets is None:
        factor_sets = grammar_factor_sets(grammar, algebra, target)
    m = IntersectionMMonoid(grammar, algebra, factor_sets)
    wt = {r.id: m.omega_op(r) for r in grammar.rules}
    return WeightedRtgLm(grammar, algebra, m, wt), factor_sets


def extract_intersection(grammar, algebra, target, limit=None, max_items=200_000):
    """Build the grammar generating exactly the target's parses: run the
    pipeline under the rule-collecting algebra and read the rules off the goal."""
    factor_sets = grammar_factor_sets(grammar, algebra, target)
    wlm, _ = intersection_wlm(grammar, algebra, target, factor_sets)
    ig = canonical_deduction(wlm, target, max_items=max_items, factor_sets=factor_sets)
    vm = value_computation(ig, limit=limit)
    collected = vm[ig.goal]

    psi = {}

    def name(nt, obj):
        n = f"[{nt}|{obj}]"
        psi[n] = nt
        return n

    nts = set(grammar.nonterminals.signatures)
    new_nts = {name(grammar.initial, target): ((), grammar.sort(grammar.initial))}
    for p in collected:
        new_nts[name(p.lhs_nt, p.lhs_obj)] = ((), grammar.sort(p.lhs_nt))
        for b, obj in p.children:
            new_nts[name(b, obj)] = ((), grammar.sort(b))

    rules = []
    counters = {}
    for p in sorted(collected, key=str):
        src = grammar.rule_map[p.rule_id]
        kids = iter(p.children)

        def relabel(t):
            if t.label in nts and not t.children:
                b, obj = next(kids)
                return Tree(name(b, obj))
            return Tree(t.label, tuple(relabel(ch) for ch in t.children))

        rhs = relabel(src.rhs)
        n = counters.get(p.rule_id, 0) + 1
        counters[p.rule_id] = n
        rules.append(Rule(f"{p.rule_id}@{n}", name(p.lhs_nt, p.lhs_obj), rhs))

    new_grammar = SortedRtg(
        SortedAlphabet(new_nts),
        grammar.terminals,
        name(grammar.initial, target),
        tuple(rules),
    )
    return IntersectionResult(
        new_grammar, psi, frozenset(collected), ParseResult(collected, ig, vm)
    )


@dataclass
class AdpProblem:
    """A dynamic-programming problem: a yield grammar over a two-sorted
    alphabet, evaluated through an answer algebra and an objective."""

    grammar: SortedRtg
    mmonoid: AdpMMonoid
    algebra: YieldAlgebra = None
    checked: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.algebra is None:
            self.algebra = YieldAlgebra(self.mmonoid.eval_algebra.signatures)

    def parse_input(self, text):
        obj = self.algebra.parse_object(
            text, sort=self.grammar.sort(self.grammar.initial)
        )
        encode = getattr(self.mmonoid.eval_algebra, "encode_input", None)
        if encode is None:
            return obj
        return YieldStr(encode(obj.symbols), obj.sort)


def solve_adp(problem, word, check=True, limit=None, max_items=200_000):
    """Parse the input word and return the objective's answer set.

    On first use the objective axioms and the optimal-substructure property
    are probed by sampling; a looping grammar is rejected per input."""
    m = problem.mmonoid
    if check and not problem.checked:
        rng = random.Random(20240917)
        bad = check_objective(m, rng, samples=100) + check_bellman(m, rng, samples=100)
        if bad:
            raise ValueError("unusable objective: " + "; ".join(bad[:3]))
        problem.checked = True
    g = problem.grammar
    target = problem.parse_input(word) if isinstance(word, str) else word
    nts = set(g.nonterminals.signatures)
    wt = {r.id: m.rule_op(r, nts) for r in g.rules}
    wlm = WeightedRtgLm(g, problem.algebra, m, wt, nonlooping=True)
    ig = canonical_deduction(wlm, target, max_items=max_items)
    if ig.topological_order() is None:
        raise RuntimeError("the grammar loops on this input; answers are not well-founded")
    vm = value_computation(ig, limit=limit)
    return ParseResult(vm[ig.goal], ig, vm)


def check_closedness(wlm, c, height=None, max_trees=50_000, max_violations=10):
    """Probe the cycle-stability equation: for trees with a (c+1)-fold cycle,
    adding the tree's weight to its cut-down variants must change nothing.

    Exhaustive over all ASTs up to `height` (default c+4); returns violations
    as (tree, cycle, with-tree, without-tree) tuples."""
    if height is None:
        height = c + 4
    g, m = wlm.grammar, wlm.mmonoid
    violations = []
    for nt in sorted(g.nonterminals.signatures):
        for d in enumerate_asts(g, nonterminal=nt, height=height, max_trees=max_trees):
            leaves = d.leaves()
            paths = [label_sequence(d, (), p) for p in leaves]
            cycles = sorted({w for s in paths for w in elementary_cycles_in(s)})
            for w in cycles:
                if not any(is_k_cyclic(s, w, c + 1) for s in paths):
                    continue
                cut = sorted(cutout_trees(d, w), key=str)
                without = m.sum(derivation_weight(wlm, d2) for d2 in cut)
                with_tree = m.plus(derivation_weight(wlm, d), without)
                if not m.equals(with_tree, without):
                    violations.append((d, w, with_tree, without))
                    if len(violations) >= max_violations:
                        return violations
    return violations
