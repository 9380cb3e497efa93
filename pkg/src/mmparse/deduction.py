"""Canonical deduction: turn a weighted grammar plus target object into a
finite item grammar whose abstract syntax trees mirror the original parses."""

import graphlib
import itertools
from dataclasses import dataclass, field

from .languages import evaluate_rhs, factors


@dataclass(frozen=True)
class Item:
    """A deduction item: nonterminal, originating right-hand side (None for the
    goal item), and the syntactic object it derives."""

    nt: str
    rhs: object
    obj: object

    def __str__(self):
        if self.rhs is None:
            return f"[{self.nt} | {self.obj}]"
        return f"[{self.nt} | {self.rhs} | {self.obj}]"


@dataclass(frozen=True)
class ItemRule:
    id: str
    lhs: Item
    children: tuple
    weight: object  # an Op of the weight algebra
    source: str = None  # originating grammar rule id, None for goal rules

    def __str__(self):
        kids = ", ".join(str(c) for c in self.children)
        return f"{self.id}: {self.lhs} -> ({kids})"


@dataclass
class ItemGrammar:
    """The output of canonical deduction: a finite ranked grammar over items."""

    goal: Item
    items: tuple
    rules: tuple
    mmonoid: object
    factor_sets: dict
    by_lhs: dict = field(init=False)
    rhs_index: dict = field(init=False)

    def __post_init__(self):
        self.by_lhs = {}
        for r in self.rules:
            self.by_lhs.setdefault(r.lhs, []).append(r)
        self.rhs_index = {}
        for it in self.items:
            if it.rhs is not None and it.rhs not in self.rhs_index:
                self.rhs_index[it.rhs] = f"t{len(self.rhs_index) + 1}"

    def render_item(self, item):
        if item.rhs is None:
            return f"[{item.nt} | {item.obj}]"
        return f"[{item.nt} | {self.rhs_index[item.rhs]} | {item.obj}]"

    def render_rule(self, rule):
        kids = ", ".join(self.render_item(c) for c in rule.children)
        return f"{rule.id}: {self.render_item(rule.lhs)} -> ({kids})  wt {rule.weight}"

    def rhs_legend(self):
        return {name: str(t) for t, name in self.rhs_index.items()}

    def topological_order(self):
        """Items in children-before-parents order, or None if cyclic."""
        ts = graphlib.TopologicalSorter()
        for it in self.items:
            ts.add(it)
        for r in self.rules:
            for c in r.children:
                ts.add(r.lhs, c)
        try:
            return tuple(ts.static_order())
        except graphlib.CycleError:
            return None

    def is_acyclic(self):
        return self.topological_order() is not None

    def trimmed(self):
        """Keep only rules reachable from the goal item."""
        reachable = {self.goal}
        stack = [self.goal]
        keep = []
        seen_rule = set()
        while stack:
            it = stack.pop()
            for r in self.by_lhs.get(it, ()):
                if r.id in seen_rule:
                    continue
                seen_rule.add(r.id)
                keep.append(r)
                for c in r.children:
                    if c not in reachable:
                        reachable.add(c)
                        stack.append(c)
        order = {r.id: i for i, r in enumerate(self.rules)}
        keep.sort(key=lambda r: order[r.id])
        items = tuple(it for it in self.items if it in reachable)
        return ItemGrammar(self.goal, items, tuple(keep), self.mmonoid, self.factor_sets)

    def to_rtg(self):
        """View as a plain grammar over concatenation templates (one terminal
        per rule, so item ASTs can be enumerated with the generic machinery)."""
        from .rtg import Rule, SortedRtg
        from .terms import SortedAlphabet, Tree

        names = {it: self.render_item(it) for it in self.items}
        nts = SortedAlphabet({names[it]: ((), "s") for it in self.items})
        max_rank = max((len(r.children) for r in self.rules), default=1)
        terms = SortedAlphabet(
            {
                _concat_template(k): (("s",) * k, "s")
                for k in range(max_rank + 1)
            }
        )
        rules = tuple(
            Rule(
                r.id,
                names[r.lhs],
                Tree(
                    _concat_template(len(r.children)),
                    tuple(Tree(names[c]) for c in r.children),
                ),
            )
            for r in self.rules
        )
        return SortedRtg(nts, terms, names[self.goal], rules)


def _concat_template(k):
    return "<" + " ".join(variable_names(k)) + ">" if k else "<>"


def variable_names(k):
    return [f"x{i}" for i in range(1, k + 1)]


def grammar_factor_sets(grammar, algebra, target):
    """Decomposition closure of the target under the grammar's own terminal
    symbols, grouped by sort."""
    nts = set(grammar.nonterminals.signatures)
    symbols = set()
    for r in grammar.rules:
        for p in r.rhs.positions():
            lab = r.rhs.label_at(p)
            if lab not in nts:
                symbols.add(lab)
    out = {}
    for f in factors(algebra, target, sorted(symbols)):
        out.setdefault(algebra.sort_of(f), set()).add(f)
    return out


def canonical_deduction(wlm, target, max_items=200_000, factor_sets=None):
    """Build the item grammar for a weighted grammar and a target object.

    Only derivable items are constructed: an item exists iff the grammar can
    actually build its object from its nonterminal with its right-hand side.
    """
    g = wlm.grammar
    alg = wlm.algebra
    target_sort = alg.sort_of(target)
    if g.sort(g.initial) != target_sort:
        raise ValueError(
            f"target has sort {target_sort!r}, start symbol needs {g.sort(g.initial)!r}"
        )

    nts = set(g.nonterminals.signatures)
    if factor_sets is None:
        factor_sets = grammar_factor_sets(g, alg, target)

    # phase 1: fixpoint over derivable (nonterminal, object) tags
    tags = {nt: set() for nt in nts}
    instantiations = set()  # (rule id, child tags, produced object)
    tried = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            child_nts = g.nt_args(r)
            pools = [sorted(tags[b], key=str) for b in child_nts]
            allowed = factor_sets.get(g.sort(r.lhs), set())
            for combo in itertools.product(*pools):
                key = (r.id, combo)
                if key in tried:
                    continue
                tried.add(key)
                obj = evaluate_rhs(alg, r.rhs, nts, combo)
                if obj in allowed:
                    instantiations.add((r.id, combo, obj))
                    if obj not in tags[r.lhs]:
                        tags[r.lhs].add(obj)
                        changed = True
            if sum(len(v) for v in tags.values()) > max_items:
                raise RuntimeError(f"more than {max_items} derivable items")

    # phase 2: materialize items and rules
    items = []
    seen_items = set()

    def intern(item):
        if item not in seen_items:
            seen_items.add(item)
            items.append(item)
        return item

    by_tag = {}  # (nt, obj) -> distinct items, for child lookups
    for r in g.rules:
        for rid, combo, obj in sorted(instantiations, key=lambda x: (x[0], str(x[1]))):
            if rid != r.id:
                continue
            it = intern(Item(r.lhs, r.rhs, obj))
            bucket = by_tag.setdefault((r.lhs, obj), [])
            # rules sharing a right-hand side share their item: pool it once
            if it not in bucket:
                bucket.append(it)
    for k in by_tag:
        by_tag[k].sort(key=str)

    rules = []
    counters = {}
    for r in g.rules:
        child_nts = g.nt_args(r)
        for rid, combo, obj in sorted(instantiations, key=lambda x: (x[0], str(x[1]))):
            if rid != r.id:
                continue
            lhs = Item(r.lhs, r.rhs, obj)
            pools = [by_tag.get((b, t), ()) for b, t in zip(child_nts, combo)]
            for kids in itertools.product(*pools):
                n = counters.get(r.id, 0) + 1
                counters[r.id] = n
                rules.append(
                    ItemRule(f"{r.id}#{n}", lhs, tuple(kids), wlm.wt[r.id], r.id)
                )
                if len(rules) > max_items:
                    raise RuntimeError(f"more than {max_items} item rules")

    goal = intern(Item(g.initial, None, target))
    n = 0
    linked = set()
    # rules sharing a right-hand side share their item: link it only once
    for r in g.by_lhs.get(g.initial, ()):
        it = Item(g.initial, r.rhs, target)
        if it in seen_items and it not in linked:
            linked.add(it)
            n += 1
            rules.append(
                ItemRule(f"goal#{n}", goal, (it,), wlm.mmonoid.identity_op, None)
            )

    return ItemGrammar(goal, tuple(items), tuple(rules), wlm.mmonoid, factor_sets)
