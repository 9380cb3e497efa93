"""Sorted regular tree grammars, their abstract syntax trees, and brute-force enumeration."""

import itertools
from dataclasses import dataclass, field

from .terms import (
    SortedAlphabet,
    Tree,
    classify_cyclicity,
    sort_of,
    variable,
    yield_projection,
)


@dataclass(frozen=True)
class Rule:
    """lhs -> rhs where rhs is a tree over terminals with nonterminal leaves.

    Identity is the id string: two structurally equal rules with different ids
    are different rules (they weigh and cycle separately).
    """

    id: str
    lhs: str
    rhs: Tree


@dataclass
class SortedRtg:
    nonterminals: SortedAlphabet  # all nullary
    terminals: SortedAlphabet
    initial: str
    rules: tuple

    def __post_init__(self):
        self.rules = tuple(self.rules)
        self.rule_map = {r.id: r for r in self.rules}
        self.by_lhs = {}
        for r in self.rules:
            self.by_lhs.setdefault(r.lhs, []).append(r)

    def nt_args(self, rule):
        """Left-to-right nonterminal leaves of the rule's right-hand side."""
        return yield_projection(rule.rhs, set(self.nonterminals.signatures))

    def rule_rank(self, rule):
        return len(self.nt_args(rule))

    def max_rank(self):
        return max((self.rule_rank(r) for r in self.rules), default=0)

    def sort(self, nonterminal):
        return self.nonterminals.target(nonterminal)

    def is_normal_form(self):
        terms = set(self.terminals.signatures)
        return all(
            sum(1 for p in r.rhs.positions() if r.rhs.label_at(p) in terms) == 1
            for r in self.rules
        )

    def validate(self):
        """Diagnostics (empty list means well-formed)."""
        problems = []
        nts = set(self.nonterminals.signatures)
        if nts & set(self.terminals.signatures):
            problems.append("nonterminals and terminals overlap")
        if self.initial not in nts:
            problems.append(f"initial {self.initial!r} is not a nonterminal")
        if len(self.rule_map) != len(self.rules):
            problems.append("duplicate rule ids")
        # nonterminals act as nullary symbols inside right-hand sides
        combined = SortedAlphabet(
            dict(self.terminals.signatures) | dict(self.nonterminals.signatures)
        )
        for r in self.rules:
            if r.lhs not in nts:
                problems.append(f"{r.id}: lhs {r.lhs!r} is not a nonterminal")
                continue
            try:
                got = sort_of(r.rhs, combined)
            except ValueError as e:
                problems.append(f"{r.id}: {e}")
                continue
            want = self.nonterminals.target(r.lhs)
            if got != want:
                problems.append(f"{r.id}: rhs has sort {got}, lhs expects {want}")
        return problems

    def ast_alphabet(self):
        """Rules as a sorted alphabet: sorts are nonterminals, so ASTs type-check."""
        return SortedAlphabet(
            (r.id, self.nt_args(r), r.lhs) for r in self.rules
        )

    def is_recursive(self):
        """Whether some nonterminal can reach itself through rule right-hand sides."""
        import graphlib

        ts = graphlib.TopologicalSorter()
        for a in self.nonterminals:
            ts.add(a)
        for r in self.rules:
            for b in self.nt_args(r):
                ts.add(r.lhs, b)
        try:
            ts.prepare()
        except graphlib.CycleError:
            return True
        return False


def is_valid_ast(g, d, root=None):
    """Whether d is a well-sorted tree over g's rules (rooted at `root` if given)."""
    try:
        got = sort_of(d, g.ast_alphabet())
    except ValueError:
        return False
    return got == root if root is not None else True


def project_to_terms(g, d):
    """The terminal tree an AST stands for: rhs of each rule with nonterminal
    leaves replaced, left to right, by the projections of the subtrees."""
    rule = g.rule_map[d.label]
    nts = set(g.nonterminals.signatures)
    children = iter(d.children)

    def walk(t):
        if t.label in nts and not t.children:
            return project_to_terms(g, next(children))
        return Tree(t.label, tuple(walk(c) for c in t.children))

    return walk(rule.rhs)


def enumeration_height_cap(g, cyclicity):
    """Spine-length bound: every tree that is at most c-cyclic is shorter than this."""
    return (cyclicity + 1) * len(g.rules) ** (len(g.rules) + 1)


def enumerate_asts(
    g,
    nonterminal=None,
    height=None,
    cyclicity=None,
    max_height=None,
    max_trees=200_000,
    keep=None,
):
    """All ASTs of g for `nonterminal`, restricted three ways: height <= `height`,
    at most `cyclicity`-cyclic, or (both None) everything until saturation.

    The cyclicity mode generates level-wise and filters every candidate; the
    kept set is closed under subtrees, so generation stops at the first level
    that adds nothing (always before the theoretical spine-length cap, which
    `max_height` overrides). `keep(lhs, tree)` prunes candidates and their
    supertrees; saturation mode relies on it or max_trees to stay finite.
    """
    if height is not None and cyclicity is not None:
        raise ValueError("give at most one of height= or cyclicity=")
    if cyclicity is not None:
        cap = max_height if max_height is not None else enumeration_height_cap(g, cyclicity)
    elif height is not None:
        cap = height
    else:
        cap = max_height

    by_nt = {a: [] for a in g.nonterminals}
    seen = set()
    fresh = []
    total = 0
    levels = range(cap + 1) if cap is not None else itertools.count()
    for level in levels:
        new = []
        for r in g.rules:
            args = g.nt_args(r)
            if level == 0:
                if args:
                    continue
                combos = [()]
            else:
                if not args:
                    continue
                # at least one child must come from the previous level's additions
                pools = [by_nt[a] for a in args]
                combos = (
                    cs
                    for cs in itertools.product(*pools)
                    if any(c in fresh for c in cs)
                )
            for cs in combos:
                d = Tree(r.id, cs)
                if d in seen:
                    continue
                if cyclicity is not None and classify_cyclicity(d).degree > cyclicity:
                    continue
                if keep is not None and not keep(r.lhs, d):
                    continue
                seen.add(d)
                new.append((r.lhs, d))
                total += 1
                if total > max_trees:
                    raise RuntimeError(f"more than {max_trees} trees; raise max_trees")
        if not new and level > 0:
            break
        fresh = {d for _, d in new}
        for lhs, d in new:
            by_nt[lhs].append(d)

    want = nonterminal if nonterminal is not None else g.initial
    return sorted(by_nt[want], key=lambda d: (d.size(), str(d)))
