"""Shared test helpers: random model generators, reference algorithms, enumeration."""

import pathlib
from collections import Counter

import pytest
from hypothesis import HealthCheck, settings

from mmparse.engine import WeightedRtgLm, derivation_weight
from mmparse.languages import CfgAlgebra, Str, evaluate_rhs
from mmparse.rtg import Rule, SortedRtg, enumerate_asts, project_to_terms
from mmparse.terms import SortedAlphabet, Tree
from mmparse.weights import (
    bd_mmonoid,
    boolean_mmonoid,
    nbest_mmonoid,
    tropical_mmonoid,
    viterbi_mmonoid,
)

settings.register_profile(
    "suite", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

GRAMMAR_DIR = pathlib.Path(__file__).resolve().parents[1] / "grammars"


@pytest.fixture(scope="session")
def grammar_dir():
    return GRAMMAR_DIR


def run_cli(*args):
    from click.testing import CliRunner

    from mmparse.cli import main

    return CliRunner().invoke(main, [str(a) for a in args])


def wf_distance(u, v):
    """Row-by-row edit distance (substitution, insertion, deletion all cost 1)."""
    prev = list(range(len(v) + 1))
    for i, cu in enumerate(u, start=1):
        cur = [i]
        for j, cv in enumerate(v, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (cu != cv)))
        prev = cur
    return prev[len(v)]


# --- random weighted models over the string algebra ---------------------------
#
# Structural rules only point at later nonterminals, so the base grammar is a
# DAG with AST depth < the nonterminal count. Cyclic variants add copying
# self-loops A -> <x1>(A): every cycle then repeats the derived string
# unchanged, which keeps bounded-cyclicity enumeration a sound reference
# (a cycle that grew the string would make the cut-down trees parse different
# inputs, and the degree-0 reference sum would miss real parses).

NULLARY = ("<a>", "<b>", "<a b>", "<b a>", "<a a>")
UNARY = ("<x1>", "<a x1>", "<x1 b>", "<a x1 b>")
BINARY = ("<x1 x2>", "<x1 a x2>", "<a x1 x2>")

WEIGHT_TEXTS = {
    "boolean": ("tt", "tt", "tt", "tt", "ff"),
    "tropical": ("0", "1", "2", "3", "5", "8"),
    "viterbi": ("1.0", "0.5", "0.5", "0.25", "0.125"),
    "bd": ("1.0", "0.5", "0.5", "0.25", "0.125"),
    "nbest1": ("1.0", "0.5", "0.5", "0.25", "0.125"),
    "nbest2": ("1.0", "0.5", "0.5", "0.25", "0.125"),
    "nbest3": ("1.0", "0.5", "0.5", "0.25", "0.125"),
}

ACYCLIC_KINDS = tuple(WEIGHT_TEXTS)
CYCLIC_KINDS = ("boolean", "tropical", "viterbi")


def make_mmonoid(kind):
    if kind == "boolean":
        return boolean_mmonoid()
    if kind == "tropical":
        return tropical_mmonoid()
    if kind == "viterbi":
        return viterbi_mmonoid()
    if kind == "bd":
        # ties are common with dyadic probabilities; leave room for all of them
        return bd_mmonoid(cap=100_000)
    if kind.startswith("nbest"):
        return nbest_mmonoid(int(kind[-1]))
    raise ValueError(f"unknown weight kind {kind!r}")


def random_grammar(rng, max_nts=5, max_rules=10, cyclic=False):
    n = rng.randrange(1, max_nts + 1)
    nts = [f"N{i}" for i in range(n)]
    rules = []

    def add(lhs_i, template, children_i):
        kids = tuple(Tree(nts[j]) for j in children_i)
        rules.append(Rule(f"r{len(rules) + 1}", nts[lhs_i], Tree(template, kids)))

    loops = rng.randrange(1, 3) if cyclic else 0
    budget = max_rules - loops
    for i in range(n):
        pool = list(range(i + 1, n))
        if not pool or rng.random() < 0.4:
            add(i, rng.choice(NULLARY), ())
        elif len(pool) >= 2 and rng.random() < 0.4:
            add(i, rng.choice(BINARY), rng.choices(pool, k=2))
        else:
            add(i, rng.choice(UNARY), [rng.choice(pool)])
    while len(rules) < budget and rng.random() < 0.7:
        i = rng.randrange(n)
        pool = list(range(i + 1, n))
        roll = rng.random()
        if not pool or roll < 0.35:
            add(i, rng.choice(NULLARY), ())
        elif roll < 0.75:
            add(i, rng.choice(UNARY), [rng.choice(pool)])
        else:
            add(i, rng.choice(BINARY), rng.choices(pool, k=2))
    for i in rng.sample(range(n), min(loops, n)):
        add(i, "<x1>", (i,))

    terms = {}
    for r in rules:
        terms[r.rhs.label] = (("s",) * len(r.rhs.children), "s")
    return SortedRtg(
        SortedAlphabet({a: ((), "s") for a in nts}),
        SortedAlphabet(terms),
        "N0",
        tuple(rules),
    )


def bounded_asts(g, max_trees, **kw):
    """Enumerate, or None when the grammar is too prolific for the budget."""
    try:
        return enumerate_asts(g, max_trees=max_trees, **kw)
    except RuntimeError:
        return None


def eval_ast(g, alg, d):
    return evaluate_rhs(alg, project_to_terms(g, d), frozenset(), ())


def random_model(rng, kind, cyclic=False):
    """A small weighted model plus a target string (usually in the language)."""
    m = make_mmonoid(kind)
    texts = WEIGHT_TEXTS[kind]
    while True:
        g = random_grammar(rng, cyclic=cyclic)
        degree0 = bounded_asts(g, 2000, cyclicity=0)
        if degree0 is None or not degree0 or bounded_asts(g, 3000, height=6) is None:
            continue
        nts = set(g.nonterminals.signatures)
        wt = {r.id: m.rule_op(r, nts, rng.choice(texts)) for r in g.rules}
        wlm = WeightedRtgLm(g, CfgAlgebra(("a", "b")), m, wt)
        if rng.random() < 0.75:
            target = eval_ast(g, wlm.algebra, rng.choice(degree0))
        else:
            target = Str(tuple(rng.choice("ab") for _ in range(rng.randrange(5))))
        return wlm, target


def weight_multiset(wlm, target, height):
    """Weights of the target's parse trees up to the given AST height."""
    out = Counter()
    for d in enumerate_asts(wlm.grammar, height=height, max_trees=50_000):
        if eval_ast(wlm.grammar, wlm.algebra, d) == target:
            out[derivation_weight(wlm, d)] += 1
    return out


def item_weight_multiset(ig, height):
    """Weights of the item grammar's goal trees up to the given height."""
    ops = {r.id: r.weight for r in ig.rules}
    m = ig.mmonoid

    def fold(d):
        return m.apply(ops[d.label], [fold(c) for c in d.children])

    out = Counter()
    for d in enumerate_asts(ig.to_rtg(), height=height, max_trees=50_000):
        out[fold(d)] += 1
    return out


# --- edit distance as a dynamic program ----------------------------------------


def edit_grammar_text(letters):
    lines = [
        "algebra yield",
        "@adp h=min eval=edit",
        "start A",
        "nonterm A:a",
        "",
        "nil: A -> nil($)",
    ]
    for k in letters:
        lines.append(f"del_{k}: A -> delete({k},A)")
        lines.append(f"ins_{k}: A -> insert(A,{k})")
    for k in letters:
        for s in letters:
            lines.append(f"rep_{k}_{s}: A -> replace({k},A,{s})")
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def edit3_problem():
    from mmparse.textfmt import loads_grammar

    return loads_grammar(edit_grammar_text("abc")).adp_problem()
