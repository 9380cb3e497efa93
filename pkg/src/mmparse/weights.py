"""Complete M-monoid weight algebras (semiring-derived, best-derivation, n-best,
rule-collecting, objective-function) plus samplers and law checkers."""

import itertools
import math
from dataclasses import dataclass

from .terms import Tree, is_variable, variable, variable_index


@dataclass(frozen=True)
class Op:
    """Handle for a k-ary operation; the owning M-monoid interprets the tag."""

    tag: str
    params: tuple = ()
    arity: int = 0

    def __str__(self):
        inner = ", ".join(str(p) for p in self.params)
        return f"{self.tag}({inner})" if inner else self.tag


class MMonoid:
    """A commutative monoid with a family of k-ary operations and null ops.

    Subclasses interpret op tags in _apply; 'id' and 'null' are handled here.
    """

    name = "mmonoid"
    distributive = True
    absorbing = True
    idempotent = True
    superior = False
    d_complete = True
    closed_c = None  # smallest c this algebra guarantees for any grammar, if any

    @property
    def zero(self):
        raise NotImplementedError

    def plus(self, a, b):
        raise NotImplementedError

    def sum(self, values):
        out = self.zero
        for v in values:
            out = self.plus(out, v)
        return out

    def apply(self, op, args):
        if len(args) != op.arity:
            raise ValueError(f"{op} expects {op.arity} arguments, got {len(args)}")
        if op.tag == "id":
            return args[0]
        if op.tag == "null":
            return self.zero
        return self._apply(op, args)

    def _apply(self, op, args):
        raise ValueError(f"{self.name} cannot interpret op {op.tag!r}")

    @property
    def identity_op(self):
        return Op("id", (), 1)

    def null_op(self, k):
        return Op("null", (), k)

    def equals(self, a, b, tol=None):
        return a == b

    def render(self, v):
        return str(v)

    def rule_op(self, rule, nonterminals, text=None):
        """Build the weight op for a grammar rule from its directive text."""
        raise NotImplementedError

    def sample_value(self, rng):
        raise NotImplementedError

    def sample_op(self, rng):
        raise NotImplementedError


def _float_eq(a, b, tol):
    if tol is None:
        return a == b
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol


class SemiringMMonoid(MMonoid):
    """M-monoid derived from a commutative semiring: the k-ary op with
    parameter w multiplies w with all its arguments."""

    def __init__(self, name, plus_fn, times_fn, zero, one, value_pool, superior=False):
        self.name = name
        self._plus = plus_fn
        self._times = times_fn
        self._zero = zero
        self.one = one
        self._pool = tuple(value_pool)
        self.superior = superior
        if superior:
            self.closed_c = 0

    @property
    def zero(self):
        return self._zero

    def plus(self, a, b):
        return self._plus(a, b)

    def _apply(self, op, args):
        if op.tag != "mul":
            return super()._apply(op, args)
        out = op.params[0]
        for a in args:
            out = self._times(out, a)
        return out

    def mul_op(self, value, arity):
        return Op("mul", (value,), arity)

    def equals(self, a, b, tol=None):
        if isinstance(a, float) or isinstance(b, float):
            return _float_eq(float(a), float(b), tol)
        return a == b

    def render(self, v):
        if v is True:
            return "tt"
        if v is False:
            return "ff"
        if v == math.inf:
            return "inf"
        return f"{v:g}" if isinstance(v, float) else str(v)

    def parse_value(self, text):
        text = text.strip()
        if self.name == "boolean":
            if text in ("true", "tt", "1"):
                return True
            if text in ("false", "ff", "0"):
                return False
            raise ValueError(f"not a boolean: {text!r}")
        return math.inf if text == "inf" else float(text)

    def rule_op(self, rule, nonterminals, text=None):
        if text is None:
            raise ValueError(f"{self.name} needs an explicit weight for rule {rule.id}")
        arity = sum(
            1 for p in rule.rhs.positions() if rule.rhs.label_at(p) in nonterminals
        )
        return self.mul_op(self.parse_value(text), arity)

    def sample_value(self, rng):
        return rng.choice(self._pool)

    def sample_op(self, rng):
        return self.mul_op(rng.choice(self._pool), rng.randrange(4))


def tropical_mmonoid():
    pool = (0.0, 0.5, 1.0, 2.0, 3.0, 7.0, math.inf)
    return SemiringMMonoid(
        "tropical", min, lambda a, b: a + b, math.inf, 0.0, pool, superior=True
    )


def viterbi_mmonoid():
    pool = (0.0, 0.1, 0.25, 0.5, 0.75, 1.0)
    return SemiringMMonoid(
        "viterbi", max, lambda a, b: a * b, 0.0, 1.0, pool, superior=True
    )


def boolean_mmonoid():
    return SemiringMMonoid(
        "boolean",
        lambda a, b: a or b,
        lambda a, b: a and b,
        False,
        True,
        (False, True),
        superior=True,
    )


class BestDerivationMMonoid(MMonoid):
    """Pairs of a probability and the set of best derivations (trees over rule
    names). Sum keeps the larger probability and unions ties; the op for rule r
    with probability p multiplies probabilities and grafts r on top."""

    name = "best-derivation"
    idempotent = True

    def __init__(self, cap=64, require_sub_one=False):
        self.cap = cap
        self.require_sub_one = require_sub_one
        if require_sub_one:
            self.closed_c = 0

    @property
    def zero(self):
        return (0.0, frozenset())

    def plus(self, a, b):
        if a[0] > b[0]:
            return a
        if b[0] > a[0]:
            return b
        ds = a[1] | b[1]
        if len(ds) > self.cap:
            raise RuntimeError(f"more than {self.cap} tied best derivations")
        return (a[0], ds)

    def tc_op(self, p, rule_id, arity):
        if self.require_sub_one and not p < 1.0:
            raise ValueError(
                f"cyclic-safe mode needs probability < 1, rule {rule_id} has {p}"
            )
        return Op("tc", (p, rule_id), arity)

    def _apply(self, op, args):
        if op.tag != "tc":
            return super()._apply(op, args)
        p, rule_id = op.params
        prob = p
        for q, _ in args:
            prob *= q
        # probability 0 collapses to the absorbing zero; (0, nonempty) pairs
        # would break the ordering that plus derives from the probabilities
        if prob == 0.0:
            return self.zero
        count = 1
        for _, ds in args:
            count *= len(ds)
        if count > self.cap:
            raise RuntimeError(f"more than {self.cap} derivation combinations")
        ds = frozenset(
            Tree(rule_id, combo)
            for combo in itertools.product(*(sorted(ds, key=str) for _, ds in args))
        )
        return (prob, ds)

    def equals(self, a, b, tol=None):
        return _float_eq(a[0], b[0], tol) and a[1] == b[1]

    def render(self, v):
        p, ds = v
        body = ", ".join(sorted(str(d) for d in ds))
        return f"{p:g} {{{body}}}"

    def rule_op(self, rule, nonterminals, text=None):
        if text is None:
            raise ValueError(f"{self.name} needs a probability for rule {rule.id}")
        arity = sum(
            1 for p in rule.rhs.positions() if rule.rhs.label_at(p) in nonterminals
        )
        return self.tc_op(float(text), rule.id, arity)

    def sample_value(self, rng):
        p = rng.choice((0.0, 0.1, 0.25, 0.5, 0.5, 0.75, 1.0))
        if p == 0.0:
            return self.zero
        pool = [Tree("r1"), Tree("r2"), Tree("r3", (Tree("r1"),))]
        ds = frozenset(rng.sample(pool, rng.randrange(1, 4)))
        return (p, ds)

    def sample_op(self, rng):
        p = rng.choice((0.1, 0.25, 0.5, 0.75, 1.0))
        return Op("tc", (p, rng.choice(("r1", "r2", "r3"))), rng.randrange(4))


def bd_mmonoid(cap=64, require_sub_one=False):
    return BestDerivationMMonoid(cap=cap, require_sub_one=require_sub_one)


class NBestMMonoid(MMonoid):
    """Descending n-tuples of probabilities; sum merges and keeps the n best,
    the op with parameter w multiplies through and keeps the n best products."""

    name = "n-best"
    idempotent = False

    def __init__(self, n):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.name = f"{n}-best"
        self.closed_c = n - 1

    @property
    def zero(self):
        return (0.0,) * self.n

    def _take(self, values):
        return tuple(sorted(values, reverse=True)[: self.n])

    def _prod(self, a, b):
        return self._take([x * y for x in a for y in b])

    def plus(self, a, b):
        return self._take(a + b)

    def embed(self, value):
        if isinstance(value, tuple):
            if len(value) != self.n:
                raise ValueError(f"need a {self.n}-tuple, got {value}")
            return self._take(value)
        return (float(value),) + (0.0,) * (self.n - 1)

    def mul_op(self, value, arity):
        return Op("mul", (self.embed(value),), arity)

    def _apply(self, op, args):
        if op.tag != "mul":
            return super()._apply(op, args)
        out = op.params[0]
        for a in args:
            out = self._prod(out, a)
        return out

    def equals(self, a, b, tol=None):
        return len(a) == len(b) and all(_float_eq(x, y, tol) for x, y in zip(a, b))

    def render(self, v):
        return "(" + ", ".join(f"{x:g}" for x in v) + ")"

    def rule_op(self, rule, nonterminals, text=None):
        if text is None:
            raise ValueError(f"{self.name} needs a weight for rule {rule.id}")
        text = text.strip()
        value = (
            tuple(float(x) for x in text[1:-1].split(","))
            if text.startswith("(")
            else float(text)
        )
        arity = sum(
            1 for p in rule.rhs.positions() if rule.rhs.label_at(p) in nonterminals
        )
        return self.mul_op(value, arity)

    def sample_value(self, rng):
        pool = (0.0, 0.1, 0.25, 0.5, 0.5, 0.75, 1.0)
        return self._take([rng.choice(pool) for _ in range(self.n)])

    def sample_op(self, rng):
        return self.mul_op(rng.choice((0.1, 0.25, 0.5, 0.75, 1.0)), rng.randrange(4))


def nbest_mmonoid(n):
    return NBestMMonoid(n)


@dataclass(frozen=True)
class CollectedRule:
    """A rule of the intersection grammar: source rule id, tagged left-hand
    side, and tagged children."""

    rule_id: str
    lhs_nt: str
    lhs_obj: object
    children: tuple  # of (nonterminal, object) pairs

    def __str__(self):
        kids = ", ".join(f"[{nt}, {obj}]" for nt, obj in self.children)
        return f"[{self.lhs_nt}, {self.lhs_obj}] -> {self.rule_id}({kids})"


class IntersectionMMonoid(MMonoid):
    """Sets of intersection-grammar rules under union. The op for rule r glues
    new rules out of the tagged left-hand sides found in its arguments."""

    name = "intersection"
    absorbing = False

    def __init__(self, grammar, algebra, factor_sets):
        # factor_sets: sort -> set of syntactic objects (decomposition closure
        # of the target object)
        self.grammar = grammar
        self.algebra = algebra
        self.factor_sets = factor_sets
        self._nts = set(grammar.nonterminals.signatures)

    @property
    def zero(self):
        return frozenset()

    def plus(self, a, b):
        return a | b

    def omega_op(self, rule):
        return Op("omega", (rule.id,), len(self.grammar.nt_args(rule)))

    def _apply(self, op, args):
        if op.tag != "omega":
            return super()._apply(op, args)
        from .languages import evaluate_rhs

        rule = self.grammar.rule_map[op.params[0]]
        child_nts = self.grammar.nt_args(rule)
        out = set().union(*args) if args else set()
        candidates = [
            sorted(
                {p.lhs_obj for p in v if p.lhs_nt == nt},
                key=str,
            )
            for v, nt in zip(args, child_nts)
        ]
        lhs_sort = self.grammar.sort(rule.lhs)
        allowed = self.factor_sets.get(lhs_sort, set())
        for tags in itertools.product(*candidates):
            b = evaluate_rhs(self.algebra, rule.rhs, self._nts, tags)
            if b in allowed:
                out.add(
                    CollectedRule(rule.id, rule.lhs, b, tuple(zip(child_nts, tags)))
                )
        return frozenset(out)

    def render(self, v):
        return "{" + "; ".join(sorted(str(p) for p in v)) + "}"

    def rule_op(self, rule, nonterminals, text=None):
        return self.omega_op(rule)

    def all_item_rules(self, max_rules=100_000):
        """The full finite carrier basis: every gluable rule over the factors."""
        out = set()
        from .languages import evaluate_rhs

        for rule in self.grammar.rules:
            child_nts = self.grammar.nt_args(rule)
            pools = [
                sorted(self.factor_sets.get(self.grammar.sort(nt), ()), key=str)
                for nt in child_nts
            ]
            allowed = self.factor_sets.get(self.grammar.sort(rule.lhs), set())
            for tags in itertools.product(*pools):
                b = evaluate_rhs(self.algebra, rule.rhs, self._nts, tags)
                if b in allowed:
                    out.add(
                        CollectedRule(rule.id, rule.lhs, b, tuple(zip(child_nts, tags)))
                    )
                if len(out) > max_rules:
                    raise RuntimeError(f"more than {max_rules} gluable rules")
        return out

    def sample_value(self, rng):
        if not hasattr(self, "_basis"):
            self._basis = sorted(self.all_item_rules(), key=str)
        basis = self._basis
        if not basis:
            return frozenset()
        k = rng.randrange(0, min(len(basis), 4) + 1)
        return frozenset(rng.sample(basis, k))

    def sample_op(self, rng):
        return self.omega_op(rng.choice(self.grammar.rules))


def intersection_mmonoid(grammar, algebra, factor_sets):
    return IntersectionMMonoid(grammar, algebra, factor_sets)


@dataclass(frozen=True)
class AdpValue:
    """A sorted answer set; the empty set carries no sort."""

    sort: object
    values: frozenset

    def __str__(self):
        if not self.values:
            return "{}"
        body = ", ".join(sorted(str(v) for v in self.values))
        return f"{{{body}}}:{self.sort}"


@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return "bottom"


BOTTOM = Bottom()

ANSWER, INPUT = "a", "i"


class AdpEvalAlgebra:
    """A two-sorted evaluation algebra: input symbols denote themselves, answer
    symbols combine argument values. `encode_input` (optional) maps the user's
    input spelling to the symbol sequence the grammar actually derives."""

    def __init__(self, name, signatures, apply_fn, sample_answer=None, encode_input=None):
        self.name = name
        self.signatures = dict(signatures)  # symbol -> (arg sorts, target sort)
        self._apply = apply_fn
        self._sample_answer = sample_answer or (lambda rng: rng.randrange(12))
        self.encode_input = encode_input

    def input_symbols(self):
        return sorted(s for s, (a, t) in self.signatures.items() if t == INPUT)

    def evaluate(self, sym, args):
        arg_sorts, target = self.signatures[sym]
        if target == INPUT:
            return sym
        return self._apply(sym, args)

    def sample_carrier(self, sort, rng):
        if sort == INPUT:
            return rng.choice(self.input_symbols())
        return self._sample_answer(rng)


def _edit_apply(sym, args):
    if sym == "nil":
        return 0
    if sym == "delete" or sym == "insert":
        n = args[1] if sym == "delete" else args[0]
        return n + 1
    if sym == "replace":
        return args[1] if args[0] == args[2] else args[1] + 1
    raise ValueError(f"unknown symbol {sym!r}")


def edit_eval_algebra(letters="abcdefghijklmnopqrstuvwxyz", marker="$"):
    sigs = {ch: ((), INPUT) for ch in letters}
    sigs[marker] = ((), INPUT)
    sigs["nil"] = ((INPUT,), ANSWER)
    sigs["delete"] = ((INPUT, ANSWER), ANSWER)
    sigs["insert"] = ((ANSWER, INPUT), ANSWER)
    sigs["replace"] = ((INPUT, ANSWER, INPUT), ANSWER)

    def encode(symbols):
        # "u$v" spells the pair (u, v); derivations grow outside-in, pairing
        # u's first symbol with the last one of the right-hand part, so v is
        # stored reversed to align position i with position i
        if marker not in symbols:
            raise ValueError(f"edit input must spell u{marker}v")
        i = symbols.index(marker)
        return symbols[: i + 1] + tuple(reversed(symbols[i + 1 :]))

    return AdpEvalAlgebra("edit", sigs, _edit_apply, encode_input=encode)


ADP_EVAL_ALGEBRAS = {"edit": edit_eval_algebra}

ADP_OBJECTIVES = {
    "min": lambda f: frozenset((min(f),)) if f else frozenset(),
    "max": lambda f: frozenset((max(f),)) if f else frozenset(),
    "id": frozenset,
}


class AdpMMonoid(MMonoid):
    """Answer sets filtered through an objective function; ops are right-hand
    side templates evaluated set-wise in an evaluation algebra."""

    name = "adp"

    def __init__(self, eval_algebra, objective="min"):
        if isinstance(eval_algebra, str):
            eval_algebra = ADP_EVAL_ALGEBRAS[eval_algebra]()
        self.eval_algebra = eval_algebra
        self.objective_name = objective
        self.h = ADP_OBJECTIVES[objective]
        self.name = f"adp({eval_algebra.name}, {objective})"

    @property
    def zero(self):
        return AdpValue(None, frozenset())

    def _h(self, sort, values):
        return self.h(values) if sort == ANSWER else frozenset(values)

    def plus(self, a, b):
        if a == BOTTOM or b == BOTTOM:
            return BOTTOM
        if not a.values:
            return b
        if not b.values:
            return a
        if a.sort != b.sort:
            return BOTTOM
        return AdpValue(a.sort, self._h(a.sort, a.values | b.values))

    def template_op(self, template, arg_sorts, target_sort):
        return Op("psi", (template, tuple(arg_sorts), target_sort), len(arg_sorts))

    def _apply(self, op, args):
        if op.tag != "psi":
            return super()._apply(op, args)
        template, arg_sorts, target = op.params
        for a, s in zip(args, arg_sorts):
            if a == BOTTOM:
                return BOTTOM
            if a.values and a.sort != s:
                return BOTTOM
        pools = [sorted(a.values, key=str) for a in args]
        results = set()
        for combo in itertools.product(*pools):

            def ev(t):
                if is_variable(t.label):
                    return combo[variable_index(t.label) - 1]
                return self.eval_algebra.evaluate(
                    t.label, [ev(c) for c in t.children]
                )

            results.add(ev(template))
        values = self._h(target, results)
        if not values:
            return self.zero
        return AdpValue(target, frozenset(values))

    def equals(self, a, b, tol=None):
        return a == b

    def render(self, v):
        if isinstance(v, AdpValue) and v.values:
            return "{" + ", ".join(sorted(str(x) for x in v.values)) + "}"
        return str(v)

    def rule_op(self, rule, nonterminals, text=None):
        template, arg_sorts = _template_of_rhs(
            rule.rhs, nonterminals, self.eval_algebra.signatures
        )
        if is_variable(template.label):
            raise ValueError(f"rule {rule.id}: bare nonterminal right-hand side")
        target = self.eval_algebra.signatures[template.label][1]
        return self.template_op(template, arg_sorts, target)

    def lift(self, sort, raw_values):
        values = self._h(sort, set(raw_values))
        return AdpValue(sort, frozenset(values)) if values else self.zero

    def sample_value(self, rng):
        alg = self.eval_algebra
        if rng.random() < 0.1:
            return BOTTOM if rng.random() < 0.5 else self.zero
        sort = rng.choice((ANSWER, ANSWER, INPUT))
        raw = {alg.sample_carrier(sort, rng) for _ in range(rng.randrange(1, 4))}
        return self.lift(sort, raw)

    def sample_op(self, rng):
        alg = self.eval_algebra
        answer_syms = [
            s for s, (a, t) in alg.signatures.items() if t == ANSWER
        ]
        sym = rng.choice(sorted(answer_syms))
        arg_sorts, target = alg.signatures[sym]
        children, var_sorts = [], []
        for s in arg_sorts:
            if s == INPUT and rng.random() < 0.7:
                children.append(Tree(rng.choice(alg.input_symbols())))
            else:
                var_sorts.append(s)
                children.append(Tree(variable(len(var_sorts))))
        return self.template_op(Tree(sym, tuple(children)), var_sorts, target)


def adp_mmonoid(eval_algebra="edit", objective="min"):
    return AdpMMonoid(eval_algebra, objective)


def _template_of_rhs(rhs, nonterminals, signatures):
    """Replace nonterminal occurrences with numbered variables, left to right,
    and report each variable's sort (the arg sort of its parent position)."""
    counter = [0]
    var_sorts = []

    def walk(t, expected_sort):
        if t.label in nonterminals and not t.children:
            counter[0] += 1
            var_sorts.append(expected_sort)
            return Tree(variable(counter[0]))
        arg_sorts, _ = signatures[t.label]
        if len(arg_sorts) != len(t.children):
            raise ValueError(f"arity mismatch at {t.label!r}")
        return Tree(
            t.label,
            tuple(walk(c, s) for c, s in zip(t.children, arg_sorts)),
        )

    out = walk(rhs, None)
    return out, tuple(var_sorts)


def check_mmonoid_laws(m, rng, samples=300):
    """Sample-based law checking; returns a list of violation descriptions."""
    bad = []

    def note(msg, *vals):
        if len(bad) < 10:
            rendered = ", ".join(m.render(v) for v in vals)
            bad.append(f"{m.name}: {msg} [{rendered}]")

    for _ in range(samples):
        a, b, c = (m.sample_value(rng) for _ in range(3))
        if m.plus(m.plus(a, b), c) != m.plus(a, m.plus(b, c)):
            note("plus not associative", a, b, c)
        if m.plus(a, b) != m.plus(b, a):
            note("plus not commutative", a, b)
        if m.plus(a, m.zero) != a:
            note("zero not neutral", a)
        if m.idempotent and m.plus(a, a) != a:
            note("plus not idempotent", a)

        op = m.sample_op(rng)
        args = [m.sample_value(rng) for _ in range(op.arity)]
        if m.apply(m.null_op(op.arity), args) != m.zero:
            note("null op broken")
        if m.apply(m.identity_op, [a]) != a:
            note("identity op broken", a)
        if op.arity:
            i = rng.randrange(op.arity)
            if m.distributive:
                sum_arg = list(args)
                sum_arg[i] = m.plus(b, c)
                left_arg, right_arg = list(args), list(args)
                left_arg[i], right_arg[i] = b, c
                lhs = m.apply(op, sum_arg)
                rhs = m.plus(m.apply(op, left_arg), m.apply(op, right_arg))
                if lhs != rhs:
                    note(f"op {op} not distributive in arg {i}", lhs, rhs)
            if m.absorbing:
                zero_arg = list(args)
                zero_arg[i] = m.zero
                if m.apply(op, zero_arg) != m.zero:
                    note(f"op {op} not absorbing in arg {i}")
            if m.superior:
                # order derived from plus: x <= y iff x + y == x
                res = m.apply(op, args)
                for x in args:
                    if m.plus(x, res) != x:
                        note(f"op {op} not dominating", x, res)
                lowered = list(args)
                lowered[i] = m.plus(args[i], b)
                res_low = m.apply(op, lowered)
                if m.plus(res_low, m.apply(op, args)) != res_low:
                    note(f"op {op} not monotone in arg {i}")
    return bad


def check_objective(m, rng, samples=300):
    """The objective function must select nonempty subsets, fix the empty set,
    and commute with unions of its own images."""
    bad = []
    alg = m.eval_algebra
    for _ in range(samples):
        f = {alg.sample_carrier(ANSWER, rng) for _ in range(rng.randrange(1, 7))}
        hf = m.h(frozenset(f))
        if not hf or not hf <= frozenset(f):
            bad.append(f"h must pick a nonempty subset of {f}")
        parts = [set() for _ in range(rng.randrange(1, 4))]
        for x in f:
            parts[rng.randrange(len(parts))].add(x)
            if rng.random() < 0.3:
                parts[rng.randrange(len(parts))].add(x)
        covered = set().union(*parts) == f
        if covered:
            merged = frozenset().union(*(m.h(frozenset(p)) for p in parts if p))
            if m.h(frozenset(f)) != m.h(merged):
                bad.append(f"h not union-compatible on {f} via {parts}")
        if len(bad) >= 10:
            break
    if m.h(frozenset()) != frozenset():
        bad.append("h must fix the empty set")
    return bad


def check_bellman(m, rng, samples=300):
    """The objective must commute with set-lifted symbol application."""
    bad = []
    alg = m.eval_algebra
    answer_syms = sorted(
        s for s, (a, t) in alg.signatures.items() if t == ANSWER and a
    )
    for _ in range(samples):
        sym = rng.choice(answer_syms)
        arg_sorts, _ = alg.signatures[sym]
        sets = [
            {alg.sample_carrier(s, rng) for _ in range(rng.randrange(1, 4))}
            for s in arg_sorts
        ]

        def lifted(fs):
            return {
                alg.evaluate(sym, list(combo))
                for combo in itertools.product(*[sorted(f, key=str) for f in fs])
            }

        direct = m.h(frozenset(lifted(sets)))
        filtered = m.h(
            frozenset(
                lifted(
                    [
                        f if s == INPUT else set(m.h(frozenset(f)))
                        for f, s in zip(sets, arg_sorts)
                    ]
                )
            )
        )
        if direct != filtered:
            bad.append(f"{sym}: objective breaks optimal substructure on {sets}")
            if len(bad) >= 10:
                break
    return bad
