"""Language algebras: interpretations of terminal symbols as operations on
strings, string tuples, trees, or sort-tagged yields, with inverses."""

import itertools
import re
from dataclasses import dataclass

from .terms import Tree, parse_tree

FOOT = "*"


@dataclass(frozen=True)
class Str:
    """A string over the algebra's symbol set (a tuple of symbols)."""

    symbols: tuple = ()

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))

    def __add__(self, other):
        return Str(self.symbols + other.symbols)

    def __str__(self):
        return " ".join(self.symbols) if self.symbols else "eps"


@dataclass(frozen=True)
class StrTuple:
    """A fan-out-n tuple of strings; fan-out 1 is kept distinct from Str on purpose
    (it carries its sort), but compares equal in content via .parts."""

    parts: tuple  # tuple of Str

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class YieldStr:
    """A yield string tagged with its sort (the tag makes sorts recoverable)."""

    symbols: tuple
    sort: str

    def __str__(self):
        body = " ".join(self.symbols) if self.symbols else "eps"
        return f"<{body}, {self.sort}>"


class CfgAlgebra:
    """Strings over an alphabet; symbols <v0 x1 v1 ... xk vk> substitute their
    arguments into the gaps."""

    kind = "cfg"
    SINGLE_SORT = "s"

    def __init__(self, alphabet):
        self.alphabet = frozenset(alphabet)
        self._psym = {}

    def parse_symbol(self, sym):
        # "<a x1 b x2>" -> segments (v0,...,vk); variables must appear in order
        if sym in self._psym:
            return self._psym[sym]
        body = _template_body(sym)
        tokens = body.split()
        segments = [[]]
        k = 0
        for tok in tokens:
            if _is_var(tok):
                k += 1
                if _var_index(tok) != k:
                    raise ValueError(f"variables out of order in {sym!r}")
                segments.append([])
            else:
                if tok not in self.alphabet:
                    raise ValueError(f"{tok!r} not in alphabet, in {sym!r}")
                segments[-1].append(tok)
        self._psym[sym] = tuple(tuple(seg) for seg in segments)
        return self._psym[sym]

    def symbol_signature(self, sym):
        segs = self.parse_symbol(sym)
        k = len(segs) - 1
        return (self.SINGLE_SORT,) * k, self.SINGLE_SORT

    def evaluate(self, sym, args):
        segs = self.parse_symbol(sym)
        out = segs[0]
        for seg, arg in zip(segs[1:], args):
            out = out + arg.symbols + seg
        return Str(out)

    def decompose(self, sym, obj):
        """All argument tuples the symbol maps to obj."""
        segs = self.parse_symbol(sym)
        k = len(segs) - 1
        s = obj.symbols
        out = []
        for gaps in _gap_splits(s, segs):
            out.append(tuple(Str(g) for g in gaps))
        if k == 0:
            # only the exact constant matches
            return [()] if s == segs[0] else []
        return out

    def sort_of(self, obj):
        return self.SINGLE_SORT

    def parse_object(self, text):
        return Str(_tokenize(text, self.alphabet))


def _gap_splits(s, segs):
    """Fill the gaps between fixed segments: all (g1,...,gk) with
    s = segs[0] g1 segs[1] ... gk segs[k]."""
    k = len(segs) - 1
    if k == 0:
        return
    v0 = segs[0]
    if s[: len(v0)] != v0:
        return
    yield from _fill(s, len(v0), segs[1:], ())


def _fill(s, i, rest_segs, acc):
    if not rest_segs:
        if i == len(s):
            yield acc
        return
    seg = rest_segs[0]
    # the next gap can be any length as long as the fixed segment follows it
    for j in range(i, len(s) + 1):
        if s[j : j + len(seg)] == seg:
            yield from _fill(s, j + len(seg), rest_segs[1:], acc + (s[i:j],))


class LcfrsAlgebra:
    """Tuples of strings; sorts are fan-outs. Symbols <w1, ..., wn> use doubly
    indexed variables x{i}_{j} (argument i, component j), each exactly once."""

    kind = "lcfrs"

    def __init__(self, alphabet):
        self.alphabet = frozenset(alphabet)
        self._psym = {}

    def parse_symbol(self, sym):
        if sym in self._psym:
            return self._psym[sym]
        body = _template_body(sym)
        comps = [c.split() for c in body.split(",")]
        if body.strip() == "":
            comps = [[]]
        seen = {}
        for ci, comp in enumerate(comps):
            for tok in comp:
                m = _LCFRS_VAR.fullmatch(tok)
                if m:
                    key = (int(m.group(1)), int(m.group(2)))
                    if key in seen:
                        raise ValueError(f"{tok} occurs twice in {sym!r}")
                    seen[key] = True
                elif tok not in self.alphabet:
                    raise ValueError(f"{tok!r} not in alphabet, in {sym!r}")
        # argument fan-outs: for each i the js must be exactly 1..l_i
        fanouts = {}
        for i, j in seen:
            fanouts[i] = max(fanouts.get(i, 0), j)
        k = max(fanouts, default=0)
        if set(fanouts) != set(range(1, k + 1)):
            raise ValueError(f"argument indices not contiguous in {sym!r}")
        for i in range(1, k + 1):
            js = {j for (i2, j) in seen if i2 == i}
            if js != set(range(1, fanouts[i] + 1)):
                raise ValueError(f"component indices of x{i} not contiguous in {sym!r}")
        self._psym[sym] = (
            tuple(tuple(c) for c in comps),
            tuple(fanouts[i] for i in range(1, k + 1)),
        )
        return self._psym[sym]

    def symbol_signature(self, sym):
        comps, fanouts = self.parse_symbol(sym)
        return tuple(str(f) for f in fanouts), str(len(comps))

    def evaluate(self, sym, args):
        comps, fanouts = self.parse_symbol(sym)
        def subst(tok):
            m = _LCFRS_VAR.fullmatch(tok)
            if m:
                return args[int(m.group(1)) - 1].parts[int(m.group(2)) - 1].symbols
            return (tok,)
        return StrTuple(
            tuple(Str(sum((subst(t) for t in comp), ())) for comp in comps)
        )

    def decompose(self, sym, obj):
        comps, fanouts = self.parse_symbol(sym)
        if len(obj.parts) != len(comps):
            return []
        # assign a span to every variable occurrence, one component at a time
        solutions = [{}]
        for comp, part in zip(comps, obj.parts):
            solutions = [
                {**sol, **binding}
                for sol in solutions
                for binding in _match_component(comp, part.symbols)
            ]
        out = []
        seen = set()
        for sol in solutions:
            args = tuple(
                StrTuple(tuple(Str(sol[(i + 1, j + 1)]) for j in range(f)))
                for i, f in enumerate(fanouts)
            )
            if args not in seen:
                seen.add(args)
                out.append(args)
        return out

    def sort_of(self, obj):
        return str(len(obj.parts))

    def parse_object(self, text):
        text = text.strip()
        if text.startswith("("):
            if not text.endswith(")"):
                raise ValueError(f"unbalanced tuple: {text!r}")
            parts = _split_top(text[1:-1])
            return StrTuple(tuple(Str(_tokenize(p, self.alphabet)) for p in parts))
        return StrTuple((Str(_tokenize(text, self.alphabet)),))


def _match_component(comp, symbols):
    """All ways to read `symbols` as the concatenation of comp's tokens, binding
    each variable token to a span."""
    results = []

    def go(ti, si, binding):
        if ti == len(comp):
            if si == len(symbols):
                results.append(binding)
            return
        tok = comp[ti]
        m = _LCFRS_VAR.fullmatch(tok)
        if m:
            key = (int(m.group(1)), int(m.group(2)))
            for sj in range(si, len(symbols) + 1):
                go(ti + 1, sj, {**binding, key: symbols[si:sj]})
        else:
            if si < len(symbols) and symbols[si] == tok:
                go(ti + 1, si + 1, binding)

    go(0, 0, {})
    return results


class TagAlgebra:
    """Trees and one-hole contexts (foot *). Sorts: 't' trees, 'c' contexts.
    Symbols are bracketed templates over an inner alphabet with leaf variables
    x{i} (trees first) and unary variables z{j} (contexts after), e.g.
    z1[S[x1,VP[V[saw],x2]]]."""

    kind = "tag"
    TREE, CONTEXT = "t", "c"

    def __init__(self):
        self._psym = {}

    def parse_symbol(self, sym):
        if sym in self._psym:
            return self._psym[sym]
        template = parse_tree(sym.replace("[", "(").replace("]", ")"))
        xs, zs, feet = set(), set(), [0]

        def scan(t):
            if _is_var(t.label):
                if t.children:
                    raise ValueError(f"x-variable with children in {sym!r}")
                xs.add(_var_index(t.label))
            elif _is_zvar(t.label):
                if len(t.children) != 1:
                    raise ValueError(f"z-variable needs exactly one child in {sym!r}")
                zs.add(_zvar_index(t.label))
                scan(t.children[0])
            else:
                if t.label == FOOT:
                    feet[0] += 1
                for c in t.children:
                    scan(c)

        scan(template)
        if xs != set(range(1, len(xs) + 1)) or zs != set(range(1, len(zs) + 1)):
            raise ValueError(f"variable indices not contiguous in {sym!r}")
        if feet[0] > 1:
            raise ValueError(f"more than one foot in {sym!r}")
        self._psym[sym] = (template, len(xs), len(zs), feet[0] == 1)
        return self._psym[sym]

    def symbol_signature(self, sym):
        _, m, l, has_foot = self.parse_symbol(sym)
        return (self.TREE,) * m + (self.CONTEXT,) * l, (
            self.CONTEXT if has_foot else self.TREE
        )

    def evaluate(self, sym, args):
        template, m, l, _ = self.parse_symbol(sym)
        trees, contexts = args[:m], args[m:]

        def build(t):
            if _is_var(t.label):
                return trees[_var_index(t.label) - 1]
            if _is_zvar(t.label):
                ctx = contexts[_zvar_index(t.label) - 1]
                return _plug(ctx, build(t.children[0]))
            return Tree(t.label, tuple(build(c) for c in t.children))

        return build(template)

    def decompose(self, sym, obj):
        template, m, l, _ = self.parse_symbol(sym)
        out, seen = [], set()
        for binding in self._match(template, obj):
            args = tuple(binding[("x", i)] for i in range(1, m + 1)) + tuple(
                binding[("z", j)] for j in range(1, l + 1)
            )
            if args in seen:
                continue
            seen.add(args)
            # sort check: x-args must be trees, z-args one-foot contexts; the
            # matcher can produce stray feet when obj is itself a context
            if any(self.sort_of(a) != self.TREE for a in args[:m]):
                continue
            if any(
                sum(1 for p in a.positions() if a.label_at(p) == FOOT) != 1
                for a in args[m:]
            ):
                continue
            if self.evaluate(sym, args) == obj:
                out.append(args)
        return out

    def _match(self, tnode, obj):
        """Match a template node against an object subtree, yielding bindings."""
        if _is_var(tnode.label):
            yield {("x", _var_index(tnode.label)): obj}
            return
        if _is_zvar(tnode.label):
            # the context is any slice from here down to a chosen position
            for p in obj.positions():
                ctx = obj.replace(p, Tree(FOOT))
                for sub in self._match(tnode.children[0], obj.subtree(p)):
                    yield {**sub, ("z", _zvar_index(tnode.label)): ctx}
            return
        if tnode.label != obj.label or len(tnode.children) != len(obj.children):
            return
        partials = [{}]
        for tc, oc in zip(tnode.children, obj.children):
            partials = [
                {**acc, **b} for acc in partials for b in self._match(tc, oc)
            ]
            if not partials:
                return
        yield from partials

    def sort_of(self, obj):
        feet = sum(1 for p in obj.positions() if obj.label_at(p) == FOOT)
        return self.CONTEXT if feet else self.TREE

    def parse_object(self, text):
        return parse_tree(text.replace("[", "(").replace("]", ")"))


def _plug(context, tree):
    """Replace the unique foot of a context."""
    for p in context.positions():
        if context.label_at(p) == FOOT:
            return context.replace(p, tree)
    raise ValueError("context has no foot")


class YieldAlgebra:
    """Sort-tagged strings; a nullary symbol yields itself, anything else
    concatenates its arguments' yields."""

    kind = "yield"

    def __init__(self, signatures):
        # signatures: symbol -> (arg sorts, target sort); nullaries form Delta_0
        self.alphabet = SortedAlphabetView(dict(signatures))

    def symbol_signature(self, sym):
        return self.alphabet.signatures[sym]

    def evaluate(self, sym, args):
        arg_sorts, target = self.symbol_signature(sym)
        if not arg_sorts:
            return YieldStr((sym,), target)
        return YieldStr(sum((a.symbols for a in args), ()), target)

    def decompose(self, sym, obj):
        arg_sorts, target = self.symbol_signature(sym)
        if obj.sort != target:
            return []
        if not arg_sorts:
            return [()] if obj.symbols == (sym,) else []
        out = []
        for split in _compositions(obj.symbols, len(arg_sorts)):
            out.append(tuple(YieldStr(w, s) for w, s in zip(split, arg_sorts)))
        return out

    def sort_of(self, obj):
        return obj.sort

    def parse_object(self, text, sort=None):
        nullary = {s for s, (a, _) in self.alphabet.signatures.items() if not a}
        return YieldStr(_tokenize(text, nullary), sort)


@dataclass
class SortedAlphabetView:
    signatures: dict


def _compositions(s, k):
    """All ways to split tuple s into k (possibly empty) consecutive parts."""
    if k == 0:
        if not s:
            yield ()
        return
    for cut in itertools.combinations(range(len(s) + 1), k - 1):
        bounds = (0,) + cut + (len(s),)
        yield tuple(s[bounds[i] : bounds[i + 1]] for i in range(k))


def factors(alg, obj, symbols, cap=100_000):
    """Everything reachable from obj by repeatedly taking components of inverse
    images under the given symbols (obj itself included)."""
    seen = {obj}
    frontier = [obj]
    while frontier:
        nxt = []
        for a in frontier:
            for sym in symbols:
                for args in alg.decompose(sym, a):
                    for b in args:
                        if b not in seen:
                            seen.add(b)
                            nxt.append(b)
                            if len(seen) > cap:
                                raise RuntimeError(
                                    f"more than {cap} factors; not finitely decomposable?"
                                )
        frontier = nxt
    return seen


def evaluate_rhs(alg, rhs, nonterminals, args):
    """Value of a rule's right-hand side: terminal nodes evaluate in the algebra,
    nonterminal leaves consume the argument values left to right."""
    it = iter(args)

    def walk(t):
        if t.label in nonterminals and not t.children:
            return next(it)
        return alg.evaluate(t.label, tuple(walk(c) for c in t.children))

    return walk(rhs)


def _template_body(sym):
    sym = sym.strip()
    if not (sym.startswith("<") and sym.endswith(">")):
        raise ValueError(f"template symbol must be <...>: {sym!r}")
    body = sym[1:-1]
    return "" if body.strip() in ("", "eps") else body


_LCFRS_VAR = re.compile(r"x(\d+)_(\d+)")


def _is_var(tok):
    return re.fullmatch(r"x\d+", tok) is not None


def _var_index(tok):
    return int(tok[1:])


def _is_zvar(tok):
    return re.fullmatch(r"z\d+", tok) is not None


def _zvar_index(tok):
    return int(tok[1:])


def _tokenize(text, alphabet):
    """Whitespace-separated symbols; if that fails and every character is a
    symbol, read character-wise (handy for letter alphabets)."""
    text = text.strip()
    if text in ("", "eps"):
        return ()
    words = tuple(text.split())
    if all(w in alphabet for w in words):
        return words
    chars = tuple(ch for ch in text if not ch.isspace())
    if all(ch in alphabet for ch in chars):
        return chars
    bad = [w for w in words if w not in alphabet]
    raise ValueError(f"symbols not in alphabet: {bad}")


def _split_top(text):
    """Split on commas that are not nested in parentheses or brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([<":
            depth += 1
        elif ch in ")]>":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]
