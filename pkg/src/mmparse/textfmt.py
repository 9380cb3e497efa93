"""Plain-text grammar files: algebra/weight directives, sorted nonterminals, weighted rules."""

import re
import shlex
from dataclasses import dataclass, field

from .languages import CfgAlgebra, LcfrsAlgebra, TagAlgebra, YieldAlgebra, YieldStr
from .rtg import Rule, SortedRtg
from .terms import SortedAlphabet, parse_tree
from .weights import (
    ADP_OBJECTIVES,
    adp_mmonoid,
    bd_mmonoid,
    boolean_mmonoid,
    nbest_mmonoid,
    tropical_mmonoid,
    viterbi_mmonoid,
)

_WT_LINE = re.compile(r"wt\(([^)]+)\)\s*=\s*(.+)")
_LCFRS_VAR = re.compile(r"x\d+_\d+")
_CFG_VAR = re.compile(r"x\d+")


@dataclass
class GrammarFile:
    """A parsed grammar file: the grammar, its language algebra, and (when the
    file declares one) the weight algebra plus per-rule weight texts."""

    grammar: SortedRtg
    algebra: object
    mmonoid: object = None
    weight_texts: dict = field(default_factory=dict)
    weights_kind: str = None

    def wlm(self):
        from .engine import WeightedRtgLm

        if self.mmonoid is None:
            raise ValueError("grammar file declares no weight algebra")
        nts = set(self.grammar.nonterminals.signatures)
        wt = {
            r.id: self.mmonoid.rule_op(r, nts, self.weight_texts.get(r.id))
            for r in self.grammar.rules
        }
        return WeightedRtgLm(self.grammar, self.algebra, self.mmonoid, wt)

    def adp_problem(self):
        from .engine import AdpProblem

        if self.weights_kind != "adp":
            raise ValueError("grammar file does not declare @adp weights")
        return AdpProblem(self.grammar, self.mmonoid, self.algebra)

    def parse_input(self, text):
        if self.algebra.kind == "yield":
            obj = self.algebra.parse_object(
                text, self.grammar.sort(self.grammar.initial)
            )
            encode = getattr(
                getattr(self.mmonoid, "eval_algebra", None), "encode_input", None
            )
            if encode is not None:
                obj = YieldStr(encode(obj.symbols), obj.sort)
            return obj
        return self.algebra.parse_object(text)


def load_grammar(path):
    with open(path) as f:
        return loads_grammar(f.read())


def loads_grammar(text):
    algebra_kind = None
    weights_kind = None
    weight_args = {}
    start = None
    nonterm_decls = []  # (name, sort or None)
    extra_alphabet = set()
    rule_lines = []  # (id, lhs, rhs_text)
    weight_texts = {}

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        rest = line[len(head) :].strip()
        if head == "algebra":
            if algebra_kind is not None:
                raise ValueError("duplicate algebra directive")
            algebra_kind = rest
        elif head.startswith("@"):
            if weights_kind is not None:
                raise ValueError("duplicate weights directive")
            weights_kind, weight_args = _parse_weights_directive(line)
        elif head == "start":
            if start is not None:
                raise ValueError("duplicate start directive")
            start = rest
        elif head == "nonterm":
            # names may be quoted (they can contain spaces); sort after the last ':'
            for decl in shlex.split(rest):
                name, sep, sort = decl.rpartition(":")
                if not sep:
                    name, sort = decl, None
                nonterm_decls.append((name, sort or None))
        elif head == "alphabet":
            extra_alphabet.update(rest.split())
        elif _WT_LINE.fullmatch(line):
            m = _WT_LINE.fullmatch(line)
            rid = m.group(1).strip()
            if rid in weight_texts:
                raise ValueError(f"duplicate weight for rule {rid!r}")
            weight_texts[rid] = m.group(2).strip()
        else:
            rule_lines.append(_parse_rule_line(line, weight_texts))

    if algebra_kind is None:
        raise ValueError("missing algebra directive")
    if start is None:
        raise ValueError("missing start directive")
    if not nonterm_decls:
        raise ValueError("missing nonterm declarations")

    mmonoid = _build_mmonoid(weights_kind, weight_args)
    if algebra_kind == "yield" and weights_kind != "adp":
        raise ValueError("the yield algebra needs an @adp weights directive")

    nts = [name for name, _ in nonterm_decls]
    rules = tuple(
        Rule(rid, lhs, parse_tree(rhs_text)) for rid, lhs, rhs_text in rule_lines
    )

    algebra = _build_algebra(algebra_kind, rules, nts, extra_alphabet, mmonoid)
    nt_sigs = {}
    for name, sort in nonterm_decls:
        if name in nt_sigs:
            raise ValueError(f"duplicate nonterminal {name!r}")
        nt_sigs[name] = ((), _nonterm_sort(algebra_kind, name, sort))

    term_sigs = {}
    nt_set = set(nt_sigs)
    for r in rules:
        for p in r.rhs.positions():
            label = r.rhs.label_at(p)
            if label in nt_set:
                continue
            term_sigs[label] = algebra.symbol_signature(label)

    grammar = SortedRtg(
        SortedAlphabet(nt_sigs), SortedAlphabet(term_sigs), start, rules
    )
    problems = grammar.validate()
    if problems:
        raise ValueError("invalid grammar: " + "; ".join(problems))
    for rid in weight_texts:
        if rid not in grammar.rule_map:
            raise ValueError(f"weight for unknown rule {rid!r}")
    return GrammarFile(grammar, algebra, mmonoid, weight_texts, weights_kind)


def _parse_rule_line(line, weight_texts):
    rid, colon, rest = line.partition(":")
    if not colon or not rid.strip() or " " in rid.strip():
        raise ValueError(f"cannot parse line: {line!r}")
    lhs, arrow, rhs_part = rest.partition("->")
    if not arrow:
        raise ValueError(f"rule {rid.strip()!r} has no '->'")
    rhs_text, wt_text = _split_trailing_weight(rhs_part)
    if wt_text is not None:
        rid_clean = rid.strip()
        if rid_clean in weight_texts:
            raise ValueError(f"duplicate weight for rule {rid_clean!r}")
        weight_texts[rid_clean] = wt_text
    return rid.strip(), lhs.strip(), rhs_text.strip()


def _split_trailing_weight(text):
    """Split 'rhs wt value' at the first bracket-depth-0 'wt' token."""
    depth = 0
    for i, ch in enumerate(text):
        if ch in "<[(":
            depth += 1
        elif ch in ">])":
            depth -= 1
        elif (
            depth == 0
            and text[i : i + 2] == "wt"
            and (i == 0 or text[i - 1].isspace())
            and (i + 2 == len(text) or text[i + 2].isspace())
        ):
            return text[:i], text[i + 2 :].strip()
    return text, None


def _parse_weights_directive(line):
    parts = line.split()
    kind = parts[0][1:]
    args = {}
    for part in parts[1:]:
        key, eq, value = part.partition("=")
        args[key] = value if eq else True
    return kind, args


def _build_mmonoid(kind, args):
    if kind is None:
        return None
    if kind == "tropical":
        return tropical_mmonoid()
    if kind == "viterbi":
        return viterbi_mmonoid()
    if kind in ("boolean", "bool"):
        return boolean_mmonoid()
    if kind == "bd":
        sub1 = args.get("sub1", False)
        return bd_mmonoid(
            cap=int(args.get("cap", 64)),
            require_sub_one=sub1 not in (False, "false", "0", "no"),
        )
    if kind == "nbest":
        return nbest_mmonoid(int(args["n"]))
    if kind == "adp":
        objective = args.get("h", "min")
        if objective not in ADP_OBJECTIVES:
            raise ValueError(f"unknown objective {objective!r}")
        return adp_mmonoid(args.get("eval", "edit"), objective)
    raise ValueError(f"unknown weights directive @{kind}")


def _build_algebra(kind, rules, nts, extra_alphabet, mmonoid):
    if kind == "cfg":
        return CfgAlgebra(_collect_alphabet(rules, nts, _CFG_VAR) | extra_alphabet)
    if kind == "lcfrs":
        return LcfrsAlgebra(_collect_alphabet(rules, nts, _LCFRS_VAR) | extra_alphabet)
    if kind == "tag":
        return TagAlgebra()
    if kind == "yield":
        return YieldAlgebra(mmonoid.eval_algebra.signatures)
    raise ValueError(f"unknown algebra {kind!r}")


def _collect_alphabet(rules, nts, var_pattern):
    """Terminal alphabet symbols mentioned in <...> templates."""
    nts = set(nts)
    out = set()
    for r in rules:
        for p in r.rhs.positions():
            label = r.rhs.label_at(p)
            if label in nts or not label.startswith("<"):
                continue
            body = label[1:-1]
            for tok in body.replace(",", " ").split():
                if tok != "eps" and not var_pattern.fullmatch(tok):
                    out.add(tok)
    return out


def emit_grammar(gf):
    """Render a GrammarFile back to text; loads_grammar(emit_grammar(gf))
    reproduces the grammar, algebra, weight algebra, and weight texts."""
    g, alg = gf.grammar, gf.algebra
    out = [f"algebra {alg.kind}"]
    directive = _emit_weights_directive(gf)
    if directive:
        out.append(directive)
    if alg.kind in ("cfg", "lcfrs") and alg.alphabet:
        out.append("alphabet " + " ".join(sorted(alg.alphabet)))
    out.append(f"start {g.initial}")
    for name in g.nonterminals:
        out.append(f"nonterm {shlex.quote(name)}:{g.nonterminals.target(name)}")
    for r in g.rules:
        line = f"{r.id}: {r.lhs} -> {r.rhs}"
        text = gf.weight_texts.get(r.id)
        if text is not None:
            line += f" wt {text}"
        out.append(line)
    return "\n".join(out) + "\n"


def _emit_weights_directive(gf):
    kind, m = gf.weights_kind, gf.mmonoid
    if kind is None:
        return None
    if kind == "bd":
        return f"@bd cap={m.cap}" + (" sub1" if m.require_sub_one else "")
    if kind == "nbest":
        return f"@nbest n={m.n}"
    if kind == "adp":
        return f"@adp h={m.objective_name} eval={m.eval_algebra.name}"
    return f"@{kind}"


def _nonterm_sort(kind, name, sort):
    if kind == "cfg":
        return sort or CfgAlgebra.SINGLE_SORT
    if kind == "lcfrs":
        if sort is None:
            return "1"
        if not sort.isdigit() or int(sort) < 1:
            raise ValueError(f"nonterminal {name!r}: fan-out must be a positive int")
        return sort
    if kind == "tag":
        if sort not in (TagAlgebra.TREE, TagAlgebra.CONTEXT):
            raise ValueError(f"nonterminal {name!r} needs sort t or c")
        return sort
    if kind == "yield":
        return sort or "a"
    raise ValueError(f"unknown algebra {kind!r}")
