"""Command line front-end: parse, intersect, adp, and check subcommands."""

import random
import sys

import click

from .deduction import canonical_deduction
from .engine import (
    IterationLimitError,
    check_closedness,
    extract_intersection,
    mmonoid_parse,
    oracle_parse,
    solve_adp,
)
from .textfmt import GrammarFile, emit_grammar, load_grammar
from .weights import (
    BOTTOM,
    check_bellman,
    check_mmonoid_laws,
    check_objective,
    nbest_mmonoid,
)

OK, NO_PARSE, ERROR, LIMIT = 0, 1, 2, 3


def _fail(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(ERROR)


def _load(path, n=None):
    try:
        gf = load_grammar(path)
        if n is not None:
            if gf.weights_kind != "nbest":
                raise ValueError("--n only applies to @nbest grammars")
            gf.mmonoid = nbest_mmonoid(n)
        return gf
    except (OSError, ValueError, RuntimeError) as e:
        _fail(e)


def _print_item_grammar(ig):
    click.echo(
        f"# {len(ig.items)} items, {len(ig.rules)} rules;"
        f" goal {ig.render_item(ig.goal)}"
    )
    legend = ig.rhs_legend()
    for name in sorted(legend, key=lambda s: int(s[1:])):
        click.echo(f"# {name} = {legend[name]}")
    for r in ig.rules:
        click.echo(ig.render_rule(r))


@click.group()
def main():
    """Weighted parsing over sorted regular tree grammars."""


@main.command()
@click.argument("grammar_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("input_text")
@click.option("--oracle", type=int, default=None, metavar="C",
              help="verify against exhaustive enumeration at cyclicity degree C")
@click.option("--items", is_flag=True, help="print the deduced item grammar")
@click.option("--limit", type=int, default=None,
              help="iteration limit for the value computation")
@click.option("--tolerance", type=float, default=None,
              help="numeric comparison tolerance")
@click.option("--n", type=int, default=None,
              help="override n for @nbest grammars")
def parse(grammar_file, input_text, oracle, items, limit, tolerance, n):
    """Compute the weight of INPUT_TEXT under GRAMMAR_FILE."""
    gf = _load(grammar_file, n)
    try:
        wlm = gf.wlm()
        target = gf.parse_input(input_text)
    except (ValueError, KeyError) as e:
        _fail(e)
    try:
        result = mmonoid_parse(wlm, target, limit=limit, tol=tolerance)
    except IterationLimitError as e:
        click.echo(f"error: values still changing after {e.passes} passes", err=True)
        sys.exit(LIMIT)
    except (ValueError, RuntimeError) as e:
        _fail(e)
    if items:
        _print_item_grammar(result.item_grammar)
    m = wlm.mmonoid
    click.echo(m.render(result.value))
    if oracle is not None:
        try:
            reference = oracle_parse(wlm, target, c=oracle)
        except (ValueError, RuntimeError) as e:
            _fail(e)
        agree = m.equals(result.value, reference, tolerance)
        click.echo(f"oracle: {m.render(reference)} ({'agree' if agree else 'DISAGREE'})")
        if not agree:
            sys.exit(ERROR)
    sys.exit(OK if not m.equals(result.value, m.zero) else NO_PARSE)


@main.command()
@click.argument("grammar_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("input_text")
@click.argument("out_file", type=click.Path(dir_okay=False, writable=True))
@click.option("--limit", type=int, default=None,
              help="iteration limit for the value computation")
def intersect(grammar_file, input_text, out_file, limit):
    """Write the grammar generating exactly the parses of INPUT_TEXT."""
    gf = _load(grammar_file)
    if not gf.grammar.is_normal_form():
        _fail("intersection needs a normal-form grammar (one terminal per rule)")
    try:
        target = gf.parse_input(input_text)
        result = extract_intersection(gf.grammar, gf.algebra, target, limit=limit)
    except IterationLimitError as e:
        click.echo(f"error: values still changing after {e.passes} passes", err=True)
        sys.exit(LIMIT)
    except (ValueError, RuntimeError) as e:
        _fail(e)
    with open(out_file, "w") as f:
        f.write(emit_grammar(GrammarFile(result.grammar, gf.algebra)))
    note = "" if result.collected else " (input not in the language)"
    click.echo(
        f"{len(result.grammar.rules)} rules,"
        f" {len(result.grammar.nonterminals)} nonterminals -> {out_file}{note}"
    )


@main.command()
@click.argument("grammar_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("input_text")
@click.option("--items", is_flag=True, help="print the deduced item grammar")
@click.option("--limit", type=int, default=None,
              help="iteration limit for the value computation")
def adp(grammar_file, input_text, items, limit):
    """Solve the dynamic program declared by an @adp grammar on INPUT_TEXT."""
    gf = _load(grammar_file)
    try:
        problem = gf.adp_problem()
        result = solve_adp(problem, input_text, limit=limit)
    except IterationLimitError as e:
        click.echo(f"error: values still changing after {e.passes} passes", err=True)
        sys.exit(LIMIT)
    except (ValueError, RuntimeError) as e:
        _fail(e)
    if items:
        _print_item_grammar(result.item_grammar)
    value = result.value
    if value == BOTTOM:
        _fail("ill-sorted answer (bottom)")
    if not value.values:
        click.echo("{}")
        sys.exit(NO_PARSE)
    click.echo(", ".join(sorted(str(v) for v in value.values)))


@main.command()
@click.argument("grammar_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=0, help="seed for the sampled law checks")
@click.option("--samples", type=int, default=300, help="samples per law")
@click.option("--closedness", "closedness_c", type=int, default=None, metavar="C",
              help="probe the cycle-stability equation at degree C")
@click.option("--height", type=int, default=None,
              help="enumeration height for the closedness probe")
@click.option("--input", "input_text", default=None,
              help="report whether the item grammar for this input is acyclic")
def check(grammar_file, seed, samples, closedness_c, height, input_text):
    """Validate GRAMMAR_FILE and probe its weight algebra's laws."""
    gf = _load(grammar_file)
    rng = random.Random(seed)
    report = [("grammar shape", gf.grammar.validate())]
    wlm = None
    if gf.mmonoid is not None:
        m = gf.mmonoid
        report.append((f"{m.name} laws", check_mmonoid_laws(m, rng, samples)))
        if gf.weights_kind == "adp":
            report.append(("objective", check_objective(m, rng, samples)))
            report.append(("optimal substructure", check_bellman(m, rng, samples)))
        try:
            wlm = gf.wlm()
            report.append(("rule weights", []))
        except (ValueError, RuntimeError) as e:
            report.append(("rule weights", [str(e)]))
    if closedness_c is not None:
        if wlm is None:
            _fail("the closedness probe needs well-formed rule weights")
        try:
            violations = check_closedness(wlm, closedness_c, height=height)
        except RuntimeError as e:
            _fail(e)
        report.append((
            f"closedness at c={closedness_c}",
            [
                f"tree {d}, cycle {'.'.join(w)}: "
                f"{wlm.mmonoid.render(a)} != {wlm.mmonoid.render(b)}"
                for d, w, a, b in violations
            ],
        ))
    if input_text is not None:
        if wlm is None:
            _fail("the acyclicity probe needs well-formed rule weights")
        try:
            ig = canonical_deduction(wlm, gf.parse_input(input_text))
        except (ValueError, RuntimeError) as e:
            _fail(e)
        cyclic_ok = ig.is_acyclic() or wlm.effective_closedness() is not None
        report.append((
            f"item grammar for {input_text!r}",
            [] if cyclic_ok else
            ["items feed into themselves and the algebra is not known to be"
             " closed; the value iteration may not stabilize"],
        ))
    width = max(len(name) for name, _ in report)
    total = 0
    for name, violations in report:
        click.echo(f"{name:<{width}}  {'ok' if not violations else 'FAIL'}")
        for v in violations[:5]:
            click.echo(f"  - {v}")
        total += len(violations)
    sys.exit(ERROR if total else OK)


if __name__ == "__main__":
    main()
