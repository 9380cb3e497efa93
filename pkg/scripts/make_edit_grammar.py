"""Generate the full-alphabet edit-distance grammar file."""

import argparse
import pathlib
import string

HEADER = """\
# Minimum edit distance as a dynamic programming problem over sort-tagged
# yields: parsing "u$v" aligns u (read left of each symbol) against v (read
# right). Generated by scripts/make_edit_grammar.py; do not edit by hand.
#   mmparse adp grammars/edit_distance.grm 'kitten$sitting'
algebra yield
@adp h=min eval=edit
start A

nonterm A:a
"""


def rules(letters):
    yield "nil: A -> nil($)"
    for k in letters:
        yield f"del_{k}: A -> delete({k},A)"
    for k in letters:
        yield f"ins_{k}: A -> insert(A,{k})"
    for k in letters:
        for s in letters:
            yield f"rep_{k}_{s}: A -> replace({k},A,{s})"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "out",
        nargs="?",
        default=pathlib.Path(__file__).resolve().parents[1]
        / "grammars"
        / "edit_distance.grm",
        type=pathlib.Path,
    )
    args = ap.parse_args()
    body = "\n".join(rules(string.ascii_lowercase))
    args.out.write_text(HEADER + "\n" + body + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
