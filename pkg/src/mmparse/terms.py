"""Sorted trees with 1-based positions, plus the cycle machinery on label paths."""

import itertools
from dataclasses import dataclass


Position = tuple  # tuple of ints, 1-based; () is the root


class SortedAlphabet:
    """Finite sorted signature: symbol name -> (argument sorts, target sort)."""

    def __init__(self, signatures=()):
        # signatures: iterable of (name, arg_sorts, target) or a dict
        self.signatures = {}
        if isinstance(signatures, dict):
            for name, (args, target) in signatures.items():
                self.signatures[name] = (tuple(args), target)
        else:
            for name, args, target in signatures:
                self.signatures[name] = (tuple(args), target)

    def rank(self, name):
        return len(self.signatures[name][0])

    def arg_sorts(self, name):
        return self.signatures[name][0]

    def target(self, name):
        return self.signatures[name][1]

    def sorts(self):
        out = set()
        for args, target in self.signatures.values():
            out.update(args)
            out.add(target)
        return out

    def max_rank(self):
        return max((len(a) for a, _ in self.signatures.values()), default=0)

    def __contains__(self, name):
        return name in self.signatures

    def __iter__(self):
        return iter(self.signatures)

    def __len__(self):
        return len(self.signatures)

    def __repr__(self):
        return f"SortedAlphabet({self.signatures!r})"


def variable(i):
    """Name of the i-th variable (a reserved nullary namespace, 1-based)."""
    return f"x{i}"


def is_variable(name):
    return len(name) > 1 and name[0] == "x" and name[1:].isdigit()


def variable_index(name):
    return int(name[1:])


@dataclass(frozen=True)
class Tree:
    label: str
    children: tuple = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def positions(self):
        """All positions in preorder; the root is ()."""
        out = [()]
        for i, c in enumerate(self.children, start=1):
            out.extend((i,) + q for q in c.positions())
        return out

    def leaves(self):
        return [p for p in self.positions() if not self.subtree(p).children]

    def subtree(self, p):
        t = self
        for i in p:
            t = t.children[i - 1]
        return t

    def label_at(self, p):
        return self.subtree(p).label

    def replace(self, p, s):
        """The tree with the subtree at p replaced by s."""
        if not p:
            return s
        i = p[0]
        cs = list(self.children)
        cs[i - 1] = cs[i - 1].replace(p[1:], s)
        return Tree(self.label, tuple(cs))

    def height(self):
        if not self.children:
            return 0
        return 1 + max(c.height() for c in self.children)

    def size(self):
        return 1 + sum(c.size() for c in self.children)

    def __str__(self):
        if not self.children:
            return self.label
        return self.label + "(" + ",".join(str(c) for c in self.children) + ")"


def is_prefix(p, q):
    return len(p) <= len(q) and q[: len(p)] == p


def label_sequence(t, p, p2):
    """Labels along the path from p to p2 (inclusive); p must be a prefix of p2."""
    if not is_prefix(p, p2):
        raise ValueError(f"{p} is not a prefix of {p2}")
    return tuple(t.label_at(p2[:i]) for i in range(len(p), len(p2) + 1))


def slice_between(t, p, p2):
    """Subtree at p with the node at p2 replaced by its label over fresh variables."""
    if not is_prefix(p, p2):
        raise ValueError(f"{p} is not a prefix of {p2}")
    rel = p2[len(p) :]
    node = t.subtree(p2)
    stub = Tree(node.label, tuple(Tree(variable(i + 1)) for i in range(len(node.children))))
    return t.subtree(p).replace(rel, stub)


def yield_projection(t, delta):
    """Left-to-right sequence of those leaf labels that are in delta."""
    if not t.children:
        return (t.label,) if t.label in delta else ()
    out = ()
    for c in t.children:
        out += yield_projection(c, delta)
    return out


def sort_of(t, alphabet, var_sorts=None):
    """Sort of a well-sorted tree; raises ValueError if t is ill-sorted."""
    if var_sorts and t.label in var_sorts:
        if t.children:
            raise ValueError(f"variable {t.label} must be a leaf")
        return var_sorts[t.label]
    if t.label not in alphabet:
        raise ValueError(f"unknown symbol {t.label!r}")
    args = alphabet.arg_sorts(t.label)
    if len(args) != len(t.children):
        raise ValueError(
            f"{t.label!r} expects {len(args)} children, got {len(t.children)}"
        )
    for want, c in zip(args, t.children):
        got = sort_of(c, alphabet, var_sorts)
        if got != want:
            raise ValueError(f"child {c.label!r} has sort {got}, expected {want}")
    return alphabet.target(t.label)


# --- cycles in label strings and trees ---------------------------------------
#
# A string is cyclic if some symbol repeats; a cycle additionally starts and
# ends with the same symbol; an elementary cycle is a cycle whose proper
# prefix and proper suffix are both repeat-free.


def is_cyclic_string(s):
    return len(set(s)) < len(s)


def is_elementary_cycle(w):
    return (
        len(w) > 1
        and w[0] == w[-1]
        and not is_cyclic_string(w[:-1])
        and not is_cyclic_string(w[1:])
    )


def elementary_cycles_in(s):
    """All distinct elementary cycles occurring as substrings of s."""
    s = tuple(s)
    found = set()
    for i in range(len(s)):
        # an elementary cycle starting at i ends at the next occurrence of s[i]
        # provided the interior is repeat-free
        seen = {s[i]}
        for j in range(i + 1, len(s)):
            if s[j] == s[i]:
                found.add(s[i : j + 1])
                break
            if s[j] in seen:
                break
            seen.add(s[j])
    return found


def cycle_count(s, w):
    """Maximal c such that s = v0 w v1 ... w vc with w in no vi (greedy matching)."""
    s, w = tuple(s), tuple(w)
    count = 0
    i = 0
    while i + len(w) <= len(s):
        if s[i : i + len(w)] == w:
            count += 1
            i += len(w)
        else:
            i += 1
    return count


def is_k_cyclic(s, w, k):
    """Whether s = v0 w v1 ... w vk (exactly k occurrences) with w in no vi.

    Unlike cycle_count this asks for an exact decomposition: picking k pairwise
    non-overlapping occurrences such that no other occurrence fits in a gap.
    """
    s, w = tuple(s), tuple(w)
    occ = [i for i in range(len(s) - len(w) + 1) if s[i : i + len(w)] == w]
    if k == 0:
        return not occ
    for chosen in itertools.combinations(occ, k):
        if any(b - a < len(w) for a, b in zip(chosen, chosen[1:])):
            continue
        gaps_ok = all(
            any(c <= o < c + len(w) or o <= c < o + len(w) for c in chosen)
            for o in occ
            if o not in chosen
        )
        if gaps_ok:
            return True
    return False


@dataclass(frozen=True)
class CyclicityReport:
    degree: int
    witness_leaf: Position = None
    witness_cycle: tuple = None


def classify_cyclicity(t):
    """Cyclicity degree of t: the maximal cycle count over all root-to-leaf paths."""
    best = CyclicityReport(0)
    for leaf in t.leaves():
        s = label_sequence(t, (), leaf)
        for w in elementary_cycles_in(s):
            c = cycle_count(s, w)
            if c > best.degree:
                best = CyclicityReport(c, leaf, w)
    return best


def _single_cutouts(d, w):
    """All d[d|_p2]_p for position pairs whose label path from p to p2 equals w."""
    out = set()
    k = len(w)
    for p2 in d.positions():
        if len(p2) < k - 1:
            continue
        p = p2[: len(p2) - (k - 1)]
        if label_sequence(d, p, p2) == w:
            out.add(d.replace(p, d.subtree(p2)))
    return out


def cutout_trees(d, w):
    """Transitive closure of cutting the elementary cycle w out of d (d excluded)."""
    w = tuple(w)
    if not is_elementary_cycle(w):
        raise ValueError(f"{w} is not an elementary cycle")
    seen = set()
    frontier = [d]
    while frontier:
        nxt = []
        for t in frontier:
            for t2 in _single_cutouts(t, w):
                if t2 not in seen:
                    seen.add(t2)
                    nxt.append(t2)
        frontier = nxt
    return seen


def cutout_trees_all(d):
    """Transitive closure of cutting out any elementary cycle (d excluded)."""
    seen = set()
    frontier = [d]
    while frontier:
        nxt = []
        for t in frontier:
            cuts = set()
            for leaf in t.leaves():
                for w in elementary_cycles_in(label_sequence(t, (), leaf)):
                    cuts |= _single_cutouts(t, w)
            for t2 in cuts:
                if t2 not in seen:
                    seen.add(t2)
                    nxt.append(t2)
        frontier = nxt
    return seen


# --- term syntax --------------------------------------------------------------
#
# name(child,...) with nesting; label characters are unrestricted except that
# '(' ')' ',' delimit structure only at bracket depth 0, so template labels
# like <x1_1 x2_1, w x2_2> or a[b[x1,*]] pass through unsplit.


def parse_tree(text):
    t, rest = _parse_tree(text, 0)
    if text[rest:].strip():
        raise ValueError(f"trailing input at {rest}: {text[rest:]!r}")
    return t


def _parse_tree(text, i):
    label, i = _parse_label(text, i)
    children = []
    if i < len(text) and text[i] == "(":
        i += 1
        while True:
            c, i = _parse_tree(text, i)
            children.append(c)
            while i < len(text) and text[i].isspace():
                i += 1
            if i >= len(text):
                raise ValueError("unbalanced parentheses")
            if text[i] == ",":
                i += 1
                continue
            if text[i] == ")":
                i += 1
                break
            raise ValueError(f"expected ',' or ')' at {i} in {text!r}")
    return Tree(label, tuple(children)), i


def _parse_label(text, i):
    while i < len(text) and text[i].isspace():
        i += 1
    start = i
    depth = 0
    while i < len(text):
        ch = text[i]
        if ch in "[<":
            depth += 1
        elif ch in "]>":
            depth -= 1
        elif ch in "()," and depth == 0:
            break
        i += 1
    label = text[start:i].strip()
    if not label:
        raise ValueError(f"empty label at {start} in {text!r}")
    return label, i
