"""Language algebras: strings, string tuples, trees with contexts, sorted yields."""

import pytest
from hypothesis import given, strategies as st

from mmparse.languages import (
    CfgAlgebra,
    LcfrsAlgebra,
    Str,
    StrTuple,
    TagAlgebra,
    YieldAlgebra,
    YieldStr,
    evaluate_rhs,
    factors,
)
from mmparse.terms import Tree, parse_tree
from mmparse.weights import edit_eval_algebra


def t(text):
    return parse_tree(text)


class TestCfg:
    alg = CfgAlgebra(("a", "b"))

    def test_parse_symbol_segments(self):
        assert self.alg.parse_symbol("<a x1 b x2>") == (("a",), ("b",), ())
        assert self.alg.parse_symbol("<a b>") == (("a", "b"),)
        assert self.alg.parse_symbol("<eps>") == ((),)

    def test_parse_symbol_rejects(self):
        with pytest.raises(ValueError):
            self.alg.parse_symbol("<x2 x1>")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("<c>")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("a b")

    def test_signature(self):
        assert self.alg.symbol_signature("<a x1 b x2>") == (("s", "s"), "s")
        assert self.alg.symbol_signature("<a>") == ((), "s")

    def test_evaluate(self):
        got = self.alg.evaluate("<a x1 b>", [Str(("b", "a"))])
        assert got == Str(("a", "b", "a", "b"))

    def test_decompose_counts_splits(self):
        args = self.alg.decompose("<x1 x2>", Str(("a", "b")))
        assert len(args) == 3
        assert (Str(()), Str(("a", "b"))) in args
        assert (Str(("a",)), Str(("b",))) in args

    def test_decompose_constant(self):
        assert self.alg.decompose("<a>", Str(("a",))) == [()]
        assert self.alg.decompose("<a>", Str(("b",))) == []

    def test_decompose_anchored(self):
        assert self.alg.decompose("<a x1>", Str(("b", "a"))) == []
        assert self.alg.decompose("<a x1>", Str(("a", "b"))) == [(Str(("b",)),)]

    def test_parse_object(self):
        assert self.alg.parse_object("a b") == Str(("a", "b"))
        assert self.alg.parse_object("ab") == Str(("a", "b"))
        assert self.alg.parse_object("") == Str(())
        with pytest.raises(ValueError):
            self.alg.parse_object("a c")

    @given(
        st.sampled_from(("<x1>", "<a x1>", "<x1 b>", "<a x1 b>", "<x1 x2>", "<x1 a x2>")),
        st.lists(st.text("ab", max_size=3), min_size=2, max_size=2),
    )
    def test_decompose_inverts_evaluate(self, sym, raw):
        k = len(self.alg.parse_symbol(sym)) - 1
        args = tuple(Str(tuple(s)) for s in raw[:k])
        obj = self.alg.evaluate(sym, args)
        inverses = self.alg.decompose(sym, obj)
        assert args in inverses
        for back in inverses:
            assert self.alg.evaluate(sym, back) == obj


class TestLcfrs:
    alg = LcfrsAlgebra(("zag", "helpen", "lezen", "Jan", "Piet", "Marie"))

    def test_parse_symbol(self):
        comps, fanouts = self.alg.parse_symbol("<x1_1 x2_1, helpen x2_2>")
        assert comps == (("x1_1", "x2_1"), ("helpen", "x2_2"))
        assert fanouts == (1, 2)

    def test_signature_is_fanouts(self):
        assert self.alg.symbol_signature("<x1_1 x2_1, helpen x2_2>") == (("1", "2"), "2")
        assert self.alg.symbol_signature("<Jan>") == ((), "1")

    def test_parse_symbol_rejects(self):
        with pytest.raises(ValueError):
            self.alg.parse_symbol("<x1_1 x1_1>")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("<x2_1>")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("<x1_2>")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("<boem>")

    def test_cross_serial_evaluation(self):
        lezen = self.alg.evaluate("<x1_1, lezen>", [StrTuple((Str(("Marie",)),))])
        assert lezen == StrTuple((Str(("Marie",)), Str(("lezen",))))
        helpen = self.alg.evaluate(
            "<x1_1 x2_1, helpen x2_2>", [StrTuple((Str(("Piet",)),)), lezen]
        )
        assert helpen == StrTuple(
            (Str(("Piet", "Marie")), Str(("helpen", "lezen")))
        )
        full = self.alg.evaluate(
            "<x1_1 x2_1 zag x2_2>", [StrTuple((Str(("Jan",)),)), helpen]
        )
        assert full == StrTuple(
            (Str(("Jan", "Piet", "Marie", "zag", "helpen", "lezen")),)
        )

    def test_decompose_inverts_evaluate(self):
        args = (
            StrTuple((Str(("Jan",)),)),
            StrTuple((Str(("Piet", "Marie")), Str(("helpen", "lezen")))),
        )
        obj = self.alg.evaluate("<x1_1 x2_1 zag x2_2>", list(args))
        inverses = self.alg.decompose("<x1_1 x2_1 zag x2_2>", obj)
        assert args in inverses
        for back in inverses:
            assert self.alg.evaluate("<x1_1 x2_1 zag x2_2>", list(back)) == obj

    def test_decompose_wrong_fanout(self):
        assert self.alg.decompose("<x1_1, lezen>", StrTuple((Str(("Jan",)),))) == []

    def test_parse_object(self):
        assert self.alg.parse_object("Jan zag") == StrTuple((Str(("Jan", "zag")),))
        assert self.alg.parse_object("(Jan, zag lezen)") == StrTuple(
            (Str(("Jan",)), Str(("zag", "lezen")))
        )


SAW = "z1[S[x1,VP[V[saw],x2]]]"


class TestTag:
    alg = TagAlgebra()

    def test_signature(self):
        assert self.alg.symbol_signature(SAW) == (("t", "t", "c"), "t")
        assert self.alg.symbol_signature("NP[N[Mary]]") == ((), "t")
        assert self.alg.symbol_signature("S[Adv[yesterday],*]") == ((), "c")
        assert self.alg.symbol_signature("NP[x1,N[man]]") == (("t",), "t")

    def test_parse_symbol_rejects(self):
        with pytest.raises(ValueError):
            self.alg.parse_symbol("A[*,B[*]]")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("z1[a,b]")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("A[x1[b]]")
        with pytest.raises(ValueError):
            self.alg.parse_symbol("A[x2]")

    def test_sort_of(self):
        assert self.alg.sort_of(t("S(NP)")) == "t"
        assert self.alg.sort_of(self.alg.parse_object("S[Adv[yesterday],*]")) == "c"

    def test_adjunction(self):
        mary = self.alg.parse_object("NP[N[Mary]]")
        man = self.alg.evaluate(
            "NP[x1,N[man]]", [self.alg.parse_object("D[a]")]
        )
        ctx = self.alg.parse_object("S[Adv[yesterday],*]")
        got = self.alg.evaluate(SAW, [mary, man, ctx])
        assert got == self.alg.parse_object(
            "S[Adv[yesterday],S[NP[N[Mary]],VP[V[saw],NP[D[a],N[man]]]]]"
        )

    def test_decompose_inverts_evaluate(self):
        mary = self.alg.parse_object("NP[N[Mary]]")
        ctx = self.alg.parse_object("S[Adv[yesterday],*]")
        obj = self.alg.evaluate(SAW, [mary, mary, ctx])
        inverses = self.alg.decompose(SAW, obj)
        assert (mary, mary, ctx) in inverses
        for back in inverses:
            assert self.alg.evaluate(SAW, list(back)) == obj

    def test_decompose_requires_proper_sorts(self):
        # every decomposition of a tree must bind trees to x and contexts to z
        obj = self.alg.parse_object("S[NP[N[Mary]],VP[V[saw],NP[N[Mary]]]]")
        for args in self.alg.decompose(SAW, obj):
            assert self.alg.sort_of(args[0]) == "t"
            assert self.alg.sort_of(args[2]) == "c"


class TestYield:
    alg = YieldAlgebra(edit_eval_algebra("ab").signatures)

    def test_nullary_yields_itself(self):
        assert self.alg.evaluate("a", []) == YieldStr(("a",), "i")
        assert self.alg.evaluate("$", []) == YieldStr(("$",), "i")

    def test_concatenation(self):
        nil = self.alg.evaluate("nil", [self.alg.evaluate("$", [])])
        assert nil == YieldStr(("$",), "a")
        got = self.alg.evaluate("delete", [self.alg.evaluate("a", []), nil])
        assert got == YieldStr(("a", "$"), "a")

    def test_decompose_respects_sorts(self):
        obj = YieldStr(("a", "$"), "a")
        args = self.alg.decompose("delete", obj)
        assert (YieldStr(("a",), "i"), YieldStr(("$",), "a")) in args
        assert len(args) == 3
        assert self.alg.decompose("delete", YieldStr(("a", "$"), "i")) == []
        assert self.alg.decompose("a", YieldStr(("a",), "i")) == [()]

    def test_parse_object(self):
        assert self.alg.parse_object("ab$", sort="a") == YieldStr(("a", "b", "$"), "a")
        assert self.alg.parse_object("", sort="a") == YieldStr((), "a")


class TestFactors:
    def test_contains_target_and_is_decompose_closed(self):
        alg = CfgAlgebra(("a", "b"))
        symbols = ["<a x1 b>", "<a b>"]
        target = Str(("a", "a", "b", "b"))
        out = factors(alg, target, symbols)
        assert target in out
        for f in out:
            for sym in symbols:
                for args in alg.decompose(sym, f):
                    for b in args:
                        assert b in out

    def test_cap(self):
        alg = CfgAlgebra(("a",))
        with pytest.raises(RuntimeError):
            factors(alg, Str(("a",) * 12), ["<x1 x2>", "<a>"], cap=10)


class TestEvaluateRhs:
    def test_nonterminal_leaves_consume_args(self):
        alg = CfgAlgebra(("a", "b"))
        rhs = t("<a x1>(N)")
        assert evaluate_rhs(alg, rhs, {"N"}, (Str(("b",)),)) == Str(("a", "b"))

    def test_nested_templates(self):
        alg = CfgAlgebra(("a", "b"))
        rhs = t("<x1 x2>(<a>,<x1>(N))")
        got = evaluate_rhs(alg, rhs, {"N"}, (Str(("b", "b")),))
        assert got == Str(("a", "b", "b"))

    def test_left_to_right_order(self):
        alg = CfgAlgebra(("a", "b"))
        rhs = t("<x1 x2>(N,M)")
        got = evaluate_rhs(alg, rhs, {"N", "M"}, (Str(("a",)), Str(("b",))))
        assert got == Str(("a", "b"))
