import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamlogic.errors import ParseError
from teamlogic.formulas import (
    NC,
    NCC,
    And,
    Const,
    Dep,
    Eq,
    Exists,
    Forall,
    GenDep,
    Incl,
    Indep,
    Neq,
    Or,
    Var,
    classify,
    free_vars,
    gendep_defining_formula,
    nc_defining_formula,
    parse,
    print_formula,
)


class TestParse:
    def test_dep(self):
        assert parse("dep(m1 m2, o1 o2)") == Dep(("m1", "m2"), ("o1", "o2"))

    def test_constancy(self):
        assert parse("dep(, l)") == Dep((), ("l",))

    def test_conditional_independence(self):
        assert parse("o1 _||_{m1} m2") == Indep(("o1",), ("m1",), ("m2",))

    def test_simple_independence(self):
        assert parse("m1 m2 _||_ l") == Indep(("m1", "m2"), (), ("l",))

    def test_quantifier_scope_is_greedy(self):
        f = parse("E l . dep(m1 l, o1) & dep(m2 l, o2)")
        assert f == Exists("l", And(Dep(("m1", "l"), ("o1",)), Dep(("m2", "l"), ("o2",))))

    def test_inclusion(self):
        assert parse("m1 v1 <= m1 o1") == Incl(("m1", "v1"), ("m1", "o1"))

    def test_gendep(self):
        assert parse("dep((m1; m2), (v1; v2))") == GenDep(("m1",), ("m2",), ("v1",), ("v2",))

    def test_nc_and_ncc(self):
        assert parse("nc(x1 x2; y)") == NC(("x1", "x2"), "y")
        assert parse("ncc(m1 m2 m3 m4)") == NCC(("m1", "m2", "m3", "m4"))

    def test_literals(self):
        assert parse('x = "a"') == Eq(Var("x"), Const("a"))
        assert parse("x != 0") == Neq(Var("x"), Const(0))
        assert parse('"0" = x') == Eq(Const("0"), Var("x"))

    def test_precedence(self):
        f = parse("x = 0 & y = 1 | z = 2")
        assert isinstance(f, Or) and isinstance(f.lhs, And)

    def test_parenthesized_quantifier(self):
        f = parse("(E x . x = 0) & y = 1")
        assert isinstance(f, And) and isinstance(f.lhs, Exists)

    def test_forall(self):
        assert parse("A x . dep(x, y)") == Forall("x", Dep(("x",), ("y",)))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse("dep(m1,")
        assert err.value.line == 1 and err.value.column >= 7

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ParseError):
            parse("x y <= z")

    def test_gendep_arity_mismatch(self):
        with pytest.raises(ParseError):
            parse("dep((a; b c), (d; e))")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("dep(x, y) dep(y, z)")


class TestFreeVars:
    def test_atom(self):
        assert free_vars(Dep(("m1", "l"), ("o1",))) == {"m1", "l", "o1"}

    def test_binding(self):
        assert free_vars(Exists("l", Dep(("m1", "l"), ("o1",)))) == {"m1", "o1"}

    def test_ncc(self):
        assert free_vars(NCC(("m1", "m2", "m3", "m4"))) == {"m1", "m2", "m3", "m4"}

    def test_literal_constants_have_no_vars(self):
        assert free_vars(parse('x = "a"')) == {"x"}


class TestClassify:
    def test_strongdet_is_fo_dep(self):
        from teamlogic.properties import PropertyName, property_formula

        frag = classify(property_formula(PropertyName.STRONG_DET_H, 3))
        assert frag.is_fo_dep and not frag.uses_or

    def test_noncontext_uses_inclusion_and_exists(self):
        from teamlogic.properties import PropertyName, property_formula

        frag = classify(property_formula(PropertyName.NON_CONTEXT_E, 2))
        assert frag.uses_inclusion and frag.uses_exists and frag.uses_extended_atoms
        assert not frag.is_fo_dep

    def test_bare_literal(self):
        frag = classify(parse("x = y"))
        assert frag.is_fo_dep and not any(
            (frag.uses_independence, frag.uses_inclusion, frag.uses_or,
             frag.uses_exists, frag.uses_forall, frag.uses_extended_atoms)
        )

    def test_defining_formulas_are_fo_dep(self):
        g = gendep_defining_formula(GenDep(("x1",), ("x2",), ("y1",), ("y2",)))
        n = nc_defining_formula(NC(("x1", "x2"), "y"))
        assert classify(g).is_fo_dep and classify(n).is_fo_dep


class TestDefiningFormulas:
    def test_gendep_shape(self):
        f = gendep_defining_formula(GenDep(("a",), ("b",), ("c",), ("d",)))
        text = print_formula(f)
        assert text.count("E u") == 3 and text.count("A ") == 4
        assert text.count("dep(") == 3

    def test_nc_uses_fresh_names(self):
        f = nc_defining_formula(NC(("z1", "w1", "u1"), "y"))
        bound = free_vars(f)
        assert bound == {"z1", "w1", "u1", "y"}


# round-trip property

variables = st.sampled_from(["x", "y", "z", "m1", "o1", "l", "w2"])
varlists = st.lists(variables, min_size=1, max_size=3).map(tuple)
terms = st.one_of(
    variables.map(Var),
    st.integers(-3, 3).map(Const),
    st.sampled_from(["a", "b", "0", "lam1"]).map(Const),
)

atoms = st.one_of(
    st.tuples(terms, terms).map(lambda p: Eq(*p)),
    st.tuples(terms, terms).map(lambda p: Neq(*p)),
    st.tuples(st.one_of(st.just(()), varlists), varlists).map(lambda p: Dep(*p)),
    st.tuples(varlists, varlists, varlists).map(lambda p: Indep(p[0], p[1], p[2])),
    st.tuples(varlists, st.one_of(st.just(()), varlists), varlists).map(
        lambda p: Indep(p[0], p[1], p[2])
    ),
    st.integers(1, 3).flatmap(
        lambda k: st.tuples(
            st.lists(variables, min_size=k, max_size=k).map(tuple),
            st.lists(variables, min_size=k, max_size=k).map(tuple),
        ).map(lambda p: Incl(*p))
    ),
    st.integers(1, 2).flatmap(
        lambda k: st.tuples(
            *([st.lists(variables, min_size=k, max_size=k).map(tuple)] * 2),
            st.lists(variables, min_size=1, max_size=2).map(tuple),
            st.lists(variables, min_size=1, max_size=2).map(tuple),
        )
    ).filter(lambda t: len(t[2]) == len(t[3])).map(lambda t: GenDep(*t)),
    st.tuples(varlists, variables).map(lambda p: NC(*p)),
    varlists.map(NCC),
)


def formulas(depth: int):
    if depth == 0:
        return atoms
    sub = formulas(depth - 1)
    return st.one_of(
        atoms,
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(sub, sub).map(lambda p: Or(*p)),
        st.tuples(variables, sub).map(lambda p: Exists(*p)),
        st.tuples(variables, sub).map(lambda p: Forall(*p)),
    )


@given(formulas(3))
@settings(max_examples=300)
def test_roundtrip_parse_print(f):
    assert parse(print_formula(f)) == f


@given(formulas(2))
@settings(max_examples=100)
def test_print_parse_print_is_stable(f):
    text = print_formula(f)
    assert print_formula(parse(text)) == text


@given(st.text(alphabet='depncxyzmol123 _|&()=!<>{}.,;"EA', max_size=40))
@settings(max_examples=400)
def test_parser_rejects_garbage_gracefully(text):
    # arbitrary input either parses or raises ParseError; never crashes
    try:
        parse(text)
    except ParseError:
        pass


@given(formulas(2), st.integers(0, 2))
@settings(max_examples=60)
def test_whitespace_insensitivity(f, style):
    text = print_formula(f)
    if style == 1:
        text = text.replace(" ", "  ")
    elif style == 2:
        text = text.replace(" & ", " &\n  ").replace(" | ", "\n| ")
    assert parse(text) == f
