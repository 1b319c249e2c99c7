"""
Tests for the first-order syntax module
Rendering, parsing, length and substitution
"""
import pytest
from hypothesis import given, settings, strategies as st

from exceptions import ArityError, FormulaSyntaxError
from fo_syntax import (E, And, Eq, Exists, Forall, Implies, Inv, Mul, Neq, Not,
                       Or, Var, all_vars, free_vars, indexed_length,
                       is_sentence, length, parse, parse_term, render,
                       substitute, walk)

terms = st.recursive(
    st.one_of(st.just(E), st.builds(Var, st.integers(0, 5))),
    lambda inner: st.one_of(st.builds(Mul, inner, inner), st.builds(Inv, inner)),
    max_leaves=5,
)

formulas = st.recursive(
    st.builds(Eq, terms, terms),
    lambda inner: st.one_of(
        st.builds(Not, inner),
        st.lists(inner, min_size=1, max_size=3).map(lambda parts: And(tuple(parts))),
        st.lists(inner, min_size=1, max_size=3).map(lambda parts: Or(tuple(parts))),
        st.builds(Implies, inner, inner),
        st.builds(Forall, st.integers(0, 5), inner),
        st.builds(Exists, st.integers(0, 5), inner),
    ),
    max_leaves=8,
)


def test_render_smallest_equation():
    assert render(Eq(Var(0), E)) == "(= v0 e)"


def test_render_tautology_shape():
    assert render(Forall(0, Eq(Var(0), Var(0)))) == "(forall v0 (= v0 v0))"


def test_parse_equation():
    assert parse("(= v0 e)") == Eq(Var(0), E)


def test_parse_all_connectives():
    text = "(exists v1 (and (not (= v1 e)) (or (= v1 v2) (=> (= v1 v1) (forall v3 (= (* v3 (inv v3)) e))))))"
    f = parse(text)
    assert render(f) == text
    assert free_vars(f) == {2}


def test_parse_comments_and_whitespace():
    f = parse("; identity law\n(forall v0\n  (= (* v0 e) v0)) ; trailing\n")
    assert f == Forall(0, Eq(Mul(Var(0), E), Var(0)))


def test_unbalanced_input_reports_end_of_input():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("(forall v0")
    assert info.value.position == len("(forall v0")
    assert info.value.found is None
    assert "end-of-input" in str(info.value)


def test_unknown_connective_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("(xor (= v0 e) (= v1 e))")
    assert info.value.position == 1
    assert info.value.found == "xor"


def test_trailing_tokens_rejected():
    with pytest.raises(FormulaSyntaxError):
        parse("(= v0 e) (= v1 e)")


def test_bad_variable_after_quantifier():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("(forall x (= x e))")
    assert info.value.found == "x"


@pytest.mark.parametrize("text", [
    "(= (* v0) v1)",
    "(= (inv) v0)",
    "(= (inv v0 v1) e)",
    "(= (* v0 v1 v2) e)",
    "(= v0)",
])
def test_arity_errors(text):
    with pytest.raises(ArityError):
        parse(text)


def test_parse_term():
    assert parse_term("(inv (* v1 e))") == Inv(Mul(Var(1), E))


def test_length_of_smallest_equation():
    report = length(Eq(Var(0), E))
    assert report.symbol_count == 3
    assert report.quantifier_count == 0
    assert report.variable_count == 1
    assert report.depth == 2


def test_length_counts_quantifier_as_one_symbol():
    report = length(Forall(0, Eq(Var(0), Var(0))))
    assert report.symbol_count == 4
    assert report.quantifier_count == 1
    assert report.variable_count == 1


def test_indexed_length_charges_index_bits():
    # v5 costs 3 binary digits
    assert indexed_length(Eq(Var(5), E)) == 5
    assert indexed_length(Eq(Var(0), E)) == 3


def test_neq_is_negated_equation():
    assert Neq(Var(0), E) == Not(Eq(Var(0), E))


def test_and_or_flatten_and_reject_empty():
    inner = And((Eq(Var(0), E), Eq(Var(1), E)))
    assert len(And((inner, Eq(Var(2), E))).parts) == 3
    assert len(Or((Or((Eq(Var(0), E),)), Eq(Var(1), E))).parts) == 2
    with pytest.raises(ValueError):
        And(())
    with pytest.raises(ValueError):
        Or(())


def test_substitute_free_variable():
    assert substitute(Eq(Var(0), E), 0, Var(7)) == Eq(Var(7), E)


def test_substitute_under_shadowing_binder():
    f = Forall(0, Eq(Var(0), E))
    assert substitute(f, 0, Var(7)) == f


def test_substitute_renames_capturing_binder():
    f = Exists(1, Eq(Var(0), Var(1)))
    result = substitute(f, 0, Var(1))
    assert isinstance(result, Exists)
    assert result.var != 1
    assert result.body == Eq(Var(1), Var(result.var))
    assert free_vars(result) == {1}


def test_substitute_closed_term_makes_sentence():
    f = Forall(1, Eq(Mul(Var(0), Var(1)), Var(1)))
    assert not is_sentence(f)
    assert is_sentence(substitute(f, 0, E))


@settings(max_examples=1000, deadline=None)
@given(formulas)
def test_round_trip(f):
    assert parse(render(f)) == f


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_strict_subformulas_are_shorter(f):
    total = length(f).symbol_count
    for sub in list(walk(f))[1:]:
        assert length(sub).symbol_count < total


@settings(max_examples=300, deadline=None)
@given(formulas, st.integers(0, 5), terms)
def test_substitution_free_variables(f, var, t):
    result = substitute(f, var, t)
    if var in free_vars(f):
        assert free_vars(result) == (free_vars(f) - {var}) | free_vars(t)
    else:
        assert result == f


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_length_report_consistency(f):
    report = length(f)
    assert report.symbol_count >= max(report.quantifier_count, report.variable_count, report.depth)
    assert report.variable_count == len(all_vars(f))
