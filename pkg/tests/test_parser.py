import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.lib.errors import ParseError
from src.lib.formula import (
    And,
    BForall,
    Const,
    Equal,
    Exists,
    Forall,
    Implies,
    Member,
    Not,
    Or,
    PropVar,
    Var,
    iff,
)
from src.lib.parser import parse_formula, parse_input, parse_prop_formula, pretty_print, tokenize
from src.lib.zfcheck import generate_templates

AXIOM_SCHEMAS = [
    "forall u. forall v. (forall z. (z in u <-> z in v)) -> u eq v",
    "forall u. forall v. exists w. forall z. z in w <-> z eq u | z eq v",
    "forall u. exists w. forall v. v in w <-> (forall y in v. y in u)",
    "forall u. exists w. forall y. y in w <-> (exists v in u. y in v)",
    "forall u. exists w. forall z. z in w <-> z in u & ~(z in z)",
    "exists w. forall z. z in w <-> ~(z eq z)",
    "exists w. {} in w & (forall n in w. exists m in w. n in m)",
    "forall u. (forall x in u. exists y. x eq y) -> (exists v. forall x in u. exists y in v. x eq y)",
    "(forall x. (forall y in x. y in y) -> x in x) -> (forall x. x in x)",
]


def test_double_negation_shape():
    x, y = Var("x"), Var("y")
    assert parse_formula("~~(x in y)") == Not(Not(Member(x, y)))


def test_extensionality_body():
    z, u, v = Var("z"), Var("u"), Var("v")
    parsed = parse_formula("forall z. (z in u <-> z in v) -> u eq v")
    assert parsed == Implies(Forall("z", iff(Member(z, u), Member(z, v))), Equal(u, v))


def test_precedence_and_associativity():
    p, q, r = PropVar("p"), PropVar("q"), PropVar("r")
    assert parse_prop_formula("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse_prop_formula("p | q & r") == Or(p, And(q, r))
    assert parse_prop_formula("~p & q") == And(Not(p), q)


def test_printing_uses_minimal_parentheses():
    p, q, r = PropVar("p"), PropVar("q"), PropVar("r")
    assert pretty_print(Implies(p, Implies(q, r))) == "p -> q -> r"
    assert pretty_print(Implies(Implies(p, q), r)) == "(p -> q) -> r"
    assert pretty_print(Not(Member(Var("w"), Var("x")))) == "~(w in x)"


def test_unicode_aliases():
    assert parse_formula("∀z. z ∈ x → ¬(z ≈ x)") == parse_formula("forall z. z in x -> ~(z eq x)")


def test_bounded_quantifier_round_trip():
    parsed = parse_formula("exists x. forall y in x. y in x")
    assert parsed == Exists("x", BForall("y", Var("x"), Member(Var("y"), Var("x"))))
    assert parse_formula(pretty_print(parsed)) == parsed


@pytest.mark.parametrize("text", AXIOM_SCHEMAS)
def test_axiom_schemas_round_trip(text, m3_ctx):
    parsed = parse_formula(text, m3_ctx.store)
    assert parse_formula(pretty_print(parsed), m3_ctx.store) == parsed


def test_generated_templates_round_trip(m3_ctx):
    for template in generate_templates(1, 2, m3_ctx.store):
        assert parse_formula(template.text, m3_ctx.store) == template.formula


def test_name_literals_and_bindings(m3_ctx):
    store = m3_ctx.store
    parsed = parse_input("let u = {{}: 1/2}; u eq u", store)
    half = store.make_name([(store.empty, 1)])
    assert parsed.bindings == {"u": half}
    assert parsed.formula == Equal(Const(half), Const(half))
    assert pretty_print(parsed.formula) == "u eq u"


def test_quantifier_shadows_a_binding(m3_ctx):
    parsed = parse_input("let x = {}; exists x. x in x", m3_ctx.store)
    assert parsed.formula == Exists("x", Member(Var("x"), Var("x")))


def test_hat_and_univ_terms(m3_ctx):
    store = m3_ctx.store
    assert parse_formula("hat(2) eq hat({{}, {{}}})", store) == Equal(
        Const(store.von_neumann(2)), Const(store.von_neumann(2))
    )
    assert parse_formula("{} in univ(1)", store) == Member(Const(store.empty), Const(store.universal_name(1)))


def test_error_at_end_of_input():
    with pytest.raises(ParseError) as excinfo:
        parse_formula("x in ")
    error = excinfo.value
    assert (error.start, error.end) == (5, 5)
    assert {"ident", "{"} <= error.expected
    assert error.to_dict()["span"] == {"start": 5, "end": 5}


def test_unexpected_character_has_a_span():
    with pytest.raises(ParseError) as excinfo:
        parse_formula("x $ y")
    assert (excinfo.value.start, excinfo.value.end) == (2, 3)


def test_spans_are_byte_offsets():
    tokens = tokenize("¬ p")
    assert (tokens[1].span.start, tokens[1].span.end) == (3, 4)


def test_unknown_element_label(m3_ctx):
    with pytest.raises(ParseError) as excinfo:
        parse_formula("{} in {{}: 2}", m3_ctx.store)
    assert excinfo.value.expected == frozenset(["0", "1/2", "1"])


def test_name_constants_need_a_structure():
    with pytest.raises(ParseError, match="structure"):
        parse_formula("{} in x")


def test_non_ascii_digits_are_rejected_with_a_span(m3_ctx):
    with pytest.raises(ParseError, match="unexpected character") as excinfo:
        parse_formula("univ(²) eq {}", m3_ctx.store)
    assert (excinfo.value.start, excinfo.value.end) == (5, 7)


@pytest.mark.parametrize(
    "text, span",
    [("hat(1/2) eq {}", (4, 7)), ("univ(1/2) eq {}", (5, 8))],
)
def test_rank_arguments_must_be_natural_numbers(m3_ctx, text, span):
    with pytest.raises(ParseError, match="natural number") as excinfo:
        parse_formula(text, m3_ctx.store)
    assert (excinfo.value.start, excinfo.value.end) == span


def test_quantifiers_are_not_propositional():
    with pytest.raises(ParseError):
        parse_prop_formula("forall x. p")


def test_trailing_input():
    with pytest.raises(ParseError, match="after formula"):
        parse_formula("x in y y")


atoms = st.sampled_from([PropVar("p"), PropVar("q"), PropVar("r")])
prop_formulas = st.recursive(
    atoms,
    lambda children: st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Implies, children, children),
    ),
    max_leaves=12,
)


@given(prop_formulas)
def test_propositional_round_trip(formula):
    assert parse_prop_formula(pretty_print(formula)) == formula
