import pytest

from src.core.loader import load_structure
from src.lib.errors import InvalidNegationChoice, ScopeError
from src.lib.formula import Implies, Or, PropVar
from src.lib.parser import parse_prop_formula
from src.lib.proplogic import (
    PropValuation,
    check_all,
    check_schema,
    classify_extensions,
    describe_valuation,
    enumerate_valuations,
    eval_prop,
    find_paraconsistency_witness,
    gn_formula,
    schema_formula,
)
from src.utils import constant


def test_every_schema_is_valid_on_m3(m3):
    verdicts = check_all(m3)
    assert [verdict.check for verdict in verdicts] == list(constant.SCHEMAS)
    assert all(verdict.verdict == constant.VALID for verdict in verdicts)


@pytest.mark.parametrize("name", ["boolean2", "boolean4", "chain4", "kite5"])
def test_positive_schemas_hold_on_saturated_structures(name):
    structure = load_structure(name)
    for schema in ("a1", "a2", "a5", "a8", "a9", "a10"):
        assert check_schema(schema, structure).valid


def test_schema_instances_at_depth_one():
    verdict = check_schema("a1", load_structure("boolean2"), depth=1)
    assert verdict.valid
    assert verdict.checked > 256


def test_paraconsistency_witness_on_m3(m3):
    valuation, formula = find_paraconsistency_witness(m3)
    assert eval_prop(formula, m3, valuation) == m3.algebra.element("0")
    assert describe_valuation(formula, m3, valuation) == {"alpha": "1/2", "beta": "0", "~alpha": "1"}


def test_classical_negation_explodes():
    assert find_paraconsistency_witness(load_structure("boolean2-classical")) is None


def test_negation_choice_must_come_from_the_family(m3):
    formula = parse_prop_formula("~alpha")
    half, top = m3.algebra.element("1/2"), m3.algebra.top
    assert eval_prop(formula, m3, PropValuation({"alpha": half}, {(): top})) == top
    with pytest.raises(InvalidNegationChoice):
        eval_prop(formula, m3, PropValuation({"alpha": half}, {(): m3.algebra.bottom}))
    with pytest.raises(InvalidNegationChoice):
        eval_prop(formula, m3, PropValuation({"alpha": half}))


def test_double_negation_is_bounded_by_its_argument(m3):
    formula = parse_prop_formula("~~alpha")
    zero = m3.algebra.element("0")
    choices = [v.neg_map for v in enumerate_valuations(formula, m3) if v.var_map["alpha"] == zero]
    assert choices == [{(0,): m3.algebra.top, (): zero}]


def test_unassigned_variable(m3):
    with pytest.raises(ScopeError):
        eval_prop(parse_prop_formula("alpha"), m3, PropValuation({}))


def test_gn_formula_shape():
    a1, a2, a3 = (PropVar(f"alpha{i}") for i in (1, 2, 3))
    assert gn_formula(3) == Or(Implies(a1, a2), Implies(a2, a3))
    assert schema_formula("G3") == gn_formula(3)
    with pytest.raises(ScopeError):
        gn_formula(1)
    with pytest.raises(ScopeError):
        schema_formula("a11")


def test_extension_profiles():
    m3_profile = classify_extensions(load_structure("m3"))
    assert m3_profile.smallest_gn == 4
    assert m3_profile.linear

    boolean_profile = classify_extensions(load_structure("boolean4"))
    assert boolean_profile.smallest_gn == 3
    assert boolean_profile.linear

    assert not classify_extensions(load_structure("kite5"), max_n=3).linear


def test_gn_counterexample_on_m3_is_a_strict_descent(m3):
    verdict = check_schema("g3", m3)
    assert verdict.verdict == constant.COUNTEREXAMPLE
    assert verdict.witness == {"alpha1": "1", "alpha2": "1/2", "alpha3": "0"}
