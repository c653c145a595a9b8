import pytest

from src.config import config
from src.core.loader import load_structure
from src.lib.axioms import APPROXIMATION, AxiomVerifier, check_axiom, check_axioms, separation_brute_force
from src.lib.errors import ScopeError, UniverseTooLarge
from src.lib.evaluator import EvalContext, NegationPolicy
from src.lib.formula import Const, Member, Not, Var
from src.lib.zfcheck import FormulaTemplate
from src.utils import constant


@pytest.fixture(scope="module")
def m3_results():
    ctx = EvalContext(load_structure("m3"), NegationPolicy.STANDARD, rank=2)
    return {result.axiom: result for result in check_axioms(ctx)}


def test_every_axiom_is_checked(m3_results):
    assert list(m3_results) == list(constant.AXIOMS)
    assert set(APPROXIMATION) == set(constant.AXIOMS)


@pytest.mark.parametrize("axiom", [a for a in constant.AXIOMS if a != "infinity"])
def test_axioms_hold_on_m3_at_rank_two(m3_results, axiom):
    result = m3_results[axiom]
    assert result.verdict == constant.VALID, result.witness
    assert result.rank == 2
    assert result.policy == constant.POLICY_STANDARD
    assert result.seed is None


def test_infinity_is_valid_up_to_the_bound(m3_results):
    result = m3_results["infinity"]
    assert result.verdict == constant.VALID_UP_TO_BOUND
    assert result.checked == 9
    assert result.notes == ["N_max = 8"]


def test_pairing_is_exhaustive_at_rank_two(m3_results):
    assert m3_results["pairing"].checked == 16 * 4


def test_union_reports_the_unweighted_witness(m3_results):
    assert m3_results["union"].notes[0].startswith("unweighted witness disagrees")


def test_empty_set_reports_per_element_witnesses(m3_results):
    assert m3_results["empty-set"].notes == ["per-element witnesses hold for 4 of 4 names"]


@pytest.mark.parametrize("name", ["chain2", "chain4"])
def test_axiom_suite_on_other_saturated_chains(name):
    ctx = EvalContext(load_structure(name), NegationPolicy.STANDARD, rank=2)
    results = {result.axiom: result for result in check_axioms(ctx)}
    assert list(results) == list(constant.AXIOMS)
    for axiom, result in results.items():
        expected = constant.VALID_UP_TO_BOUND if axiom == "infinity" else constant.VALID
        assert result.verdict == expected, (axiom, result.witness)


def test_collection_compares_both_readings(m3_results, m3_ctx):
    result = m3_results["collection"]
    assert result.verdict == constant.VALID
    assert result.family == AxiomVerifier(m3_ctx).family(binary=True)
    assert result.checked > 0


def test_empty_set_at_rank_one(m3):
    ctx = EvalContext(m3, NegationPolicy.STANDARD, rank=1)
    assert check_axiom("empty-set", ctx).verdict == constant.VALID


def test_separation_fails_under_the_algebraic_policy(h3_ctx):
    result = check_axiom("separation", h3_ctx)
    assert result.verdict == constant.COUNTEREXAMPLE
    assert result.witness["phi"] == "~({} in x)"
    assert result.witness["u"] == "univ(2)"
    assert result.values == {"z in w": "1/2", "z in u & phi(z)": "0"}
    assert result.notes == ["0 names w with dom(w) = dom(u) separate u by phi"]

    u, template, _ = result.subject
    assert separation_brute_force(u, template, h3_ctx) == 0


def test_separation_brute_force_agrees_on_valid_cases(m3_ctx, names):
    template = FormulaTemplate(Member(Const(m3_ctx.store.empty), Var("x")), 0)
    assert separation_brute_force(names["1/2"], template, m3_ctx) >= 1


def test_empty_set_universal_witness_needs_the_standard_policy(h3_ctx):
    result = check_axiom("empty-set", h3_ctx)
    assert result.verdict == constant.COUNTEREXAMPLE
    assert result.witness == {"z": "{}", "w": "univ(2)"}
    assert result.notes == ["per-element witnesses hold for 4 of 4 names"]


def test_custom_template_family(h3_ctx):
    template = FormulaTemplate(Not(Member(Const(h3_ctx.store.empty), Var("x"))), 1)
    verifier = AxiomVerifier(h3_ctx, templates=[template])
    assert verifier.family() == "~({} in x)"
    result = verifier.run("separation")
    assert result.verdict == constant.COUNTEREXAMPLE
    assert result.family == "~({} in x)"


def test_large_position_sets_are_sampled(m3_ctx, monkeypatch):
    monkeypatch.setitem(config, "exhaustive_limit", 10)
    result = AxiomVerifier(m3_ctx, samples=50, seed=9).run("pairing")
    assert result.valid
    assert result.seed == 9
    assert result.checked == 50 * 4
    assert result.notes[0] == "sampled 50 positions"


def test_brute_force_respects_the_limit(h3_ctx, monkeypatch):
    monkeypatch.setitem(config, "exhaustive_limit", 10)
    template = FormulaTemplate(Member(Const(h3_ctx.store.empty), Var("x")), 0)
    with pytest.raises(UniverseTooLarge):
        separation_brute_force(h3_ctx.store.universal_name(2), template, h3_ctx)


def test_unknown_axiom(m3_ctx):
    with pytest.raises(ScopeError):
        check_axiom("choice", m3_ctx)
