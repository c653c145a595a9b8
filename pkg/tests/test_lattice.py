import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.lib.errors import MalformedTables, NoResiduum, NotALattice, UnknownElement
from src.lib.lattice import (
    BUILTIN_ALGEBRAS,
    Algebra,
    boolean4,
    chain,
    h3_star,
    is_subalgebra,
    kite5,
    subalgebra_failure,
    validate_algebra,
)

PENTAGON = (
    ["0", "a", "b", "c", "1"],
    [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
)


@pytest.mark.parametrize("name", sorted(BUILTIN_ALGEBRAS))
def test_builtin_algebras_are_valid(name):
    report = validate_algebra(BUILTIN_ALGEBRAS[name]())
    assert report.valid, report.violations


def test_three_chain_implication_table():
    algebra = chain(3)
    zero, half, one = (algebra.element(label) for label in ("0", "1/2", "1"))
    assert algebra.imp(half, zero) == zero
    assert algebra.imp(one, half) == half
    assert algebra.imp(zero, zero) == one
    assert algebra.imp(half, one) == one
    assert algebra.iff(half, one) == half


def test_one_element_algebra_is_valid():
    algebra = chain(1)
    assert algebra.top == algebra.bottom == 0
    assert validate_algebra(algebra).valid


def test_empty_bounds_follow_the_lattice_conventions():
    algebra = chain(3)
    assert algebra.big_join([]) == algebra.element("0")
    assert algebra.big_meet([]) == algebra.element("1")


def test_broken_meet_table_is_reported():
    base = chain(3)
    meet = base.meet_table.copy()
    meet[0, 1] = 1
    broken = Algebra(base.carrier, meet, base.join_table, base.imp_table, name="broken")
    report = validate_algebra(broken)
    assert not report.valid
    violation = report.first("meet-commutative")
    assert violation is not None
    assert violation.witness == {"a": "0", "b": "1/2"}


def test_wrong_implication_breaks_residuation():
    base = chain(3)
    imp = base.imp_table.copy()
    imp[2, 0] = 2
    report = validate_algebra(Algebra(base.carrier, base.meet_table, base.join_table, imp))
    assert report.first("residuation") is not None


def test_non_distributive_lattice_has_no_residuum():
    with pytest.raises(NoResiduum):
        Algebra.from_order(*PENTAGON)


def test_missing_bounds_are_not_a_lattice():
    with pytest.raises(NotALattice):
        Algebra.from_order(["a", "b"], [])


def test_order_cycle_is_not_a_lattice():
    with pytest.raises(NotALattice):
        Algebra.from_order(["a", "b"], [("a", "b"), ("b", "a")])


def test_unknown_label_in_order():
    with pytest.raises(MalformedTables):
        Algebra.from_order(["0", "1"], [("0", "2")])


def test_table_entry_outside_carrier():
    with pytest.raises(MalformedTables, match="outside the carrier"):
        Algebra(["0", "1"], [[0, 0], [0, 5]], [[0, 1], [1, 1]], [[1, 1], [0, 1]])


def test_element_lookup():
    algebra = chain(3)
    assert algebra.label(algebra.element("1/2")) == "1/2"
    with pytest.raises(UnknownElement):
        algebra.element("2/3")


def test_refine_antichain_keeps_the_join():
    algebra = boolean4()
    a, b = algebra.element("a"), algebra.element("b")
    subset = {algebra.bottom, a, b}
    antichain = algebra.refine_antichain(subset)
    assert antichain == {a, b}
    assert algebra.big_join(antichain) == algebra.big_join(subset)
    assert algebra.is_refinable()


def test_complements():
    algebra = boolean4()
    assert algebra.complement(algebra.element("a")) == algebra.element("b")
    assert chain(3).complement(1) is None


def test_kite_is_neither_boolean_nor_linear():
    algebra = kite5()
    assert not algebra.is_chain()
    assert algebra.complement(algebra.element("a")) is None
    assert chain(4).is_chain()


def test_h3_star_negation():
    algebra = h3_star()
    assert [algebra.label(algebra.neg(x)) for x in algebra.elements] == ["1", "1", "0"]
    assert not chain(3).has_negation
    with pytest.raises(MalformedTables):
        chain(3).neg(0)


def test_two_chain_embeds_at_the_middle_of_the_three_chain():
    assert is_subalgebra(chain(2), chain(3), {0: 1, 1: 2})
    assert is_subalgebra(chain(2), chain(3), {0: 0, 1: 2})


def test_embedding_must_preserve_the_top():
    assert subalgebra_failure(chain(2), chain(3), {0: 0, 1: 1}).startswith("top")
    assert not is_subalgebra(chain(2), chain(3), {0: 1, 1: 1})


@given(
    name=st.sampled_from(sorted(BUILTIN_ALGEBRAS)),
    data=st.data(),
)
def test_residuation_on_random_triples(name, data):
    algebra = BUILTIN_ALGEBRAS[name]()
    a, b, c = (data.draw(st.sampled_from(list(algebra.elements))) for _ in range(3))
    assert algebra.leq(algebra.meet(a, c), b) == algebra.leq(c, algebra.imp(a, b))
    assert algebra.meet(a, algebra.join(b, c)) == algebra.join(algebra.meet(a, b), algebra.meet(a, c))


@given(size=st.integers(min_value=1, max_value=6))
def test_chains_have_min_max_tables(size):
    algebra = chain(size)
    idx = np.arange(size)
    assert (algebra.meet_table == np.minimum.outer(idx, idx)).all()
    assert (algebra.join_table == np.maximum.outer(idx, idx)).all()
    assert algebra.top == size - 1
