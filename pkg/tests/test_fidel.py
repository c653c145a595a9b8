import pytest

from src.core.loader import BUILTIN_STRUCTURES
from src.lib.errors import AlgebraInvalid, StructureInvalid, UnknownElement
from src.lib.fidel import (
    FidelStructure,
    admits_standard_policy,
    classical_structure,
    is_substructure,
    require_valid,
    saturate,
    validate_structure,
)
from src.lib.lattice import boolean2, boolean4, chain


def test_saturated_three_chain():
    structure = saturate(chain(3))
    assert structure.describe() == {"0": ["1"], "1/2": ["1"], "1": ["0", "1/2", "1"]}


@pytest.mark.parametrize("name", sorted(BUILTIN_STRUCTURES))
def test_builtin_structures_satisfy_both_conditions(name):
    assert validate_structure(BUILTIN_STRUCTURES[name]()).valid


def test_negation_value_must_complement():
    algebra = chain(3)
    structure = FidelStructure.from_labels(algebra, {"0": ["0"], "1/2": ["1"], "1": ["0", "1/2", "1"]})
    report = validate_structure(structure)
    assert report.first("complementation").witness == {"x": "0"}


def test_empty_negation_set():
    algebra = chain(3)
    structure = FidelStructure.from_labels(algebra, {"0": ["1"], "1": ["0", "1/2", "1"]})
    assert validate_structure(structure).first("nonempty").witness == {"x": "1/2"}


def test_double_negation_condition():
    algebra = chain(3)
    structure = FidelStructure.from_labels(algebra, {"0": ["1"], "1/2": ["1"], "1": ["1"]})
    violation = validate_structure(structure).first("double-negation")
    assert violation.witness == {"x": "0", "x_prime": "1"}


def test_require_valid_refuses_broken_structures():
    algebra = chain(3)
    structure = FidelStructure.from_labels(algebra, {"0": ["1"], "1/2": ["1"], "1": ["1"]})
    with pytest.raises(StructureInvalid) as excinfo:
        require_valid(structure)
    payload = excinfo.value.to_dict()
    assert payload["error"] == "StructureInvalid"
    assert payload["report"]["violations"]


def test_family_with_unknown_label():
    with pytest.raises(UnknownElement):
        FidelStructure.from_labels(chain(2), {"0": ["2"]})


def test_classical_structure_needs_complements():
    structure = classical_structure(boolean4())
    assert structure.describe()["a"] == ["b"]
    with pytest.raises(AlgebraInvalid):
        classical_structure(chain(3))


def test_standard_policy_admissibility():
    assert admits_standard_policy(saturate(chain(3)))
    assert not admits_standard_policy(classical_structure(boolean2()))


def test_saturated_two_chain_is_a_substructure_of_the_three_chain():
    sub, sup = saturate(chain(2)), saturate(chain(3))
    assert is_substructure(sub, sup, {0: 0, 1: 2})
    assert not is_substructure(sub, sup, {0: 0, 1: 1})
