import json

import pytest

from src.core.loader import BUILTIN_STRUCTURES, build_structure, dump_structure, load_structure, parse_definition
from src.lib.errors import MalformedTables, NoResiduum, StructureNotFound
from src.lib.fidel import validate_structure

SATURATED_CHAIN3 = {"0": ["1"], "1/2": ["1"], "1": ["0", "1/2", "1"]}


def test_shipped_structure_files():
    m3 = load_structure("m3")
    assert m3.name == "m3"
    assert m3.describe() == SATURATED_CHAIN3
    assert not m3.algebra.has_negation

    h3star = load_structure("h3star")
    assert h3star.algebra.has_negation
    assert h3star.describe() == SATURATED_CHAIN3


def test_missing_family_is_saturated():
    structure = load_structure("chain4")
    assert structure.describe()["1/3"] == ["1"]
    assert validate_structure(structure).valid


def test_builtins_without_a_file():
    assert load_structure("kite5").name == "kite5"
    assert set(BUILTIN_STRUCTURES) >= {"m3", "h3star", "boolean2", "boolean2-classical"}


def test_unknown_structure():
    with pytest.raises(StructureNotFound):
        load_structure("no-such-structure")


def test_structure_from_a_path(tmp_path):
    path = tmp_path / "two.json"
    path.write_text(json.dumps({"carrier": ["0", "1"], "leq": [["0", "1"]]}))
    structure = load_structure(str(path))
    assert structure.name == "two"
    assert structure.describe() == {"0": ["1"], "1": ["0", "1"]}


def test_inline_definition_with_family():
    structure = load_structure(
        {"name": "b2", "carrier": ["0", "1"], "leq": [["0", "1"]], "N": {"0": ["1"], "1": ["0"]}}
    )
    assert structure.describe() == {"0": ["1"], "1": ["0"]}


def test_definition_by_tables():
    definition = parse_definition(
        {"carrier": ["0", "1"], "meet": [[0, 0], [0, 1]], "join": [[0, 1], [1, 1]]}
    )
    algebra = build_structure(definition).algebra
    assert algebra.imp(1, 0) == 0
    assert algebra.imp(0, 0) == 1


def test_non_json_document():
    with pytest.raises(MalformedTables, match="not a JSON document"):
        parse_definition("{carrier: [", source="broken.json")


def test_definition_needs_an_order_or_tables():
    with pytest.raises(MalformedTables, match="leq pairs"):
        parse_definition({"carrier": ["0", "1"]})


def test_pentagon_is_refused(tmp_path):
    path = tmp_path / "pentagon.json"
    path.write_text(
        json.dumps(
            {
                "carrier": ["0", "a", "b", "c", "1"],
                "leq": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "c"], ["c", "1"]],
            }
        )
    )
    with pytest.raises(NoResiduum):
        load_structure(str(path))


def test_dump_then_load_keeps_the_structure():
    original = load_structure("h3star")
    document = dump_structure(original)
    assert document["neg_op"] == [2, 2, 0]
    assert "N" in document
    rebuilt = load_structure(document)
    assert rebuilt.describe() == original.describe()
    assert (rebuilt.algebra.imp_table == original.algebra.imp_table).all()
