from typing import Tuple

from src.core.loader import load_structure
from src.decorator import guarded
from src.lib.fidel import require_valid
from src.lib.parser import pretty_print
from src.lib.proplogic import (
    EXPLOSION,
    check_schema,
    classify_extensions,
    describe_valuation,
    eval_prop,
    find_paraconsistency_witness,
)
from src.models.requests import PropAxiomsRequest, StructureRequest
from src.utils import constant


@guarded
def prop_axioms(request: PropAxiomsRequest) -> Tuple[int, dict]:
    structure = require_valid(load_structure(request.structure))
    verdicts = [check_schema(schema, structure, request.depth) for schema in request.schemas]
    payload = {
        "structure": structure.name,
        "checks": [verdict.model_dump(exclude_none=True) for verdict in verdicts],
    }
    if request.extensions:
        payload["extensions"] = classify_extensions(structure).model_dump()
    valid = all(verdict.valid for verdict in verdicts)
    return (constant.EXIT_VALID if valid else constant.EXIT_COUNTEREXAMPLE), payload


@guarded
def paraconsistent(request: StructureRequest) -> Tuple[int, dict]:
    """Exit 1 with the refuting valuation when explosion fails, exit 0 when it holds everywhere."""
    structure = require_valid(load_structure(request.structure))
    found = find_paraconsistency_witness(structure)
    if found is None:
        return constant.EXIT_VALID, {
            "structure": structure.name,
            "formula": EXPLOSION,
            "paraconsistent": False,
            "verdict": constant.VALID,
        }
    valuation, formula = found
    return constant.EXIT_COUNTEREXAMPLE, {
        "structure": structure.name,
        "formula": pretty_print(formula),
        "paraconsistent": True,
        "verdict": constant.COUNTEREXAMPLE,
        "witness": describe_valuation(formula, structure, valuation),
        "value": structure.algebra.label(eval_prop(formula, structure, valuation)),
    }
