from typing import Tuple

from src.core.loader import dump_structure, load_structure
from src.decorator import guarded
from src.lib.fidel import admits_standard_policy, saturate, validate_structure
from src.lib.lattice import validate_algebra
from src.models.requests import StructureRequest
from src.utils import constant


@guarded
def check_algebra(request: StructureRequest) -> Tuple[int, dict]:
    algebra = load_structure(request.structure).algebra
    report = validate_algebra(algebra)
    payload = {
        "algebra": algebra.name,
        "carrier": list(algebra.carrier),
        "valid": report.valid,
        "message": constant.ALGEBRA_VALID if report.valid else constant.ALGEBRA_INVALID,
        "violations": [v.model_dump(exclude_none=True) for v in report.violations],
    }
    if report.valid:
        payload["chain"] = algebra.is_chain()
        payload["refinable"] = algebra.is_refinable()
        payload["negation_table"] = algebra.has_negation
    return (constant.EXIT_VALID if report.valid else constant.EXIT_COUNTEREXAMPLE), payload


@guarded
def saturate_structure(request: StructureRequest) -> Tuple[int, dict]:
    algebra = load_structure(request.structure).algebra
    return constant.EXIT_VALID, dump_structure(saturate(algebra, name=f"{algebra.name}-saturated"))


@guarded
def check_structure(request: StructureRequest) -> Tuple[int, dict]:
    structure = load_structure(request.structure)
    algebra_report = validate_algebra(structure.algebra)
    report = validate_structure(structure)
    valid = algebra_report.valid and report.valid
    payload = {
        "structure": structure.name,
        "valid": valid,
        "message": constant.STRUCTURE_VALID if valid else constant.STRUCTURE_INVALID,
        "N": structure.describe(),
        "violations": [v.model_dump(exclude_none=True) for v in algebra_report.violations + report.violations],
    }
    if valid:
        payload["standard_policy"] = admits_standard_policy(structure)
    return (constant.EXIT_VALID if valid else constant.EXIT_COUNTEREXAMPLE), payload
