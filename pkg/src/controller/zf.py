from typing import List, Optional, Tuple

from src.controller.model import build_context
from src.decorator import guarded
from src.lib.axioms import AxiomVerifier
from src.lib.errors import ScopeError
from src.lib.evaluator import EvalContext
from src.lib.formula import free_vars
from src.lib.parser import parse_input
from src.lib.zfcheck import X, FormulaTemplate
from src.models.requests import ZfRequest
from src.utils import constant
from src.utils.parallel import run_checks_parallel


def parse_template(text: str, ctx: EvalContext) -> FormulaTemplate:
    parsed = parse_input(text, ctx.store, source="template")
    if free_vars(parsed.formula) != {X}:
        raise ScopeError(f"a template needs exactly the free variable '{X}', found {sorted(free_vars(parsed.formula))}")
    return FormulaTemplate(parsed.formula, depth=0)


def axioms_for(request: ZfRequest) -> List[str]:
    if request.axiom is None:
        return list(constant.AXIOMS)
    if request.axiom not in constant.AXIOMS:
        raise ScopeError(f"unknown axiom '{request.axiom}'; use one of {', '.join(constant.AXIOMS)}")
    return [request.axiom]


@guarded
def check_zf(request: ZfRequest) -> Tuple[int, dict]:
    ctx = build_context(request.structure, request.policy, request.rank, request.ceiling)
    axioms = axioms_for(request)
    templates: Optional[List[FormulaTemplate]] = None
    if request.template is not None:
        templates = [parse_template(request.template, ctx)]

    verifier = AxiomVerifier(ctx, templates, request.depth, request.samples, request.seed, request.infinity_bound)
    verifier.prepare()

    merged = run_checks_parallel({axiom: (lambda axiom=axiom: verifier.run(axiom)) for axiom in axioms})
    if merged["failed"]:
        raise next(iter(merged["failed"].values()))

    results = [merged["success"][axiom] for axiom in axioms]
    payload = {
        "structure": ctx.structure.name,
        "policy": ctx.policy.value,
        "rank": ctx.rank,
        "results": [result.model_dump(exclude_none=True) for result in results],
        "constraint_violations": ctx.describe_violations(),
    }
    valid = all(result.valid for result in results)
    return (constant.EXIT_VALID if valid else constant.EXIT_COUNTEREXAMPLE), payload
