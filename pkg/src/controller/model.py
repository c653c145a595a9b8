from typing import Optional, Tuple

from src.core.loader import load_structure
from src.decorator import guarded
from src.lib.evaluator import EvalContext, NegationPolicy, eval_formula, log_violations
from src.lib.errors import ScopeError
from src.lib.fidel import require_valid
from src.lib.formula import free_vars
from src.lib.names import NameStore
from src.lib.parser import parse_input, pretty_print
from src.lib.zfcheck import (
    check_bounded_exactness,
    check_hat_lemma,
    check_identity_laws,
    check_leibniz,
    check_monotonicity,
    generate_templates,
    sample_leibniz,
)
from src.models.report import UniverseStats
from src.models.requests import EvalRequest, LeibnizRequest, LemmasRequest, StructureRef, UniverseRequest
from src.utils import constant

# Names listed alongside the counts when the top level is this small.
LISTED_NAMES = 64


def build_context(
    reference: StructureRef,
    policy: NegationPolicy,
    rank: int,
    ceiling: Optional[int] = None,
) -> EvalContext:
    return EvalContext(load_structure(reference), policy, rank, ceiling=ceiling)


def exit_code_for(*verdicts) -> int:
    if all(verdict.valid for verdict in verdicts):
        return constant.EXIT_VALID
    return constant.EXIT_COUNTEREXAMPLE


@guarded
def universe(request: UniverseRequest) -> Tuple[int, dict]:
    algebra = require_valid(load_structure(request.structure)).algebra
    store = NameStore(algebra, ceiling=request.ceiling)
    stats = UniverseStats(rank=request.rank, algebra_size=len(algebra), counts=store.counts(request.rank))
    payload = stats.model_dump()
    if request.rank >= 1:
        level = store.level(request.rank)
        if len(level) <= LISTED_NAMES:
            payload["names"] = [name.render() for name in level]
    return constant.EXIT_VALID, payload


@guarded
def evaluate(request: EvalRequest) -> Tuple[int, dict]:
    ctx = build_context(request.structure, request.policy, request.rank, request.ceiling)
    parsed = parse_input(request.formula, ctx.store, source="formula")
    unbound = free_vars(parsed.formula)
    if unbound:
        raise ScopeError(f"formula has free variables: {', '.join(sorted(unbound))}")
    value = eval_formula(parsed.formula, ctx)
    log_violations(ctx, "eval")
    return constant.EXIT_VALID, {
        "formula": pretty_print(parsed.formula),
        "value": ctx.algebra.label(value),
        "rank": ctx.rank,
        "policy": ctx.policy.value,
        "constraint_violations": ctx.describe_violations(),
    }


@guarded
def leibniz(request: LeibnizRequest) -> Tuple[int, dict]:
    ctx = build_context(request.structure, request.policy, request.rank, request.ceiling)
    templates = generate_templates(request.depth, request.rank, ctx.store)
    verdicts = [check_leibniz(ctx, templates, request.rank, negation_free_only=request.negation_free_only)]
    if request.sample_rank is not None:
        verdicts.append(sample_leibniz(ctx, templates, request.sample_rank, request.samples, request.seed))
    log_violations(ctx, "leibniz")
    payload = {
        "structure": ctx.structure.name,
        "policy": ctx.policy.value,
        "rank": ctx.rank,
        "depth": request.depth,
        "templates": len(templates),
        "checks": [verdict.model_dump(exclude_none=True) for verdict in verdicts],
        "constraint_violations": ctx.describe_violations(),
    }
    return exit_code_for(*verdicts), payload


@guarded
def lemmas(request: LemmasRequest) -> Tuple[int, dict]:
    ctx = build_context(request.structure, request.policy, request.rank, request.ceiling)
    templates = generate_templates(1, min(request.rank, 2), ctx.store)
    verdicts = [
        check_identity_laws(ctx, request.samples, request.seed),
        check_hat_lemma(ctx),
        check_bounded_exactness(ctx.with_rank(min(request.rank, 2)), templates),
        check_monotonicity(
            ctx.structure,
            ctx.policy,
            templates,
            ranks=(request.rank - 1, request.rank) if request.rank > 1 else (1, 2),
            samples=request.samples,
            seed=request.seed,
            store=ctx.store,
        ),
    ]
    log_violations(ctx, "lemmas")
    payload = {
        "structure": ctx.structure.name,
        "policy": ctx.policy.value,
        "rank": ctx.rank,
        "checks": [verdict.model_dump(exclude_none=True) for verdict in verdicts],
    }
    return exit_code_for(*verdicts), payload
