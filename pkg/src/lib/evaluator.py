import logging
from enum import Enum
from typing import Dict, List, Mapping, Optional, Set, Tuple

from src.lib.errors import MixedAlgebras, PolicyInadmissible, ScopeError
from src.lib.fidel import FidelStructure, admits_standard_policy, require_valid
from src.lib.formula import (
    And,
    BExists,
    BForall,
    Const,
    Equal,
    Exists,
    Forall,
    Formula,
    Implies,
    Member,
    Not,
    Or,
    Term,
    strip_negations,
)
from src.lib.lattice import Element
from src.lib.names import Name, NameStore
from src.utils import constant

Env = Mapping[str, Name]


class NegationPolicy(str, Enum):
    STANDARD = constant.POLICY_STANDARD
    ALGEBRAIC = constant.POLICY_ALGEBRAIC


class EvalContext:
    """Structure, negation policy and quantifier bound for one family of evaluations.

    The memo is keyed by (relation, name id, name id) and only ever receives the
    one value a key can have, so concurrent writers agree.
    """

    def __init__(
        self,
        structure: FidelStructure,
        policy: NegationPolicy = NegationPolicy.STANDARD,
        rank: int = 2,
        store: Optional[NameStore] = None,
        ceiling: Optional[int] = None,
    ):
        require_valid(structure)
        policy = NegationPolicy(policy)
        if policy is NegationPolicy.STANDARD and not admits_standard_policy(structure):
            raise PolicyInadmissible(
                f"{structure.name} does not have 1 in every N_x with N_1 the whole carrier; "
                "the standard policy needs both"
            )
        if policy is NegationPolicy.ALGEBRAIC and not structure.algebra.has_negation:
            raise PolicyInadmissible(f"{structure.algebra.name} has no neg_op table for the algebraic policy")
        if store is not None and store.uid != structure.algebra.uid:
            raise MixedAlgebras(f"name store is over {store.algebra.name}, not {structure.algebra.name}")
        if rank < 1:
            raise PolicyInadmissible("quantifier rank bound must be at least 1")

        self.structure = structure
        self.algebra = structure.algebra
        self.policy = policy
        self.rank = rank
        self.store = store or NameStore(structure.algebra, ceiling=ceiling)
        self.memo: Dict[Tuple[str, int, int], Element] = {}
        # (||alpha||, ||~alpha||) pairs where the algebraic policy left N_||alpha||.
        self.violations: Set[Tuple[Element, Element]] = set()

    @property
    def domain(self) -> List[Name]:
        """Range of unbounded quantifiers."""
        return self.store.universe(self.rank)

    def with_rank(self, rank: int) -> "EvalContext":
        """A context over the same store at another bound; the memo is shared, it is rank-free."""
        other = EvalContext(self.structure, self.policy, rank, store=self.store)
        other.memo = self.memo
        other.violations = self.violations
        return other

    @property
    def short_circuits(self) -> bool:
        """Whether evaluation may stop at an absorbing value; the algebraic policy visits every negation."""
        return self.policy is NegationPolicy.STANDARD

    def clear_memo(self):
        self.memo = {}

    def truth_membership(self, u: Name, v: Name) -> Element:
        """||u in v|| = join over x in dom(v) of v(x) & ||x = u||."""
        key = (constant.MEMBER, u.id, v.id)
        value = self.memo.get(key)
        if value is not None:
            return value
        algebra = self.algebra
        meet, join = algebra._meet, algebra._join
        value = algebra.bottom
        for x, weight in v.entries:
            value = join[value][meet[weight][self.truth_equality(x, u)]]
            if value == algebra.top:
                break
        self.memo[key] = value
        return value

    def truth_equality(self, u: Name, v: Name) -> Element:
        """||u = v|| = meet over x in dom(u) of u(x) -> ||x in v||, and the same with u, v swapped."""
        key = (constant.EQUAL, u.id, v.id)
        value = self.memo.get(key)
        if value is not None:
            return value
        algebra = self.algebra
        meet, imp = algebra._meet, algebra._imp
        value = algebra.top
        for x, weight in u.entries:
            value = meet[value][imp[weight][self.truth_membership(x, v)]]
            if value == algebra.bottom:
                break
        if value != algebra.bottom:
            for x, weight in v.entries:
                value = meet[value][imp[weight][self.truth_membership(x, u)]]
                if value == algebra.bottom:
                    break
        self.memo[key] = value
        return value

    def record_violation(self, body_value: Element, value: Element):
        self.violations.add((body_value, value))

    def describe_violations(self) -> List[Dict[str, str]]:
        label = self.algebra.label
        return [
            {"value": label(body), "negation": label(neg), "allowed": str(self.structure.describe()[label(body)])}
            for body, neg in sorted(self.violations)
        ]


def resolve(term: Term, env: Env) -> Name:
    if isinstance(term, Const):
        return term.name
    try:
        return env[term.name]
    except KeyError:
        raise ScopeError(f"variable '{term.name}' is not bound")


def eval_formula(formula: Formula, ctx: EvalContext, env: Optional[Env] = None) -> Element:
    """||formula|| with free variables read from env; unbounded quantifiers range over V_<=K."""
    return _eval(formula, ctx, env or {})


def _eval(formula: Formula, ctx: EvalContext, env: Env) -> Element:
    algebra = ctx.algebra
    if isinstance(formula, Member):
        return ctx.truth_membership(resolve(formula.left, env), resolve(formula.right, env))
    if isinstance(formula, Equal):
        return ctx.truth_equality(resolve(formula.left, env), resolve(formula.right, env))
    if isinstance(formula, And):
        left = _eval(formula.left, ctx, env)
        if left == algebra.bottom and ctx.short_circuits:
            return left
        return algebra.meet(left, _eval(formula.right, ctx, env))
    if isinstance(formula, Or):
        left = _eval(formula.left, ctx, env)
        if left == algebra.top and ctx.short_circuits:
            return left
        return algebra.join(left, _eval(formula.right, ctx, env))
    if isinstance(formula, Implies):
        return algebra.imp(_eval(formula.left, ctx, env), _eval(formula.right, ctx, env))
    if isinstance(formula, Not):
        return _negation(formula, ctx, env)
    if isinstance(formula, (Forall, Exists)):
        return _unbounded(formula, ctx, env)
    if isinstance(formula, (BForall, BExists)):
        kind = constant.FORALL if isinstance(formula, BForall) else constant.EXISTS
        return bounded_quantifier_eval(kind, resolve(formula.bound, env), formula.var, formula.body, ctx, env)
    raise ScopeError(f"{type(formula).__name__} is not part of the set-theoretic language")


def negation_value(formula: Not, ctx: EvalContext, env: Optional[Env] = None) -> Element:
    """||~phi|| under the context's policy.

    standard: strip the negation prefix; an odd count gives 1, an even count the
    value of what is left. Admissibility (1 in every N_x, N_1 = A) already puts
    every such value inside N_||phi||.
    algebraic: neg_op of the body's value; values outside N_||phi|| are recorded
    on the context and evaluation goes on.
    """
    return _negation(formula, ctx, env or {})


def _negation(formula: Not, ctx: EvalContext, env: Env) -> Element:
    algebra = ctx.algebra
    if ctx.policy is NegationPolicy.STANDARD:
        count, core = strip_negations(formula)
        if count % 2:
            return algebra.top
        return _eval(core, ctx, env)

    body_value = _eval(formula.body, ctx, env)
    value = algebra.neg(body_value)
    if not ctx.structure.admits(body_value, value):
        ctx.record_violation(body_value, value)
    return value


def _unbounded(formula, ctx: EvalContext, env: Env) -> Element:
    algebra = ctx.algebra
    scope = dict(env)
    if isinstance(formula, Forall):
        value = algebra.top
        for u in ctx.domain:
            scope[formula.var] = u
            value = algebra.meet(value, _eval(formula.body, ctx, scope))
            if value == algebra.bottom and ctx.short_circuits:
                break
        return value
    value = algebra.bottom
    for u in ctx.domain:
        scope[formula.var] = u
        value = algebra.join(value, _eval(formula.body, ctx, scope))
        if value == algebra.top and ctx.short_circuits:
            break
    return value


def bounded_quantifier_eval(
    kind: str,
    u: Name,
    var: str,
    body: Formula,
    ctx: EvalContext,
    env: Optional[Env] = None,
) -> Element:
    """Quantification over dom(u), exact at every bound.

    exists: join of u(x) & ||body(x)||; forall: meet of u(x) -> ||body(x)||.
    """
    algebra = ctx.algebra
    scope = dict(env or {})
    if kind == constant.FORALL:
        value = algebra.top
        for x, weight in u.entries:
            scope[var] = x
            value = algebra.meet(value, algebra.imp(weight, _eval(body, ctx, scope)))
            if value == algebra.bottom and ctx.short_circuits:
                break
        return value
    value = algebra.bottom
    for x, weight in u.entries:
        scope[var] = x
        value = algebra.join(value, algebra.meet(weight, _eval(body, ctx, scope)))
        if value == algebra.top and ctx.short_circuits:
            break
    return value


def log_violations(ctx: EvalContext, check: str):
    if ctx.violations:
        logging.warning(
            {
                "event": "constraint_violated",
                "check": check,
                "structure": ctx.structure.name,
                "violations": ctx.describe_violations(),
            }
        )
