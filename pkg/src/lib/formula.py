from dataclasses import dataclass, field, replace
from typing import Any, Callable, FrozenSet, Optional, Union

# Terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """A name constant; `label` is the `let` binding it was written as, if any."""

    name: Any
    label: Optional[str] = field(default=None, compare=False)


Term = Union[Var, Const]


# Atoms


@dataclass(frozen=True)
class Member:
    left: Term
    right: Term


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class PropVar:
    name: str


# Connectives, shared by the set-theoretic and propositional languages


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


# Quantifiers


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class BForall:
    var: str
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class BExists:
    var: str
    bound: Term
    body: "Formula"


Formula = Union[Member, Equal, PropVar, Not, And, Or, Implies, Forall, Exists, BForall, BExists]

BINARY = (And, Or, Implies)
UNBOUNDED = (Forall, Exists)
BOUNDED = (BForall, BExists)


def iff(left: Formula, right: Formula) -> Formula:
    """`<->` has no clause of its own; it is the conjunction of both implications."""
    return And(Implies(left, right), Implies(right, left))


def strip_negations(formula: Formula):
    """(count, core) where core is the formula under the maximal prefix of negations."""
    count = 0
    while isinstance(formula, Not):
        formula = formula.body
        count += 1
    return count, formula


def free_vars(formula: Formula) -> FrozenSet[str]:
    if isinstance(formula, (Member, Equal)):
        return frozenset(t.name for t in (formula.left, formula.right) if isinstance(t, Var))
    if isinstance(formula, PropVar):
        return frozenset()
    if isinstance(formula, Not):
        return free_vars(formula.body)
    if isinstance(formula, BINARY):
        return free_vars(formula.left) | free_vars(formula.right)
    if isinstance(formula, UNBOUNDED):
        return free_vars(formula.body) - {formula.var}
    if isinstance(formula, BOUNDED):
        bound = frozenset([formula.bound.name]) if isinstance(formula.bound, Var) else frozenset()
        return bound | (free_vars(formula.body) - {formula.var})
    raise TypeError(f"not a formula: {formula!r}")


def prop_vars(formula: Formula) -> FrozenSet[str]:
    if isinstance(formula, PropVar):
        return frozenset([formula.name])
    if isinstance(formula, Not):
        return prop_vars(formula.body)
    if isinstance(formula, BINARY):
        return prop_vars(formula.left) | prop_vars(formula.right)
    return frozenset()


def is_negation_free(formula: Formula) -> bool:
    if isinstance(formula, Not):
        return False
    if isinstance(formula, BINARY):
        return is_negation_free(formula.left) and is_negation_free(formula.right)
    if isinstance(formula, UNBOUNDED + BOUNDED):
        return is_negation_free(formula.body)
    return True


def is_restricted(formula: Formula) -> bool:
    """No unbounded quantifier anywhere."""
    if isinstance(formula, UNBOUNDED):
        return False
    if isinstance(formula, Not):
        return is_restricted(formula.body)
    if isinstance(formula, BINARY):
        return is_restricted(formula.left) and is_restricted(formula.right)
    if isinstance(formula, BOUNDED):
        return is_restricted(formula.body)
    return True


def map_terms(formula: Formula, fn: Callable[[Term], Term]) -> Formula:
    """Rebuild the formula with fn applied to every term, binders left alone."""
    if isinstance(formula, (Member, Equal)):
        return replace(formula, left=fn(formula.left), right=fn(formula.right))
    if isinstance(formula, PropVar):
        return formula
    if isinstance(formula, Not):
        return Not(map_terms(formula.body, fn))
    if isinstance(formula, BINARY):
        return type(formula)(map_terms(formula.left, fn), map_terms(formula.right, fn))
    if isinstance(formula, UNBOUNDED):
        return type(formula)(formula.var, map_terms(formula.body, fn))
    if isinstance(formula, BOUNDED):
        return type(formula)(formula.var, fn(formula.bound), map_terms(formula.body, fn))
    raise TypeError(f"not a formula: {formula!r}")


def substitute(formula: Formula, var: str, term: Term) -> Formula:
    """Replace free occurrences of `var`; the caller keeps `term` capture-free."""
    if isinstance(formula, (Member, Equal)):
        swap = lambda t: term if isinstance(t, Var) and t.name == var else t
        return replace(formula, left=swap(formula.left), right=swap(formula.right))
    if isinstance(formula, PropVar):
        return formula
    if isinstance(formula, Not):
        return Not(substitute(formula.body, var, term))
    if isinstance(formula, BINARY):
        return type(formula)(substitute(formula.left, var, term), substitute(formula.right, var, term))
    if isinstance(formula, UNBOUNDED):
        if formula.var == var:
            return formula
        return type(formula)(formula.var, substitute(formula.body, var, term))
    if isinstance(formula, BOUNDED):
        bound = term if isinstance(formula.bound, Var) and formula.bound.name == var else formula.bound
        body = formula.body if formula.var == var else substitute(formula.body, var, term)
        return type(formula)(formula.var, bound, body)
    raise TypeError(f"not a formula: {formula!r}")


def size(formula: Formula) -> int:
    if isinstance(formula, Not):
        return 1 + size(formula.body)
    if isinstance(formula, BINARY):
        return 1 + size(formula.left) + size(formula.right)
    if isinstance(formula, UNBOUNDED + BOUNDED):
        return 1 + size(formula.body)
    return 1
