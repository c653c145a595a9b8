import logging
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.lib.errors import InvalidNegationChoice, ScopeError
from src.lib.fidel import FidelStructure
from src.lib.formula import And, Formula, Implies, Not, Or, PropVar, prop_vars
from src.lib.lattice import Element
from src.lib.parser import parse_prop_formula, pretty_print
from src.models.report import ExtensionProfile, Verdict
from src.utils import constant

# Negation occurrences are addressed by their path from the root: 0 = left/body, 1 = right.
Path = Tuple[int, ...]

SCHEMA_TEXT = {
    "a1": "alpha -> beta -> alpha",
    "a2": "(alpha -> beta -> gamma) -> (alpha -> beta) -> alpha -> gamma",
    "a3": "alpha & beta -> alpha",
    "a4": "alpha & beta -> beta",
    "a5": "alpha -> beta -> alpha & beta",
    "a6": "alpha -> alpha | beta",
    "a7": "beta -> alpha | beta",
    "a8": "(alpha -> gamma) -> (beta -> gamma) -> alpha | beta -> gamma",
    "a9": "alpha | ~alpha",
    "a10": "~~alpha -> alpha",
    "l": "(beta -> alpha) | (alpha -> beta)",
}

EXPLOSION = "~alpha & alpha -> beta"


@dataclass
class PropValuation:
    var_map: Dict[str, Element]
    neg_map: Dict[Path, Element] = field(default_factory=dict)


def gn_formula(n: int) -> Formula:
    """(a1 -> a2) | ... | (a(n-1) -> an)."""
    if n < 2:
        raise ScopeError("G_n needs n >= 2")
    disjuncts = [Implies(PropVar(f"alpha{i}"), PropVar(f"alpha{i + 1}")) for i in range(1, n)]
    formula = disjuncts[0]
    for disjunct in disjuncts[1:]:
        formula = Or(formula, disjunct)
    return formula


def schema_formula(schema: str) -> Formula:
    schema = schema.lower()
    if schema in SCHEMA_TEXT:
        return parse_prop_formula(SCHEMA_TEXT[schema], source=schema)
    match = re.fullmatch(r"g(\d+)", schema)
    if match:
        return gn_formula(int(match.group(1)))
    raise ScopeError(f"unknown schema '{schema}'; use a1..a10, l or gN")


def eval_prop(formula: Formula, s: FidelStructure, v: PropValuation) -> Element:
    """Value under v, reading every negation occurrence from v.neg_map and checking (v3)."""
    return _evaluate(formula, s, v, ())


def _evaluate(formula: Formula, s: FidelStructure, v: PropValuation, path: Path) -> Element:
    algebra = s.algebra
    if isinstance(formula, PropVar):
        try:
            return v.var_map[formula.name]
        except KeyError:
            raise ScopeError(f"valuation does not assign '{formula.name}'")
    if isinstance(formula, Not):
        body_value = _evaluate(formula.body, s, v, path + (0,))
        if path not in v.neg_map:
            raise InvalidNegationChoice(f"no value chosen for {pretty_print(formula)}")
        value = v.neg_map[path]
        if not s.admits(body_value, value):
            raise InvalidNegationChoice(
                f"{pretty_print(formula)} = {algebra.label(value)} is not in "
                f"N_{algebra.label(body_value)} = {s.describe()[algebra.label(body_value)]}"
            )
        if isinstance(formula.body, Not):
            inner = _evaluate(formula.body.body, s, v, path + (0, 0))
            if not algebra.leq(value, inner):
                raise InvalidNegationChoice(
                    f"{pretty_print(formula)} = {algebra.label(value)} is not below {algebra.label(inner)}"
                )
        return value
    left = _evaluate(formula.left, s, v, path + (0,))
    right = _evaluate(formula.right, s, v, path + (1,))
    if isinstance(formula, And):
        return algebra.meet(left, right)
    if isinstance(formula, Or):
        return algebra.join(left, right)
    if isinstance(formula, Implies):
        return algebra.imp(left, right)
    raise ScopeError(f"{type(formula).__name__} is not a propositional connective")


def _choices(
    formula: Formula, s: FidelStructure, var_map: Dict[str, Element], path: Path
) -> Iterator[Tuple[Element, Dict[Path, Element], Optional[Element]]]:
    """Every admissible (value, negation choices, value of the negated body) for a subformula."""
    algebra = s.algebra
    if isinstance(formula, PropVar):
        yield var_map[formula.name], {}, None
        return
    if isinstance(formula, Not):
        for body_value, body_map, body_inner in _choices(formula.body, s, var_map, path + (0,)):
            for value in s.negation_set(body_value):
                # (v3): ~~a is also bounded by a.
                if isinstance(formula.body, Not) and not algebra.leq(value, body_inner):
                    continue
                yield value, {**body_map, path: value}, body_value
        return
    op = {And: algebra.meet, Or: algebra.join, Implies: algebra.imp}[type(formula)]
    for left, left_map, _ in _choices(formula.left, s, var_map, path + (0,)):
        for right, right_map, _ in _choices(formula.right, s, var_map, path + (1,)):
            yield op(left, right), {**left_map, **right_map}, None


def enumerate_valuations(formula: Formula, s: FidelStructure) -> Iterator[PropValuation]:
    """All (v3)-admissible valuations: variables in sorted order, then negation choices depth first."""
    for _, valuation in _evaluated_valuations(formula, s):
        yield valuation


def _evaluated_valuations(formula: Formula, s: FidelStructure):
    variables = sorted(prop_vars(formula))
    for values in product(s.algebra.elements, repeat=len(variables)):
        var_map = dict(zip(variables, values))
        for value, neg_map, _ in _choices(formula, s, var_map, ()):
            yield value, PropValuation(var_map=dict(var_map), neg_map=neg_map)


def subformula_at(formula: Formula, path: Path) -> Formula:
    for step in path:
        if isinstance(formula, Not):
            formula = formula.body
        else:
            formula = formula.left if step == 0 else formula.right
    return formula


def describe_valuation(formula: Formula, s: FidelStructure, v: PropValuation) -> Dict[str, str]:
    label = s.algebra.label
    described = {name: label(value) for name, value in v.var_map.items()}
    for path, value in sorted(v.neg_map.items()):
        key = pretty_print(subformula_at(formula, path))
        if key in described and described[key] != label(value):
            key = f"{key}@{''.join(map(str, path))}"
        described[key] = label(value)
    return described


def _instances(formula: Formula, depth: int) -> List[Formula]:
    """Instances of a schema: its metavariables replaced by formulas over two atoms, up to depth."""
    atoms: List[Formula] = [PropVar("p"), PropVar("q")]
    pool = list(atoms)
    frontier = list(atoms)
    for _ in range(depth):
        grown = [Not(f) for f in frontier]
        grown += [op(f, g) for op in (And, Or, Implies) for f in frontier for g in atoms]
        pool += grown
        frontier = grown
    metavariables = sorted(prop_vars(formula))
    instances = []
    for chosen in product(pool, repeat=len(metavariables)):
        instances.append(_instantiate(formula, dict(zip(metavariables, chosen))))
    return instances


def _instantiate(formula: Formula, mapping: Dict[str, Formula]) -> Formula:
    if isinstance(formula, PropVar):
        return mapping.get(formula.name, formula)
    if isinstance(formula, Not):
        return Not(_instantiate(formula.body, mapping))
    return type(formula)(_instantiate(formula.left, mapping), _instantiate(formula.right, mapping))


def check_formula(formula: Formula, s: FidelStructure, check: str = "formula") -> Verdict:
    """Valid iff every admissible valuation sends the formula to the top."""
    checked = 0
    top = s.algebra.top
    for value, valuation in _evaluated_valuations(formula, s):
        checked += 1
        if value != top:
            return Verdict(
                check=check,
                verdict=constant.COUNTEREXAMPLE,
                witness=describe_valuation(formula, s, valuation),
                values={pretty_print(formula): s.algebra.label(value)},
                checked=checked,
                subject=valuation,
            )
    return Verdict(check=check, verdict=constant.VALID, checked=checked)


def check_schema(schema: str, s: FidelStructure, depth: int = 0) -> Verdict:
    formula = schema_formula(schema)
    logging.info({"event": "check_started", "check": schema, "structure": s.name, "depth": depth})
    if depth == 0:
        verdict = check_formula(formula, s, check=schema)
    else:
        checked = 0
        verdict = None
        for instance in _instances(formula, depth):
            verdict = check_formula(instance, s, check=schema)
            checked += verdict.checked
            if not verdict.valid:
                verdict.notes.append(f"instance {pretty_print(instance)}")
                break
        verdict.checked = checked
    if not verdict.valid:
        logging.info({"event": "counterexample_found", "check": schema, "structure": s.name, "witness": verdict.witness})
    logging.info({"event": "check_completed", "check": schema, "verdict": verdict.verdict, "checked": verdict.checked})
    return verdict


def find_paraconsistency_witness(s: FidelStructure) -> Optional[Tuple[PropValuation, Formula]]:
    """A valuation refuting (~alpha & alpha) -> beta, or None if negation explodes in s."""
    formula = parse_prop_formula(EXPLOSION, source="explosion")
    verdict = check_formula(formula, s, check="paraconsistency")
    if verdict.valid:
        return None
    return verdict.subject, formula


def classify_extensions(s: FidelStructure, max_n: int = 6) -> ExtensionProfile:
    """Smallest n <= max_n with G_n valid, and whether L is valid."""
    smallest = None
    for n in range(2, max_n + 1):
        if check_formula(gn_formula(n), s, check=f"g{n}").valid:
            smallest = n
            break
    return ExtensionProfile(
        smallest_gn=smallest,
        linear=check_schema("l", s).valid,
        checked_up_to=max_n,
    )


def check_all(s: FidelStructure, schemas: Sequence[str] = constant.SCHEMAS, depth: int = 0) -> List[Verdict]:
    return [check_schema(schema, s, depth) for schema in schemas]
