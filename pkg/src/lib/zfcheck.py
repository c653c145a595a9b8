import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from src.config import config
from src.lib.errors import ScopeError
from src.lib.evaluator import EvalContext, NegationPolicy, eval_formula
from src.lib.fidel import FidelStructure
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
    Var,
    free_vars,
    is_negation_free,
    is_restricted,
    map_terms,
    substitute,
)
from src.lib.lattice import Element
from src.lib.names import Name, NameStore, hereditarily_finite_sets
from src.lib.parser import pretty_print
from src.models.report import Verdict
from src.utils import constant

X = "x"
Y = "y"


@dataclass(frozen=True)
class FormulaTemplate:
    """A formula whose only free variable is `var` (two for binary templates)."""

    formula: Formula
    depth: int
    var: str = X

    @property
    def text(self) -> str:
        return pretty_print(self.formula)

    def instantiate(self, name: Name) -> Formula:
        return substitute(self.formula, self.var, Const(name))


def _atoms(var: str, parameters: Sequence[Name]) -> List[Formula]:
    x = Var(var)
    atoms = []
    for p in parameters:
        c = Const(p)
        atoms += [Member(c, x), Member(x, c), Equal(x, c), Equal(c, x)]
    return atoms


def generate_templates(depth: int, rank: int, store: NameStore, var: str = X) -> List[FormulaTemplate]:
    """Deterministic template family over parameters from V_<=rank.

    Depth 0 holds p in x, x in p, x eq p, p eq x for every parameter p. Each further
    depth adds, for every member new at the previous depth, its negation and double
    negation, its conjunction, disjunction and implication with every atom, and the
    bounded quantifications over x of the member.
    """
    atoms = _atoms(var, store.universe(rank))
    family = [FormulaTemplate(atom, 0, var) for atom in atoms]
    frontier = atoms
    for level in range(1, depth + 1):
        bound = f"{Y}{level}"
        grown: List[Formula] = []
        for f in frontier:
            grown += [Not(f), Not(Not(f))]
        for f in frontier:
            for atom in atoms:
                grown += [And(f, atom), Or(f, atom), Implies(f, atom)]
        for f in frontier:
            inner = substitute(f, var, Var(bound))
            grown += [BExists(bound, Var(var), inner), BForall(bound, Var(var), inner)]
        family += [FormulaTemplate(f, level, var) for f in grown]
        frontier = grown
    return family


def generate_binary_templates(depth: int, rank: int, store: NameStore) -> List[FormulaTemplate]:
    """Templates in x and y: the relational atoms plus the unary family read in y."""
    x, y = Var(X), Var(Y)
    atoms = [Member(x, y), Member(y, x), Equal(x, y), Equal(y, x)] + _atoms(Y, store.universe(rank))
    family = [FormulaTemplate(atom, 0) for atom in atoms]
    if depth >= 1:
        family += [FormulaTemplate(Not(atom), 1) for atom in atoms]
        family += [FormulaTemplate(Not(Not(atom)), 1) for atom in atoms]
    return family


def _values(template: FormulaTemplate, names: Sequence[Name], ctx: EvalContext) -> List[Element]:
    env = {}
    values = []
    for name in names:
        env[template.var] = name
        values.append(eval_formula(template.formula, ctx, env))
    return values


def _started(check: str, ctx: EvalContext, **extra):
    logging.info(
        {
            "event": "check_started",
            "check": check,
            "structure": ctx.structure.name,
            "policy": ctx.policy.value,
            "rank": ctx.rank,
            **extra,
        }
    )


def _completed(check: str, verdict: Verdict):
    if verdict.verdict == constant.COUNTEREXAMPLE:
        logging.info({"event": "counterexample_found", "check": check, "witness": verdict.witness})
    logging.info({"event": "check_completed", "check": check, "verdict": verdict.verdict, "checked": verdict.checked})
    return verdict


def _leibniz_failure(ctx, u, v, template, equal, left, right) -> Verdict:
    label = ctx.algebra.label
    return Verdict(
        check="leibniz",
        verdict=constant.COUNTEREXAMPLE,
        witness={"u": u.render(), "v": v.render(), "phi": template.text},
        values={"u eq v": label(equal), "phi(u)": label(left), "phi(v)": label(right)},
        subject=(u, v, template),
    )


def check_leibniz(
    ctx: EvalContext,
    templates: Sequence[FormulaTemplate],
    rank: Optional[int] = None,
    negation_free_only: bool = False,
) -> Verdict:
    """||u eq v|| & ||phi(u)|| <= ||phi(v)|| for every u, v in V_<=rank and every template."""
    rank = rank or ctx.rank
    _started("leibniz", ctx, templates=len(templates))
    algebra = ctx.algebra
    names = ctx.store.universe(rank)
    equal = [[ctx.truth_equality(u, v) for v in names] for u in names]
    if negation_free_only:
        templates = [t for t in templates if is_negation_free(t.formula)]

    checked = 0
    for template in templates:
        values = _values(template, names, ctx)
        for i, u in enumerate(names):
            for j, v in enumerate(names):
                checked += 1
                if not algebra.leq(algebra.meet(equal[i][j], values[i]), values[j]):
                    verdict = _leibniz_failure(ctx, u, v, template, equal[i][j], values[i], values[j])
                    verdict.checked = checked
                    return _completed("leibniz", verdict)
    return _completed("leibniz", Verdict(check="leibniz", checked=checked))


def sample_leibniz(
    ctx: EvalContext,
    templates: Sequence[FormulaTemplate],
    rank: int,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Verdict:
    """Leibniz over sampled (u, v, phi) triples with u, v drawn uniformly from V_<=rank."""
    samples = samples or config.get("default_samples", 10000)
    seed = config.get("default_seed", 20240611) if seed is None else seed
    _started("leibniz-sampled", ctx, samples=samples, seed=seed)
    algebra = ctx.algebra
    rng = np.random.default_rng(seed)
    us = ctx.store.sample(rank, rng, samples)
    vs = ctx.store.sample(rank, rng, samples)
    picks = rng.integers(0, len(templates), size=samples).tolist()

    for checked, (u, v, pick) in enumerate(zip(us, vs, picks), start=1):
        template = templates[pick]
        equal = ctx.truth_equality(u, v)
        left = eval_formula(template.formula, ctx, {template.var: u})
        right = eval_formula(template.formula, ctx, {template.var: v})
        if not algebra.leq(algebra.meet(equal, left), right):
            verdict = _leibniz_failure(ctx, u, v, template, equal, left, right)
            verdict.checked = checked
            verdict.seed = seed
            return _completed("leibniz-sampled", verdict)
    verdict = Verdict(check="leibniz-sampled", checked=samples, seed=seed, notes=[f"names sampled from rank {rank}"])
    return _completed("leibniz-sampled", verdict)


def check_mixing(ctx: EvalContext, trials: int = 1000, seed: Optional[int] = None) -> Verdict:
    """a_i <= ||u_i eq mixture|| for families with a_i & a_j <= ||u_i eq u_j||."""
    seed = config.get("default_seed", 20240611) if seed is None else seed
    _started("mixing", ctx, trials=trials, seed=seed)
    algebra = ctx.algebra
    label = algebra.label
    rng = np.random.default_rng(seed)
    names = ctx.domain

    checked = skipped = 0
    attempts = 0
    while checked < trials and attempts < 20 * trials:
        attempts += 1
        size = int(rng.integers(1, 4))
        weights = rng.integers(0, len(algebra), size=size).tolist()
        members = [names[i] for i in rng.integers(0, len(names), size=size).tolist()]
        compatible = all(
            algebra.leq(algebra.meet(weights[i], weights[j]), ctx.truth_equality(members[i], members[j]))
            for i in range(size)
            for j in range(i + 1, size)
        )
        if not compatible:
            skipped += 1
            continue
        checked += 1
        mixed = ctx.store.mixture(list(zip(weights, members)), ctx)
        for weight, member in zip(weights, members):
            equal = ctx.truth_equality(member, mixed)
            if not algebra.leq(weight, equal):
                verdict = Verdict(
                    check="mixing",
                    verdict=constant.COUNTEREXAMPLE,
                    witness={
                        "family": ", ".join(f"{label(w)}*{m.render()}" for w, m in zip(weights, members)),
                        "u_i": member.render(),
                        "mixture": mixed.render(),
                    },
                    values={"a_i": label(weight), "u_i eq mixture": label(equal)},
                    checked=checked,
                    skipped=skipped,
                    seed=seed,
                )
                return _completed("mixing", verdict)
    return _completed("mixing", Verdict(check="mixing", checked=checked, skipped=skipped, seed=seed))


def maximum_principle_witness(
    template: FormulaTemplate, ctx: EvalContext, rank: Optional[int] = None
) -> Optional[Name]:
    """A name u with ||psi(u)|| = 1 built as a mixture over a refined antichain, or None.

    None when ||exists x psi(x)|| < 1 at the bound, or when the mixture does not
    reach the top.
    """
    algebra = ctx.algebra
    names = ctx.store.universe(rank or ctx.rank)
    values = _values(template, names, ctx)
    if algebra.big_join(values) != algebra.top:
        return None

    antichain = sorted(algebra.refine_antichain(values))
    picks = [names[values.index(a)] for a in antichain]
    if algebra.top in antichain:
        pairs = [(algebra.top, names[values.index(algebra.top)])]
    else:
        # Disjoint weights satisfy the mixing precondition without any equality.
        pairs = []
        covered = algebra.bottom
        for a, v in zip(antichain, picks):
            rest = algebra.complement(covered)
            if rest is None:
                return None
            pairs.append((algebra.meet(a, rest), v))
            covered = algebra.join(covered, a)

    witness = ctx.store.mixture(pairs, ctx)
    if eval_formula(template.formula, ctx, {template.var: witness}) != algebra.top:
        return None
    return witness


# Runnable forms of the identity, hat and bounded-quantifier properties.


def _triples(names: Sequence[Name], ctx: EvalContext, samples: int, seed: int, limit: int):
    if len(names) ** 3 <= limit:
        return product(names, repeat=3), False
    rng = np.random.default_rng(seed)
    rank = max(name.rank for name in names)
    drawn = ctx.store.sample(rank, rng, 3 * samples)
    return zip(drawn[0::3], drawn[1::3], drawn[2::3]), True


def check_identity_laws(
    ctx: EvalContext,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    rank: Optional[int] = None,
) -> Verdict:
    """||u eq u|| = 1; u(x) <= ||x in u||; symmetry; transitivity; substitutivity of membership."""
    samples = samples or config.get("default_samples", 10000)
    seed = config.get("default_seed", 20240611) if seed is None else seed
    limit = config.get("exhaustive_limit", 65536)
    _started("identity-laws", ctx)
    algebra = ctx.algebra
    label = algebra.label
    leq, meet = algebra.leq, algebra.meet
    mem, eq = ctx.truth_membership, ctx.truth_equality

    triples, sampled = _triples(ctx.store.universe(rank or ctx.rank), ctx, samples, seed, limit)
    checked = 0

    def failure(law, witness, values):
        return Verdict(
            check="identity-laws",
            verdict=constant.COUNTEREXAMPLE,
            witness={"law": law, **{k: n.render() for k, n in witness.items()}},
            values={k: label(v) for k, v in values.items()},
            checked=checked,
            seed=seed if sampled else None,
        )

    for u, v, w in triples:
        checked += 1
        if eq(u, u) != algebra.top:
            return _completed("identity-laws", failure("reflexivity", {"u": u}, {"u eq u": eq(u, u)}))
        for x, weight in u.entries:
            if not leq(weight, mem(x, u)):
                return _completed(
                    "identity-laws",
                    failure("membership-bound", {"u": u, "x": x}, {"u(x)": weight, "x in u": mem(x, u)}),
                )
        if eq(u, v) != eq(v, u):
            return _completed(
                "identity-laws", failure("symmetry", {"u": u, "v": v}, {"u eq v": eq(u, v), "v eq u": eq(v, u)})
            )
        if not leq(meet(eq(u, v), eq(v, w)), eq(u, w)):
            return _completed(
                "identity-laws",
                failure(
                    "transitivity",
                    {"u": u, "v": v, "w": w},
                    {"u eq v": eq(u, v), "v eq w": eq(v, w), "u eq w": eq(u, w)},
                ),
            )
        if not leq(meet(eq(u, v), mem(u, w)), mem(v, w)):
            return _completed(
                "identity-laws",
                failure(
                    "substitutivity",
                    {"u": u, "v": v, "w": w},
                    {"u eq v": eq(u, v), "u in w": mem(u, w), "v in w": mem(v, w)},
                ),
            )
    notes = [f"sampled {samples} triples"] if sampled else ["all triples"]
    return _completed(
        "identity-laws", Verdict(check="identity-laws", checked=checked, seed=seed if sampled else None, notes=notes)
    )


def check_hat_lemma(ctx: EvalContext, depth: int = 3) -> Verdict:
    """Canonical names reflect membership and equality of hereditarily finite sets exactly."""
    _started("hat-lemma", ctx, depth=depth)
    algebra = ctx.algebra
    top = algebra.top
    sets = hereditarily_finite_sets(depth)
    hats = [ctx.store.hat(s) for s in sets]
    checked = 0

    def failure(law, witness):
        return Verdict(check="hat-lemma", verdict=constant.COUNTEREXAMPLE, witness={"law": law, **witness}, checked=checked)

    if len({h.id for h in hats}) != len(hats):
        return _completed("hat-lemma", failure("injective", {"sets": str(len(sets))}))

    for (a, hat_a), (b, hat_b) in product(zip(sets, hats), repeat=2):
        checked += 1
        if (a in b) != (ctx.truth_membership(hat_a, hat_b) == top):
            return _completed("hat-lemma", failure("membership", {"u": hat_a.render(), "v": hat_b.render()}))
        if (a == b) != (ctx.truth_equality(hat_a, hat_b) == top):
            return _completed("hat-lemma", failure("equality", {"u": hat_a.render(), "v": hat_b.render()}))

    for u in ctx.domain:
        for b, hat_b in zip(sets, hats):
            checked += 1
            expected = algebra.big_join(ctx.truth_equality(u, ctx.store.hat(x)) for x in b)
            if ctx.truth_membership(u, hat_b) != expected:
                return _completed("hat-lemma", failure("membership-join", {"u": u.render(), "v": hat_b.render()}))
    return _completed("hat-lemma", Verdict(check="hat-lemma", checked=checked, notes=[f"{len(sets)} sets"]))


def check_bounded_exactness(ctx: EvalContext, templates: Sequence[FormulaTemplate]) -> Verdict:
    """exists z (z in u & phi(z)) and forall z (z in u -> phi(z)) at the bound match their dom(u) forms."""
    _started("bounded-exactness", ctx, templates=len(templates))
    label = ctx.algebra.label
    z = Var("z")
    checked = 0
    for template in templates:
        body = substitute(template.formula, template.var, z)
        for u in ctx.domain:
            c = Const(u)
            pairs = (
                (Exists("z", And(Member(z, c), body)), BExists("z", c, body)),
                (Forall("z", Implies(Member(z, c), body)), BForall("z", c, body)),
            )
            for unfolded, bounded in pairs:
                checked += 1
                wide, exact = eval_formula(unfolded, ctx), eval_formula(bounded, ctx)
                if wide != exact:
                    verdict = Verdict(
                        check="bounded-exactness",
                        verdict=constant.COUNTEREXAMPLE,
                        witness={"u": u.render(), "formula": pretty_print(bounded)},
                        values={"unfolded": label(wide), "bounded": label(exact)},
                        checked=checked,
                    )
                    return _completed("bounded-exactness", verdict)
    return _completed("bounded-exactness", Verdict(check="bounded-exactness", checked=checked))


def check_monotonicity(
    structure: FidelStructure,
    policy: NegationPolicy,
    templates: Sequence[FormulaTemplate],
    ranks: Sequence[int] = (1, 2),
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    store: Optional[NameStore] = None,
) -> Verdict:
    """exists x phi can only grow with the bound, forall x phi can only shrink."""
    seed = config.get("default_seed", 20240611) if seed is None else seed
    contexts = []
    for rank in ranks:
        context = EvalContext(structure, policy, rank, store=store or (contexts[0].store if contexts else None))
        if contexts:
            context.memo = contexts[0].memo
        contexts.append(context)
    _started("monotonicity", contexts[0], ranks=list(ranks))
    algebra = structure.algebra
    label = algebra.label

    family = list(templates)
    sampled = samples is not None and len(family) > samples
    if sampled:
        rng = np.random.default_rng(seed)
        family = [family[i] for i in sorted(rng.choice(len(family), size=samples, replace=False).tolist())]

    checked = 0
    for template in family:
        for kind, grows in ((Exists, True), (Forall, False)):
            formula = kind(template.var, template.formula)
            values = [eval_formula(formula, context) for context in contexts]
            for (low_rank, low), (high_rank, high) in zip(zip(ranks, values), zip(ranks[1:], values[1:])):
                checked += 1
                ok = algebra.leq(low, high) if grows else algebra.leq(high, low)
                if not ok:
                    verdict = Verdict(
                        check="monotonicity",
                        verdict=constant.COUNTEREXAMPLE,
                        witness={"formula": pretty_print(formula)},
                        values={f"rank {low_rank}": label(low), f"rank {high_rank}": label(high)},
                        checked=checked,
                    )
                    return _completed("monotonicity", verdict)
    verdict = Verdict(check="monotonicity", checked=checked, seed=seed if sampled else None)
    return _completed("monotonicity", verdict)


def check_absoluteness(
    sub_ctx: EvalContext,
    sup_ctx: EvalContext,
    embedding: Mapping[Element, Element],
    templates: Sequence[FormulaTemplate],
) -> Verdict:
    """Restricted negation-free templates take embedded values on transported names."""
    _started("absoluteness", sub_ctx, into=sup_ctx.structure.name)
    source, target = sub_ctx.store, sup_ctx.store
    memo: Dict[int, Name] = {}

    def carry(name: Name) -> Name:
        return source.transport(name, target, embedding, memo)

    def carry_term(term):
        return Const(carry(term.name)) if isinstance(term, Const) else term

    family = [t for t in templates if is_restricted(t.formula) and is_negation_free(t.formula)]
    checked = 0
    for template in family:
        image = map_terms(template.formula, carry_term)
        for u in sub_ctx.domain:
            checked += 1
            inside = eval_formula(template.formula, sub_ctx, {template.var: u})
            outside = eval_formula(image, sup_ctx, {template.var: carry(u)})
            if embedding[inside] != outside:
                verdict = Verdict(
                    check="absoluteness",
                    verdict=constant.COUNTEREXAMPLE,
                    witness={"u": u.render(), "phi": template.text},
                    values={
                        "substructure": sub_ctx.algebra.label(inside),
                        "embedded": sup_ctx.algebra.label(embedding[inside]),
                        "superstructure": sup_ctx.algebra.label(outside),
                    },
                    checked=checked,
                )
                return _completed("absoluteness", verdict)
    return _completed("absoluteness", Verdict(check="absoluteness", checked=checked))


def unbounded_diagnostic(
    formula: Formula,
    structure: FidelStructure,
    policy: NegationPolicy = NegationPolicy.STANDARD,
    ranks: Sequence[int] = (1, 2),
) -> Verdict:
    """Values of a closed formula at increasing bounds; never conclusive about the true value."""
    if free_vars(formula):
        raise ScopeError(f"formula has free variables {sorted(free_vars(formula))}")
    store = None
    values = {}
    for rank in ranks:
        ctx = EvalContext(structure, policy, rank, store=store)
        store = ctx.store
        values[f"rank {rank}"] = ctx.algebra.label(eval_formula(formula, ctx))
    return Verdict(
        check="unbounded-diagnostic",
        verdict=constant.INCONCLUSIVE,
        witness={"formula": pretty_print(formula)},
        values=values,
        checked=len(ranks),
        notes=["unbounded exists under-approximates and unbounded forall over-approximates at every bound"],
    )
