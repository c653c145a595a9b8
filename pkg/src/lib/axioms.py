"""Bounded-rank verifiers for the set-theoretic axioms.

Each verifier builds the witness name the validity proof constructs and compares
truth values over V_<=K. Positions are enumerated when the work fits under
`exhaustive_limit` and drawn from a seeded generator otherwise.
"""

import logging
from itertools import product
from math import prod
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.config import config
from src.lib.errors import ScopeError, UniverseTooLarge
from src.lib.evaluator import EvalContext, eval_formula, log_violations
from src.lib.formula import BExists, BForall, Const, Equal, Exists, Forall, Implies, Member, Not, Var, substitute
from src.lib.lattice import Element
from src.lib.names import Name
from src.lib.zfcheck import FormulaTemplate, X, Y, generate_binary_templates, generate_templates
from src.models.report import AxiomCheckResult
from src.utils import constant

APPROXIMATION = {
    "extensionality": (
        "forall z read over V_<=K; dom(u) and dom(v) lie inside V_<=K so both inequalities are exact"
    ),
    "pairing": "z ranges over V_<=K; the witness {u: 1, v: 1} is exact at every bound",
    "collection": "exists y read over V_<=K on both sides; the bounding name is the universal name of rank K",
    "powerset": "v ranges over V_<=K; the witness holds every function dom(u) -> A",
    "separation": "z ranges over V_<=K; u ranges over V_<=K plus the universal name of rank K",
    "empty-set": "one universal witness for every z in V_<=K",
    "union": "y ranges over V_<=K; the witness is weighted by u(v)",
    "infinity": "omega unfolded to the numerals 0..N_max",
    "induction": "forall x read over V_<=K; the rank recursion stays inside V_<=K",
}


class AxiomVerifier:
    def __init__(
        self,
        ctx: EvalContext,
        templates: Optional[Sequence[FormulaTemplate]] = None,
        depth: int = 1,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        infinity_bound: Optional[int] = None,
        binary_templates: Optional[Sequence[FormulaTemplate]] = None,
    ):
        self.ctx = ctx
        self.algebra = ctx.algebra
        self.store = ctx.store
        self.rank = ctx.rank
        self.depth = depth
        self.names = ctx.domain
        self.samples = samples or config.get("default_samples", 10000)
        self.seed = config.get("default_seed", 20240611) if seed is None else seed
        self.limit = config.get("exhaustive_limit", 65536)
        self.infinity_bound = infinity_bound or config.get("infinity_bound", 8)
        self._templates = list(templates) if templates is not None else None
        self._binary = list(binary_templates) if binary_templates is not None else None
        self.custom_family = templates is not None

    @property
    def templates(self) -> List[FormulaTemplate]:
        if self._templates is None:
            self._templates = generate_templates(self.depth, self.rank, self.store)
        return self._templates

    @property
    def binary_templates(self) -> List[FormulaTemplate]:
        if self._binary is None:
            self._binary = generate_binary_templates(self.depth, self.rank, self.store)
        return self._binary

    def prepare(self):
        """Build the shared template families and the universal name before verifiers run side by side."""
        self.store.universal_name(self.rank)
        return self.templates, self.binary_templates

    def family(self, binary: bool = False) -> str:
        family = self.binary_templates if binary else self.templates
        if self.custom_family and not binary:
            return "; ".join(t.text for t in family)
        kind = "binary templates" if binary else "templates"
        return f"{len(family)} {kind} of depth <= {self.depth} over V_<={self.rank}"

    def positions(self, sizes: Sequence[int], inner: int = 1) -> Tuple[Iterator[Tuple[int, ...]], bool]:
        """Index tuples over `sizes`: all of them, or a seeded sample when the work would exceed the limit."""
        if prod(sizes) * inner <= self.limit:
            return product(*(range(size) for size in sizes)), False
        rng = np.random.default_rng(self.seed)
        draws = rng.integers(0, sizes, size=(self.samples, len(sizes)))
        return map(tuple, draws.tolist()), True

    def result(self, axiom: str, checked: int, sampled: bool, **fields) -> AxiomCheckResult:
        notes = fields.pop("notes", [])
        if sampled:
            notes = [f"sampled {self.samples} positions"] + notes
        return AxiomCheckResult(
            axiom=axiom,
            rank=self.rank,
            policy=self.ctx.policy.value,
            seed=self.seed if sampled else None,
            checked=checked,
            approximation=APPROXIMATION[axiom],
            notes=notes,
            **fields,
        )

    def failure(self, axiom: str, checked: int, sampled: bool, witness: Dict[str, str], values, **fields):
        label = self.algebra.label
        return self.result(
            axiom,
            checked,
            sampled,
            verdict=constant.COUNTEREXAMPLE,
            witness=witness,
            values={key: label(value) for key, value in values.items()},
            **fields,
        )

    def render(self, name: Name) -> str:
        if name is self.store.universal_name(self.rank):
            return f"univ({self.rank})"
        return name.render()

    # Verifiers

    def extensionality(self) -> AxiomCheckResult:
        algebra, ctx, names = self.algebra, self.ctx, self.names
        mem = ctx.truth_membership
        indices, sampled = self.positions([len(names)] * 2, inner=len(names))
        checked = 0
        for i, j in indices:
            u, v = names[i], names[j]
            checked += 1
            equal = ctx.truth_equality(u, v)
            same = [algebra.iff(mem(z, u), mem(z, v)) for z in names]
            extensional = algebra.big_meet(same)
            if not algebra.leq(extensional, equal):
                return self.failure(
                    "extensionality",
                    checked,
                    sampled,
                    {"u": self.render(u), "v": self.render(v)},
                    {"forall z (z in u <-> z in v)": extensional, "u eq v": equal},
                )
            for z, value in zip(names, same):
                if not algebra.leq(equal, value):
                    return self.failure(
                        "extensionality",
                        checked,
                        sampled,
                        {"u": self.render(u), "v": self.render(v), "z": z.render()},
                        {"u eq v": equal, "z in u <-> z in v": value},
                    )
        return self.result("extensionality", checked, sampled)

    def pairing(self) -> AxiomCheckResult:
        algebra, ctx, names = self.algebra, self.ctx, self.names
        top = algebra.top
        indices, sampled = self.positions([len(names)] * 2, inner=len(names))
        checked = 0
        for i, j in indices:
            u, v = names[i], names[j]
            w = self.store.make_name([(u, top), (v, top)])
            for z in names:
                checked += 1
                inside = ctx.truth_membership(z, w)
                expected = algebra.join(ctx.truth_equality(z, u), ctx.truth_equality(z, v))
                if inside != expected:
                    return self.failure(
                        "pairing",
                        checked,
                        sampled,
                        {"u": self.render(u), "v": self.render(v), "z": z.render(), "w": w.render()},
                        {"z in w": inside, "z eq u | z eq v": expected},
                    )
        return self.result("pairing", checked, sampled)

    def powerset_witness(self, u: Name) -> Name:
        """w with every function f: dom(u) -> A in its domain, valued ||forall y in f (y in u)||."""
        dom = u.dom
        c = Const(u)
        entries = []
        for values in product(self.algebra.elements, repeat=len(dom)):
            f = self.store.make_name(zip(dom, values))
            weight = eval_formula(BForall(Y, Var(X), Member(Var(Y), c)), self.ctx, {X: f})
            entries.append((f, weight))
        return self.store.make_name(entries)

    def powerset(self) -> AxiomCheckResult:
        ctx, names = self.ctx, self.names
        functions = len(self.algebra) ** max(len(u.dom) for u in names)
        indices, sampled = self.positions([len(names)] * 2, inner=functions)
        witnesses: Dict[int, Name] = {}
        checked = 0
        for i, j in indices:
            u, v = names[i], names[j]
            if u.id not in witnesses:
                witnesses[u.id] = self.powerset_witness(u)
            w = witnesses[u.id]
            checked += 1
            inside = ctx.truth_membership(v, w)
            subset = eval_formula(BForall(Y, Const(v), Member(Var(Y), Const(u))), ctx)
            if inside != subset:
                return self.failure(
                    "powerset",
                    checked,
                    sampled,
                    {"u": self.render(u), "v": v.render()},
                    {"v in w": inside, "forall y in v (y in u)": subset},
                )
        return self.result("powerset", checked, sampled)

    def union_witness(self, u: Name, weighted: bool = True) -> Name:
        algebra = self.algebra
        weights: Dict[int, Element] = {}
        children: Dict[int, Name] = {}
        for v, outer in u.entries:
            for x, inner in v.entries:
                value = algebra.meet(outer, inner) if weighted else inner
                weights[x.id] = algebra.join(weights.get(x.id, algebra.bottom), value)
                children[x.id] = x
        return self.store.make_name((children[key], weights[key]) for key in sorted(children))

    def union(self) -> AxiomCheckResult:
        ctx, names = self.ctx, self.names
        indices, sampled = self.positions([len(names)] * 2)
        checked = literal_misses = 0
        for i, j in indices:
            u, y = names[i], names[j]
            checked += 1
            inside = ctx.truth_membership(y, self.union_witness(u))
            expected = eval_formula(BExists(X, Const(u), Member(Const(y), Var(X))), ctx)
            if ctx.truth_membership(y, self.union_witness(u, weighted=False)) != expected:
                literal_misses += 1
            if inside != expected:
                return self.failure(
                    "union",
                    checked,
                    sampled,
                    {"u": self.render(u), "y": y.render()},
                    {"y in w": inside, "exists v in u (y in v)": expected},
                )
        notes = [f"unweighted witness disagrees at {literal_misses} of {checked} positions"]
        return self.result("union", checked, sampled, notes=notes)

    def separation_witness(self, u: Name, template: FormulaTemplate) -> Name:
        ctx = self.ctx
        return self.store.make_name(
            (
                x,
                self.algebra.meet(
                    ctx.truth_membership(x, u), eval_formula(template.formula, ctx, {template.var: x})
                ),
            )
            for x in u.dom
        )

    def separation(self) -> AxiomCheckResult:
        ctx, names = self.ctx, self.names
        algebra = self.algebra
        parameters = names + [self.store.universal_name(self.rank)]
        templates = self.templates
        indices, sampled = self.positions([len(templates), len(parameters)], inner=len(names))
        checked = 0
        for t, i in indices:
            template, u = templates[t], parameters[i]
            w = self.separation_witness(u, template)
            for z in names:
                checked += 1
                inside = ctx.truth_membership(z, w)
                expected = algebra.meet(
                    ctx.truth_membership(z, u), eval_formula(template.formula, ctx, {template.var: z})
                )
                if inside != expected:
                    notes = []
                    try:
                        count = separation_brute_force(u, template, ctx)
                        notes.append(f"{count} names w with dom(w) = dom(u) separate u by phi")
                    except UniverseTooLarge:
                        notes.append("too many candidate witnesses for a brute-force cross-check")
                    return self.failure(
                        "separation",
                        checked,
                        sampled,
                        {"u": self.render(u), "phi": template.text, "z": z.render(), "w": w.render()},
                        {"z in w": inside, "z in u & phi(z)": expected},
                        family=self.family(),
                        notes=notes,
                        subject=(u, template, w),
                    )
        return self.result("separation", checked, sampled, family=self.family())

    def empty_set(self) -> AxiomCheckResult:
        algebra, ctx, names = self.algebra, self.ctx, self.names
        w = self.store.universal_name(self.rank)
        z = Var("z")
        irreflexive = Not(Equal(z, z))
        checked = per_element = 0
        failure = None
        for name in names:
            checked += 1
            negated = eval_formula(irreflexive, ctx, {"z": name})
            # The per-element construction: w = {name: ||~(name eq name)||}.
            single = self.store.make_name([(name, negated)])
            if algebra.iff(ctx.truth_membership(name, single), negated) == algebra.top:
                per_element += 1
            value = algebra.iff(ctx.truth_membership(name, w), negated)
            if failure is None and value != algebra.top:
                failure = (checked, name, negated, value)
        notes = [f"per-element witnesses hold for {per_element} of {len(names)} names"]
        if failure is not None:
            at, name, negated, value = failure
            return self.failure(
                "empty-set",
                at,
                False,
                {"z": name.render(), "w": self.render(w)},
                {"~(z eq z)": negated, "z in w <-> ~(z eq z)": value},
                notes=notes,
            )
        return self.result("empty-set", checked, False, notes=notes)

    def infinity(self) -> AxiomCheckResult:
        algebra, ctx = self.algebra, self.ctx
        bound = self.infinity_bound
        numerals = [self.store.von_neumann(n) for n in range(bound + 1)]
        omega = self.store.make_name((numeral, algebra.top) for numeral in numerals)
        checked = 0
        for n, numeral in enumerate(numerals):
            checked += 1
            value = ctx.truth_membership(numeral, omega)
            if value != algebra.top:
                label = "0 in omega" if n == 0 else f"{n - 1}+ in omega"
                return self.failure("infinity", checked, False, {"numeral": str(n)}, {label: value})
        return self.result(
            "infinity",
            checked,
            False,
            verdict=constant.VALID_UP_TO_BOUND,
            notes=[f"N_max = {bound}"],
        )

    def collection(self) -> AxiomCheckResult:
        ctx, names = self.ctx, self.names
        v = Const(self.store.universal_name(self.rank))
        templates = self.binary_templates
        indices, sampled = self.positions([len(templates), len(names)], inner=len(names) ** 2)
        checked = 0
        for t, i in indices:
            template, u = templates[t], Const(names[i])
            checked += 1
            unbounded = eval_formula(BForall(X, u, Exists(Y, template.formula)), ctx)
            bounded = eval_formula(BForall(X, u, BExists(Y, v, template.formula)), ctx)
            if unbounded != bounded:
                return self.failure(
                    "collection",
                    checked,
                    sampled,
                    {"u": self.render(names[i]), "phi": template.text},
                    {"forall x in u exists y phi": unbounded, "forall x in u exists y in v phi": bounded},
                    family=self.family(binary=True),
                )
        return self.result("collection", checked, sampled, family=self.family(binary=True))

    def induction(self) -> AxiomCheckResult:
        algebra, ctx, names = self.algebra, self.ctx, self.names
        templates = self.templates
        indices, sampled = self.positions([len(templates)], inner=len(names) ** 2)
        checked = 0
        for (t,) in indices:
            template = templates[t]
            below = substitute(template.formula, template.var, Var("t"))
            hypothesis = Forall(
                template.var, Implies(BForall("t", Var(template.var), below), template.formula)
            )
            progressive = eval_formula(hypothesis, ctx)
            for x in names:
                checked += 1
                value = eval_formula(template.formula, ctx, {template.var: x})
                if not algebra.leq(progressive, value):
                    return self.failure(
                        "induction",
                        checked,
                        sampled,
                        {"phi": template.text, "x": x.render()},
                        {"forall x ((forall y in x phi(y)) -> phi(x))": progressive, "phi(x)": value},
                        family=self.family(),
                    )
        return self.result("induction", checked, sampled, family=self.family())

    def run(self, axiom: str) -> AxiomCheckResult:
        verifier: Optional[Callable[[], AxiomCheckResult]] = getattr(self, axiom.replace("-", "_"), None)
        if axiom not in constant.AXIOMS or verifier is None:
            raise ScopeError(f"unknown axiom '{axiom}'; use one of {', '.join(constant.AXIOMS)}")
        logging.info(
            {
                "event": "check_started",
                "check": axiom,
                "structure": self.ctx.structure.name,
                "policy": self.ctx.policy.value,
                "rank": self.rank,
            }
        )
        result = verifier()
        if result.verdict == constant.COUNTEREXAMPLE:
            logging.info({"event": "counterexample_found", "check": axiom, "witness": result.witness})
        log_violations(self.ctx, axiom)
        logging.info({"event": "check_completed", "check": axiom, "verdict": result.verdict, "checked": result.checked})
        return result


def check_axiom(
    axiom: str,
    ctx: EvalContext,
    templates: Optional[Sequence[FormulaTemplate]] = None,
    depth: int = 1,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    infinity_bound: Optional[int] = None,
) -> AxiomCheckResult:
    verifier = AxiomVerifier(ctx, templates, depth, samples, seed, infinity_bound)
    return verifier.run(axiom)


def check_axioms(
    ctx: EvalContext,
    axioms: Sequence[str] = constant.AXIOMS,
    templates: Optional[Sequence[FormulaTemplate]] = None,
    depth: int = 1,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    infinity_bound: Optional[int] = None,
) -> List[AxiomCheckResult]:
    """Every requested axiom over one shared verifier, so template families are built once."""
    verifier = AxiomVerifier(ctx, templates, depth, samples, seed, infinity_bound)
    return [verifier.run(axiom) for axiom in axioms]


def separation_brute_force(u: Name, template: FormulaTemplate, ctx: EvalContext) -> int:
    """Number of names w with dom(w) = dom(u) making forall z (z in w <-> z in u & phi(z)) the top."""
    algebra = ctx.algebra
    dom = u.dom
    candidates = len(algebra) ** len(dom)
    limit = config.get("exhaustive_limit", 65536)
    if candidates > limit:
        raise UniverseTooLarge(ctx.rank, candidates, limit)
    names = ctx.domain
    targets = [
        algebra.meet(ctx.truth_membership(z, u), eval_formula(template.formula, ctx, {template.var: z}))
        for z in names
    ]
    found = 0
    for values in product(algebra.elements, repeat=len(dom)):
        w = ctx.store.make_name(zip(dom, values))
        agreement = algebra.big_meet(
            algebra.iff(ctx.truth_membership(z, w), target) for z, target in zip(names, targets)
        )
        if agreement == algebra.top:
            found += 1
    return found
