import logging
import uuid
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from src.lib.errors import MalformedTables, NoResiduum, NotALattice, UnknownElement
from src.models.report import ValidationReport

# Carrier elements are identified by their index in Algebra.carrier.
Element = int

# Laws reported by validate_algebra, in check order.
LAWS = (
    "order-reflexive",
    "order-antisymmetric",
    "order-transitive",
    "order-agreement",
    "meet-idempotent",
    "meet-commutative",
    "meet-associative",
    "join-idempotent",
    "join-commutative",
    "join-associative",
    "absorption",
    "distributive",
    "top",
    "residuation",
)

MAX_WITNESSES_PER_LAW = 20


def _table(values, shape: Tuple[int, ...], name: str) -> np.ndarray:
    try:
        table = np.asarray(values, dtype=int)
    except (TypeError, ValueError) as e:
        raise MalformedTables(f"{name} table is not an integer array: {e}")
    if table.shape != shape:
        raise MalformedTables(f"{name} table has shape {table.shape}, expected {shape}")
    size = shape[0]
    outside = np.argwhere((table < 0) | (table >= size))
    if len(outside):
        position = tuple(int(i) for i in outside[0])
        raise MalformedTables(
            f"{name} table entry {position} = {int(table[position])} is outside the carrier of size {size}"
        )
    return table


class Algebra:
    """A finite generalized Heyting algebra held as operation tables over carrier indices.

    Tables are numpy arrays for whole-table law checks; scalar lookups go through
    plain nested lists, which is what the evaluator hits millions of times.
    """

    def __init__(
        self,
        carrier: Sequence[str],
        meet,
        join,
        imp,
        neg_op=None,
        leq=None,
        name: Optional[str] = None,
    ):
        self.carrier = tuple(str(label) for label in carrier)
        size = len(self.carrier)
        if size == 0:
            raise MalformedTables("carrier is empty")
        if len(set(self.carrier)) != size:
            raise MalformedTables("carrier labels must be distinct")

        self.name = name or "algebra"
        self.uid = uuid.uuid4().hex
        self.meet_table = _table(meet, (size, size), "meet")
        self.join_table = _table(join, (size, size), "join")
        self.imp_table = _table(imp, (size, size), "imp")
        self.neg_table = _table(neg_op, (size,), "neg_op") if neg_op is not None else None

        index = np.arange(size)
        if leq is None:
            self.leq_table = self.meet_table == index[:, None]
        else:
            self.leq_table = np.asarray(leq, dtype=bool)
            if self.leq_table.shape != (size, size):
                raise MalformedTables(f"leq table has shape {self.leq_table.shape}, expected {(size, size)}")

        self._meet = self.meet_table.tolist()
        self._join = self.join_table.tolist()
        self._imp = self.imp_table.tolist()
        self._leq = self.leq_table.tolist()
        self._neg = self.neg_table.tolist() if self.neg_table is not None else None
        self._index = {label: i for i, label in enumerate(self.carrier)}

        greatest = [t for t in range(size) if self.leq_table[:, t].all()]
        self.top: Optional[Element] = greatest[0] if greatest else None
        # Finite lattices are complete, so the meet of the whole carrier is the first element.
        self.bottom: Element = reduce(lambda a, b: self._meet[a][b], range(size))

    @classmethod
    def from_order(
        cls,
        carrier: Sequence[str],
        leq_pairs: Iterable[Tuple[str, str]],
        imp=None,
        neg_op=None,
        name: Optional[str] = None,
    ) -> "Algebra":
        leq = order_closure(carrier, leq_pairs)
        meet, join = lattice_tables(carrier, leq)
        if imp is None:
            imp = residuum_from_order(carrier, leq, meet, join)
        return cls(carrier, meet, join, imp, neg_op=neg_op, leq=leq, name=name)

    def __len__(self) -> int:
        return len(self.carrier)

    def __repr__(self) -> str:
        return f"Algebra({self.name}, carrier={list(self.carrier)})"

    @property
    def elements(self) -> range:
        return range(len(self.carrier))

    def element(self, label) -> Element:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownElement(f"'{label}' is not an element of {self.name} {list(self.carrier)}")

    def label(self, x: Element) -> str:
        return self.carrier[x]

    def check_element(self, x: Element) -> Element:
        if not 0 <= x < len(self.carrier):
            raise UnknownElement(f"index {x} is outside the carrier of {self.name}")
        return x

    def meet(self, a: Element, b: Element) -> Element:
        return self._meet[a][b]

    def join(self, a: Element, b: Element) -> Element:
        return self._join[a][b]

    def imp(self, a: Element, b: Element) -> Element:
        return self._imp[a][b]

    def leq(self, a: Element, b: Element) -> bool:
        return self._leq[a][b]

    def iff(self, a: Element, b: Element) -> Element:
        return self._meet[self._imp[a][b]][self._imp[b][a]]

    @property
    def has_negation(self) -> bool:
        return self._neg is not None

    def neg(self, a: Element) -> Element:
        if self._neg is None:
            raise MalformedTables(f"{self.name} has no negation table")
        return self._neg[a]

    def big_meet(self, elements: Iterable[Element]) -> Element:
        return reduce(lambda a, b: self._meet[a][b], elements, self.top)

    def big_join(self, elements: Iterable[Element]) -> Element:
        return reduce(lambda a, b: self._join[a][b], elements, self.bottom)

    def down_set(self, x: Element) -> Set[Element]:
        return {y for y in self.elements if self._leq[y][x]}

    def complement(self, x: Element) -> Optional[Element]:
        for y in self.elements:
            if self._meet[x][y] == self.bottom and self._join[x][y] == self.top:
                return y
        return None

    def refine_antichain(self, subset: Iterable[Element]) -> Set[Element]:
        """Maximal elements of a nonempty subset: an antichain refining it with the same join."""
        members = set(subset)
        return {
            a for a in members if not any(b != a and self._leq[a][b] for b in members)
        }

    def is_refinable(self) -> bool:
        # refine_antichain gives every subset of a finite algebra its refinement.
        return True

    def is_chain(self) -> bool:
        return all(self._leq[a][b] or self._leq[b][a] for a, b in product(self.elements, repeat=2))


def order_closure(carrier: Sequence[str], leq_pairs: Iterable[Tuple[str, str]]) -> np.ndarray:
    """Reflexive-transitive closure of a generating order relation given by label pairs."""
    labels = list(carrier)
    graph = nx.DiGraph()
    graph.add_nodes_from(labels)
    for low, high in leq_pairs:
        if low not in graph or high not in graph:
            raise MalformedTables(f"leq pair ({low}, {high}) names a label outside the carrier")
        if low != high:
            graph.add_edge(low, high)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise NotALattice(f"leq is not antisymmetric: cycle through {[edge[0] for edge in cycle]}")

    closure = nx.transitive_closure_dag(graph)
    index = {label: i for i, label in enumerate(labels)}
    leq = np.eye(len(labels), dtype=bool)
    for low, high in closure.edges:
        leq[index[low], index[high]] = True
    return leq


def lattice_tables(carrier: Sequence[str], leq: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Meet and join tables of a finite partial order; NotALattice when a bound is missing."""
    size = len(carrier)
    meet = np.zeros((size, size), dtype=int)
    join = np.zeros((size, size), dtype=int)
    for a, b in product(range(size), repeat=2):
        lower = np.flatnonzero(leq[:, a] & leq[:, b])
        glb = [c for c in lower if leq[lower, c].all()]
        upper = np.flatnonzero(leq[a, :] & leq[b, :])
        lub = [c for c in upper if leq[c, upper].all()]
        if not glb:
            raise NotALattice(f"{carrier[a]} and {carrier[b]} have no greatest lower bound")
        if not lub:
            raise NotALattice(f"{carrier[a]} and {carrier[b]} have no least upper bound")
        meet[a, b] = glb[0]
        join[a, b] = lub[0]
    return meet, join


def residuum_from_order(carrier: Sequence[str], leq, meet, join) -> np.ndarray:
    """imp(a, b) = max{c : meet(a, c) <= b}; NoResiduum when that set has no maximum."""
    leq = np.asarray(leq, dtype=bool)
    meet = np.asarray(meet, dtype=int)
    size = len(carrier)
    imp = np.zeros((size, size), dtype=int)
    for a, b in product(range(size), repeat=2):
        candidates = np.flatnonzero(leq[meet[a, :], b])
        greatest = [c for c in candidates if leq[candidates, c].all()]
        if not greatest:
            raise NoResiduum(carrier[a], carrier[b])
        imp[a, b] = greatest[0]
    return imp


def _collect(report: ValidationReport, algebra: Algebra, law: str, failures: np.ndarray, names: str):
    for position in failures[:MAX_WITNESSES_PER_LAW]:
        report.add(
            law,
            **{name: algebra.label(int(i)) for name, i in zip(names, position)},
        )


def validate_algebra(candidate: Algebra) -> ValidationReport:
    """Check every generalized Heyting algebra law exhaustively over the carrier."""
    report = ValidationReport(subject=candidate.name)
    size = len(candidate)
    m, j, i, leq = candidate.meet_table, candidate.join_table, candidate.imp_table, candidate.leq_table
    idx = np.arange(size)
    a3, b3, c3 = idx[:, None, None], idx[None, :, None], idx[None, None, :]

    _collect(report, candidate, "order-reflexive", np.argwhere(~np.diag(leq))[:, [0, 0]], "ab")
    _collect(report, candidate, "order-antisymmetric", np.argwhere(leq & leq.T & (idx[:, None] != idx[None, :])), "ab")
    _collect(report, candidate, "order-transitive", np.argwhere(leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]), "abc")
    _collect(report, candidate, "order-agreement", np.argwhere(leq != (m == idx[:, None])), "ab")

    _collect(report, candidate, "meet-idempotent", np.argwhere(m[idx, idx] != idx)[:, [0, 0]], "ab")
    _collect(report, candidate, "meet-commutative", np.argwhere(m != m.T), "ab")
    _collect(report, candidate, "meet-associative", np.argwhere(m[m[a3, b3], c3] != m[a3, m[b3, c3]]), "abc")
    _collect(report, candidate, "join-idempotent", np.argwhere(j[idx, idx] != idx)[:, [0, 0]], "ab")
    _collect(report, candidate, "join-commutative", np.argwhere(j != j.T), "ab")
    _collect(report, candidate, "join-associative", np.argwhere(j[j[a3, b3], c3] != j[a3, j[b3, c3]]), "abc")
    _collect(
        report,
        candidate,
        "absorption",
        np.argwhere((m[idx[:, None], j] != idx[:, None]) | (j[idx[:, None], m] != idx[:, None])),
        "ab",
    )
    _collect(report, candidate, "distributive", np.argwhere(m[a3, j[b3, c3]] != j[m[a3, b3], m[a3, c3]]), "abc")

    if candidate.top is None:
        report.add("top", detail="no greatest element")

    # meet(a, c) <= b  iff  c <= imp(a, b), indexed as (a, b, c).
    lhs = leq[m[a3, c3], b3]
    rhs = leq[c3, i[a3, b3]]
    _collect(report, candidate, "residuation", np.argwhere(lhs != rhs), "abc")

    logging.info(
        {
            "event": "algebra_validated",
            "algebra": candidate.name,
            "size": size,
            "violations": len(report.violations),
        }
    )
    return report


def subalgebra_failure(sub: Algebra, sup: Algebra, embedding: Mapping[Element, Element]) -> Optional[str]:
    """First table entry where the embedding fails to commute, or None."""
    if sorted(embedding) != list(sub.elements):
        return "embedding is not defined on the whole carrier"
    if len(set(embedding.values())) != len(embedding):
        return "embedding is not injective"
    if embedding[sub.top] != sup.top:
        return f"top {sub.label(sub.top)} maps to {sup.label(embedding[sub.top])}"
    for op in ("meet", "join", "imp"):
        for a, b in product(sub.elements, repeat=2):
            image = embedding[getattr(sub, op)(a, b)]
            expected = getattr(sup, op)(embedding[a], embedding[b])
            if image != expected:
                return (
                    f"{op}({sub.label(a)}, {sub.label(b)}) maps to {sup.label(image)}"
                    f" but {op} of the images is {sup.label(expected)}"
                )
    return None


def is_subalgebra(sub: Algebra, sup: Algebra, embedding: Mapping[Element, Element]) -> bool:
    return subalgebra_failure(sub, sup, embedding) is None


def _chain_labels(size: int) -> List[str]:
    if size == 1:
        return ["1"]
    return [str(Fraction(k, size - 1)) for k in range(size)]


def chain(size: int, name: Optional[str] = None) -> Algebra:
    """The Goedel chain with `size` elements, labelled 0, 1/(n-1), ..., 1."""
    if size < 1:
        raise MalformedTables("a chain needs at least one element")
    idx = np.arange(size)
    meet = np.minimum(idx[:, None], idx[None, :])
    join = np.maximum(idx[:, None], idx[None, :])
    imp = np.where(idx[:, None] <= idx[None, :], size - 1, idx[None, :])
    return Algebra(_chain_labels(size), meet, join, imp, name=name or f"chain{size}")


def boolean2() -> Algebra:
    return chain(2, name="boolean2")


def boolean4() -> Algebra:
    """The four-element Boolean algebra; indices double as bit patterns (a = 01, b = 10)."""
    idx = np.arange(4)
    meet = idx[:, None] & idx[None, :]
    join = idx[:, None] | idx[None, :]
    imp = (~idx[:, None] & 3) | idx[None, :]
    return Algebra(["0", "a", "b", "1"], meet, join, imp, name="boolean4")


def kite5() -> Algebra:
    """boolean4 placed under a new top: a Heyting algebra that is neither Boolean nor linear."""
    return Algebra.from_order(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "1")],
        name="kite5",
    )


def h3_star() -> Algebra:
    """The 3-chain with dual pseudo-complement: ~0 = 1, ~1/2 = 1, ~1 = 0."""
    base = chain(3)
    return Algebra(
        base.carrier,
        base.meet_table,
        base.join_table,
        base.imp_table,
        neg_op=[2, 2, 0],
        name="h3star",
    )


BUILTIN_ALGEBRAS: Dict[str, callable] = {
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "chain4": lambda: chain(4),
    "boolean2": boolean2,
    "boolean4": boolean4,
    "kite5": kite5,
    "h3star": h3_star,
}
