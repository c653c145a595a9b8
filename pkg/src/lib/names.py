import logging
import threading
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.config import config
from src.lib.errors import MixedAlgebras, NameConflict, UnknownElement, UniverseTooLarge
from src.lib.lattice import Algebra, Element

# Hereditarily finite sets are frozensets of frozensets; lists and sets are accepted too.
HereditarilyFinite = Iterable


class Name:
    """An element of the bounded universe: a finite map from earlier names to algebra elements.

    Names are created only through NameStore.make_name, which interns them, so two
    names with the same entries are the same object and share one id.
    """

    __slots__ = ("id", "entries", "rank", "store", "_values")

    def __init__(self, id: int, entries: Tuple[Tuple["Name", Element], ...], store: "NameStore"):
        self.id = id
        self.entries = entries
        self.store = store
        self.rank = 1 + max((child.rank for child, _ in entries), default=0)
        self._values = {child.id: value for child, value in entries}

    @property
    def dom(self) -> Tuple["Name", ...]:
        return tuple(child for child, _ in self.entries)

    def value(self, child: "Name") -> Optional[Element]:
        return self._values.get(child.id)

    def render(self) -> str:
        if not self.entries:
            return "{}"
        label = self.store.algebra.label
        return "{" + ", ".join(f"{child.render()}: {label(value)}" for child, value in self.entries) + "}"

    def __repr__(self) -> str:
        return f"Name#{self.id}{self.render()}"


class NameStore:
    """Interning registry and bounded-rank universe for one algebra."""

    def __init__(self, algebra: Algebra, ceiling: Optional[int] = None):
        self.algebra = algebra
        self.uid = algebra.uid
        self.ceiling = ceiling or config.get("universe_ceiling", 10**6)
        self._table: Dict[Tuple[Tuple[int, Element], ...], Name] = {}
        self._names: List[Name] = []
        self._universes: Dict[int, List[Name]] = {0: []}
        self._lock = threading.Lock()
        self.empty = self.make_name([])
        self._universes[1] = [self.empty]

    def __len__(self) -> int:
        return len(self._names)

    def make_name(self, entries: Iterable[Tuple[Name, Element]]) -> Name:
        collected: Dict[int, Tuple[Name, Element]] = {}
        for child, value in entries:
            if child.store is not self:
                raise MixedAlgebras(
                    f"{child!r} belongs to the universe over {child.store.algebra.name}, not {self.algebra.name}"
                )
            value = int(value)
            if not 0 <= value < len(self.algebra):
                raise UnknownElement(f"value {value} is outside the carrier of {self.algebra.name}")
            seen = collected.get(child.id)
            if seen is not None and seen[1] != value:
                raise NameConflict(f"{child!r} is given two values in one name")
            collected[child.id] = (child, value)

        ordered = tuple(collected[key] for key in sorted(collected))
        key = tuple((child.id, value) for child, value in ordered)
        name = self._table.get(key)
        if name is not None:
            return name
        with self._lock:
            name = self._table.get(key)
            if name is None:
                name = Name(len(self._names), ordered, self)
                self._names.append(name)
                self._table[key] = name
        return name

    def projected_size(self, rank: int) -> int:
        """|V_<=rank| from the recurrence |V_<=k| = (|A|+1)^|V_<=k-1|, without enumerating."""
        count = 0
        for _ in range(rank):
            if count > 64:
                # Already far past any ceiling; avoid building astronomically large ints.
                return 10**100
            count = 1 if count == 0 else (len(self.algebra) + 1) ** count
        return count

    def universe(self, rank: int) -> List[Name]:
        """V_<=rank, ordered by rank and then by entry pattern."""
        if rank in self._universes:
            return self._universes[rank]
        projected = self.projected_size(rank)
        if projected > self.ceiling:
            raise UniverseTooLarge(rank, projected, self.ceiling)

        previous = self.universe(rank - 1)
        choices = [None] + list(self.algebra.elements)
        names = []
        for pattern in product(choices, repeat=len(previous)):
            names.append(
                self.make_name(
                    (child, value) for child, value in zip(previous, pattern) if value is not None
                )
            )
        # Stable sort keeps the pattern order inside each rank.
        names.sort(key=lambda name: name.rank)
        self._universes[rank] = names
        logging.info(
            {
                "event": "universe_enumerated",
                "algebra": self.algebra.name,
                "rank": rank,
                "count": len(names),
            }
        )
        return names

    def level(self, rank: int) -> List[Name]:
        """Names of exact rank `rank`."""
        return [name for name in self.universe(rank) if name.rank == rank]

    def counts(self, rank: int) -> Dict[int, int]:
        """Cumulative |V_<=k| for k = 1..rank."""
        return {k: len(self.universe(k)) for k in range(1, rank + 1)}

    def hat(self, h: HereditarilyFinite) -> Name:
        """Canonical name of a hereditarily finite set: every entry valued 1."""
        top = self.algebra.top
        return self.make_name((self.hat(x), top) for x in h)

    def von_neumann(self, n: int) -> Name:
        return self.hat(von_neumann_set(n))

    def universal_name(self, rank: int) -> Name:
        """The name holding every member of V_<=rank with value 1."""
        top = self.algebra.top
        return self.make_name((name, top) for name in self.universe(rank))

    def mixture(self, pairs: Sequence[Tuple[Element, Name]], ctx) -> Name:
        """Sum of a_i * u_i: value at x is the join over i of a_i & ||x in u_i||.

        `ctx` is an EvalContext over this store.
        """
        if not pairs:
            raise NameConflict("a mixture needs at least one pair")
        algebra = self.algebra
        domain: Dict[int, Name] = {}
        for _, u in pairs:
            for child in u.dom:
                domain.setdefault(child.id, child)
        entries = []
        for key in sorted(domain):
            x = domain[key]
            entries.append(
                (x, algebra.big_join(algebra.meet(a, ctx.truth_membership(x, u)) for a, u in pairs))
            )
        return self.make_name(entries)

    def sample(self, rank: int, rng: np.random.Generator, count: int) -> List[Name]:
        """Uniform sample of V_<=rank: each member of V_<=rank-1 is absent or takes a uniform value."""
        if rank <= 1:
            return [self.empty] * count
        previous = self.universe(rank - 1)
        width = len(self.algebra) + 1
        draws = rng.integers(0, width, size=(count, len(previous)))
        samples = []
        for row in draws.tolist():
            samples.append(
                self.make_name((child, choice - 1) for child, choice in zip(previous, row) if choice)
            )
        return samples

    def transport(self, name: Name, target: "NameStore", embedding: Mapping[Element, Element], _memo=None) -> Name:
        """Image of a name under an algebra embedding into the target store."""
        if name.store is not self:
            raise MixedAlgebras(f"{name!r} does not belong to this store")
        memo = {} if _memo is None else _memo
        image = memo.get(name.id)
        if image is None:
            image = target.make_name(
                (self.transport(child, target, embedding, memo), embedding[value])
                for child, value in name.entries
            )
            memo[name.id] = image
        return image


def von_neumann_set(n: int) -> frozenset:
    numeral = frozenset()
    for _ in range(n):
        numeral = numeral | {numeral}
    return numeral


def hereditarily_finite_sets(depth: int) -> List[frozenset]:
    """All hereditarily finite sets built in at most `depth` powerset steps, smallest first."""
    sets = [frozenset()]
    for _ in range(depth - 1):
        sets = sorted(
            {frozenset(combo) for mask in range(1 << len(sets)) for combo in [_subset(sets, mask)]},
            key=lambda s: (len(s), repr(sorted(map(repr, s)))),
        )
    return sets


def _subset(items: Sequence, mask: int) -> List:
    return [item for i, item in enumerate(items) if (mask >> i) & 1]
