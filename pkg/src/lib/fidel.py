import logging
from typing import Dict, Iterable, List, Mapping, Optional

from src.lib.errors import AlgebraInvalid, StructureInvalid, UnknownElement
from src.lib.lattice import Algebra, Element, is_subalgebra, validate_algebra
from src.models.report import ValidationReport
from src.utils import constant


class FidelStructure:
    """An algebra together with the family {N_x} of admissible negation values.

    Each N_x is kept as an int bitmask over carrier indices.
    """

    def __init__(
        self,
        algebra: Algebra,
        family: Mapping[Element, Iterable[Element]],
        name: Optional[str] = None,
    ):
        self.algebra = algebra
        self.name = name or algebra.name
        masks = []
        for x in algebra.elements:
            mask = 0
            for y in family.get(x, ()):
                if not isinstance(y, int) or not 0 <= y < len(algebra):
                    raise UnknownElement(f"N_{algebra.label(x)} references {y!r}, outside the carrier")
                mask |= 1 << y
            masks.append(mask)
        unknown = [x for x in family if not isinstance(x, int) or not 0 <= x < len(algebra)]
        if unknown:
            raise UnknownElement(f"N is indexed by {unknown[0]!r}, outside the carrier")
        self.masks = tuple(masks)

    @classmethod
    def from_labels(
        cls,
        algebra: Algebra,
        family: Mapping[str, Iterable[str]],
        name: Optional[str] = None,
    ) -> "FidelStructure":
        return cls(
            algebra,
            {algebra.element(x): [algebra.element(y) for y in ys] for x, ys in family.items()},
            name=name,
        )

    def __repr__(self) -> str:
        return f"FidelStructure({self.name}, N={self.describe()})"

    def admits(self, x: Element, y: Element) -> bool:
        """Whether y is an allowed value for a negation of something valued x."""
        return bool((self.masks[x] >> y) & 1)

    def negation_set(self, x: Element) -> List[Element]:
        mask = self.masks[x]
        return [y for y in self.algebra.elements if (mask >> y) & 1]

    def describe(self) -> Dict[str, List[str]]:
        label = self.algebra.label
        return {label(x): [label(y) for y in self.negation_set(x)] for x in self.algebra.elements}


def saturate(algebra: Algebra, name: Optional[str] = None) -> FidelStructure:
    """The saturated structure: N_x = {y : x v y = 1}."""
    top = algebra.top
    family = {x: [y for y in algebra.elements if algebra.join(x, y) == top] for x in algebra.elements}
    return FidelStructure(algebra, family, name=name or f"{algebra.name}-saturated")


def classical_structure(algebra: Algebra, name: Optional[str] = None) -> FidelStructure:
    """N_x = {complement of x}; only defined on Boolean algebras."""
    family = {}
    for x in algebra.elements:
        complement = algebra.complement(x)
        if complement is None:
            report = ValidationReport(subject=algebra.name)
            report.add("complemented", x=algebra.label(x))
            raise AlgebraInvalid(f"{algebra.label(x)} has no complement in {algebra.name}", report)
        family[x] = [complement]
    return FidelStructure(algebra, family, name=name or f"{algebra.name}-classical")


def validate_structure(s: FidelStructure) -> ValidationReport:
    algebra = s.algebra
    label = algebra.label
    report = ValidationReport(subject=s.name)

    for x in algebra.elements:
        choices = s.negation_set(x)
        if not choices:
            report.add("nonempty", x=label(x))
            continue
        # (i) some x' in N_x joins x up to the top
        if not any(algebra.join(x, y) == algebra.top for y in choices):
            report.add("complementation", x=label(x))
        # (ii) every x' in N_x has some x'' in N_x' below x
        for y in choices:
            if not any(algebra.leq(z, x) for z in s.negation_set(y)):
                report.add("double-negation", x=label(x), x_prime=label(y))

    logging.info(
        {
            "event": "structure_validated",
            "structure": s.name,
            "violations": len(report.violations),
        }
    )
    return report


def require_valid(s: FidelStructure) -> FidelStructure:
    """Gate used before evaluation: raises on an invalid algebra or structure."""
    algebra_report = validate_algebra(s.algebra)
    if not algebra_report.valid:
        raise AlgebraInvalid(constant.ALGEBRA_INVALID, algebra_report)
    report = validate_structure(s)
    if not report.valid:
        raise StructureInvalid(constant.STRUCTURE_REFUSED, report)
    return s


def is_substructure(sub: FidelStructure, sup: FidelStructure, embedding: Mapping[Element, Element]) -> bool:
    if not is_subalgebra(sub.algebra, sup.algebra, embedding):
        return False
    return all(
        sup.admits(embedding[x], embedding[y])
        for x in sub.algebra.elements
        for y in sub.negation_set(x)
    )


def admits_standard_policy(s: FidelStructure) -> bool:
    """1 is in every N_x and N_1 is the whole carrier."""
    algebra = s.algebra
    everything = (1 << len(algebra)) - 1
    return s.masks[algebra.top] == everything and all(s.admits(x, algebra.top) for x in algebra.elements)

