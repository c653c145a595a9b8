from typing import FrozenSet, Optional

from src.utils import constant


class WorkbenchError(Exception):
    exit_code = constant.EXIT_USAGE

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": self.message}


class MalformedTables(WorkbenchError):
    pass


class NotALattice(WorkbenchError):
    pass


class NoResiduum(WorkbenchError):
    def __init__(self, a: str, b: str):
        super().__init__(f"no greatest c with {a} & c <= {b}; not relatively pseudo-complemented")
        self.a = a
        self.b = b


class AlgebraInvalid(WorkbenchError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report

    def to_dict(self) -> dict:
        payload = super().to_dict()
        if self.report is not None:
            payload["report"] = self.report.model_dump()
        return payload


class StructureInvalid(AlgebraInvalid):
    pass


class UnknownElement(WorkbenchError):
    pass


class MixedAlgebras(WorkbenchError):
    pass


class NameConflict(WorkbenchError):
    pass


class InvalidNegationChoice(WorkbenchError):
    pass


class PolicyInadmissible(WorkbenchError):
    pass


class ScopeError(WorkbenchError):
    pass


class StructureNotFound(WorkbenchError):
    pass


class ParseError(WorkbenchError):
    def __init__(
        self,
        message: str,
        start: int,
        end: int,
        expected: Optional[FrozenSet[str]] = None,
        source: str = "<input>",
    ):
        super().__init__(message)
        self.start = start
        self.end = end
        self.expected = expected or frozenset()
        self.source = source

    def __str__(self):
        detail = f"{self.source}:{self.start}-{self.end}: {self.message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        return detail

    def to_dict(self) -> dict:
        return {
            **super().to_dict(),
            "span": {"start": self.start, "end": self.end},
            "expected": sorted(self.expected),
            "source": self.source,
        }


class UniverseTooLarge(WorkbenchError):
    exit_code = constant.EXIT_RESOURCE

    def __init__(self, rank: int, projected: int, ceiling: int):
        super().__init__(
            f"V_<={rank} would hold {projected if projected < 10**12 else 'more than 10^12'} names; ceiling is {ceiling}"
        )
        self.rank = rank
        self.projected = projected
        self.ceiling = ceiling
