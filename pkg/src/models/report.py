from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.utils import constant


class Violation(BaseModel):
    law: str
    witness: Dict[str, str] = {}
    detail: Optional[str] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)


class ValidationReport(BaseModel):
    subject: str
    violations: List[Violation] = []

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, law: str, detail: Optional[str] = None, **witness) -> None:
        self.violations.append(
            Violation(law=law, detail=detail, witness={k: str(v) for k, v in witness.items()})
        )

    def first(self, law: str) -> Optional[Violation]:
        return next((v for v in self.violations if v.law == law), None)


class Verdict(BaseModel):
    check: str
    verdict: str = constant.VALID
    witness: Optional[Dict[str, str]] = None
    values: Optional[Dict[str, str]] = None
    checked: int = 0
    skipped: int = 0
    seed: Optional[int] = None
    notes: List[str] = []
    # Live objects behind a counterexample (names, templates, valuations).
    subject: Optional[Any] = Field(default=None, exclude=True)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def valid(self) -> bool:
        return self.verdict in (constant.VALID, constant.VALID_UP_TO_BOUND)


class AxiomCheckResult(BaseModel):
    axiom: str
    verdict: str = constant.VALID
    rank: int
    policy: str
    witness: Optional[Dict[str, str]] = None
    values: Optional[Dict[str, str]] = None
    seed: Optional[int] = None
    checked: int = 0
    approximation: str = ""
    family: Optional[str] = None
    notes: List[str] = []
    subject: Optional[Any] = Field(default=None, exclude=True)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def valid(self) -> bool:
        return self.verdict in (constant.VALID, constant.VALID_UP_TO_BOUND)


class UniverseStats(BaseModel):
    rank: int
    algebra_size: int
    counts: Dict[int, int]


class ExtensionProfile(BaseModel):
    smallest_gn: Optional[int] = None
    linear: bool
    checked_up_to: int
