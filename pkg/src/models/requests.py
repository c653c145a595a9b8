from typing import List, Optional, Union

from pydantic import BaseModel, Field

from src.lib.evaluator import NegationPolicy
from src.models.structure import AlgebraDefinition
from src.utils import constant

# A built-in name, a structure file path, a name under STRUCTURES_DIR, or an inline definition.
StructureRef = Union[str, AlgebraDefinition]


class StructureRequest(BaseModel):
    structure: StructureRef


class PropAxiomsRequest(StructureRequest):
    schemas: List[str] = Field(default_factory=lambda: list(constant.SCHEMAS))
    depth: int = Field(default=0, ge=0, le=2)
    extensions: bool = False


class UniverseRequest(StructureRequest):
    rank: int = Field(default=2, ge=0)
    ceiling: Optional[int] = None


class EvalRequest(StructureRequest):
    formula: str
    rank: int = Field(default=2, ge=1)
    policy: NegationPolicy = NegationPolicy.STANDARD
    ceiling: Optional[int] = None


class LeibnizRequest(StructureRequest):
    rank: int = Field(default=2, ge=1)
    depth: int = Field(default=1, ge=0)
    policy: NegationPolicy = NegationPolicy.STANDARD
    negation_free_only: bool = False
    # Rank for an additional sampled pass, e.g. 3.
    sample_rank: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    ceiling: Optional[int] = None


class ZfRequest(StructureRequest):
    rank: int = Field(default=2, ge=1)
    axiom: Optional[str] = None
    depth: int = Field(default=1, ge=0)
    policy: NegationPolicy = NegationPolicy.STANDARD
    template: Optional[str] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    infinity_bound: Optional[int] = None
    ceiling: Optional[int] = None


class LemmasRequest(StructureRequest):
    rank: int = Field(default=2, ge=1)
    policy: NegationPolicy = NegationPolicy.STANDARD
    samples: Optional[int] = None
    seed: Optional[int] = None
    ceiling: Optional[int] = None
