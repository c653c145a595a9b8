from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class AlgebraDefinition(BaseModel):
    """Structure-definition document: an algebra by order or by tables, plus an optional N family."""

    name: Optional[str] = None
    carrier: List[str]
    leq: Optional[List[Tuple[str, str]]] = None
    meet: Optional[List[List[int]]] = None
    join: Optional[List[List[int]]] = None
    imp: Optional[List[List[int]]] = None
    neg_op: Optional[List[int]] = None
    family: Optional[Dict[str, List[str]]] = Field(default=None, alias="N")

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode="after")
    def check_shape(self):
        if self.leq is None and (self.meet is None or self.join is None):
            raise ValueError("give either leq pairs or both meet and join tables")
        return self
