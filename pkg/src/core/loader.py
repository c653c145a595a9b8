import json
import logging
from pathlib import Path
from typing import Callable, Dict, Union

import numpy as np
from pydantic import ValidationError

from src.config import config
from src.lib.errors import MalformedTables, StructureNotFound
from src.lib.fidel import FidelStructure, classical_structure, saturate
from src.lib.lattice import Algebra, boolean2, boolean4, chain, h3_star, kite5, residuum_from_order
from src.models.structure import AlgebraDefinition

BUILTIN_STRUCTURES: Dict[str, Callable[[], FidelStructure]] = {
    "m3": lambda: saturate(chain(3, name="m3"), name="m3"),
    "h3star": lambda: saturate(h3_star(), name="h3star"),
    "boolean2": lambda: saturate(boolean2(), name="boolean2"),
    "boolean2-classical": lambda: classical_structure(boolean2(), name="boolean2-classical"),
    "boolean4": lambda: saturate(boolean4(), name="boolean4"),
    "kite5": lambda: saturate(kite5(), name="kite5"),
    "chain2": lambda: saturate(chain(2), name="chain2"),
    "chain3": lambda: saturate(chain(3), name="chain3"),
    "chain4": lambda: saturate(chain(4), name="chain4"),
}


def build_structure(definition: AlgebraDefinition) -> FidelStructure:
    """Algebra from leq pairs or tables; a missing imp is the residuum, a missing N the saturation."""
    name = definition.name or "structure"
    if definition.meet is not None and definition.join is not None:
        meet = np.asarray(definition.meet, dtype=int)
        imp = definition.imp
        if imp is None:
            leq = meet == np.arange(len(definition.carrier))[:, None]
            imp = residuum_from_order(definition.carrier, leq, meet, definition.join)
        algebra = Algebra(definition.carrier, meet, definition.join, imp, neg_op=definition.neg_op, name=name)
    else:
        algebra = Algebra.from_order(
            definition.carrier, definition.leq, imp=definition.imp, neg_op=definition.neg_op, name=name
        )

    if definition.family is None:
        return saturate(algebra, name=name)
    return FidelStructure.from_labels(algebra, definition.family, name=name)


def parse_definition(document: Union[str, dict], source: str = "<input>") -> AlgebraDefinition:
    try:
        if isinstance(document, str):
            document = json.loads(document)
        return AlgebraDefinition.model_validate(document)
    except json.JSONDecodeError as e:
        raise MalformedTables(f"{source}: not a JSON document ({e.msg} at line {e.lineno})")
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise MalformedTables(f"{source}: {where}: {first['msg']}")


def load_structure(reference: Union[str, dict, AlgebraDefinition]) -> FidelStructure:
    """A structure from an inline definition, a file path, a name in STRUCTURES_DIR, or a built-in."""
    if isinstance(reference, AlgebraDefinition):
        return build_structure(reference)
    if isinstance(reference, dict):
        return build_structure(parse_definition(reference))

    candidates = [Path(reference), Path(config.get("structures_dir", "structures")) / f"{reference}.json"]
    for path in candidates:
        if path.is_file():
            logging.info({"event": "structure_loaded", "source": str(path)})
            definition = parse_definition(path.read_text(encoding="utf-8"), source=str(path))
            if definition.name is None:
                definition.name = path.stem
            return build_structure(definition)

    if reference in BUILTIN_STRUCTURES:
        return BUILTIN_STRUCTURES[reference]()
    raise StructureNotFound(
        f"'{reference}' is neither a file, a structure in {config.get('structures_dir', 'structures')}, "
        f"nor one of the built-ins {', '.join(BUILTIN_STRUCTURES)}"
    )


def dump_structure(s: FidelStructure) -> dict:
    """The structure in definition-file form, tables included."""
    algebra = s.algebra
    label = algebra.label
    leq = [
        (label(a), label(b))
        for a in algebra.elements
        for b in algebra.elements
        if a != b and algebra.leq(a, b)
    ]
    definition = AlgebraDefinition(
        name=s.name,
        carrier=list(algebra.carrier),
        leq=leq,
        meet=algebra.meet_table.tolist(),
        join=algebra.join_table.tolist(),
        imp=algebra.imp_table.tolist(),
        neg_op=algebra.neg_table.tolist() if algebra.neg_table is not None else None,
        N=s.describe(),
    )
    return definition.model_dump(by_alias=True, exclude_none=True)
