from .loader import (
    BUILTIN_STRUCTURES,
    build_structure,
    dump_structure,
    load_structure,
    parse_definition,
)
