"""
Text formats for instances, witnesses, formulas, machines, compiled machine
inputs and structures.

Every ``parse_*`` function takes the text and an optional source label and
raises :class:`~tdcsp.errors.FormatError` with the offending line number;
every ``format_*`` function returns text that parses back.
"""

import os
from typing import Any, Callable, Dict, Optional

from ..errors import FormatError
from ..machine.table import format_arosm, parse_arosm
from .formulas import format_circ, format_wsat, parse_circ, parse_wsat
from .instances import (
    format_bcsp,
    format_lcol,
    format_pcol,
    parse_bcsp,
    parse_lcol,
    parse_pcol,
)
from .logic import format_fo, format_struct, parse_fo, parse_struct
from .programs import format_bits, parse_bits
from .witnesses import (
    format_fat_tree,
    format_forest,
    format_graph,
    format_ordered_tree,
    format_set,
    parse_fat_tree,
    parse_forest,
    parse_graph,
    parse_ordered_tree,
    parse_set,
)

PARSERS: Dict[str, Callable[..., Any]] = {
    ".bcsp": parse_bcsp,
    ".lcol": parse_lcol,
    ".pcol": parse_pcol,
    ".graph": parse_graph,
    ".set": parse_set,
    ".tree": parse_forest,
    ".wsat": parse_wsat,
    ".circ": parse_circ,
    ".arosm": parse_arosm,
    ".struct": parse_struct,
    ".fo": parse_fo,
    ".bits": parse_bits,
}


def read_file(path: str, parser: Optional[Callable[..., Any]] = None) -> Any:
    """
    Read and parse an artifact, choosing the parser by extension unless given.

    Raises:
        FormatError: On unknown extensions or malformed content
        OSError: If the file cannot be read
    """
    if parser is None:
        ext = os.path.splitext(path)[1].lower()
        if ext not in PARSERS:
            raise FormatError(f"Unknown artifact extension '{ext}'", None, path)
        parser = PARSERS[ext]
    with open(path, encoding="utf-8") as f:
        return parser(f.read(), source=path)


def write_file(path: str, text: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


__all__ = [
    "PARSERS",
    "read_file",
    "write_file",
    "parse_bcsp",
    "format_bcsp",
    "parse_lcol",
    "format_lcol",
    "parse_pcol",
    "format_pcol",
    "parse_graph",
    "format_graph",
    "parse_set",
    "format_set",
    "parse_forest",
    "format_forest",
    "parse_fat_tree",
    "format_fat_tree",
    "parse_ordered_tree",
    "format_ordered_tree",
    "parse_wsat",
    "format_wsat",
    "parse_circ",
    "format_circ",
    "parse_arosm",
    "format_arosm",
    "parse_struct",
    "format_struct",
    "parse_fo",
    "format_fo",
    "parse_bits",
    "format_bits",
]
