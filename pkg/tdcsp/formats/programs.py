"""
Compiled stack machine inputs: ``.bits``.

::

    bits <length>
    1101000100110010...

The payload may be split over several lines. Reading a file decodes the
program it carries, so anything that parses is a well-formed input of
:class:`~tdcsp.machine.TreedepthCspMachine`.
"""

from typing import Optional, Tuple

from ..errors import FormatError, InputError
from ..machine import TreedepthCspMachine, decode_td_program
from ..machine.model import Bits
from .lines import directives, header, to_int

_WRAP = 64


def parse_bits(text: str, source: Optional[str] = None) -> Tuple[TreedepthCspMachine, Bits]:
    _, args = header(text, "bits", source)
    if len(args) != 1:
        raise FormatError("'bits' takes the input length", 1, source)
    length = to_int(args[0], 1, source)
    payload = []
    for lineno, head, rest in list(directives(text))[1:]:
        for run in [head] + rest:
            if set(run) - {"0", "1"}:
                raise FormatError(f"Expected a run of 0 and 1, got {run!r}", lineno, source)
            payload.extend(int(b) for b in run)
    if len(payload) != length:
        raise FormatError(f"Header declares {length} bits, found {len(payload)}", None, source)
    bits = tuple(payload)
    try:
        decode_td_program(bits)
    except InputError as e:
        raise FormatError(str(e), None, source) from None
    return TreedepthCspMachine(), bits


def format_bits(bits: Bits) -> str:
    body = "".join(map(str, bits))
    lines = [f"bits {len(bits)}"] + [body[i : i + _WRAP] for i in range(0, len(body), _WRAP)]
    return "\n".join(lines) + "\n"
