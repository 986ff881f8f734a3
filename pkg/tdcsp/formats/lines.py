"""Shared helpers for the line-oriented text formats."""

from typing import Iterator, List, Optional, Tuple

from ..core import sort_values
from ..errors import FormatError


def directives(text: str) -> Iterator[Tuple[int, str, List[str]]]:
    """Yield ``(line number, head, arguments)`` for every non-blank line; ``#`` starts a comment."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield lineno, tokens[0], tokens[1:]


def to_int(token: str, line: int, source: Optional[str], minimum: int = 0) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"Expected an integer, got {token!r}", line, source) from None
    if value < minimum:
        raise FormatError(f"Expected an integer >= {minimum}, got {value}", line, source)
    return value


def to_ints(tokens: List[str], line: int, source: Optional[str]) -> List[int]:
    return [to_int(t, line, source) for t in tokens]


def expect_args(head: str, args: List[str], count: int, line: int, source: Optional[str]) -> None:
    if len(args) != count:
        raise FormatError(f"'{head}' takes {count} argument(s), got {len(args)}", line, source)


def header(text: str, keyword: str, source: Optional[str]) -> Tuple[int, List[str]]:
    """Arguments of the first directive, which must be ``keyword``."""
    for lineno, head, args in directives(text):
        if head != keyword:
            raise FormatError(f"Expected '{keyword}' header, got '{head}'", lineno, source)
        return lineno, args
    raise FormatError(f"Missing '{keyword}' header", None, source)


def value_table(values, contiguous: bool = False) -> Tuple[dict, List[str]]:
    """Map arbitrary value tokens to ``0..m-1`` in sorted order.

    Nonnegative integers are kept as they are, unless ``contiguous`` asks for
    exactly ``0..m-1``.

    Returns:
        (value -> index, comment lines naming every non-integer token)
    """
    ordered = sort_values(values)
    index = {a: i for i, a in enumerate(ordered)}
    plain = all(isinstance(a, int) and not isinstance(a, bool) and a >= 0 for a in ordered)
    if plain and (not contiguous or ordered == tuple(range(len(ordered)))):
        return {a: a for a in ordered}, []
    return index, [f"# {i} = {a!r}" for a, i in index.items()]


def vertex_table(vertices) -> Tuple[dict, List[str]]:
    """Map graph vertex ids to ``0..n-1`` in sorted order.

    Returns:
        (id -> index, comment lines naming every renumbered vertex)
    """
    index = {v: i for i, v in enumerate(sorted(vertices))}
    if all(v == i for v, i in index.items()):
        return index, []
    return index, [f"# vertex {i} = {v}" for v, i in index.items()]
