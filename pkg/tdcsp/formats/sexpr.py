"""Minimal s-expression reader and writer with line tracking."""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from ..errors import FormatError

_TOKEN = re.compile(r"\s*(?:(;[^\n]*)|(\()|(\))|([^\s()]+))")


@dataclass(frozen=True)
class SList:
    items: Tuple["SExpr", ...]
    line: int

    @property
    def head(self) -> Optional[str]:
        first = self.items[0] if self.items else None
        return first.text if isinstance(first, Symbol) else None


@dataclass(frozen=True)
class Symbol:
    text: str
    line: int


SExpr = Union[SList, Symbol]


def _tokens(text: str, source: Optional[str]) -> List[Tuple[str, int]]:
    out = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise FormatError(f"Unexpected character {text[pos]!r}", line, source)
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        line += text.count("\n", pos, start)
        if m.lastindex and m.lastindex > 1:
            out.append((m.group(m.lastindex), line))
        line += text.count("\n", start, m.end())
        pos = m.end()
    return out


def read_sexpr(text: str, source: Optional[str] = None) -> SExpr:
    """Parse exactly one s-expression (``;`` starts a comment)."""
    tokens = _tokens(text, source)
    if not tokens:
        raise FormatError("Empty document", None, source)
    stack: List[Tuple[List[SExpr], int]] = []
    result: Optional[SExpr] = None
    for tok, line in tokens:
        if result is not None:
            raise FormatError("Trailing content after the expression", line, source)
        if tok == "(":
            stack.append(([], line))
        elif tok == ")":
            if not stack:
                raise FormatError("Unbalanced ')'", line, source)
            items, start = stack.pop()
            node = SList(tuple(items), start)
            if stack:
                stack[-1][0].append(node)
            else:
                result = node
        elif stack:
            stack[-1][0].append(Symbol(tok, line))
        else:
            result = Symbol(tok, line)
    if stack:
        raise FormatError("Unbalanced '('", stack[-1][1], source)
    return result


def symbol_int(node: SExpr, source: Optional[str], minimum: int = 0) -> int:
    if not isinstance(node, Symbol):
        raise FormatError("Expected an integer", node.line, source)
    try:
        value = int(node.text)
    except ValueError:
        raise FormatError(f"Expected an integer, got {node.text!r}", node.line, source) from None
    if value < minimum:
        raise FormatError(f"Expected an integer >= {minimum}", node.line, source)
    return value


def expect_list(node: SExpr, source: Optional[str], head: Optional[str] = None) -> SList:
    if not isinstance(node, SList):
        raise FormatError(f"Expected a list, got {node.text!r}", node.line, source)
    if head is not None and node.head != head:
        raise FormatError(f"Expected '({head} ...)'", node.line, source)
    return node
