"""
Formula formats.

``.wsat`` is an s-expression ``(wsat :k <k> :n <n> (and ...))`` whose
literals are ``<j>`` or ``(not <j>)``. ``.circ`` lists gates in id order::

    circuit <n>
    g0 = IN x0
    g1 = NOT g0
    g2 = AND g0 g1
    out g2
"""

from typing import List, Optional

from ..errors import FormatError, InputError
from ..formulas import (
    And,
    BooleanCircuit,
    Gate,
    Lit,
    NormalizedFormula,
    Or,
    WeightedSatInstance,
)
from ..formulas.normalized import Node
from .lines import directives, to_int
from .sexpr import SExpr, Symbol, expect_list, read_sexpr, symbol_int


def _node(e: SExpr, source: Optional[str]) -> Node:
    if isinstance(e, Symbol):
        return Lit(symbol_int(e, source), True)
    head = e.head
    if head == "not":
        if len(e.items) != 2 or not isinstance(e.items[1], Symbol):
            raise FormatError("'(not <var>)' negates a single variable", e.line, source)
        return Lit(symbol_int(e.items[1], source), False)
    if head in ("and", "or"):
        children = tuple(_node(c, source) for c in e.items[1:])
        return And(children) if head == "and" else Or(children)
    raise FormatError(f"Unknown connective {head!r}", e.line, source)


def parse_wsat(text: str, source: Optional[str] = None) -> WeightedSatInstance:
    """
    Parse ``.wsat`` text.

    Raises:
        FormatError: On malformed expressions, missing ``:k``/``:n`` or a
            non-AND root
    """
    top = expect_list(read_sexpr(text, source), source, "wsat")
    items = list(top.items[1:])
    opts = {}
    while len(items) >= 2 and isinstance(items[0], Symbol) and items[0].text.startswith(":"):
        opts[items[0].text] = symbol_int(items[1], source)
        items = items[2:]
    if set(opts) != {":k", ":n"} or len(items) != 1:
        raise FormatError("Expected '(wsat :k <k> :n <n> <formula>)'", top.line, source)
    root = _node(items[0], source)
    if not isinstance(root, And):
        raise FormatError("The formula root must be an 'and'", top.line, source)
    try:
        return WeightedSatInstance(NormalizedFormula(root, opts[":n"]), opts[":k"])
    except InputError as e:
        raise FormatError(str(e), top.line, source) from e


def _write_node(node: Node) -> str:
    if isinstance(node, Lit):
        return str(node.var) if node.positive else f"(not {node.var})"
    head = "and" if isinstance(node, And) else "or"
    return "(" + " ".join([head] + [_write_node(c) for c in node.children]) + ")"


def format_wsat(w: WeightedSatInstance) -> str:
    return f"(wsat :k {w.k} :n {w.n} {_write_node(w.formula.root)})\n"


def _gate_ref(token: str, prefix: str, line: int, source: Optional[str]) -> int:
    if not token.startswith(prefix):
        raise FormatError(f"Expected '{prefix}<id>', got {token!r}", line, source)
    return to_int(token[len(prefix):], line, source)


def parse_circ(text: str, source: Optional[str] = None) -> BooleanCircuit:
    """
    Parse ``.circ`` text. Without a ``circuit <n>`` header the variable count
    is one more than the largest input index.

    Raises:
        FormatError: On malformed lines, out-of-order gate ids or a missing ``out``
    """
    n: Optional[int] = None
    gates: List[Gate] = []
    output: Optional[int] = None
    for lineno, head, rest in directives(text):
        if head == "circuit" and not gates and n is None and len(rest) == 1:
            n = to_int(rest[0], lineno, source)
        elif head == "out" and len(rest) == 1 and output is None:
            output = _gate_ref(rest[0], "g", lineno, source)
        elif len(rest) >= 2 and rest[0] == "=" and output is None:
            gid = _gate_ref(head, "g", lineno, source)
            if gid != len(gates):
                raise FormatError(f"Expected gate g{len(gates)}, got {head}", lineno, source)
            kind, args = rest[1], rest[2:]
            if kind == "IN":
                if len(args) != 1:
                    raise FormatError("'IN' reads one variable", lineno, source)
                gates.append(Gate("IN", (), _gate_ref(args[0], "x", lineno, source)))
            elif kind in ("AND", "OR", "NOT"):
                gates.append(Gate(kind, tuple(_gate_ref(a, "g", lineno, source) for a in args)))
            else:
                raise FormatError(f"Unknown gate kind {kind!r}", lineno, source)
        else:
            raise FormatError(f"Cannot parse line starting with '{head}'", lineno, source)
    if output is None:
        raise FormatError("Missing 'out' line", None, source)
    if n is None:
        n = max((g.var + 1 for g in gates if g.kind == "IN"), default=0)
    try:
        return BooleanCircuit(tuple(gates), output, n)
    except InputError as e:
        raise FormatError(str(e), None, source) from e


def format_circ(C: BooleanCircuit) -> str:
    lines = [f"circuit {C.n}"]
    for gid, g in enumerate(C.gates):
        if g.kind == "IN":
            lines.append(f"g{gid} = IN x{g.var}")
        else:
            lines.append(" ".join([f"g{gid} =", g.kind] + [f"g{i}" for i in g.inputs]))
    lines.append(f"out g{C.output}")
    return "\n".join(lines) + "\n"
