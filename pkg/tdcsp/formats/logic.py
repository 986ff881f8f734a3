"""
Structure and sentence formats.

``.struct``::

    universe <n>
    rel <name> <arity>
    tup <name> <e1> [<e2>]

``.fo`` holds one s-expression: nested ``(exists (<vars>) ...)`` /
``(forall (<vars>) ...)`` around a matrix for prenex sentences, or
``(guided <k> <matrix>)`` for guided ones. Matrices use ``(and ...)``,
``(or ...)``, ``(not ...)``, ``(= a b)`` and relation atoms ``(R a [b])``.
"""

from typing import Dict, List, Optional, Set, Tuple, Union

from ..errors import FormatError, InputError
from ..logic import (
    Atom,
    Conj,
    Disj,
    Equals,
    Formula,
    GuidedSentence,
    Not,
    PrenexSentence,
    RelationalStructure,
)
from .lines import directives, expect_args, header, to_int, to_ints
from .sexpr import SExpr, Symbol, expect_list, read_sexpr, symbol_int

KEYWORDS = ("and", "or", "not", "=", "exists", "forall", "guided")
Sentence = Union[GuidedSentence, PrenexSentence]


def parse_struct(text: str, source: Optional[str] = None) -> RelationalStructure:
    """
    Parse ``.struct`` text.

    Raises:
        FormatError: On malformed lines, undeclared relations or tuples that
            do not fit the universe or arity
    """
    _, args = header(text, "universe", source)
    if len(args) != 1:
        raise FormatError("'universe' takes the element count", 1, source)
    n = to_int(args[0], 1, source)
    arities: Dict[str, int] = {}
    tuples: Dict[str, Set[Tuple[int, ...]]] = {}
    for lineno, head, rest in list(directives(text))[1:]:
        if head == "rel":
            expect_args(head, rest, 2, lineno, source)
            name, arity = rest[0], to_int(rest[1], lineno, source)
            if name in arities:
                raise FormatError(f"Relation {name} declared twice", lineno, source)
            if name in KEYWORDS or arity not in (1, 2):
                raise FormatError(f"Bad relation declaration {name}/{arity}", lineno, source)
            arities[name] = arity
            tuples[name] = set()
        elif head == "tup":
            if not rest or rest[0] not in arities:
                raise FormatError("'tup' needs a declared relation", lineno, source)
            elems = tuple(to_ints(rest[1:], lineno, source))
            if len(elems) != arities[rest[0]] or any(e >= n for e in elems):
                raise FormatError(f"Tuple {elems} does not fit {rest[0]}", lineno, source)
            tuples[rest[0]].add(elems)
        else:
            raise FormatError(f"Unknown directive '{head}'", lineno, source)
    try:
        return RelationalStructure(
            n, {name: (arities[name], frozenset(ts)) for name, ts in tuples.items()}
        )
    except InputError as e:
        raise FormatError(str(e), None, source) from e


def format_struct(A: RelationalStructure) -> str:
    lines = [f"universe {A.size}"]
    if A.labels is not None:
        lines.extend(f"# {e} = {label}" for e, label in enumerate(A.labels))
    for name, (arity, ts) in A.relations.items():
        lines.append(f"rel {name} {arity}")
        lines.extend(" ".join(["tup", name] + [str(e) for e in t]) for t in sorted(ts))
    return "\n".join(lines) + "\n"


def _variable(e: SExpr, source: Optional[str]) -> str:
    if not isinstance(e, Symbol) or e.text in KEYWORDS or e.text.startswith(":"):
        raise FormatError("Expected a variable name", e.line, source)
    return e.text


def _formula(e: SExpr, source: Optional[str]) -> Formula:
    lst = expect_list(e, source)
    head = lst.head
    args = lst.items[1:]
    if head is None:
        raise FormatError("A formula starts with a connective or relation name", lst.line, source)
    if head == "and":
        return Conj(tuple(_formula(a, source) for a in args))
    if head == "or":
        return Disj(tuple(_formula(a, source) for a in args))
    if head == "not":
        if len(args) != 1:
            raise FormatError("'not' takes one formula", lst.line, source)
        return Not(_formula(args[0], source))
    if head == "=":
        if len(args) != 2:
            raise FormatError("'=' takes two variables", lst.line, source)
        return Equals(_variable(args[0], source), _variable(args[1], source))
    if head in KEYWORDS:
        raise FormatError(f"Quantifier '{head}' inside a matrix", lst.line, source)
    if len(args) not in (1, 2):
        raise FormatError(f"Atom {head} needs one or two arguments", lst.line, source)
    return Atom(head, tuple(_variable(a, source) for a in args))


def parse_fo(text: str, source: Optional[str] = None) -> Sentence:
    """
    Parse ``.fo`` text into a guided or prenex sentence.

    Adjacent quantifiers of the same kind are merged into one block.

    Raises:
        FormatError: On malformed expressions or unbound variables
    """
    node = expect_list(read_sexpr(text, source), source)
    try:
        if node.head == "guided":
            if len(node.items) != 3:
                raise FormatError("Expected '(guided <k> <matrix>)'", node.line, source)
            return GuidedSentence(symbol_int(node.items[1], source, 1), _formula(node.items[2], source))
        blocks: List[Tuple[str, Tuple[str, ...]]] = []
        while node.head in ("exists", "forall"):
            if len(node.items) != 3:
                raise FormatError(f"Expected '({node.head} (<vars>) <body>)'", node.line, source)
            names = tuple(_variable(v, source) for v in expect_list(node.items[1], source).items)
            kind = "E" if node.head == "exists" else "A"
            if blocks and blocks[-1][0] == kind:
                blocks[-1] = (kind, blocks[-1][1] + names)
            elif names:
                blocks.append((kind, names))
            node = expect_list(node.items[2], source)
        return PrenexSentence(tuple(blocks), _formula(node, source))
    except FormatError:
        raise
    except InputError as e:
        raise FormatError(str(e), node.line, source) from e


def _write_formula(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return "(" + " ".join((phi.relation,) + phi.args) + ")"
    if isinstance(phi, Equals):
        return f"(= {phi.left} {phi.right})"
    if isinstance(phi, Not):
        return f"(not {_write_formula(phi.child)})"
    head = "and" if isinstance(phi, Conj) else "or"
    return "(" + " ".join([head] + [_write_formula(c) for c in phi.children]) + ")"


def format_fo(s: Sentence) -> str:
    if isinstance(s, GuidedSentence):
        return f"(guided {s.k} {_write_formula(s.matrix)})\n"
    out = _write_formula(s.matrix)
    for kind, names in reversed(s.blocks):
        word = "exists" if kind == "E" else "forall"
        out = f"({word} ({' '.join(names)}) {out})"
    return out + "\n"
