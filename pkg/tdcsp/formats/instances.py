"""
Instance formats: ``.bcsp`` (Binary CSP), ``.lcol`` (List Coloring) and
``.pcol`` (Precoloring Extension).

``.bcsp``::

    bincsp <n>
    var <id> <v1> <v2> ...
    edge <u> <v>
    allow <u> <v> <a> <b>

``allow`` lines are oriented ``u -> v`` and name one allowed pair; an edge
without ``allow`` lines forbids everything. ``.lcol`` uses ``listcol <n>
<colors>`` (colors ``0..colors-1``), ``list <id> <c1> ...`` and ``edge``;
vertices without a ``list`` line may use every color. Writers renumber
vertex ids to ``0..n-1`` and name the original ids in comments. ``.pcol`` replaces
the header by ``precol <n> <colors>`` and adds ``pre <id> <c>``.
"""

from typing import Dict, List, Optional, Set, Tuple

from ..core import BinCspInstance, ListColoringInstance, PrecoloringInstance
from ..errors import FormatError, InputError
from ..structure import Graph
from .lines import directives, expect_args, header, to_int, to_ints, value_table, vertex_table


def _check_vertex(v: int, n: int, line: int, source: Optional[str]) -> int:
    if v >= n:
        raise FormatError(f"Vertex {v} outside 0..{n - 1}", line, source)
    return v


def parse_bcsp(text: str, source: Optional[str] = None) -> BinCspInstance:
    """
    Parse ``.bcsp`` text.

    Raises:
        FormatError: On malformed lines, undeclared variables or edges, or
            allowed pairs outside the domains
    """
    _, args = header(text, "bincsp", source)
    if len(args) != 1:
        raise FormatError("'bincsp' takes the variable count", 1, source)
    n = to_int(args[0], 1, source)
    domains: Dict[int, Tuple[int, ...]] = {}
    edges: Set[Tuple[int, int]] = set()
    allowed: Dict[Tuple[int, int], Set[Tuple[int, int]]] = {}
    pending: List[Tuple[int, int, int, int, int]] = []
    for lineno, head, rest in list(directives(text))[1:]:
        if head == "var":
            if not rest:
                raise FormatError("'var' needs a variable id", lineno, source)
            u = _check_vertex(to_int(rest[0], lineno, source), n, lineno, source)
            if u in domains:
                raise FormatError(f"Variable {u} declared twice", lineno, source)
            values = to_ints(rest[1:], lineno, source)
            if len(set(values)) != len(values):
                raise FormatError(f"Domain of {u} repeats a value", lineno, source)
            domains[u] = tuple(values)
        elif head == "edge":
            expect_args(head, rest, 2, lineno, source)
            u, v = (_check_vertex(x, n, lineno, source) for x in to_ints(rest, lineno, source))
            if u == v:
                raise FormatError(f"Self-loop on {u}", lineno, source)
            key = (min(u, v), max(u, v))
            edges.add(key)
            allowed.setdefault(key, set())
        elif head == "allow":
            expect_args(head, rest, 4, lineno, source)
            u, v, a, b = to_ints(rest, lineno, source)
            _check_vertex(u, n, lineno, source)
            _check_vertex(v, n, lineno, source)
            pending.append((lineno, u, v, a, b))
        else:
            raise FormatError(f"Unknown directive '{head}'", lineno, source)
    missing = sorted(set(range(n)) - set(domains))
    if missing:
        raise FormatError(f"No 'var' line for variables {missing}", None, source)
    for lineno, u, v, a, b in pending:
        key = (min(u, v), max(u, v))
        if key not in edges:
            raise FormatError(f"'allow' on undeclared edge {u} {v}", lineno, source)
        if a not in domains[u] or b not in domains[v]:
            raise FormatError(f"Allowed pair ({a}, {b}) leaves the domains of {u}, {v}", lineno, source)
        allowed[key].add((a, b) if u < v else (b, a))
    try:
        return BinCspInstance(tuple(domains[u] for u in range(n)), allowed)
    except InputError as e:
        raise FormatError(str(e), None, source) from e


def format_bcsp(inst: BinCspInstance) -> str:
    """Serialize; non-integer values are replaced by ``0..|D(u)|-1`` with a comment table."""
    lines = [f"bincsp {inst.n}"]
    tables: List[Dict] = []
    for u, dom in enumerate(inst.domains):
        table, notes = value_table(dom)
        tables.append(table)
        lines.extend(f"# var {u}: {note[2:]}" for note in notes)
        lines.append(" ".join(["var", str(u)] + [str(table[a]) for a in dom]))
    for (u, v), pairs in inst.constraints.items():
        lines.append(f"edge {u} {v}")
        for a, b in sorted(pairs, key=lambda p: (tables[u][p[0]], tables[v][p[1]])):
            lines.append(f"allow {u} {v} {tables[u][a]} {tables[v][b]}")
    return "\n".join(lines) + "\n"


def _parse_coloring(text: str, keyword: str, source: Optional[str]):
    _, args = header(text, keyword, source)
    if len(args) != 2:
        raise FormatError(f"'{keyword}' takes the vertex and color counts", 1, source)
    n, c = to_int(args[0], 1, source), to_int(args[1], 1, source)
    lists: Dict[int, Tuple[int, ...]] = {}
    edges: Set[Tuple[int, int]] = set()
    pre: Dict[int, int] = {}
    for lineno, head, rest in list(directives(text))[1:]:
        if head == "edge":
            expect_args(head, rest, 2, lineno, source)
            u, v = (_check_vertex(x, n, lineno, source) for x in to_ints(rest, lineno, source))
            if u == v:
                raise FormatError(f"Self-loop on {u}", lineno, source)
            edges.add((min(u, v), max(u, v)))
        elif head == "list" and keyword == "listcol":
            if not rest:
                raise FormatError("'list' needs a vertex id", lineno, source)
            v = _check_vertex(to_int(rest[0], lineno, source), n, lineno, source)
            if v in lists:
                raise FormatError(f"List of {v} given twice", lineno, source)
            lists[v] = tuple(to_ints(rest[1:], lineno, source))
        elif head == "pre" and keyword == "precol":
            expect_args(head, rest, 2, lineno, source)
            v, col = to_ints(rest, lineno, source)
            _check_vertex(v, n, lineno, source)
            if v in pre:
                raise FormatError(f"Vertex {v} precolored twice", lineno, source)
            pre[v] = col
        else:
            raise FormatError(f"Unknown directive '{head}'", lineno, source)
    G = Graph.from_edges(n, edges)
    colors = tuple(range(c))
    try:
        if keyword == "listcol":
            full = {v: lists.get(v, colors) for v in range(n)}
            return ListColoringInstance(G, colors, full)
        return PrecoloringInstance(G, colors, pre)
    except InputError as e:
        raise FormatError(str(e), None, source) from e


def parse_lcol(text: str, source: Optional[str] = None) -> ListColoringInstance:
    return _parse_coloring(text, "listcol", source)


def parse_pcol(text: str, source: Optional[str] = None) -> PrecoloringInstance:
    return _parse_coloring(text, "precol", source)


def format_lcol(lc: ListColoringInstance) -> str:
    table, notes = value_table(lc.colors, contiguous=True)
    ids, renamed = vertex_table(lc.graph.vertices)
    count = max(table.values(), default=-1) + 1
    lines = [f"listcol {lc.graph.n} {count}"] + notes + renamed
    for v in lc.graph.vertices:
        lines.append(" ".join(["list", str(ids[v])] + [str(table[c]) for c in lc.lists[v]]))
    lines.extend(f"edge {ids[u]} {ids[v]}" for u, v in lc.graph.edges)
    return "\n".join(lines) + "\n"


def format_pcol(pc: PrecoloringInstance) -> str:
    table, notes = value_table(pc.colors, contiguous=True)
    ids, renamed = vertex_table(pc.graph.vertices)
    count = max(table.values(), default=-1) + 1
    lines = [f"precol {pc.graph.n} {count}"] + notes + renamed
    lines.extend(f"edge {ids[u]} {ids[v]}" for u, v in pc.graph.edges)
    lines.extend(f"pre {ids[v]} {table[c]}" for v, c in pc.precolored.items())
    return "\n".join(lines) + "\n"
