"""
Table-driven toy machines and the ``.arosm`` text format.

Format, one directive per line (``#`` starts a comment)::

    arosm <name>
    initial <state>
    state <id> <E|U|D> [final]
    trans <state> <0|1|-> <next> <0|1|-> [write <bits>|write -]

``-`` as the branch marks the single transition of a deterministic state;
``-`` as the push pushes nothing. ``write`` replaces the whole work tape
(``write -`` empties it). Toy machines ignore their input.
"""

import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import yaml

from ..errors import FormatError, InputError
from ..unitrees import OrderedTree
from .model import (
    DETERMINISTIC,
    KINDS,
    ArosMachine,
    Bits,
    StacklessConfiguration,
    Step,
)

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data")


@dataclass(frozen=True)
class Transition:
    next_state: str
    push: Optional[int] = None
    write: Optional[Bits] = None


@dataclass
class TableMachine(ArosMachine):
    """Machine given by explicit state and transition tables."""

    name: str
    initial_state: str
    kinds: Dict[str, str]
    final_state: str
    transitions: Dict[Tuple[str, Optional[int]], Transition] = field(default_factory=dict)

    def __post_init__(self):
        for state, kind in self.kinds.items():
            if kind not in KINDS:
                raise InputError(f"State {state} has unknown kind {kind!r}")
        for state in (self.initial_state, self.final_state):
            if state not in self.kinds:
                raise InputError(f"State {state} is not declared")
        for (state, bit), t in self.transitions.items():
            if state not in self.kinds or t.next_state not in self.kinds:
                raise InputError(f"Transition {state} -> {t.next_state} uses an undeclared state")
            if state == self.final_state:
                raise InputError("The final state has no transitions")
        for state, kind in self.kinds.items():
            if state == self.final_state:
                continue
            need = {None} if kind == DETERMINISTIC else {0, 1}
            have = {bit for s, bit in self.transitions if s == state}
            if have != need:
                shown = sorted("-" if b is None else str(b) for b in need)
                raise InputError(f"State {state} ({kind}) needs transitions {shown}")

    def initial(self, x: Bits) -> StacklessConfiguration:
        return StacklessConfiguration(self.initial_state)

    def kind(self, c: StacklessConfiguration) -> str:
        return self.kinds[c.state]

    def is_final(self, c: StacklessConfiguration) -> bool:
        return c.state == self.final_state

    def step(self, x: Bits, c: StacklessConfiguration, bit: Optional[int]) -> Step:
        t = self.transitions[(c.state, bit)]
        work = c.work if t.write is None else t.write
        return StacklessConfiguration(t.next_state, work, 0, c.in_head), t.push


def _bit_or_none(token: str, line: int, source: Optional[str]) -> Optional[int]:
    if token == "-":
        return None
    if token in ("0", "1"):
        return int(token)
    raise FormatError(f"Expected 0, 1 or -, got {token!r}", line, source)


def parse_arosm(text: str, source: Optional[str] = None) -> TableMachine:
    """
    Parse ``.arosm`` text.

    Raises:
        FormatError: On unknown directives or malformed lines
    """
    name = None
    initial = None
    kinds: Dict[str, str] = {}
    final = None
    transitions: Dict[Tuple[str, Optional[int]], Transition] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head, args = tokens[0], tokens[1:]
        if head == "arosm" and len(args) == 1:
            name = args[0]
        elif head == "initial" and len(args) == 1:
            initial = args[0]
        elif head == "state" and len(args) in (2, 3):
            if args[1] not in KINDS:
                raise FormatError(f"Unknown state kind {args[1]!r}", lineno, source)
            if args[0] in kinds:
                raise FormatError(f"State {args[0]} declared twice", lineno, source)
            kinds[args[0]] = args[1]
            if len(args) == 3:
                if args[2] != "final":
                    raise FormatError(f"Unexpected token {args[2]!r}", lineno, source)
                if final is not None:
                    raise FormatError("Only one final state is allowed", lineno, source)
                final = args[0]
        elif head == "trans" and len(args) in (4, 6):
            write = None
            if len(args) == 6:
                if args[4] != "write" or not (args[5] == "-" or set(args[5]) <= {"0", "1"}):
                    raise FormatError("Expected 'write <bits>'", lineno, source)
                write = () if args[5] == "-" else tuple(int(ch) for ch in args[5])
            bit = _bit_or_none(args[1], lineno, source)
            key = (args[0], bit)
            if key in transitions:
                raise FormatError(f"Duplicate transition for {args[0]} on {args[1]}", lineno, source)
            transitions[key] = Transition(args[2], _bit_or_none(args[3], lineno, source), write)
        else:
            raise FormatError(f"Cannot parse line: {raw.strip()!r}", lineno, source)
    if name is None or initial is None or final is None:
        raise FormatError("Missing 'arosm', 'initial' or final state declaration", None, source)
    try:
        return TableMachine(name, initial, kinds, final, transitions)
    except FormatError:
        raise
    except InputError as e:
        raise FormatError(str(e), None, source) from e


def read_arosm(path: str) -> TableMachine:
    with open(path, encoding="utf-8") as f:
        return parse_arosm(f.read(), source=path)


def format_arosm(M: TableMachine) -> str:
    lines = [f"arosm {M.name}", f"initial {M.initial_state}"]
    for state, kind in M.kinds.items():
        lines.append(f"state {state} {kind}" + (" final" if state == M.final_state else ""))
    for (state, bit), t in M.transitions.items():
        line = f"trans {state} {'-' if bit is None else bit} {t.next_state} "
        line += "-" if t.push is None else str(t.push)
        if t.write is not None:
            line += " write " + ("".join(map(str, t.write)) or "-")
        lines.append(line)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ToyMachine:
    """A bundled machine with the contraction tree and budgets it is run with."""

    machine: TableMachine
    tree: OrderedTree
    K: int
    A: int
    B: int
    stack: int
    chunk: int
    accepts: bool


def _shape(value: Any) -> tuple:
    return tuple(_shape(v) for v in value)


def load_toy_machines(path: Optional[str] = None) -> List[ToyMachine]:
    """Read the toy-machine manifest (defaults to the bundled ``machines.yaml``)."""
    path = path or os.path.join(DATA_DIR, "machines.yaml")
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if not data or "machines" not in data:
        raise ValueError(f"Failed to parse machine manifest: {path}")
    base = os.path.dirname(path)
    toys = []
    for entry in data["machines"]:
        toys.append(
            ToyMachine(
                machine=read_arosm(os.path.join(base, entry["file"])),
                tree=OrderedTree.from_shape(_shape(entry["tree"])),
                K=entry["K"],
                A=entry["A"],
                B=entry["B"],
                stack=entry["stack"],
                chunk=entry["chunk"],
                accepts=entry["accepts"],
            )
        )
    return toys
