"""
Binary CSP with an elimination tree, decided by a read-once stack machine.

The machine walks the tree top-down. At every node it existentially guesses
the value index bit by bit and pushes each bit as ``01`` (for 0) or ``10``
(for 1); it then universally picks a child by guessing the child's edge
label, one control bit before every label bit (0 continues, 1 ends). At a
leaf it universally picks a constraint between two branch vertices,
existentially guesses an allowed pair and universally probes one pushed bit
of one of the two values. A 1 sentinel sits at the bottom of the stack:
branches that need no check halt on it, failed checks halt on position 0.

The input is the bit encoding produced by :func:`encode_td_program`; the
machine decodes it once per distinct input.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..core import BinCspInstance
from ..errors import InputError
from ..structure import EliminationForest, tree_edge_labeling, validate_elimination_forest
from .model import (
    DETERMINISTIC,
    EXISTENTIAL,
    UNIVERSAL,
    ArosMachine,
    Bits,
    ResourceLimits,
    StacklessConfiguration,
    Step,
    bits_to_int,
    int_to_bits,
)

FIELDS = 6
HALT = "halt"

_KINDS = {
    "start": DETERMINISTIC,
    "guess": EXISTENTIAL,
    "pad0": DETERMINISTIC,
    "pad1": DETERMINISTIC,
    "chosen": DETERMINISTIC,
    "ctrl": UNIVERSAL,
    "label": UNIVERSAL,
    "route": DETERMINISTIC,
    "edge": UNIVERSAL,
    "edge_done": DETERMINISTIC,
    "val": EXISTENTIAL,
    "val_done": DETERMINISTIC,
    "side": UNIVERSAL,
    "bitidx": UNIVERSAL,
    "read": DETERMINISTIC,
    HALT: DETERMINISTIC,
}


def _clog2(m: int) -> int:
    """Bits needed to write ``0..m-1``; zero when ``m <= 1``."""
    return (m - 1).bit_length() if m > 1 else 0


@dataclass(frozen=True)
class TdProgram:
    """Decoded machine input: a relabelled instance on an elimination tree."""

    parent: Tuple[int, ...]
    sizes: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    allowed: Tuple[FrozenSet[Tuple[int, int]], ...]

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def forest(self) -> EliminationForest:
        return EliminationForest.from_parents(
            range(self.n), {v: p for v, p in enumerate(self.parent) if p >= 0}
        )


class _Layout:
    """Everything the machine derives from a program before running."""

    def __init__(self, program: TdProgram):
        self.program = program
        forest = program.forest()
        self.forest = forest
        self.children = {v: forest.children(v) for v in range(program.n)}
        tree, back = forest.to_ordered_tree()
        labeling = tree_edge_labeling(tree)
        self.labels: Dict[Tuple[int, int], str] = {
            (back[u], back[c]): label for (u, c), label in labeling.labels.items()
        }
        self.label_width = labeling.width
        self.max_label = max((len(s) for s in self.labels.values()), default=0)
        self.vbits = tuple(_clog2(s) for s in program.sizes)
        self.base: Dict[int, int] = {}
        for v in forest.preorder():
            p = program.parent[v]
            self.base[v] = 1 if p < 0 else self.base[p] + 2 * self.vbits[p]
        self.edge_bits = _clog2(len(program.edges))
        max_vbits = max(self.vbits, default=0)
        self.width = max(
            1,
            program.n.bit_length(),
            len(program.edges).bit_length(),
            max(program.sizes, default=0).bit_length(),
            2 * max_vbits + 1,
            self.max_label + 1,
        )
        self.depth = forest.depth

    def pack(self, *values: int) -> Bits:
        values = values + (0,) * (FIELDS - len(values))
        out: Tuple[int, ...] = ()
        for v in values:
            out += int_to_bits(v, self.width)
        return out

    def unpack(self, work: Bits) -> List[int]:
        w = self.width
        return [bits_to_int(work[i * w : (i + 1) * w]) for i in range(FIELDS)]

    def on_branch(self, leaf: int, v: int) -> bool:
        return self.forest.is_ancestor(v, leaf)


def encode_td_program(inst: BinCspInstance, forest: EliminationForest) -> Bits:
    """
    Bit encoding of an instance with values ``0..|D(u)|-1`` and a single-rooted
    elimination tree.

    Layout: ``w`` ones and a zero, then ``w``-bit numbers: ``n``; per vertex
    its parent plus one (0 for the root) and its domain size; the edge count;
    per edge its endpoints, its pair count and the pairs.
    """
    numbers: List[int] = [inst.n]
    for v in range(inst.n):
        numbers += [forest.parent.get(v, -1) + 1, len(inst.domain(v))]
    numbers.append(len(inst.constraints))
    for (u, v), pairs in inst.constraints.items():
        numbers += [u, v, len(pairs)]
        for a, b in sorted(pairs):
            numbers += [a, b]
    w = max(1, max(numbers).bit_length())
    bits: Tuple[int, ...] = (1,) * w + (0,)
    for value in numbers:
        bits += int_to_bits(value, w)
    return bits


@lru_cache(maxsize=64)
def decode_td_program(bits: Bits) -> TdProgram:
    """
    Inverse of :func:`encode_td_program`.

    Raises:
        InputError: If the bit string is not a valid encoding
    """
    w = 0
    while w < len(bits) and bits[w] == 1:
        w += 1
    if w == 0 or w >= len(bits):
        raise InputError("Machine input lacks its width header")
    pos = w + 1

    def take() -> int:
        nonlocal pos
        if pos + w > len(bits):
            raise InputError("Machine input ends in the middle of a number")
        value = bits_to_int(bits[pos : pos + w])
        pos += w
        return value

    n = take()
    parent, sizes = [], []
    for _ in range(n):
        parent.append(take() - 1)
        sizes.append(take())
    edges, allowed = [], []
    for _ in range(take()):
        u, v, count = take(), take(), take()
        edges.append((u, v))
        allowed.append(frozenset((take(), take()) for _ in range(count)))
    if pos != len(bits):
        raise InputError("Trailing bits after the machine input")
    if parent.count(-1) != 1:
        raise InputError("Encoded elimination tree must have exactly one root")
    return TdProgram(tuple(parent), tuple(sizes), tuple(edges), tuple(allowed))


@lru_cache(maxsize=64)
def _layout(bits: Bits) -> _Layout:
    return _Layout(decode_td_program(bits))


class TreedepthCspMachine(ArosMachine):
    """The fixed machine deciding Binary CSP on encoded elimination trees."""

    name = "bincsp-td"

    def initial(self, x: Bits) -> StacklessConfiguration:
        return StacklessConfiguration("start")

    def kind(self, c: StacklessConfiguration) -> str:
        return _KINDS[c.state]

    def is_final(self, c: StacklessConfiguration) -> bool:
        return c.state == HALT

    def resource_bounds(self, x: Bits) -> ResourceLimits:
        """Per-branch bounds the machine meets on input ``x``."""
        lay = _layout(tuple(x))
        d = lay.depth
        b = max(lay.vbits, default=0)
        return ResourceLimits(
            space=FIELDS * lay.width + (1 + 2 * d * b).bit_length(),
            stack=1 + 2 * d * b,
            nondeterminism=(d + 2) * b,
            conondeterminism=d + 2 * lay.label_width + 2 * lay.max_label
            + lay.edge_bits + 1 + _clog2(b),
            alternation=2 * d + 3,
        )

    def step(self, x: Bits, c: StacklessConfiguration, bit: Optional[int]) -> Step:
        lay = _layout(tuple(x))
        prog = lay.program
        u, j, acc, ln, lab, ext = lay.unpack(c.work) if c.state != "start" else [0] * FIELDS

        def at(state: str, *values: int) -> StacklessConfiguration:
            return StacklessConfiguration(state, lay.pack(*values))

        vacuous = StacklessConfiguration(HALT, (1,))
        reject = StacklessConfiguration(HALT, ())

        def enter_guess(v: int) -> StacklessConfiguration:
            if prog.sizes[v] == 0:
                return reject
            return at("guess" if lay.vbits[v] else "chosen", v)

        def enter_verify(leaf: int) -> StacklessConfiguration:
            if not prog.edges:
                return vacuous
            return at("edge" if lay.edge_bits else "edge_done", leaf)

        def endpoint_values(e: int, combined: int) -> Tuple[int, int, int, int]:
            w1, w2 = prog.edges[e]
            low = lay.vbits[w2]
            return w1, w2, combined >> low, combined & ((1 << low) - 1)

        state = c.state
        if state == "start":
            return enter_guess(prog.root), 1
        if state == "guess":
            return at(f"pad{bit}", u, j + 1, 2 * acc + bit), bit
        if state in ("pad0", "pad1"):
            nxt = "guess" if j < lay.vbits[u] else "chosen"
            return at(nxt, u, j, acc), 1 - int(state[-1])
        if state == "chosen":
            if acc >= prog.sizes[u]:
                return reject, None
            if lay.children[u]:
                return at("ctrl", u, 0, acc), None
            return enter_verify(u), None
        if state == "ctrl":
            if bit == 1:
                return at("route", u, j, acc, ln, lab), None
            if ln >= lay.max_label:
                return vacuous, None
            return at("label", u, j, acc, ln, lab), None
        if state == "label":
            return at("ctrl", u, j, acc, ln + 1, 2 * lab + bit), None
        if state == "route":
            label = format(lab, f"0{ln}b") if ln else ""
            for v in lay.children[u]:
                if lay.labels[(u, v)] == label:
                    return enter_guess(v), None
            return vacuous, None
        if state == "edge":
            nxt = "edge" if j + 1 < lay.edge_bits else "edge_done"
            return at(nxt, u, j + 1, 2 * acc + bit), None
        if state == "edge_done":
            if acc >= len(prog.edges):
                return vacuous, None
            w1, w2 = prog.edges[acc]
            if not (lay.on_branch(u, w1) and lay.on_branch(u, w2)):
                return vacuous, None
            nb = lay.vbits[w1] + lay.vbits[w2]
            return at("val" if nb else "val_done", u, 0, 0, 0, 0, acc), None
        if state == "val":
            w1, w2 = prog.edges[ext]
            nb = lay.vbits[w1] + lay.vbits[w2]
            nxt = "val" if j + 1 < nb else "val_done"
            return at(nxt, u, j + 1, 2 * acc + bit, 0, 0, ext), None
        if state == "val_done":
            w1, w2, a1, a2 = endpoint_values(ext, acc)
            if a1 >= prog.sizes[w1] or a2 >= prog.sizes[w2]:
                return reject, None
            if (a1, a2) not in prog.allowed[ext]:
                return reject, None
            return at("side", u, 0, 0, 0, acc, ext), None
        if state == "side":
            target = prog.edges[ext][bit]
            width = lay.vbits[target]
            if width == 0:
                return vacuous, None
            nxt = "bitidx" if _clog2(width) else "read"
            return at(nxt, u, 0, 0, bit, lab, ext), None
        if state == "bitidx":
            target = prog.edges[ext][ln]
            nxt = "bitidx" if j + 1 < _clog2(lay.vbits[target]) else "read"
            return at(nxt, u, j + 1, 2 * acc + bit, ln, lab, ext), None
        if state == "read":
            w1, w2, a1, a2 = endpoint_values(ext, lab)
            target, value = (w1, a1) if ln == 0 else (w2, a2)
            width = lay.vbits[target]
            if acc >= width:
                return vacuous, None
            value_bit = (value >> (width - 1 - acc)) & 1
            position = lay.base[target] + 2 * acc + (1 if value_bit else 2)
            return StacklessConfiguration(HALT, int_to_bits(position)), None
        raise InputError(f"No transition out of state {state!r}")


def compile_bincsp_td(
    inst: BinCspInstance, T: EliminationForest
) -> Tuple[TreedepthCspMachine, Bits]:
    """
    Machine and input deciding satisfiability of ``inst``.

    Values are relabelled to indices. A forest with several roots (or none)
    gets a dummy root variable with a single value and no constraints.

    Args:
        inst: Binary CSP instance
        T: Elimination forest of its Gaifman graph

    Returns:
        (machine, input bits)

    Raises:
        InputError: If T is not an elimination forest of the instance
    """
    if not validate_elimination_forest(inst.graph, T):
        raise InputError("Tree is not an elimination forest of the instance")
    relabelled, _ = inst.relabel()
    if len(T.roots) != 1:
        dummy = inst.n
        relabelled = BinCspInstance(relabelled.domains + ((0,),), relabelled.constraints)
        parent = dict(T.parent)
        parent.update({r: dummy for r in T.roots})
        T = EliminationForest(tuple(range(dummy + 1)), parent)
    return TreedepthCspMachine(), encode_td_program(relabelled, T)
