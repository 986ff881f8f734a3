"""
Alternating read-once stack machines.

A machine is seen through its stackless configurations: the stack can only
be pushed to and is read once, when the final state is reached, at the
position encoded in binary by the work tape. Transitions are macro steps: a
deterministic step may rewrite the whole work tape, and an existential or
universal step consumes exactly one bit.
"""

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from ..config import CapsConfig, get_caps
from ..errors import InputError, ResourceCapError

EXISTENTIAL = "E"
UNIVERSAL = "U"
DETERMINISTIC = "D"
KINDS = (EXISTENTIAL, UNIVERSAL, DETERMINISTIC)

Bits = Tuple[int, ...]


class StacklessConfiguration(NamedTuple):
    """State, work tape and head positions; everything but the stack."""

    state: str
    work: Bits = ()
    work_head: int = 0
    in_head: int = 0


Step = Tuple[StacklessConfiguration, Optional[int]]


class ArosMachine(ABC):
    """Interface every machine implements.

    ``step`` is called with ``bit=None`` in deterministic configurations and
    with the chosen bit in existential and universal ones; it returns the
    successor and the pushed symbol (or None).
    """

    @abstractmethod
    def initial(self, x: Bits) -> StacklessConfiguration:
        """Starting configuration on input ``x``."""

    @abstractmethod
    def kind(self, c: StacklessConfiguration) -> str:
        """One of ``E``, ``U``, ``D``."""

    @abstractmethod
    def is_final(self, c: StacklessConfiguration) -> bool:
        """True in the designated final state."""

    @abstractmethod
    def step(self, x: Bits, c: StacklessConfiguration, bit: Optional[int]) -> Step:
        """Apply one transition."""


def bits_to_int(bits: Sequence[int]) -> int:
    """Binary number, most significant bit first; the empty string is 0."""
    value = 0
    for b in bits:
        value = 2 * value + b
    return value


def int_to_bits(value: int, width: Optional[int] = None) -> Bits:
    """Binary digits of ``value``; ``width`` pads with leading zeros."""
    if value < 0:
        raise InputError("Only nonnegative numbers have a binary encoding")
    digits = format(value, "b") if value else ""
    if width is not None:
        if len(digits) > width:
            raise InputError(f"{value} does not fit into {width} bits")
        digits = digits.rjust(width, "0")
    return tuple(int(ch) for ch in digits)


def stack_accepts(c: StacklessConfiguration, stack: Sequence[int]) -> bool:
    """Acceptance at the final state: the ``i``-th stack bit is 1, ``i`` read from the work tape.

    Positions count from 1 at the bottom of the stack; out-of-range positions reject.
    """
    i = bits_to_int(c.work)
    return 1 <= i <= len(stack) and stack[i - 1] == 1


@dataclass(frozen=True)
class ResourceLimits:
    """Per-branch bounds; ``None`` leaves a resource unbounded."""

    space: Optional[int] = None
    stack: Optional[int] = None
    nondeterminism: Optional[int] = None
    conondeterminism: Optional[int] = None
    alternation: Optional[int] = None

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value is not None and value < 0:
                raise InputError(f"Limit {name} must be nonnegative, got {value}")


@dataclass(frozen=True)
class ResourceUsage:
    """Resources of a computation tree: per-branch maxima."""

    space: int = 0
    stack: int = 0
    nondeterminism: int = 0
    conondeterminism: int = 0
    alternation: int = 0

    def merge(self, other: "ResourceUsage") -> "ResourceUsage":
        return ResourceUsage(
            *(max(a, b) for a, b in zip(_as_tuple(self), _as_tuple(other)))
        )

    def within(self, limits: ResourceLimits) -> bool:
        return all(
            bound is None or used <= bound
            for used, bound in zip(_as_tuple(self), _as_tuple(limits))
        )

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def _as_tuple(obj) -> Tuple:
    return (
        obj.space,
        obj.stack,
        obj.nondeterminism,
        obj.conondeterminism,
        obj.alternation,
    )


@dataclass
class ComputationNode:
    """Node of a ∀ computation tree: configuration, its kind and the stack on arrival."""

    config: StacklessConfiguration
    kind: str
    stack: Bits
    final: bool = False
    children: List[Tuple[Optional[int], "ComputationNode"]] = field(default_factory=list)


def _space_of(c: StacklessConfiguration) -> int:
    return max(len(c.work), c.work_head)


@dataclass(frozen=True)
class _Branch:
    """Counters of the branch leading to a configuration."""

    space: int = 0
    stack: int = 0
    exists: int = 0
    forall: int = 0
    blocks: int = 1
    last: Optional[str] = None
    steps: int = 0

    def visit(self, c: StacklessConfiguration, kind: str, stack_size: int) -> "_Branch":
        blocks, last = self.blocks, self.last
        if kind != DETERMINISTIC:
            if last is not None and last != kind:
                blocks += 1
            last = kind
        return _Branch(
            max(self.space, _space_of(c)),
            max(self.stack, stack_size),
            self.exists + (kind == EXISTENTIAL),
            self.forall + (kind == UNIVERSAL),
            blocks,
            last,
            self.steps,
        )

    def usage(self) -> ResourceUsage:
        return ResourceUsage(self.space, self.stack, self.exists, self.forall, self.blocks)


class _Search:
    def __init__(self, M: ArosMachine, x: Bits, limits: ResourceLimits, caps: CapsConfig):
        self.M = M
        self.x = tuple(x)
        self.limits = limits
        self.caps = caps

    def run(self) -> Optional[Tuple[ResourceUsage, ComputationNode]]:
        return self.explore(self.M.initial(self.x), (), _Branch())

    def _enter(
        self, c: StacklessConfiguration, stack: Bits, branch: _Branch
    ) -> Tuple[Optional[_Branch], ComputationNode]:
        final = self.M.is_final(c)
        kind = DETERMINISTIC if final else self.M.kind(c)
        if kind not in KINDS:
            raise InputError(f"Machine reports unknown state kind {kind!r}")
        branch = branch.visit(c, kind, len(stack))
        node = ComputationNode(c, kind, stack, final)
        if not branch.usage().within(self.limits):
            return None, node
        if not final:
            if branch.steps >= self.caps.max_block_steps:
                raise ResourceCapError(
                    "max_block_steps", self.caps.max_block_steps, branch.steps + 1
                )
            branch = replace(branch, steps=branch.steps + 1)
        return branch, node

    def explore(
        self, c: StacklessConfiguration, stack: Bits, branch: _Branch
    ) -> Optional[Tuple[ResourceUsage, ComputationNode]]:
        M = self.M
        entered, head = self._enter(c, stack, branch)
        node = head
        # deterministic runs are followed in a loop, not by recursion
        while entered is not None and not node.final and node.kind == DETERMINISTIC:
            nxt, push = M.step(self.x, node.config, None)
            stack = _pushed(stack, push)
            entered, child = self._enter(nxt, stack, entered)
            node.children.append((None, child))
            node = child
        if entered is None:
            return None
        branch = entered
        c = node.config
        if node.final:
            return (branch.usage(), head) if stack_accepts(c, stack) else None

        if node.kind == EXISTENTIAL:
            for bit in (0, 1):
                nxt, push = M.step(self.x, c, bit)
                found = self.explore(nxt, _pushed(stack, push), branch)
                if found is not None:
                    node.children.append((bit, found[1]))
                    return found[0], head
            return None

        usage = branch.usage()
        for bit in (0, 1):
            nxt, push = M.step(self.x, c, bit)
            found = self.explore(nxt, _pushed(stack, push), branch)
            if found is None:
                return None
            node.children.append((bit, found[1]))
            usage = usage.merge(found[0])
        return usage, head


def _pushed(stack: Bits, push: Optional[int]) -> Bits:
    if push is None:
        return stack
    if push not in (0, 1):
        raise InputError(f"Pushed symbol must be 0 or 1, got {push!r}")
    return stack + (push,)


def accepting_tree(
    M: ArosMachine,
    x: Sequence[int],
    limits: Optional[ResourceLimits] = None,
    caps: Optional[CapsConfig] = None,
) -> Optional[Tuple[ResourceUsage, ComputationNode]]:
    """
    Search for an accepting ∀ computation tree within ``limits``.

    Existential configurations try the 0-transition before the 1-transition;
    the first accepting tree in that order is returned.

    Returns:
        (usage, root node) or None when no accepting tree respects the limits

    Raises:
        ResourceCapError: If a branch runs longer than ``caps.max_block_steps``
    """
    search = _Search(M, tuple(x), limits or ResourceLimits(), get_caps(caps))
    return search.run()


def decide(
    M: ArosMachine,
    x: Sequence[int],
    limits: Optional[ResourceLimits] = None,
    caps: Optional[CapsConfig] = None,
) -> Tuple[bool, Optional[ResourceUsage]]:
    """
    Decide acceptance of ``x`` by ``M`` under per-branch resource limits.

    Returns:
        (accepted, usage of the reported accepting tree or None)
    """
    found = accepting_tree(M, x, limits, caps)
    if found is None:
        return False, None
    return True, found[0]


def measure_tree(root: ComputationNode) -> ResourceUsage:
    """Recount the resources of a computation tree from its nodes."""
    usage = ResourceUsage()
    stack = [(root, _Branch())]
    while stack:
        node, branch = stack.pop()
        branch = branch.visit(node.config, node.kind, len(node.stack))
        if not node.children:
            usage = usage.merge(branch.usage())
        stack.extend((child, branch) for _, child in node.children)
    return usage


@dataclass(frozen=True)
class UniversalBlock:
    """Tree of stackless configurations rooted at ``configs[0]``.

    ``edges[i]`` lists ``(child, bit, push)`` for node ``i``; ``bit`` is None
    on deterministic steps. Children of universal nodes are in bit order.
    """

    configs: Tuple[StacklessConfiguration, ...]
    edges: Tuple[Tuple[Tuple[int, Optional[int], Optional[int]], ...], ...]

    @property
    def size(self) -> int:
        return len(self.configs)

    def leaves(self) -> List[int]:
        """Leaves in preorder (0-branch first)."""
        out = []
        stack = [0]
        while stack:
            u = stack.pop()
            if not self.edges[u]:
                out.append(u)
            stack.extend(child for child, _, _ in reversed(self.edges[u]))
        return out

    def path_to(self, leaf: int) -> List[Tuple[int, Optional[int], Optional[int]]]:
        """Steps ``(node, bit, push)`` from the root down to ``leaf``."""
        parent: Dict[int, Tuple[int, Optional[int], Optional[int]]] = {}
        for u, out in enumerate(self.edges):
            for child, bit, push in out:
                parent[child] = (u, bit, push)
        steps = []
        v = leaf
        while v in parent:
            steps.append(parent[v])
            v = parent[v][0]
        return list(reversed(steps))


def universal_block(
    M: ArosMachine,
    c: StacklessConfiguration,
    x: Sequence[int],
    caps: Optional[CapsConfig] = None,
) -> UniversalBlock:
    """
    Simulate ``M`` from ``c`` through deterministic and universal
    configurations, stopping at existential and final ones.

    Raises:
        ResourceCapError: If the block has more than ``caps.max_block_steps`` nodes
    """
    caps = get_caps(caps)
    x = tuple(x)
    configs: List[StacklessConfiguration] = [c]
    edges: List[List[Tuple[int, Optional[int], Optional[int]]]] = [[]]
    pending = [0]
    while pending:
        u = pending.pop()
        cu = configs[u]
        if M.is_final(cu) or M.kind(cu) == EXISTENTIAL:
            continue
        bits = (None,) if M.kind(cu) == DETERMINISTIC else (0, 1)
        for bit in bits:
            nxt, push = M.step(x, cu, bit)
            if len(configs) >= caps.max_block_steps:
                raise ResourceCapError("max_block_steps", caps.max_block_steps, len(configs) + 1)
            configs.append(nxt)
            edges.append([])
            edges[u].append((len(configs) - 1, bit, push))
            pending.append(len(configs) - 1)
    return UniversalBlock(tuple(configs), tuple(tuple(e) for e in edges))
