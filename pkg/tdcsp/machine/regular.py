"""
Acceptance of a regular machine as a Binary CSP on its contraction tree.

Every edge of the contraction tree ``T`` is replaced by a path: ``K``
vertices that follow the universal block of the parent towards the child's
leaf, in chunks of at most ``chunk`` pushed symbols, then ``2K`` vertices
that follow existential and deterministic steps. A value is a tuple
``(configuration, pushed word, existential count, universal count, stack
length)``; each leaf checks the stack symbol it reads against the word of
every ancestor whose window contains that position.

Domains are generated top-down from the root, so only values reachable
along the tree are materialized.
"""

from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..config import CapsConfig, get_caps
from ..core import BinCspInstance
from ..errors import InputError, ResourceCapError
from ..structure import EliminationForest
from ..unitrees import OrderedTree
from .model import (
    EXISTENTIAL,
    UNIVERSAL,
    ArosMachine,
    Bits,
    StacklessConfiguration,
    UniversalBlock,
    bits_to_int,
    universal_block,
)

Value = Tuple[StacklessConfiguration, Bits, int, int, int]


class _Builder:
    def __init__(
        self,
        M: ArosMachine,
        x: Bits,
        A: int,
        B: int,
        chunk: int,
        stack_budget: int,
        caps: CapsConfig,
    ):
        self.M = M
        self.x = x
        self.A = A
        self.B = B
        self.chunk = chunk
        self.stack_budget = stack_budget
        self.caps = caps
        self.blocks: Dict[StacklessConfiguration, UniversalBlock] = {}
        self.seen: Set[StacklessConfiguration] = set()

    def note(self, c: StacklessConfiguration) -> None:
        self.seen.add(c)
        if len(self.seen) > self.caps.max_configurations:
            raise ResourceCapError(
                "max_configurations", self.caps.max_configurations, len(self.seen)
            )

    def block(self, c: StacklessConfiguration) -> UniversalBlock:
        if c not in self.blocks:
            self.blocks[c] = universal_block(self.M, c, self.x, self.caps)
            for cfg in self.blocks[c].configs:
                self.note(cfg)
        return self.blocks[c]

    def in_budget(self, q: Value) -> bool:
        _, s, n_e, n_a, d = q
        return len(s) <= self.chunk and n_e <= self.A and n_a <= self.B and d <= self.stack_budget

    def guided(self, q: Value, i: int, K: int) -> List[Value]:
        """The ``K`` values following the branch of ``q``'s block to its ``i``-th leaf."""
        c, _, n_e, n_a, d = q
        blk = self.block(c)
        leaf = blk.leaves()[i]
        steps = blk.path_to(leaf)
        nodes = [step[0] for step in steps] + [leaf]
        pushes = [step[2] for step in steps]
        # cumulative pushes and universal configurations before node t
        pushed: List[int] = [0]
        forall: List[int] = [0]
        for t, push in enumerate(pushes):
            pushed.append(pushed[-1] + (push is not None))
            is_u = self.M.kind(blk.configs[nodes[t]]) == UNIVERSAL
            forall.append(forall[-1] + is_u)
        out: List[Value] = []
        prev, depth = 0, d
        for j in range(1, K + 1):
            t = max(t for t in range(len(nodes)) if pushed[t] <= j * self.chunk)
            word = tuple(p for p in pushes[prev:t] if p is not None)
            depth += len(word)
            out.append((blk.configs[nodes[t]], word, n_e, n_a + forall[t], depth))
            prev = t
        return out

    def successors(self, q: Value) -> List[Value]:
        """Values reachable by at most ``chunk`` pushes and existential steps, universal only last."""
        c, _, n_e, n_a, d = q
        out: List[Value] = []
        pending: List[Tuple[StacklessConfiguration, Bits, int]] = [(c, (), 0)]
        steps = 0
        while pending:
            cur, word, used = pending.pop()
            self.note(cur)
            out.append((cur, word, n_e + used, n_a, d + len(word)))
            if cur != c and self.M.kind(cur) == UNIVERSAL:
                continue
            if self.M.is_final(cur) or (cur == c and self.M.kind(cur) == UNIVERSAL):
                continue
            steps += 1
            if steps > self.caps.max_block_steps:
                raise ResourceCapError("max_block_steps", self.caps.max_block_steps, steps)
            if self.M.kind(cur) == EXISTENTIAL:
                if used >= self.chunk:
                    continue
                moves = [(0, 1), (1, 1)]
            else:
                moves = [(None, 0)]
            for bit, cost in moves:
                nxt, push = self.M.step(self.x, cur, bit)
                nword = word if push is None else word + (push,)
                if len(nword) > self.chunk:
                    continue
                pending.append((nxt, nword, used + cost))
        return sorted(set(v for v in out if self.in_budget(v)), key=_value_order)

    def reads_ok(self, q: Value, leaf: Value) -> bool:
        """The symbol read at ``leaf`` is 1 if it lies in ``q``'s window."""
        _, s, _, _, d = q
        p = bits_to_int(leaf[0].work)
        lo = d - len(s) + 1
        if not lo <= p <= d:
            return True
        return s[p - lo] == 1


def _value_order(q: Value) -> Tuple:
    c, s, n_e, n_a, d = q
    return (c.state, c.work, c.work_head, c.in_head, s, n_e, n_a, d)


def compile_regular_arosm_to_bincsp(
    M: ArosMachine,
    T: OrderedTree,
    x: Sequence[int],
    A: int,
    B: int,
    K: int,
    chunk: Optional[int] = None,
    stack_budget: Optional[int] = None,
    caps: Optional[CapsConfig] = None,
) -> Tuple[BinCspInstance, EliminationForest]:
    """
    Binary CSP that is satisfiable iff ``M`` has an accepting ∀ computation
    tree on ``x`` with contraction ``T`` within the budgets.

    Args:
        M: Machine
        T: Contraction tree, depth at most ``K``
        x: Input bits
        A: Nondeterminism budget
        B: Conondeterminism budget
        K: Depth bound; every edge of T becomes ``3K`` extra vertices
        chunk: Pushes and existential steps per subdivision vertex
            (defaults to the bit length of ``len(x)``, at least 1)
        stack_budget: Largest stack length (defaults to ``A``)
        caps: Resource caps (``max_configurations``, ``max_block_steps``)

    Returns:
        (instance, elimination tree S of depth at most ``3K^2 + K``)

    Raises:
        InputError: If T is deeper than K or a budget is negative
        ResourceCapError: If too many stackless configurations are visited
    """
    caps = get_caps(caps)
    x = tuple(x)
    if K < 1 or T.depth() > K:
        raise InputError(f"Contraction tree of depth {T.depth()} exceeds K = {K}")
    if min(A, B) < 0:
        raise InputError("Budgets must be nonnegative")
    chunk = chunk if chunk is not None else max(1, len(x).bit_length())
    stack_budget = stack_budget if stack_budget is not None else A
    if chunk < 1 or stack_budget < 0:
        raise InputError("chunk must be >= 1 and the stack budget >= 0")
    b = _Builder(M, x, A, B, chunk, stack_budget, caps)

    parent: Dict[int, int] = {}
    domains: List[List[Value]] = []
    relations: Dict[Tuple[int, int], List[Tuple[Value, Value]]] = {}
    principal: Dict[int, int] = {}

    def new_vertex(above: Optional[int], values: List[Value]) -> int:
        vid = len(domains)
        domains.append(values)
        if above is not None:
            parent[vid] = above
        return vid

    def restrict_principal(node: int, values: List[Value]) -> List[Value]:
        kids = len(T.children[node])
        if kids:
            return [q for q in values if len(b.block(q[0]).leaves()) == kids]
        kept = []
        for q in values:
            c, s, _, _, d = q
            p = bits_to_int(c.work)
            if M.is_final(c) and 1 <= p <= d and b.reads_ok(q, q):
                kept.append(q)
        return kept

    c0 = M.initial(x)
    b.note(c0)
    root_values = restrict_principal(0, [(c0, (), 0, 0, 0)])
    principal[0] = new_vertex(None, root_values)

    for node in T.preorder():
        u = principal[node]
        for i, child in enumerate(T.children[node]):
            guided = {q: b.guided(q, i, K) for q in domains[u]}
            chain = u
            for j in range(K):
                pairs = [(q, seq[j]) for q, seq in guided.items() if b.in_budget(seq[j])]
                vid = new_vertex(chain, sorted({p[1] for p in pairs}, key=_value_order))
                relations[(u, vid)] = pairs
                chain = vid
            for j in range(2 * K + 1):
                pairs = [(q, r) for q in domains[chain] for r in b.successors(q)]
                values = sorted({p[1] for p in pairs}, key=_value_order)
                if j == 2 * K:
                    values = restrict_principal(child, values)
                vid = new_vertex(chain, values)
                allowed = set(values)
                relations[(chain, vid)] = [p for p in pairs if p[1] in allowed]
                chain = vid
            principal[child] = chain

    S = EliminationForest(tuple(range(len(domains))), parent)
    for leaf in S.leaves():
        for w in S.ancestors(leaf):
            pairs = [
                (q, r) for q in domains[w] for r in domains[leaf] if b.reads_ok(q, r)
            ]
            key = (w, leaf)
            if key in relations:
                keep = set(pairs)
                relations[key] = [p for p in relations[key] if p in keep]
            else:
                relations[key] = pairs
    return BinCspInstance.build(domains, relations), S
