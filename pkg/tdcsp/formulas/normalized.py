"""
t-normalized Boolean formulas and exact-weight satisfiability.

A formula is a tree with an AND root whose levels alternate AND/OR and whose
literals all sit one level below the deepest connective; singleton nodes
are legal padding. An empty AND is true and an empty OR is false.
"""

from dataclasses import dataclass, field
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Set,
    Tuple,
    Union,
)

import numpy as np

from ..config import CapsConfig, get_caps
from ..errors import InputError, ResourceCapError


@dataclass(frozen=True)
class Lit:
    """Literal ``x_var`` (positive) or ``not x_var``."""

    var: int
    positive: bool = True


@dataclass(frozen=True)
class And:
    children: Tuple["Node", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Or:
    children: Tuple["Node", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


Node = Union[Lit, And, Or]


def conj(*children: Node) -> And:
    return And(children)


def disj(*children: Node) -> Or:
    return Or(children)


def pos(var: int) -> Lit:
    return Lit(var, True)


def neg(var: int) -> Lit:
    return Lit(var, False)


def iter_literals(node: Node) -> Iterator[Lit]:
    stack = [node]
    while stack:
        x = stack.pop()
        if isinstance(x, Lit):
            yield x
        else:
            stack.extend(x.children)


def variables_of(node: Node) -> Set[int]:
    return {lit.var for lit in iter_literals(node)}


def node_size(node: Node) -> int:
    if isinstance(node, Lit):
        return 1
    return 1 + sum(node_size(c) for c in node.children)


@dataclass(frozen=True)
class NormalizedFormula:
    """Formula tree over variables ``0..n-1``."""

    root: And
    n: int

    def __post_init__(self):
        if not isinstance(self.root, And):
            raise InputError("A normalized formula has an AND root")
        if self.n < 0:
            raise InputError("Variable count must be >= 0")
        for lit in iter_literals(self.root):
            if not 0 <= lit.var < self.n:
                raise InputError(f"Literal on x{lit.var} outside 0..{self.n - 1}")


@dataclass(frozen=True)
class WeightedSatInstance:
    """Weighted satisfiability: make ``formula`` true with exactly ``k`` true variables."""

    formula: NormalizedFormula
    k: int
    names: Optional[Dict[int, str]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 0:
            raise InputError("Weight must be >= 0")

    @property
    def n(self) -> int:
        return self.formula.n


def _root(F: Union[NormalizedFormula, Node]) -> Node:
    return F.root if isinstance(F, NormalizedFormula) else F


def eval_formula(F: Union[NormalizedFormula, Node], truth: Iterable[int]) -> bool:
    """Evaluate under the assignment whose true variables are ``truth``."""
    truth = truth if isinstance(truth, (set, frozenset)) else set(truth)

    def ev(node: Node) -> bool:
        if isinstance(node, Lit):
            return (node.var in truth) == node.positive
        if isinstance(node, And):
            return all(ev(c) for c in node.children)
        return any(ev(c) for c in node.children)

    return ev(_root(F))


def _shape_stats(root: Node) -> Tuple[Set[int], int]:
    """(depths of literals, depth of deepest connective); raises on bad alternation."""
    lit_depths: Set[int] = set()
    deepest = 0
    stack = [(root, 1)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, Lit):
            lit_depths.add(depth)
            continue
        expected = And if depth % 2 == 1 else Or
        if not isinstance(node, expected):
            raise InputError(
                f"Malformed alternation: {type(node).__name__} at level {depth}"
            )
        deepest = max(deepest, depth)
        stack.extend((c, depth + 1) for c in node.children)
    return lit_depths, deepest


def normalization_level(F: Union[NormalizedFormula, Node]) -> int:
    """
    Smallest ``t`` such that the formula is t-normalized.

    Literals must all sit at depth ``t + 1`` with no connective below depth
    ``t``; a formula without literals has level ``max(2, deepest connective)``.

    Raises:
        InputError: On broken AND/OR alternation, literals at mixed depths or
            literals directly below the root
    """
    lit_depths, deepest = _shape_stats(_root(F))
    if not lit_depths:
        return max(2, deepest)
    if len(lit_depths) > 1:
        raise InputError(f"Literals at mixed depths {sorted(lit_depths)}")
    t = lit_depths.pop() - 1
    if t < 2:
        raise InputError("Literals directly below the root")
    if deepest > t:
        raise InputError("Connective below the literal level")
    return t


def is_normalized(F: Union[NormalizedFormula, Node], t: int) -> bool:
    """True iff the formula is t-normalized (literal-free formulas are t-normalized for every t >= their level)."""
    try:
        level = normalization_level(F)
    except InputError:
        return False
    if any(True for _ in iter_literals(_root(F))):
        return level == t
    return level <= t


def is_antimonotone(F: Union[NormalizedFormula, Node]) -> bool:
    return all(not lit.positive for lit in iter_literals(_root(F)))


def is_monotone(F: Union[NormalizedFormula, Node]) -> bool:
    return all(lit.positive for lit in iter_literals(_root(F)))


def pad_to_level(node: Node, t: int, depth: int = 1) -> Node:
    """
    Deepen every literal with singleton connectives so literals sit at depth ``t + 1``.

    Raises:
        InputError: If the alternation is broken or something is already too deep
    """
    if isinstance(node, Lit):
        if depth > t + 1:
            raise InputError("Literal deeper than the target level")
        wrapped: Node = node
        for level in range(t, depth - 1, -1):
            wrapped = And((wrapped,)) if level % 2 == 1 else Or((wrapped,))
        return wrapped
    expected = And if depth % 2 == 1 else Or
    if not isinstance(node, expected):
        raise InputError(f"Malformed alternation at level {depth}")
    if depth > t:
        raise InputError("Connective deeper than the target level")
    return expected(tuple(pad_to_level(c, t, depth + 1) for c in node.children))


def random_normalized_formula(
    rng: np.random.Generator,
    n: int,
    t: int,
    max_children: int = 3,
    min_children: int = 1,
    top_children: Optional[int] = None,
    sign: str = "negative",
) -> NormalizedFormula:
    """
    Random t-normalized formula over ``n`` variables.

    Args:
        rng: numpy Generator
        n: Variable count (0 yields literal-free connectives at depth t)
        t: Level count, >= 2
        max_children: Upper bound on children per node
        min_children: Lower bound on children per node below the root
        top_children: Exact number of root children, drawn if None
        sign: "negative" (anti-monotone), "positive" (monotone) or "mixed"
    """
    if t < 2:
        raise InputError("t must be >= 2")

    def literal() -> Lit:
        var = int(rng.integers(0, n))
        if sign == "negative":
            return neg(var)
        if sign == "positive":
            return pos(var)
        return Lit(var, bool(rng.integers(0, 2)))

    def build(depth: int, count: int) -> Node:
        if depth == t:
            kids = [literal() for _ in range(count)] if n > 0 else []
        else:
            kids = [
                build(depth + 1, int(rng.integers(min_children, max_children + 1)))
                for _ in range(count)
            ]
        return And(tuple(kids)) if depth % 2 == 1 else Or(tuple(kids))

    if top_children is None:
        top_children = int(rng.integers(min_children, max_children + 1))
    return NormalizedFormula(build(1, top_children), n)


def colex_subsets(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """k-subsets of ``0..n-1`` in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in colex_subsets(top, k - 1):
            yield rest + (top,)


def _eval3(node: Node, value: List[Optional[bool]]) -> Optional[bool]:
    if isinstance(node, Lit):
        v = value[node.var]
        return None if v is None else v == node.positive
    if isinstance(node, And):
        result: Optional[bool] = True
        for c in node.children:
            r = _eval3(c, value)
            if r is False:
                return False
            if r is None:
                result = None
        return result
    result = False
    for c in node.children:
        r = _eval3(c, value)
        if r is True:
            return True
        if r is None:
            result = None
    return result


def weighted_sat_bruteforce(
    w: WeightedSatInstance, caps: Optional[CapsConfig] = None
) -> Optional[FrozenSet[int]]:
    """
    Colexicographically first weight-``k`` model, or None.

    Exhaustive search deciding variables from the highest index down,
    "false" before "true". Subtrees are cut when a top-level conjunct is
    already false, when the weight cannot be met, or when disjoint
    undecided monotone conjuncts need more true variables than remain.

    Raises:
        ResourceCapError: If more than ``caps.max_search_nodes`` nodes are visited
    """
    caps = get_caps(caps)
    F, n, k = w.formula, w.formula.n, w.k
    if k > n:
        return None
    conjuncts = list(F.root.children)
    occurs: List[List[int]] = [[] for _ in range(n)]
    conj_vars: List[List[int]] = []
    for ci, c in enumerate(conjuncts):
        vs = sorted(variables_of(c))
        conj_vars.append(vs)
        for v in vs:
            occurs[v].append(ci)
    monotone = [is_monotone(c) for c in conjuncts]
    value: List[Optional[bool]] = [None] * n
    status: List[Optional[bool]] = [_eval3(c, value) for c in conjuncts]
    if any(s is False for s in status):
        return None
    open_count = sum(1 for s in status if s is None)
    chosen: List[int] = []
    visited = 0

    def lower_bound(top: int) -> int:
        used: Set[int] = set()
        count = 0
        for ci, s in enumerate(status):
            if s is not None or not monotone[ci]:
                continue
            vs = [v for v in conj_vars[ci] if v <= top]
            if used.isdisjoint(vs):
                used.update(vs)
                count += 1
        return count

    def search(i: int) -> Optional[FrozenSet[int]]:
        nonlocal visited, open_count
        visited += 1
        if visited > caps.max_search_nodes:
            raise ResourceCapError("max_search_nodes", caps.max_search_nodes, visited)
        need = k - len(chosen)
        if need < 0 or need > i + 1:
            return None
        if open_count == 0:
            return frozenset(chosen) | frozenset(range(need))
        if i < 0 or lower_bound(i) > need:
            return None
        for choice in (False, True):
            if choice and need == 0:
                continue
            value[i] = choice
            touched = []
            dead = False
            for ci in occurs[i]:
                if status[ci] is not None:
                    continue
                r = _eval3(conjuncts[ci], value)
                if r is None:
                    continue
                status[ci] = r
                touched.append(ci)
                if r is False:
                    dead = True
                    break
                open_count -= 1
            if not dead:
                if choice:
                    chosen.append(i)
                found = search(i - 1)
                if choice:
                    chosen.pop()
                if found is not None:
                    return found
            for ci in touched:
                if status[ci] is True:
                    open_count += 1
                status[ci] = None
            value[i] = None
        return None

    return search(n - 1)


def weighted_sat_naive(w: WeightedSatInstance) -> Optional[FrozenSet[int]]:
    """Reference oracle: evaluate every k-subset in colex order (no pruning, no cap)."""
    if w.k > w.n:
        return None
    for subset in colex_subsets(w.n, w.k):
        if eval_formula(w.formula, set(subset)):
            return frozenset(subset)
    return None

