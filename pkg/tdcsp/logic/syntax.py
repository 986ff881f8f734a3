"""
First-order syntax over binary signatures and finite relational structures.

Quantifier-free matrices are trees of :class:`Atom`, :class:`Equals`,
:class:`Not`, :class:`Conj` and :class:`Disj`; variables are strings and
elements are integers ``0..size-1``.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union

from ..errors import InputError

Element = int
Env = Mapping[str, Element]


@dataclass(frozen=True)
class Atom:
    relation: str
    args: Tuple[str, ...]


@dataclass(frozen=True)
class Equals:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class Conj:
    children: Tuple["Formula", ...]


@dataclass(frozen=True)
class Disj:
    children: Tuple["Formula", ...]


Formula = Union[Atom, Equals, Not, Conj, Disj]

TRUE = Conj(())
FALSE = Disj(())


def implies(guard: Formula, body: Formula) -> Formula:
    return Disj((Not(guard), body))


def formula_variables(phi: Formula) -> Iterator[str]:
    """Variables in order of first occurrence (with repeats)."""
    if isinstance(phi, Atom):
        yield from phi.args
    elif isinstance(phi, Equals):
        yield phi.left
        yield phi.right
    elif isinstance(phi, Not):
        yield from formula_variables(phi.child)
    else:
        for child in phi.children:
            yield from formula_variables(child)


def formula_relations(phi: Formula) -> Iterator[Tuple[str, int]]:
    """``(name, arity)`` of every relation application."""
    if isinstance(phi, Atom):
        yield phi.relation, len(phi.args)
    elif isinstance(phi, Not):
        yield from formula_relations(phi.child)
    elif isinstance(phi, (Conj, Disj)):
        for child in phi.children:
            yield from formula_relations(child)


@dataclass(frozen=True)
class RelationalStructure:
    """Universe ``0..size-1`` with named relations of arity 1 or 2.

    ``relations`` maps a name to ``(arity, tuples)``; unary tuples are
    1-tuples. ``labels`` optionally names the elements for display.
    """

    size: int
    relations: Mapping[str, Tuple[int, FrozenSet[Tuple[Element, ...]]]] = field(
        default_factory=dict
    )
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        rels: Dict[str, Tuple[int, FrozenSet[Tuple[Element, ...]]]] = {}
        for name, (arity, tuples) in self.relations.items():
            if arity not in (1, 2):
                raise InputError(f"Relation {name} has arity {arity}; only 1 and 2 are supported")
            tuples = frozenset(tuple(t) for t in tuples)
            for t in tuples:
                if len(t) != arity or not all(0 <= e < self.size for e in t):
                    raise InputError(f"Tuple {t} does not fit relation {name}/{arity}")
            rels[name] = (arity, tuples)
        if self.labels is not None and len(self.labels) != self.size:
            raise InputError("One label per element required")
        object.__setattr__(self, "relations", dict(sorted(rels.items())))

    def holds(self, name: str, *elements: Element) -> bool:
        if name not in self.relations:
            raise InputError(f"Structure has no relation '{name}'")
        return tuple(elements) in self.relations[name][1]

    def members(self, name: str) -> Tuple[Element, ...]:
        """Elements of a unary relation, ascending."""
        return tuple(sorted(t[0] for t in self.relations[name][1]))

    def successors(self, name: str, a: Element) -> Tuple[Element, ...]:
        """``b`` with ``name(a, b)``, ascending."""
        return tuple(sorted(t[1] for t in self.relations[name][1] if t[0] == a))

    def require(self, signature) -> None:
        """Raise InputError unless every ``(name, arity)`` is present with that arity."""
        for name, arity in signature:
            if name not in self.relations:
                raise InputError(f"Structure has no relation '{name}'")
            if self.relations[name][0] != arity:
                raise InputError(
                    f"Relation {name} has arity {self.relations[name][0]}, used with {arity}"
                )


@dataclass(frozen=True)
class GuidedSentence:
    """``forall x1 exists y1 ... forall xk exists yk (root(x1) and parent chain) -> matrix``.

    The matrix mentions ``x1..xk`` and ``y1..yk``.
    """

    k: int
    matrix: Formula

    def __post_init__(self):
        if self.k < 1:
            raise InputError("A guided sentence quantifies at least one pair")
        allowed = {f"{p}{i}" for p in "xy" for i in range(1, self.k + 1)}
        stray = set(formula_variables(self.matrix)) - allowed
        if stray:
            raise InputError(f"Matrix uses unbound variables {sorted(stray)}")

    def signature(self):
        return {("root", 1), ("parent", 2)} | set(formula_relations(self.matrix))


@dataclass(frozen=True)
class PrenexSentence:
    """Alternating quantifier blocks ``(kind, variables)`` with kind ``E`` or ``A``."""

    blocks: Tuple[Tuple[str, Tuple[str, ...]], ...]
    matrix: Formula

    def __post_init__(self):
        blocks = tuple((kind, tuple(names)) for kind, names in self.blocks)
        bound = []
        for i, (kind, names) in enumerate(blocks):
            if kind not in ("E", "A"):
                raise InputError(f"Unknown quantifier kind {kind!r}")
            if i and blocks[i - 1][0] == kind:
                raise InputError("Quantifier blocks must alternate")
            bound.extend(names)
        if len(bound) != len(set(bound)):
            raise InputError("A variable is quantified twice")
        stray = set(formula_variables(self.matrix)) - set(bound)
        if stray:
            raise InputError(f"Matrix uses unbound variables {sorted(stray)}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def alternation_level(self) -> int:
        """``t`` such that the sentence is Sigma_t (Pi_t if it starts universally)."""
        return len([b for b in self.blocks if b[1]])

    def signature(self):
        return set(formula_relations(self.matrix))


def eval3(A: RelationalStructure, phi: Formula, env: Env) -> Optional[bool]:
    """Three-valued evaluation: None when the value depends on unassigned variables."""
    if isinstance(phi, Atom):
        if any(v not in env for v in phi.args):
            return None
        return A.holds(phi.relation, *(env[v] for v in phi.args))
    if isinstance(phi, Equals):
        if phi.left not in env or phi.right not in env:
            return None
        return env[phi.left] == env[phi.right]
    if isinstance(phi, Not):
        inner = eval3(A, phi.child, env)
        return None if inner is None else not inner
    unknown = False
    stop = isinstance(phi, Disj)
    for child in phi.children:
        value = eval3(A, child, env)
        if value is None:
            unknown = True
        elif value == stop:
            return stop
    return None if unknown else not stop
