"""Direct model checking of guided and prenex sentences."""

from typing import Any, Dict, List, Optional

from .syntax import Element, GuidedSentence, PrenexSentence, RelationalStructure, eval3


def eval_guided(
    A: RelationalStructure, s: GuidedSentence, stats: Optional[Dict[str, Any]] = None
) -> bool:
    """
    Decide ``A |= s``.

    Universal variables only range along root-to-descendant ``parent``
    chains: any other choice falsifies the guard and is vacuously true.
    Existential variables range over the whole universe, pruned by
    three-valued evaluation of the matrix.

    Args:
        A: Structure providing ``root``, ``parent`` and the matrix relations
        s: Sentence
        stats: If given, ``stats["universal_tuples"]`` collects every full
            ``(x1, ..., xk)`` tuple the matrix was checked under

    Raises:
        InputError: If a relation of the sentence is missing
    """
    A.require(s.signature())
    seen = stats.setdefault("universal_tuples", set()) if stats is not None else None
    env: Dict[str, Element] = {}
    xs: List[Element] = []

    def exists_y(i: int) -> bool:
        for b in range(A.size):
            env[f"y{i}"] = b
            value = eval3(A, s.matrix, env)
            if value is False:
                continue
            if value is True or forall_x(i + 1):
                del env[f"y{i}"]
                return True
        env.pop(f"y{i}", None)
        return False

    def forall_x(i: int) -> bool:
        if i > s.k:
            return eval3(A, s.matrix, env) is True
        candidates = A.members("root") if i == 1 else A.successors("parent", xs[-1])
        for a in candidates:
            env[f"x{i}"] = a
            xs.append(a)
            if i == s.k and seen is not None:
                seen.add(tuple(xs))
            ok = exists_y(i)
            xs.pop()
            del env[f"x{i}"]
            if not ok:
                return False
        return True

    return forall_x(1)


def count_guided_chains(A: RelationalStructure, k: int) -> int:
    """Number of ``parent`` chains of ``k`` elements starting at a root."""
    layer = {a: 1 for a in A.members("root")}
    for _ in range(k - 1):
        nxt: Dict[Element, int] = {}
        for a, ways in layer.items():
            for b in A.successors("parent", a):
                nxt[b] = nxt.get(b, 0) + ways
        layer = nxt
    return sum(layer.values())


def eval_prenex(A: RelationalStructure, s: PrenexSentence) -> bool:
    """
    Decide ``A |= s`` by nested quantification over the universe.

    After each binding the matrix is evaluated three-valuedly; a decided
    value cuts the remaining quantifiers.

    Raises:
        InputError: If a relation of the sentence is missing
    """
    A.require(s.signature())
    order = [(kind, v) for kind, names in s.blocks for v in names]
    env: Dict[str, Element] = {}

    def rec(i: int) -> bool:
        value = eval3(A, s.matrix, env)
        if value is not None:
            return value
        if i == len(order):
            # unreachable for closed matrices
            return False
        kind, var = order[i]
        want = kind == "E"
        for a in range(A.size):
            env[var] = a
            result = rec(i + 1)
            del env[var]
            if result == want:
                return want
        return not want

    return rec(0)
