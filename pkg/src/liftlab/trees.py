"""Decision trees and parity decision trees with a line-oriented text format.

Format (pre-order, children of a query follow as two subtrees, 0 first)::

    DT
    Q <var>
    QP <var> <var> ...
    LEAF <label>

A variable is written as an int (base variables, DIMACS ids) or as a
coordinate such as ``x1:0`` / ``y1:3``.  An empty ``QP`` line is the
constant-0 parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import ParseError
from .f2_linalg import Coord, parse_coord


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Query:
    var: object
    zero: "Tree"
    one: "Tree"


@dataclass(frozen=True)
class ParityQuery:
    support: frozenset
    zero: "Tree"
    one: "Tree"


Tree = Union[Leaf, Query, ParityQuery]


def support(node) -> frozenset:
    if isinstance(node, Query):
        return frozenset((node.var,))
    return node.support


def children(node) -> tuple:
    return (node.zero, node.one)


def height(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(height(t.zero), height(t.one))


def leaves(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 1
    return leaves(t.zero) + leaves(t.one)


def size(t: Tree) -> int:
    """Total node count."""
    if isinstance(t, Leaf):
        return 1
    return 1 + size(t.zero) + size(t.one)


def is_parity_free(t: Tree) -> bool:
    if isinstance(t, Leaf):
        return True
    if isinstance(t, ParityQuery) and len(t.support) != 1:
        return False
    return is_parity_free(t.zero) and is_parity_free(t.one)


def walk(t: Tree, value: Callable[[object], int]) -> tuple[str, tuple]:
    """Follow the tree; ``value(var)`` gives a variable's bit.  Returns (label, answers)."""
    answers = []
    while not isinstance(t, Leaf):
        b = 0
        for v in support(t):
            b ^= value(v)
        answers.append(b)
        t = t.one if b else t.zero
    return t.label, tuple(answers)


def evaluate(t: Tree, assignment: Union[Mapping, Callable]) -> str:
    value = assignment if callable(assignment) else assignment.__getitem__
    return walk(t, value)[0]


def relabel(t: Tree, var_map: Callable = None, label_map: Callable = None) -> Tree:
    """Rename variables and/or leaf labels; queries become ParityQuery when renamed."""
    if isinstance(t, Leaf):
        return Leaf(label_map(t.label)) if label_map else t
    z = relabel(t.zero, var_map, label_map)
    o = relabel(t.one, var_map, label_map)
    if isinstance(t, Query) and var_map is None:
        return Query(t.var, z, o)
    sup = support(t)
    if var_map is not None:
        mapped: set = set()
        for v in sup:
            mapped ^= {var_map(v)}
        sup = frozenset(mapped)
    if isinstance(t, Query) and len(sup) == 1:
        return Query(next(iter(sup)), z, o)
    return ParityQuery(sup, z, o)


def labels(t: Tree) -> set:
    if isinstance(t, Leaf):
        return {t.label}
    return labels(t.zero) | labels(t.one)


def canonical(t: Tree) -> Tree:
    """Represent every single-variable parity query as a Query so trees compare structurally."""
    if isinstance(t, Leaf):
        return t
    z, o = canonical(t.zero), canonical(t.one)
    sup = support(t)
    if len(sup) == 1:
        return Query(next(iter(sup)), z, o)
    return ParityQuery(frozenset(sup), z, o)


# --- text format ------------------------------------------------------------
def _fmt_var(v) -> str:
    return str(v)


def _sort_key(v):
    return (0, v) if isinstance(v, int) else (1, tuple(v))


def _parse_var(tok: str):
    if ":" in tok:
        return parse_coord(tok)
    return int(tok)


def dumps(t: Tree) -> str:
    lines = ["DT"]

    def rec(n):
        if isinstance(n, Leaf):
            lines.append(f"LEAF {n.label}")
            return
        if isinstance(n, Query):
            lines.append(f"Q {_fmt_var(n.var)}")
        else:
            vs = sorted(n.support, key=_sort_key)
            lines.append(" ".join(["QP"] + [_fmt_var(v) for v in vs]))
        rec(n.zero)
        rec(n.one)

    rec(t)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Tree:
    toks = [ln.split() for ln in text.splitlines()]
    toks = [t for t in toks if t and not t[0].startswith("#")]
    if toks and toks[0][0] == "DT":
        toks = toks[1:]
    pos = 0

    def rec() -> Tree:
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of tree")
        line = toks[pos]
        pos += 1
        kind = line[0]
        if kind == "LEAF":
            if len(line) != 2:
                raise ParseError(f"bad leaf line: {' '.join(line)}")
            return Leaf(line[1])
        if kind == "Q":
            if len(line) != 2:
                raise ParseError(f"bad query line: {' '.join(line)}")
            var = _parse_var(line[1])
            return Query(var, rec(), rec())
        if kind == "QP":
            sup: set = set()
            for tok in line[1:]:
                sup ^= {_parse_var(tok)}
            return ParityQuery(frozenset(sup), rec(), rec())
        raise ParseError(f"unknown tree line: {' '.join(line)}")

    try:
        tree = rec()
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc
    if pos != len(toks):
        raise ParseError("trailing lines after tree")
    return tree


def all_vars(t: Tree) -> set:
    if isinstance(t, Leaf):
        return set()
    return set(support(t)) | all_vars(t.zero) | all_vars(t.one)


def coords_only(t: Tree) -> bool:
    return all(isinstance(v, Coord) for v in all_vars(t))
