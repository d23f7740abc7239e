"""The branching-code trees V_{S,Y} and their prunings.

Nodes of V_{S,Y} are maps from proper initial segments of the level order Y
into the splitting order S; the tree order is map extension, the
lexicographic order compares zero-extensions, and a node's children are its
one-point extensions ordered by S.  V_{2,N} is the full binary tree; V_{1,Y}
is the chain Y.

A coloring assigning each node a subset c of S with 0 in c prunes the tree
to the nodes that followed allowed directions all the way up; the pruned
splitting degree at a node is the size of its color.
"""
from __future__ import annotations

from ..verdicts import InputError
from .core import LexTree


def build_v(s_size: int, y_size: int, m_set=None) -> LexTree:
    """V_{S,Y} for S = {0<..<s_size-1}, Y = {0<..<y_size-1}: the balanced
    s_size-ary tree with y_size levels."""
    if s_size < 1 or y_size < 0:
        raise InputError("V construction needs a nonempty splitting order")
    if m_set is None:
        m_set = {s_size}
    if y_size == 0:
        return LexTree(frozenset(m_set), (), (), ())
    return prune_v(s_size, y_size, lambda t: frozenset(range(s_size)), m_set)


def prune_v(s_size: int, y_size: int, color, m_set=None) -> LexTree:
    """The pruning of V_{S,Y} by a coloring t -> c(t) with 0 in c(t) <= S.

    `color` maps a node, given as its tuple of S-directions, to the set of
    allowed next directions.  A node stays iff each of its steps was allowed
    by its predecessor's color.
    """
    parent: list[int | None] = []
    children: list[list[int]] = []
    decided: list[int | None] = []
    widths: set[int] = set()

    def grow(path: tuple[int, ...], par: int | None) -> None:
        vid = len(parent)
        parent.append(par)
        children.append([])
        decided.append(None)
        if par is not None:
            children[par].append(vid)
        if len(path) == y_size - 1:
            return
        c = frozenset(color(path))
        if 0 not in c:
            raise InputError(f"color at {path} does not contain 0")
        if not c <= set(range(s_size)):
            raise InputError(f"color at {path} is not a subset of S")
        widths.add(len(c))
        for a in sorted(c):
            grow(path + (a,), vid)

    grow((), None)
    if m_set is None:
        m_set = widths or {1}
    bad = widths - set(m_set)
    if bad:
        raise InputError(f"pruned splitting degrees {sorted(bad)} not in M")
    return LexTree(
        frozenset(m_set),
        tuple(parent),
        tuple(tuple(c) for c in children),
        tuple(decided),
    )


def v_size_formula(s_size: int, y_size: int) -> int:
    """Sum over y in Y of |S|^|below y| (the node count of V_{S,Y})."""
    return sum(s_size**j for j in range(y_size))
