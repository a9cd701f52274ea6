"""Spectral types and their nested-parenthesis notation.

A point is a rooted tree whose leaves (blocks) all sit at depth k-1, k being
the pole order.  A block carries its eigenvalue-chain multiplicities.  For two
blocks j, j' of a point, d(j, j') = (k - 2) - depth(lca(j, j')), i.e. the
number of parentheses separating them, minus one.

Grammar (whitespace ignored)::

    spectral := point ("," point)*
    point    := group+ | run
    group    := "(" (group+ | run) ")"
    run      := item+
    item     := digit | "[" integer "]"
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union


class SpectralTypeError(ValueError):
    """Malformed notation or an invariant violation."""


@dataclass(frozen=True)
class Block:
    chain: tuple[int, ...]

    def __post_init__(self):
        if not self.chain:
            raise SpectralTypeError("empty run")
        if any(m < 1 for m in self.chain):
            raise SpectralTypeError("zero multiplicity")

    @property
    def size(self) -> int:
        return sum(self.chain)

    @property
    def e(self) -> int:
        return len(self.chain)


@dataclass(frozen=True)
class Node:
    children: tuple[Union["Node", Block], ...]

    def __post_init__(self):
        if not self.children:
            raise SpectralTypeError("empty group")


Tree = Union[Node, Block]


def _leaves(t: Tree, path: tuple[int, ...] = ()) -> list[tuple[tuple[int, ...], Block]]:
    if isinstance(t, Block):
        return [(path, t)]
    out = []
    for c, ch in enumerate(t.children):
        out.extend(_leaves(ch, path + (c,)))
    return out


def _run_str(b: Block) -> str:
    return "".join(str(m) if m < 10 else f"[{m}]" for m in b.chain)


def _tree_str(t: Tree) -> str:
    if isinstance(t, Block):
        return _run_str(t)
    return "".join("(" + _tree_str(c) + ")" for c in t.children)


def _sizes(t: Tree) -> tuple[int, ...]:
    return tuple(sorted((b.size for _, b in _leaves(t)), reverse=True))


def _canon_tree(t: Tree) -> Tree:
    if isinstance(t, Block):
        return t
    kids = [_canon_tree(c) for c in t.children]
    kids.sort(key=lambda c: (_sizes(c), _tree_str(c)), reverse=True)
    return Node(tuple(kids))


@dataclass(frozen=True)
class PointType:
    tree: Tree

    def __post_init__(self):
        depths = {len(p) for p, _ in _leaves(self.tree)}
        if len(depths) != 1:
            raise SpectralTypeError("non-uniform leaf depth within a point")

    @cached_property
    def _leafdata(self):
        return _leaves(self.tree)

    @property
    def is_regular(self) -> bool:
        return isinstance(self.tree, Block)

    @property
    def pole_order(self) -> int:
        return len(self._leafdata[0][0]) + 1

    @property
    def blocks(self) -> tuple[Block, ...]:
        return tuple(b for _, b in self._leafdata)

    @property
    def m(self) -> int:
        return len(self._leafdata)

    @property
    def rank(self) -> int:
        return sum(b.size for b in self.blocks)

    def d(self, j: int, jp: int) -> int:
        """d(j, j') for 1-based block indices j != j'."""
        if j == jp:
            raise ValueError("d is defined for distinct blocks")
        pa, pb = self._leafdata[j - 1][0], self._leafdata[jp - 1][0]
        lca = 0
        while lca < len(pa) and pa[lca] == pb[lca]:
            lca += 1
        return (self.pole_order - 2) - lca

    def d_matrix(self) -> tuple[tuple[int, ...], ...]:
        m = self.m
        return tuple(tuple(0 if a == b else self.d(a + 1, b + 1) for b in range(m)) for a in range(m))

    def canonical(self) -> "PointType":
        return PointType(_canon_tree(self.tree))

    def __str__(self) -> str:
        return _tree_str(self.tree)


@dataclass(frozen=True)
class SpectralType:
    points: tuple[PointType, ...]

    def __post_init__(self):
        if not self.points:
            raise SpectralTypeError("no points")
        ranks = {pt.rank for pt in self.points}
        if len(ranks) != 1:
            raise SpectralTypeError(f"rank mismatch across points: {sorted(ranks)}")

    @property
    def rank(self) -> int:
        return self.points[0].rank

    @property
    def p(self) -> int:
        return len(self.points) - 1

    def irregular_indices(self) -> tuple[int, ...]:
        """I_irr: points with more than one block, plus point 0."""
        return tuple(i for i, pt in enumerate(self.points) if i == 0 or pt.m > 1)

    def regular_indices(self) -> tuple[int, ...]:
        irr = set(self.irregular_indices())
        return tuple(i for i in range(len(self.points)) if i not in irr)

    def canonical(self) -> "SpectralType":
        pts = [pt.canonical() for pt in self.points]
        pts.sort(key=lambda pt: (pt.pole_order, _sizes(pt.tree), str(pt)), reverse=True)
        return SpectralType(tuple(pts))

    def __str__(self) -> str:
        return ",".join(str(pt) for pt in self.points)


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text: str):
        self.s = "".join(text.split())
        self.pos = 0

    def peek(self) -> str:
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def error(self, msg: str):
        raise SpectralTypeError(f"{msg} at position {self.pos}")

    def spectral(self) -> SpectralType:
        if self.s.count("(") != self.s.count(")"):
            raise SpectralTypeError("unbalanced parenthesis")
        pts = [self.point()]
        while self.peek() == ",":
            self.pos += 1
            pts.append(self.point())
        if self.pos != len(self.s):
            if self.peek() == ")":
                raise SpectralTypeError("unbalanced parenthesis")
            self.error(f"unexpected character {self.peek()!r}")
        return SpectralType(tuple(pts))

    def point(self) -> PointType:
        if self.peek() == "(":
            return PointType(Node(tuple(self.groups())))
        return PointType(self.run())

    def groups(self) -> list[Tree]:
        out = []
        while self.peek() == "(":
            out.append(self.group())
        return out

    def group(self) -> Tree:
        self.pos += 1  # "("
        if self.peek() == "(":
            t: Tree = Node(tuple(self.groups()))
        else:
            t = self.run()
        if self.peek() != ")":
            if self.peek() == "":
                raise SpectralTypeError("unbalanced parenthesis")
            self.error("group: expected ')' (runs and groups cannot be mixed)")
        self.pos += 1
        return t

    def run(self) -> Block:
        items = []
        while True:
            c = self.peek()
            if c.isdigit():
                items.append(int(c))
                self.pos += 1
            elif c == "[":
                end = self.s.find("]", self.pos)
                if end < 0:
                    self.error("item: unterminated '['")
                body = self.s[self.pos + 1:end]
                if not body.isdigit():
                    self.error("item: '[...]' must hold a decimal integer")
                items.append(int(body))
                self.pos = end + 1
            else:
                break
        if not items:
            self.error("run: expected a multiplicity")
        if any(m == 0 for m in items):
            raise SpectralTypeError("zero multiplicity")
        return Block(tuple(items))


def parse_spectral_type(text: str) -> SpectralType:
    """Parse notation into a SpectralType (points kept in written order)."""
    return _Parser(text).spectral()


def print_spectral_type(st: SpectralType) -> str:
    """Canonical notation."""
    return str(st.canonical())


def canonical_string(text: str) -> str:
    return print_spectral_type(parse_spectral_type(text))


def _strip_point(pt: PointType) -> PointType:
    t = pt.tree
    if isinstance(t, Block):
        return pt
    leaves = _leaves(t)
    if len(leaves) == 1:
        return PointType(leaves[0][1])
    # a root with a single child means a scalar polynomial part shared by all blocks
    while isinstance(t, Node) and len(t.children) == 1:
        t = t.children[0]
    return PointType(t)


def normalize(st: SpectralType) -> SpectralType:
    """Drop scalar polynomial parts: single-block points become regular, and a
    polynomial part common to every block of a point is removed."""
    return SpectralType(tuple(_strip_point(pt) for pt in st.points))


def is_reduced(st: SpectralType) -> bool:
    """False iff some point i >= 1 has a single block with a one-term chain."""
    return not any(pt.m == 1 and pt.blocks[0].e == 1 for pt in st.points[1:])
