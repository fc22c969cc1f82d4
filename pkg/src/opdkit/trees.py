"""Planar rooted trees decorated by unary and binary generators.

Decorated planar rooted trees are the canonical basis elements of free
nonsymmetric operads.  Leaves carry no data (planar position is structural,
inputs are never permuted); every internal vertex carries a generator whose
arity equals its number of children.  The arity of a tree is its leaf count,
its weight is its internal-vertex count.

Everything here is immutable and hashable, so trees can key dictionaries
when linear combinations of trees are turned into coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

__all__ = [
    "Generator",
    "Tree",
    "GradedComponent",
    "leaf",
    "corolla",
    "graft",
    "compose",
    "tree_key",
    "compare",
    "enumerate_basis",
    "tree_text",
]


@dataclass(frozen=True)
class Generator:
    """A named operation of arity 1 or 2, optionally colored and/or dualized."""

    name: str
    arity: int
    color: Optional[str] = None
    dualized: bool = False

    def __post_init__(self) -> None:
        if self.arity not in (1, 2):
            raise ValueError(
                f"generator {self.name!r} must have arity 1 or 2, got {self.arity}"
            )

    @property
    def sort_key(self) -> tuple:
        return (self.name, self.color or "", self.dualized)

    def colored(self, label: str) -> "Generator":
        if self.color is not None:
            raise ValueError(f"generator {self.serialized()} is already colored")
        return Generator(self.name, self.arity, label, self.dualized)

    def uncolored(self) -> "Generator":
        return Generator(self.name, self.arity, None, self.dualized)

    def dual(self) -> "Generator":
        """Dual generator; dualizing twice gives back the original."""
        return Generator(self.name, self.arity, self.color, not self.dualized)

    def serialized(self) -> str:
        out = self.name
        if self.color is not None:
            out += f"#{self.color}"
        if self.dualized:
            out += "^*"
        return out

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Generator({self.serialized()}/{self.arity})"


@dataclass(frozen=True)
class Tree:
    """A decorated planar rooted tree; ``gen is None`` marks a leaf."""

    gen: Optional[Generator] = None
    children: tuple["Tree", ...] = ()

    def __post_init__(self) -> None:
        if self.gen is None:
            if self.children:
                raise ValueError("leaves have no children")
        elif len(self.children) != self.gen.arity:
            raise ValueError(
                f"node {self.gen.serialized()} needs {self.gen.arity} children, "
                f"got {len(self.children)}"
            )

    @property
    def is_leaf(self) -> bool:
        return self.gen is None

    @property
    def arity(self) -> int:
        if self.is_leaf:
            return 1
        return sum(c.arity for c in self.children)

    @property
    def weight(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + sum(c.weight for c in self.children)

    def preorder(self) -> Iterator["Tree"]:
        yield self
        for child in self.children:
            yield from child.preorder()

    def internal_generators(self) -> tuple[Generator, ...]:
        """Generators of internal vertices in preorder."""
        return tuple(n.gen for n in self.preorder() if n.gen is not None)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Tree({tree_text(self)})"


_LEAF = Tree()


def leaf() -> Tree:
    """The identity tree: a single leaf, arity 1, weight 0."""
    return _LEAF


def corolla(gen: Generator) -> Tree:
    return Tree(gen, (_LEAF,) * gen.arity)


def graft(t: Tree, i: int, s: Tree) -> Tree:
    """Replace the i-th leaf (1-based, left to right) of ``t`` by ``s``."""
    if not 1 <= i <= t.arity:
        raise IndexError(f"leaf index {i} out of range for tree of arity {t.arity}")

    def go(node: Tree, k: int) -> Tree:
        if node.is_leaf:
            return s
        new_children = []
        for child in node.children:
            a = child.arity
            if 1 <= k <= a:
                new_children.append(go(child, k))
            else:
                new_children.append(child)
            k -= a
        return Tree(node.gen, tuple(new_children))

    return go(t, i)


def compose(t: Tree, args: Sequence[Tree]) -> Tree:
    """Operadic composition: graft ``args[i]`` onto the i-th leaf of ``t``.

    Grafting proceeds right to left so earlier leaf positions stay valid.
    """
    if len(args) != t.arity:
        raise ValueError(f"expected {t.arity} arguments, got {len(args)}")
    out = t
    for i in range(len(args), 0, -1):
        out = graft(out, i, args[i - 1])
    return out


# Node-kind codes for the canonical order: internal vertices sort before
# leaves, unary before binary, so e.g. the left comb precedes the right comb
# and m(P(x1),x2) precedes m(x1,P(x2)).
_KIND_UNARY = 0
_KIND_BINARY = 1
_KIND_LEAF = 2


def tree_key(t: Tree) -> tuple:
    """Canonical sort key: (arity, weight, preorder kinds, preorder generator keys)."""
    kinds = []
    genkeys = []
    for node in t.preorder():
        if node.is_leaf:
            kinds.append(_KIND_LEAF)
        else:
            kinds.append(_KIND_UNARY if node.gen.arity == 1 else _KIND_BINARY)
            genkeys.append(node.gen.sort_key)
    return (t.arity, t.weight, tuple(kinds), tuple(genkeys))


def compare(t1: Tree, t2: Tree) -> int:
    """Total order on trees: -1, 0 or 1.  Equal iff structurally identical."""
    k1, k2 = tree_key(t1), tree_key(t2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


@dataclass(frozen=True)
class GradedComponent:
    """The ordered canonical basis of all decorated trees of fixed (arity, weight)."""

    arity: int
    weight: int
    basis: tuple[Tree, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self) -> dict[Tree, int]:
        return {t: i for i, t in enumerate(self.basis)}


@lru_cache(maxsize=None)
def _all_trees(gens: tuple[Generator, ...], arity: int, weight: int) -> tuple[Tree, ...]:
    if weight == 0:
        return (_LEAF,) if arity == 1 else ()
    out = []
    for g in gens:
        if g.arity == 1:
            for sub in _all_trees(gens, arity, weight - 1):
                out.append(Tree(g, (sub,)))
        else:
            for left_arity in range(1, arity):
                for left_weight in range(weight):
                    lefts = _all_trees(gens, left_arity, left_weight)
                    if not lefts:
                        continue
                    rights = _all_trees(
                        gens, arity - left_arity, weight - 1 - left_weight
                    )
                    for lt in lefts:
                        for rt in rights:
                            out.append(Tree(g, (lt, rt)))
    return tuple(sorted(out, key=tree_key))


def enumerate_basis(
    gens: Sequence[Generator], arity: int, weight: int
) -> GradedComponent:
    """All decorated trees of the given arity and weight, in canonical order."""
    if arity < 1:
        raise ValueError("arity must be >= 1")
    if weight < 0:
        raise ValueError("weight must be >= 0")
    basis = _all_trees(tuple(gens), arity, weight)
    return GradedComponent(arity, weight, basis)


def tree_text(t: Tree, slots: Optional[Sequence[int]] = None) -> str:
    """Canonical text form, leaves numbered x1, x2, ... left to right.

    When ``slots`` is given (one slot index per internal vertex in preorder),
    each generator is rendered ``name@slot`` as in the presentation DSL.
    """
    next_leaf = [1]
    next_internal = [0]

    def go(node: Tree) -> str:
        if node.is_leaf:
            s = f"x{next_leaf[0]}"
            next_leaf[0] += 1
            return s
        label = node.gen.serialized()
        if slots is not None:
            label += f"@{slots[next_internal[0]]}"
        next_internal[0] += 1
        return f"{label}({','.join(go(c) for c in node.children)})"

    return go(t)
