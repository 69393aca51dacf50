"""Rooted binary trees as preorder bitstrings.

A tree with ``n`` internal nodes is written as ``2n + 1`` characters in
preorder, ``"1"`` for an internal node and ``"0"`` for a leaf.  The
lexicographic order of these strings (``"0" < "1"``) is the canonical order
used for enumeration, ranking and census partitioning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterator

from .dyadic import CircleInterval, Dyadic


class TreeError(ValueError):
    pass


def _is_valid_bits(bits: str) -> bool:
    pending = 1
    for pos, ch in enumerate(bits):
        if pending == 0:
            return False
        if ch == "1":
            pending += 1
        elif ch == "0":
            pending -= 1
        else:
            return False
    return pending == 0


@dataclass(frozen=True)
class BinaryTree:
    bits: str

    def __post_init__(self):
        if not _is_valid_bits(self.bits):
            raise TreeError(f"not a preorder tree bitstring: {self.bits!r}")

    @classmethod
    def _trusted(cls, bits: str) -> "BinaryTree":
        t = object.__new__(cls)
        object.__setattr__(t, "bits", bits)
        return t

    @classmethod
    def caret(cls, left: "BinaryTree", right: "BinaryTree") -> "BinaryTree":
        return cls._trusted("1" + left.bits + right.bits)

    def __str__(self) -> str:
        return self.bits

    @cached_property
    def size(self) -> int:
        """Number of internal nodes."""
        return self.bits.count("1")

    @property
    def is_leaf(self) -> bool:
        return self.bits == "0"

    @cached_property
    def _split(self) -> int:
        if self.is_leaf:
            raise TreeError("a leaf has no children")
        pending = 1
        for pos in range(1, len(self.bits)):
            pending += 1 if self.bits[pos] == "1" else -1
            if pending == 0:
                return pos + 1
        raise AssertionError("unreachable for a valid tree")

    @property
    def left(self) -> "BinaryTree":
        return BinaryTree._trusted(self.bits[1:self._split])

    @property
    def right(self) -> "BinaryTree":
        return BinaryTree._trusted(self.bits[self._split:])

    @cached_property
    def leaf_cells(self) -> tuple:
        """``(depth, index)`` of every leaf, left to right.

        Leaf ``(d, i)`` owns the standard dyadic interval ``[i/2^d, (i+1)/2^d)``.
        """
        cells = []
        stack = [(0, 0)]
        for ch in self.bits:
            d, i = stack.pop()
            if ch == "1":
                stack.append((d + 1, 2 * i + 1))
                stack.append((d + 1, 2 * i))
            else:
                cells.append((d, i))
        return tuple(cells)

    def leaf_intervals(self) -> list[CircleInterval]:
        return [CircleInterval(Dyadic(i, d), Dyadic(1, d)) for d, i in self.leaf_cells]


LEAF = BinaryTree("0")


def caret(left: BinaryTree, right: BinaryTree) -> BinaryTree:
    return BinaryTree.caret(left, right)


def tree(bits: str) -> BinaryTree:
    return BinaryTree(bits)


def leaf_intervals(t: BinaryTree) -> list[CircleInterval]:
    return t.leaf_intervals()


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan(n) needs n >= 0")
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _completions(ones: int, pending: int) -> int:
    """Ways to finish a preorder string with ``ones`` internal nodes still to
    place while ``pending`` subtrees are open (a ballot number)."""
    if pending == 0:
        return 1 if ones == 0 else 0
    return pending * comb(2 * ones + pending, ones) // (2 * ones + pending)


@lru_cache(maxsize=64)
def _completion_table(n: int) -> tuple:
    return tuple(tuple(_completions(r, k) for k in range(n + 2)) for r in range(n + 1))


def enumerate_trees(n: int, start: int = 0, stop: int | None = None) -> Iterator[BinaryTree]:
    """Trees with ``n`` internal nodes in lexicographic bitstring order.

    ``start``/``stop`` select a rank range, so disjoint ranges can be
    scanned independently.
    """
    total = catalan(n)
    stop = total if stop is None else stop
    if not 0 <= start <= stop <= total:
        raise ValueError(f"rank range [{start}, {stop}) outside [0, {total}]")
    for r in range(start, stop):
        yield unrank(n, r)


def rank(t: BinaryTree) -> int:
    n = t.size
    table = _completion_table(n)
    r = 0
    ones_left = n
    pending = 1
    for ch in t.bits:
        if ch == "1":
            r += table[ones_left][pending - 1]
            ones_left -= 1
            pending += 1
        else:
            pending -= 1
    return r


def unrank(n: int, r: int) -> BinaryTree:
    total = catalan(n)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} outside [0, {total}) for n={n}")
    table = _completion_table(n)
    out = []
    push = out.append
    ones_left = n
    pending = 1
    while ones_left:
        c0 = table[ones_left][pending - 1]
        if r < c0:
            push("0")
            pending -= 1
        else:
            r -= c0
            push("1")
            ones_left -= 1
            pending += 1
    # only leaves remain
    push("0" * pending)
    return BinaryTree._trusted("".join(out))


def random_tree(n: int, rng: random.Random) -> BinaryTree:
    """Uniform random tree with ``n`` internal nodes (unrank of a uniform rank)."""
    if n == 0:
        return LEAF
    return unrank(n, rng.randrange(catalan(n)))


def remy_tree(n: int, rng: random.Random) -> BinaryTree:
    """Uniform random tree by Rémy's growth process.

    Each step picks one of the ``2k + 1`` nodes and a side, and grafts a new
    internal node above it with a fresh leaf on that side; the resulting
    shapes are uniform over all ``C_n`` trees.
    """
    left = [-1]
    right = [-1]
    parent = [-1]
    root = 0
    for k in range(n):
        choice = rng.randrange(2 * (2 * k + 1))
        x, side = divmod(choice, 2)
        y = len(left)
        new_leaf = y + 1
        left.extend([-1, -1])
        right.extend([-1, -1])
        parent.extend([-1, y])
        p = parent[x]
        if p < 0:
            root = y
        elif left[p] == x:
            left[p] = y
        else:
            right[p] = y
        parent[y] = p
        parent[x] = y
        if side:
            left[y], right[y] = x, new_leaf
        else:
            left[y], right[y] = new_leaf, x
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        if left[v] < 0:
            out.append("0")
        else:
            out.append("1")
            stack.append(right[v])
            stack.append(left[v])
    return BinaryTree._trusted("".join(out))
