"""Marked tree-pair diagrams for T and V and the piecewise-affine maps they define.

A diagram of size ``n`` pairs a source tree and a target tree with ``n``
internal nodes each.  Source leaf ``j`` is sent to target leaf position
``perm[j]``; for T the assignment is cyclic, ``perm[j] = (mark + j) mod (n+1)``,
so ``mark`` is the target position receiving source leaf 0.

Maps are stored as *pieces*: a sorted partition of [0, 1) into half-open
``[a, c)`` on which the map is ``x -> 2**e * x + b`` with the image also a
non-wrapping sub-interval of [0, 1].  Equality is decided on the canonical
*branches* (maximal arcs with one affine law mod 1, starting at the branch
that contains 0), never on the diagram itself.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Union

from .dyadic import ONE, ZERO, CircleInterval, Dyadic, IntervalSet, mod1
from .trees import BinaryTree, catalan


class ElementError(ValueError):
    """Invalid diagram: size mismatch, bad marking or a non-bijective permutation."""


@dataclass(frozen=True)
class TElement:
    source: BinaryTree
    target: BinaryTree
    mark: int

    group = "T"

    def __post_init__(self):
        if self.source.size != self.target.size:
            raise ElementError(
                f"source has {self.source.size} carets but target has {self.target.size}"
            )
        if not 0 <= self.mark <= self.source.size:
            raise ElementError(f"mark {self.mark} outside [0, {self.source.size}]")

    @property
    def n(self) -> int:
        return self.source.size

    @cached_property
    def perm(self) -> tuple:
        m = self.n + 1
        return tuple((self.mark + j) % m for j in range(m))

    @cached_property
    def labels(self) -> tuple:
        """``labels[p]`` is the source leaf sent to target position ``p``."""
        m = self.n + 1
        return tuple((p - self.mark) % m for p in range(m))

    def to_text(self) -> str:
        return f"T:{self.source.bits}:{self.target.bits}:{self.mark}"

    def to_json(self) -> dict:
        return {"group": "T", "source": self.source.bits, "target": self.target.bits,
                "marking": self.mark}

    def as_v(self) -> "VElement":
        return VElement(self.source, self.target, self.perm)

    @cached_property
    def map(self) -> "PLMap":
        return to_pl_map(self)


@dataclass(frozen=True)
class VElement:
    source: BinaryTree
    target: BinaryTree
    perm: tuple

    group = "V"

    def __post_init__(self):
        if self.source.size != self.target.size:
            raise ElementError(
                f"source has {self.source.size} carets but target has {self.target.size}"
            )
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(self.source.size + 1)):
            raise ElementError(f"perm {list(perm)} is not a bijection of 0..{self.source.size}")

    @property
    def n(self) -> int:
        return self.source.size

    @cached_property
    def labels(self) -> tuple:
        out = [0] * len(self.perm)
        for j, p in enumerate(self.perm):
            out[p] = j
        return tuple(out)

    def to_text(self) -> str:
        return f"V:{self.source.bits}:{self.target.bits}:" + ",".join(map(str, self.perm))

    def to_json(self) -> dict:
        return {"group": "V", "source": self.source.bits, "target": self.target.bits,
                "marking": list(self.perm)}

    @cached_property
    def map(self) -> "PLMap":
        return to_pl_map(self)


Element = Union[TElement, VElement]


def make_t_element(source, target, mark: int) -> TElement:
    return TElement(_as_tree(source), _as_tree(target), mark)


def make_v_element(source, target, perm) -> VElement:
    return VElement(_as_tree(source), _as_tree(target), tuple(perm))


def _as_tree(t) -> BinaryTree:
    return t if isinstance(t, BinaryTree) else BinaryTree(t)


def diagram_count(n: int, group: str) -> int:
    """Number of marked diagrams of size ``n``: ``C_n^2 (n+1)`` for T, ``C_n^2 (n+1)!`` for V."""
    c = catalan(n)
    if group == "T":
        return c * c * (n + 1)
    if group == "V":
        return c * c * factorial(n + 1)
    raise ValueError(f"unknown group {group!r}")


def parse_element(text: str) -> Element:
    """Parse ``T:<src>:<tgt>:<mark>`` or ``V:<src>:<tgt>:<p0,...,pn>``."""
    parts = text.strip().split(":")
    if len(parts) != 4:
        raise ElementError(f"expected 4 ':'-separated fields, got {len(parts)} in {text!r}")
    group, src, tgt, marking = parts
    try:
        source = BinaryTree(src)
    except ValueError as exc:
        raise ElementError(f"source: {exc}") from None
    try:
        target = BinaryTree(tgt)
    except ValueError as exc:
        raise ElementError(f"target: {exc}") from None
    try:
        if group == "T":
            return TElement(source, target, int(marking))
        if group == "V":
            return VElement(source, target, tuple(int(p) for p in marking.split(",")))
    except ValueError as exc:
        if isinstance(exc, ElementError):
            raise
        raise ElementError(f"marking: cannot parse {marking!r}") from None
    raise ElementError(f"group: expected 'T' or 'V', got {group!r}")


def element_from_json(obj) -> Element:
    if isinstance(obj, str):
        obj = json.loads(obj)
    group = obj.get("group")
    if group == "T":
        return make_t_element(obj["source"], obj["target"], int(obj["marking"]))
    if group == "V":
        return make_v_element(obj["source"], obj["target"], obj["marking"])
    raise ElementError(f"group: expected 'T' or 'V', got {group!r}")


# ---------------------------------------------------------------------------
# piecewise-affine circle maps


@dataclass(frozen=True)
class Branch:
    """One canonical branch: ``x -> 2**e * x + b (mod 1)`` for lifted ``x`` in ``domain``."""

    domain: CircleInterval
    e: int
    b: Dyadic

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "e": self.e, "b": str(self.b)}


class PLMap:
    __slots__ = ("pieces", "_starts", "_branches")

    def __init__(self, pieces):
        self.pieces = tuple(pieces)
        self._starts = [p[0] for p in self.pieces]
        self._branches = None

    @classmethod
    def identity(cls) -> "PLMap":
        return cls([(ZERO, ONE, 0, ZERO)])

    @classmethod
    def rotation(cls, t) -> "PLMap":
        t = mod1(Dyadic.coerce(t))
        if not t:
            return cls.identity()
        return cls([(ZERO, ONE - t, 0, t), (ONE - t, ONE, 0, t - ONE)])

    def __len__(self) -> int:
        return len(self.pieces)

    @property
    def branches(self) -> tuple:
        if self._branches is None:
            self._branches = _canonical_branches(self.pieces)
        return self._branches

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    def __repr__(self):
        return "PLMap(" + "; ".join(
            f"{b.domain}: 2^{b.e}x+{b.b}" for b in self.branches) + ")"

    def piece_index(self, x) -> int:
        return bisect_right(self._starts, x) - 1

    def __call__(self, x):
        return evaluate(self, x)

    def to_json(self) -> list:
        return [b.to_json() for b in self.branches]


def _laws_match_across(prev, nxt, wrap: bool) -> bool:
    """Whether piece ``nxt`` continues the lifted affine law of ``prev``."""
    if prev[2] != nxt[2]:
        return False
    e = nxt[2]
    shift = Dyadic(1).scale(e) if wrap else ZERO
    diff = nxt[3] - shift - prev[3]
    return diff.exp == 0


def _canonical_branches(pieces) -> tuple:
    # group consecutive pieces with a common lifted law
    groups: list[list] = []
    for p in pieces:
        if groups and _laws_match_across(groups[-1][-1], p, wrap=False):
            groups[-1].append(p)
        else:
            groups.append([p])
    if len(groups) == 1:
        a, c, e, b = pieces[0]
        return (Branch(CircleInterval(ZERO, ONE), e, b.frac()),)
    wrap_merge = _laws_match_across(groups[-1][-1], groups[0][0], wrap=True)
    branches = []
    if wrap_merge:
        last = groups.pop()
        first = groups.pop(0)
        lo = last[0][0]
        length = (ONE - lo) + first[-1][1]
        branches.append(Branch(CircleInterval(lo, length), last[0][2], last[0][3].frac()))
    for g in groups:
        lo = g[0][0]
        branches.append(Branch(CircleInterval(lo, g[-1][1] - lo), g[0][2], g[0][3].frac()))
    return tuple(branches)


def _apply(e: int, b: Dyadic, x):
    """``2**e * x + b`` for a Dyadic or Fraction ``x`` (no reduction mod 1)."""
    if isinstance(x, Dyadic):
        return x.scale(e) + b
    x = Fraction(x)
    if e >= 0:
        return x * (1 << e) + b.to_fraction()
    return x / (1 << -e) + b.to_fraction()


def to_pl_map(elem: Element) -> PLMap:
    """The map carrying each source leaf interval affinely onto its target leaf interval."""
    src = elem.source.leaf_cells
    tgt = elem.target.leaf_cells
    pieces = []
    for j, p in enumerate(elem.perm):
        d, i = src[j]
        dt, it = tgt[p]
        pieces.append((Dyadic(i, d), Dyadic(i + 1, d), d - dt, Dyadic(it - i, dt)))
    return PLMap(_merge_pieces(pieces))


def _merge_pieces(pieces) -> list:
    out = []
    for p in pieces:
        if out and out[-1][2] == p[2] and out[-1][3] == p[3] and out[-1][1] == p[0]:
            q = out[-1]
            out[-1] = (q[0], p[1], q[2], q[3])
        else:
            out.append(p)
    return out


def evaluate(m: PLMap, x):
    """Exact image of ``x`` in [0, 1) (Dyadic in, Dyadic out; otherwise Fraction)."""
    if not (0 <= x < 1):
        raise ValueError(f"point {x} not in [0, 1)")
    a, c, e, b = m.pieces[m.piece_index(x)]
    return _apply(e, b, x)


def evaluate_by_branches(m: PLMap, x) -> Fraction:
    """Evaluate through the canonical branch list (independent of the piece path)."""
    x = Fraction(x)
    for br in m.branches:
        if br.domain.contains(x):
            lifted = x if x >= br.domain.lo else x + 1
            return mod1(_apply(br.e, br.b, lifted))
    raise AssertionError("branches do not cover the circle")


def compose(f: PLMap, g: PLMap) -> PLMap:
    """``f ∘ g`` (apply ``g`` first)."""
    fp = f.pieces
    starts = f._starts
    out = []
    for a, c, e, b in g.pieces:
        lo = a.scale(e) + b
        hi = c.scale(e) + b
        k = bisect_right(starts, lo) - 1
        while k < len(fp) and fp[k][0] < hi:
            a2, c2, e2, b2 = fp[k]
            ilo = lo if lo > a2 else a2
            ihi = hi if hi < c2 else c2
            out.append(((ilo - b).scale(-e), (ihi - b).scale(-e), e + e2, b.scale(e2) + b2))
            k += 1
    return PLMap(_merge_pieces(out))


def invert(f: PLMap) -> PLMap:
    pieces = []
    for a, c, e, b in f.pieces:
        lo = a.scale(e) + b
        hi = c.scale(e) + b
        pieces.append((lo, hi, -e, (-b).scale(-e)))
    pieces.sort(key=lambda p: p[0])
    return PLMap(_merge_pieces(pieces))


def equals(f: PLMap, g: PLMap) -> bool:
    return f.branches == g.branches


def is_identity(f: PLMap) -> bool:
    return all(e == 0 and not b for a, c, e, b in f.pieces)


def is_continuous(f: PLMap) -> bool:
    """True iff consecutive images abut (cyclically): the map is a circle homeomorphism."""
    ps = f.pieces
    for k in range(len(ps)):
        a, c, e, b = ps[k]
        a2, c2, e2, b2 = ps[(k + 1) % len(ps)]
        end = c.scale(e) + b
        start = a2.scale(e2) + b2
        if (end - start).exp != 0:
            return False
    return True


def image(f: PLMap, s: IntervalSet) -> IntervalSet:
    """Exact image of a set of arcs."""
    segs = []
    ps = f.pieces
    starts = f._starts
    for lo, hi in s.segments:
        k = bisect_right(starts, lo) - 1
        while k < len(ps) and ps[k][0] < hi:
            a, c, e, b = ps[k]
            ilo = lo if lo > a else a
            ihi = hi if hi < c else c
            segs.append((ilo.scale(e) + b, ihi.scale(e) + b))
            k += 1
    return IntervalSet(segs)


def domains(f: PLMap) -> list:
    return [CircleInterval(a, c - a) for a, c, e, b in f.pieces]


def images(f: PLMap) -> list:
    return [CircleInterval(a.scale(e) + b, (c - a).scale(e)) for a, c, e, b in f.pieces]
