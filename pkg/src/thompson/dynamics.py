"""Fixed points, their one-sided slope behaviour, and north-south classification.

A map is north-south when it has no arc of fixed points and exactly two
isolated fixed points, one attracting and one repelling.  Maps in V may jump;
at a fixed point where the map is discontinuous from the left, only the
branch containing the point (half-open convention) decides its kind.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial, floor

from .dyadic import Dyadic, IntervalSet, format_rational, mod1
from .elements import (
    Element,
    ElementError,
    PLMap,
    TElement,
    VElement,
    _apply,
    to_pl_map,
)
from .trees import LEAF, BinaryTree, caret, catalan


class Kind(enum.Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    MIXED = "Mixed"
    NEUTRAL_POINT = "NeutralPoint"

    def __str__(self):
        return self.value

    def swapped(self) -> "Kind":
        if self is Kind.ATTRACTING:
            return Kind.REPELLING
        if self is Kind.REPELLING:
            return Kind.ATTRACTING
        return self


class FamilyError(ValueError):
    """Arguments violate a family's shape or labeling constraint."""


@dataclass(frozen=True)
class FixedPoint:
    location: Fraction
    right_exponent: int
    left_exponent: int
    kind: Kind
    continuous: bool = True

    def to_json(self) -> dict:
        return {
            "location": format_rational(self.location),
            "right_exponent": self.right_exponent,
            "left_exponent": self.left_exponent,
            "kind": self.kind.value,
            "continuous": self.continuous,
        }


@dataclass(frozen=True)
class DynamicsReport:
    fixed_points: tuple
    neutral_intervals: IntervalSet = field(default_factory=IntervalSet.empty)

    @property
    def is_north_south(self) -> bool:
        if self.neutral_intervals.segments or len(self.fixed_points) != 2:
            return False
        return {fp.kind for fp in self.fixed_points} == {Kind.ATTRACTING, Kind.REPELLING}

    def point(self, kind: Kind):
        for fp in self.fixed_points:
            if fp.kind is kind:
                return fp
        return None

    @property
    def attracting(self):
        return self.point(Kind.ATTRACTING)

    @property
    def repelling(self):
        return self.point(Kind.REPELLING)

    def to_json(self) -> dict:
        return {
            "fixed_points": [fp.to_json() for fp in self.fixed_points],
            "neutral_intervals": self.neutral_intervals.to_json(),
            "is_north_south": self.is_north_south,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _as_map(m) -> PLMap:
    return m if isinstance(m, PLMap) else to_pl_map(m)


def branch_solutions(lo, length, e: int, b) -> list:
    """All lifted ``x`` in ``[lo, lo + length)`` with ``2**e x + b = x + k`` for an integer ``k``."""
    lo = Fraction(lo)
    hi = lo + Fraction(length)
    b = Fraction(b)
    s = 1 - Fraction(2) ** e
    # k = s*x - b ranges over the image of [lo, hi) under a monotone affine map
    k1, k2 = s * lo - b, s * hi - b
    kmin, kmax = (k1, k2) if k1 <= k2 else (k2, k1)
    out = []
    for k in range(floor(kmin), ceil(kmax) + 1):
        x = (b + k) / s
        if lo <= x < hi:
            out.append(x)
    return out


def _classify(m: PLMap, x: Fraction) -> FixedPoint:
    ps = m.pieces
    k = m.piece_index(x)
    a, c, e_r, b = ps[k]
    if x == a:
        a2, c2, e_l, b2 = ps[k - 1]
        end = _apply(e_l, b2, c2.to_fraction())
        continuous = mod1(end) == x
    else:
        e_l = e_r
        continuous = True
    if not continuous:
        kind = Kind.ATTRACTING if e_r < 0 else Kind.REPELLING if e_r > 0 else Kind.NEUTRAL_POINT
    elif e_l == 0 or e_r == 0:
        kind = Kind.NEUTRAL_POINT
    elif e_l < 0 and e_r < 0:
        kind = Kind.ATTRACTING
    elif e_l > 0 and e_r > 0:
        kind = Kind.REPELLING
    else:
        kind = Kind.MIXED
    return FixedPoint(x, e_r, e_l, kind, continuous)


def fixed_points(m) -> DynamicsReport:
    """Exact fixed-point analysis of a map (or an element, converted first)."""
    m = _as_map(m)
    neutral = []
    points = []
    for br in m.branches:
        dom = br.domain
        if br.e == 0:
            if not br.b:
                neutral.extend(dom.segments())
            continue
        for x in branch_solutions(dom.lo.to_fraction(), dom.length.to_fraction(), br.e,
                                  br.b.to_fraction()):
            points.append(mod1(x))
    points.sort()
    return DynamicsReport(tuple(_classify(m, x) for x in points), IntervalSet(neutral))


def is_north_south(m) -> bool:
    return fixed_points(m).is_north_south


def is_north_south_fast(elem: Element) -> bool:
    """North-south test working directly on leaf cells with integer arithmetic.

    Equivalent to ``fixed_points(to_pl_map(elem)).is_north_south``; used for
    census work.  Every leaf branch maps into [0, 1] without wrapping, so a
    fixed point in leaf ``(d, i) -> (d', i')`` can only be
    ``(i' - i) / (2^d' - 2^d)``.
    """
    src = elem.source.leaf_cells
    tgt = elem.target.leaf_cells
    perm = elem.perm
    m = len(perm)
    found = 0
    kinds = 0  # bit 1: attracting seen, bit 2: repelling seen
    for j in range(m):
        d, i = src[j]
        dt, it = tgt[perm[j]]
        if d == dt:
            if i == it:
                return False
            continue
        num = it - i
        den = (1 << dt) - (1 << d)
        if den < 0:
            num, den = -num, -den
        lhs = num << d
        if lhs < i * den or lhs >= (i + 1) * den:
            continue
        found += 1
        if found > 2:
            return False
        e_r = d - dt
        e_l = e_r
        if lhs == i * den:
            # fixed point at the left end of the leaf: check continuity from the left
            dp, ip = src[j - 1]
            dpt, ipt = tgt[perm[j - 1]]
            end_num = ipt + 1
            if end_num == (1 << dpt):
                continuous = i == 0
            else:
                continuous = (end_num << d) == (i << dpt)
            if continuous:
                e_l = dp - dpt
                if e_l == 0:
                    return False
        if e_r < 0 and e_l < 0:
            kinds |= 1
        elif e_r > 0 and e_l > 0:
            kinds |= 2
        else:
            return False
    return found == 2 and kinds == 3


# ---------------------------------------------------------------------------
# north-south families


def make_ns_family_T(n: int, right_subtree_of_S: BinaryTree, left_subtree_of_T: BinaryTree,
                     i: int) -> TElement:
    """Member of the T family: S has a leaf as left child, T a leaf as right child,
    and the last target leaf carries label ``i`` with ``2 <= i <= n-1``."""
    if n < 3:
        raise FamilyError("the family needs n >= 3")
    if right_subtree_of_S.size != n - 1 or left_subtree_of_T.size != n - 1:
        raise FamilyError(f"subtrees must have {n - 1} internal nodes")
    if not 2 <= i <= n - 1:
        raise FamilyError(f"label {i} of the last target leaf must avoid 0, 1 and n")
    return TElement(caret(LEAF, right_subtree_of_S), caret(left_subtree_of_T, LEAF), n - i)


def is_ns_family_T(elem) -> bool:
    if not isinstance(elem, TElement):
        return False
    n = elem.n
    if n < 3 or not elem.source.bits.startswith("10") or not elem.target.right.is_leaf:
        return False
    return 2 <= (n - elem.mark) % (n + 1) <= n - 1


def ns_family_count_T(n: int) -> int:
    if n < 3:
        return 0
    return catalan(n - 1) ** 2 * (n - 2)


def enumerate_ns_family_T(n: int):
    from .trees import enumerate_trees

    subs = list(enumerate_trees(n - 1))
    for s in subs:
        for t in subs:
            for i in range(2, n):
                yield make_ns_family_T(n, s, t, i)


def make_ns_family_V(n: int, right_subtree_of_S: BinaryTree, left_subtree_of_T: BinaryTree,
                     perm) -> VElement:
    """Member of the V family: same tree shapes as in T, and the source leaf
    sent to the last target position is none of 0, 1, n."""
    if n < 3:
        raise FamilyError("the family needs n >= 3")
    if right_subtree_of_S.size != n - 1 or left_subtree_of_T.size != n - 1:
        raise FamilyError(f"subtrees must have {n - 1} internal nodes")
    try:
        elem = VElement(caret(LEAF, right_subtree_of_S), caret(left_subtree_of_T, LEAF), perm)
    except ElementError as exc:
        raise FamilyError(str(exc)) from None
    if elem.labels[n] in (0, 1, n):
        raise FamilyError(f"label {elem.labels[n]} of the last target leaf must avoid 0, 1 and n")
    return elem


def is_ns_family_V(elem) -> bool:
    if not isinstance(elem, VElement):
        return False
    n = elem.n
    if n < 3 or not elem.source.bits.startswith("10") or not elem.target.right.is_leaf:
        return False
    return elem.labels[n] not in (0, 1, n)


def ns_family_count_V(n: int) -> int:
    if n < 3:
        return 0
    return catalan(n - 1) ** 2 * factorial(n) * (n - 2)


def is_ns_family_V_boundary(elem: VElement) -> bool:
    """Family member whose source leaf 0 lands on the last leaf of T's left subtree.

    Such a member contracts [0, 1/2) towards 1/2, which lies outside the
    half-open leaf, so it has no attracting fixed point there.
    """
    return is_ns_family_V(elem) and elem.perm[0] == elem.n - 1


def ns_family_core_count_V(n: int) -> int:
    """Family members avoiding the boundary case above."""
    if n < 3:
        return 0
    return catalan(n - 1) ** 2 * (n - 2) * (n - 1) * factorial(n - 1)
