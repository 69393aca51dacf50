"""Ping-pong families in T and V, exact pair counts, and freeness certificates.

A certificate for a pair ``(u, v)`` is four half-open dyadic arcs ``P_u, Q_u,
P_v, Q_v``, pairwise disjoint, with

    u(S^1 - Q_u) in P_u,   u^-1(S^1 - P_u) in Q_u   (and the same for v).

Put ``X_u = P_u + Q_u`` and ``X_v = P_v + Q_v``.  Since ``P_u`` misses ``Q_u``,
the first containment iterates: ``u^m(X_v)`` lies in ``P_u`` for every
``m >= 1``; the second gives ``u^-m(X_v)`` inside ``Q_u``.  So every nonzero
power of ``u`` carries ``X_v`` into ``X_u`` and symmetrically, and the
ping-pong lemma makes ``<u, v>`` free of rank 2.  Everything below is exact.
"""

from __future__ import annotations

import itertools
import json
import random
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .dyadic import ONE, ZERO, CircleInterval, Dyadic, IntervalSet, mod1
from .dynamics import FamilyError, Kind, fixed_points
from .elements import (
    Element,
    ElementError,
    PLMap,
    TElement,
    VElement,
    compose,
    element_from_json,
    evaluate,
    image,
    invert,
    is_identity,
    to_pl_map,
)
from .trees import LEAF, BinaryTree, caret, catalan, enumerate_trees, random_tree

CHERRY = caret(LEAF, LEAF)


def _map(x) -> PLMap:
    return x if isinstance(x, PLMap) else to_pl_map(x)


# ---------------------------------------------------------------------------
# T families


def _check_sizes(n: int, *subtrees):
    if n < 6:
        raise FamilyError("ping-pong families need n >= 6")
    for t in subtrees:
        if t.size != n - 3:
            raise FamilyError(f"boxed subtrees must have {n - 3} internal nodes, got {t.size}")


def make_pingpong_u_T(n: int, s_subtree: BinaryTree, t_subtree: BinaryTree,
                      zero_position: int) -> TElement:
    """``u`` contracting [0, 3/4) into [0, 1/4).

    Source leaves 0, 1, 2 are the first three quarters; the target's leftmost
    grandchild is a box of ``n - 2`` leaves in which label 0 sits at
    ``zero_position`` (so leaves 0, 1, 2 all land inside the box).
    """
    _check_sizes(n, s_subtree, t_subtree)
    if not 1 <= zero_position <= n - 5:
        raise FamilyError(f"zero_position {zero_position} outside [1, {n - 5}]")
    source = caret(CHERRY, caret(LEAF, s_subtree))
    target = caret(caret(t_subtree, LEAF), CHERRY)
    return TElement(source, target, zero_position)


def make_pingpong_v_T(n: int, s_subtree: BinaryTree, t_subtree: BinaryTree,
                      position: int) -> TElement:
    """``v`` contracting [1/2, 1/4) (through 0) into [1/2, 3/4).

    The target box is the left child of the right child; label ``n - 1`` sits
    at ``position`` inside it, so leaves ``n - 1, n, 0`` land inside the box.
    """
    _check_sizes(n, s_subtree, t_subtree)
    if not 1 <= position <= n - 5:
        raise FamilyError(f"position {position} outside [1, {n - 5}]")
    source = caret(caret(LEAF, s_subtree), CHERRY)
    target = caret(CHERRY, caret(t_subtree, LEAF))
    return TElement(source, target, (position + 4) % (n + 1))


def _shape_u(elem) -> bool:
    s, t = elem.source, elem.target
    return (s.left.bits == "100" and s.right.left.is_leaf
            and t.right.bits == "100" and t.left.right.is_leaf)


def _shape_v(elem) -> bool:
    s, t = elem.source, elem.target
    return (s.right.bits == "100" and s.left.left.is_leaf
            and t.left.bits == "100" and t.right.right.is_leaf)


def is_pingpong_u_T(elem) -> bool:
    if not isinstance(elem, TElement) or elem.n < 6 or not _shape_u(elem):
        return False
    return 1 <= elem.mark <= elem.n - 5


def is_pingpong_v_T(elem) -> bool:
    if not isinstance(elem, TElement) or elem.n < 6 or not _shape_v(elem):
        return False
    return 1 <= (elem.mark - 4) % (elem.n + 1) <= elem.n - 5


def pingpong_count_T(n: int) -> int:
    """Members of either T family: ``C_{n-3}^2 (n-5)``."""
    if n < 6:
        return 0
    return catalan(n - 3) ** 2 * (n - 5)


def enumerate_pingpong_u_T(n: int):
    subs = list(enumerate_trees(n - 3))
    for s in subs:
        for t in subs:
            for z in range(1, n - 4):
                yield make_pingpong_u_T(n, s, t, z)


def enumerate_pingpong_v_T(n: int):
    subs = list(enumerate_trees(n - 3))
    for s in subs:
        for t in subs:
            for p in range(1, n - 4):
                yield make_pingpong_v_T(n, s, t, p)


def pingpong_ratio_T(n: int) -> Fraction:
    """Family pairs over all pairs of size ``n``: ``C_{n-3}^4 (n-5)^2 / (C_n^4 (n+1)^2)``."""
    if n < 6:
        raise ValueError("needs n >= 6")
    return Fraction(catalan(n - 3) ** 4 * (n - 5) ** 2, catalan(n) ** 4 * (n + 1) ** 2)


# ---------------------------------------------------------------------------
# V families
#
# u: source = ((0,1),(2,[3..n])), target = ((box, i), (j, k)).
# v: source = ((0,[1..n-2]),(n-1, n)), target = ((i, j), (box, k)).
#
# The literal label rules for u are i not in {0,1}; j not in {0,2,i};
# k not in {0,1,2,n,i,j}; label 0 interior to the box.  For v: i not in
# {0,n-1}; j in [1,n-2] minus {i}; k not in {n,n-1,i,j}; label n-1 interior
# to the box.  Some of those labelings push a whole quarter onto the other
# generator's fixed points, which rules out ping-pong on any arcs, so family
# membership uses the narrower rules in `u_labels_ok` / `v_labels_ok`.


def literal_u_labels_ok(n: int, i: int, j: int, k: int) -> bool:
    return (i not in (0, 1) and j not in (0, 2, i) and k not in (0, 1, 2, n, i, j)
            and all(0 <= x <= n for x in (i, j, k)))


def literal_v_labels_ok(n: int, i: int, j: int, k: int) -> bool:
    return (i not in (0, n - 1) and 1 <= j <= n - 2 and j != i and k not in (n, n - 1, i, j)
            and all(0 <= x <= n for x in (i, j, k)))


def u_labels_ok(n: int, i: int, j: int, k: int) -> bool:
    """Leaves 0, 1, 2 all go into the box and the repelling leaf k is not the last one.

    ``k = 3`` is allowed; its repelling point is exactly 3/4.
    """
    return 3 <= i <= n and 3 <= j <= n and 3 <= k <= n - 1 and len({i, j, k}) == 3


def v_labels_ok(n: int, i: int, j: int, k: int) -> bool:
    """Leaves n-1, n, 0 all go into the box and the repelling leaf j is not the last one.

    ``j = 1`` is allowed; its repelling point is exactly 1/4.
    """
    return 1 <= i <= n - 2 and 1 <= k <= n - 2 and 1 <= j <= n - 3 and len({i, j, k}) == 3


def _box_ok(block, special: int) -> bool:
    return len(block) >= 3 and block[0] != special and block[-1] != special


def _build_v(n, source, target, positions_of_labels) -> VElement:
    perm = [0] * (n + 1)
    for pos, label in enumerate(positions_of_labels):
        perm[label] = pos
    return VElement(source, target, tuple(perm))


def make_pingpong_u_V(n: int, s_subtree: BinaryTree, t_subtree: BinaryTree, i: int, j: int,
                      k: int, block_perm, literal: bool = False) -> VElement:
    _check_sizes(n, s_subtree, t_subtree)
    block = tuple(block_perm)
    ok = literal_u_labels_ok if literal else u_labels_ok
    if not ok(n, i, j, k):
        raise FamilyError(f"labels (i, j, k) = ({i}, {j}, {k}) violate the u labeling rules")
    if sorted(block) != sorted(set(range(n + 1)) - {i, j, k}):
        raise FamilyError("block_perm must list every label other than i, j, k exactly once")
    if not _box_ok(block, 0):
        raise FamilyError("label 0 must be neither first nor last in the box")
    source = caret(CHERRY, caret(LEAF, s_subtree))
    target = caret(caret(t_subtree, LEAF), CHERRY)
    return _build_v(n, source, target, block + (i, j, k))


def make_pingpong_v_V(n: int, s_subtree: BinaryTree, t_subtree: BinaryTree, i: int, j: int,
                      k: int, block_perm, literal: bool = False) -> VElement:
    _check_sizes(n, s_subtree, t_subtree)
    block = tuple(block_perm)
    ok = literal_v_labels_ok if literal else v_labels_ok
    if not ok(n, i, j, k):
        raise FamilyError(f"labels (i, j, k) = ({i}, {j}, {k}) violate the v labeling rules")
    if sorted(block) != sorted(set(range(n + 1)) - {i, j, k}):
        raise FamilyError("block_perm must list every label other than i, j, k exactly once")
    if not _box_ok(block, n - 1):
        raise FamilyError(f"label {n - 1} must be neither first nor last in the box")
    source = caret(caret(LEAF, s_subtree), CHERRY)
    target = caret(CHERRY, caret(t_subtree, LEAF))
    return _build_v(n, source, target, (i, j) + block + (k,))


def is_pingpong_u_V(elem, literal: bool = False) -> bool:
    if not isinstance(elem, VElement) or elem.n < 6 or not _shape_u(elem):
        return False
    n = elem.n
    lab = elem.labels
    ok = literal_u_labels_ok if literal else u_labels_ok
    return ok(n, lab[n - 2], lab[n - 1], lab[n]) and _box_ok(lab[:n - 2], 0)


def is_pingpong_v_V(elem, literal: bool = False) -> bool:
    if not isinstance(elem, VElement) or elem.n < 6 or not _shape_v(elem):
        return False
    n = elem.n
    lab = elem.labels
    ok = literal_v_labels_ok if literal else v_labels_ok
    return ok(n, lab[0], lab[1], lab[n]) and _box_ok(lab[2:n], n - 1)


def label_triples(n: int, which: str, literal: bool = False) -> list:
    """All admissible ``(i, j, k)`` for family ``which`` in {"u", "v"}, by brute force."""
    if which == "u":
        ok = literal_u_labels_ok if literal else u_labels_ok
    elif which == "v":
        ok = literal_v_labels_ok if literal else v_labels_ok
    else:
        raise ValueError(which)
    r = range(n + 1)
    return [(i, j, k) for i in r for j in r for k in r if ok(n, i, j, k)]


def box_arrangements(n: int) -> int:
    """Orders of the ``n - 2`` boxed labels with the special label not at either end."""
    return (n - 3) * (n - 4) * factorial(n - 4)


def label_count_u_V(n: int) -> int:
    """``(n-3)^2 (n-4)`` admissible ``(i, j, k)`` for u."""
    return (n - 3) ** 2 * (n - 4)


def label_count_v_V(n: int) -> int:
    """``(n-3)^2 (n-4)`` admissible ``(i, j, k)`` for v."""
    return (n - 3) ** 2 * (n - 4)


def boundary_member(elem) -> bool:
    """Family member whose repelling point sits exactly on a quarter point (3/4 or 1/4)."""
    n = elem.n
    lab = elem.labels
    if _shape_u(elem):
        return lab[n] == 3
    return lab[1] == 1


def pingpong_count_u_V(n: int) -> int:
    return catalan(n - 3) ** 2 * label_count_u_V(n) * box_arrangements(n)


def pingpong_count_v_V(n: int) -> int:
    return catalan(n - 3) ** 2 * label_count_v_V(n) * box_arrangements(n)


def pair_count_V(n: int) -> int:
    """Number of (u, v) family pairs in V under the adopted labeling rules."""
    return pingpong_count_u_V(n) * pingpong_count_v_V(n)


def product_pair_count_V(n: int) -> int:
    """The product formula ``C_{n-3}^4 (n-4)!^2 (n-1)^2 (n-2) (n-3)^5 (n-4)^2``."""
    return (catalan(n - 3) ** 4 * factorial(n - 4) ** 2 * (n - 1) ** 2 * (n - 2)
            * (n - 3) ** 5 * (n - 4) ** 2)


def pingpong_ratio_V(n: int) -> Fraction:
    """The product formula divided by the number of pairs, ``C_n^4 (n+1)!^2``."""
    if n < 6:
        raise ValueError("needs n >= 6")
    return Fraction(product_pair_count_V(n), catalan(n) ** 4 * factorial(n + 1) ** 2)


def adopted_pingpong_ratio_V(n: int) -> Fraction:
    if n < 6:
        raise ValueError("needs n >= 6")
    return Fraction(pair_count_V(n), catalan(n) ** 4 * factorial(n + 1) ** 2)


# ---------------------------------------------------------------------------
# random and indexed family members


def random_pingpong_u_V(n: int, rng: random.Random, literal: bool = False) -> VElement:
    s = random_tree(n - 3, rng)
    t = random_tree(n - 3, rng)
    i, j, k = rng.choice(label_triples(n, "u", literal))
    block = _random_box(n, {i, j, k}, 0, rng)
    return make_pingpong_u_V(n, s, t, i, j, k, block, literal)


def random_pingpong_v_V(n: int, rng: random.Random, literal: bool = False) -> VElement:
    s = random_tree(n - 3, rng)
    t = random_tree(n - 3, rng)
    i, j, k = rng.choice(label_triples(n, "v", literal))
    block = _random_box(n, {i, j, k}, n - 1, rng)
    return make_pingpong_v_V(n, s, t, i, j, k, block, literal)


def _random_box(n, used, special, rng):
    labels = sorted(set(range(n + 1)) - used)
    while True:
        rng.shuffle(labels)
        if labels[0] != special and labels[-1] != special:
            return tuple(labels)


def random_pingpong_pair(group: str, n: int, rng: random.Random):
    if group == "T":
        s1, t1, s2, t2 = (random_tree(n - 3, rng) for _ in range(4))
        u = make_pingpong_u_T(n, s1, t1, rng.randint(1, n - 5))
        v = make_pingpong_v_T(n, s2, t2, rng.randint(1, n - 5))
        return u, v
    if group == "V":
        return random_pingpong_u_V(n, rng), random_pingpong_v_V(n, rng)
    raise ValueError(f"unknown group {group!r}")


def pingpong_pair_T(n: int, index: int):
    """The ``index``-th T family pair, u-major in enumeration order."""
    per = pingpong_count_T(n)
    if not 0 <= index < per * per:
        raise ValueError(f"index {index} outside [0, {per * per})")
    a, b = divmod(index, per)
    return _nth_T(n, a, make_pingpong_u_T), _nth_T(n, b, make_pingpong_v_T)


def _nth_T(n, idx, make):
    from .trees import unrank

    c = catalan(n - 3)
    st, z = divmod(idx, n - 5)
    s, t = divmod(st, c)
    return make(n, unrank(n - 3, s), unrank(n - 3, t), z + 1)


# ---------------------------------------------------------------------------
# arc helpers (all arcs half-open, ``[lo, lo + length)``)


def arcs_disjoint(a: CircleInterval, b: CircleInterval) -> bool:
    if a.is_full or b.is_full:
        return False
    return not (a.contains(b.lo) or b.contains(a.lo))


def _complement(arc: CircleInterval) -> IntervalSet:
    return IntervalSet(CircleInterval.between(arc.hi, arc.lo).segments())


def _within(s: IntervalSet, arc: CircleInterval) -> bool:
    return IntervalSet(arc.segments()).contains(s)


def verify_pingpong(gens, arcs) -> bool:
    """Exact check of the ping-pong hypotheses for any number of generators.

    ``arcs[g] = (P_g, Q_g)``.  Checks that all ``2k`` arcs are pairwise
    disjoint, that ``g(S^1 - Q_g)`` lies in ``P_g`` and that
    ``g^-1(S^1 - P_g)`` lies in ``Q_g``.
    """
    flat = [a for pq in arcs for a in pq]
    for x, y in itertools.combinations(flat, 2):
        if not arcs_disjoint(x, y):
            return False
    for g, (p, q) in zip(gens, arcs):
        m = _map(g)
        if not _within(image(m, _complement(q)), p):
            return False
        if not _within(image(invert(m), _complement(p)), q):
            return False
    return True


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    P_u: CircleInterval
    Q_u: CircleInterval
    P_v: CircleInterval
    Q_v: CircleInterval
    depth: int
    u: object = field(default=None, compare=False)
    v: object = field(default=None, compare=False)

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        out = {name: getattr(self, name).to_json() for name in ("P_u", "Q_u", "P_v", "Q_v")}
        out["depth"] = self.depth
        for name in ("u", "v"):
            elem = getattr(self, name)
            if hasattr(elem, "to_json"):
                out[name] = elem.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "Certificate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        arcs = {k: CircleInterval.from_json(obj[k]) for k in ("P_u", "Q_u", "P_v", "Q_v")}
        u = element_from_json(obj["u"]) if "u" in obj else None
        v = element_from_json(obj["v"]) if "v" in obj else None
        return cls(depth=int(obj.get("depth", 0)), u=u, v=v, **arcs)


@dataclass(frozen=True)
class NotFound:
    reason: str
    depth: int = 0

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"certified": False, "reason": self.reason, "depth": self.depth}


def verify_certificate(u, v, c: Certificate) -> bool:
    return verify_pingpong([u, v], [(c.P_u, c.Q_u), (c.P_v, c.Q_v)])


def _grid(lo, hi, d: int, include_lo: bool) -> list:
    """Grid points ``m / 2^d`` in the lifted range ``(lo, hi)`` (or ``[lo, hi)``), mod 1."""
    scale = 1 << d
    x = Fraction(lo) * scale
    m = int(x) if x == int(x) and include_lo else int(x // 1) + 1
    out = []
    while Fraction(m, scale) < hi:
        out.append(Dyadic(m, d).frac())
        m += 1
    return out


class _Generator:
    """Candidate ``(P, Q)`` arcs for one generator, cached across depths.

    ``Q = [q1, q2)`` contains the repelling point and no other fixed point;
    ``P`` is the smallest arc containing ``g(S^1 - Q)`` and missing the
    repelling point (forced, since ``P`` must miss ``Q``).
    """

    def __init__(self, m: PLMap, attract, repel, specials):
        self.m = m
        self.a = attract
        self.r = repel
        pts = sorted(specials)
        idx = pts.index(repel)
        self.pred = pts[idx - 1] if idx > 0 else pts[-1] - 1
        self.succ = pts[idx + 1] if idx + 1 < len(pts) else pts[0] + 1
        self.others = [p for p in specials if p != attract and p != repel]
        self.cache: dict = {}
        self.last_failure = "no grid point fits between the repelling point and its neighbours"

    def candidates(self, d: int) -> list:
        lows = _grid(self.pred, self.r, d, include_lo=False)
        r_lift = self.r
        if not lows or lows[-1] != self.r:
            # q1 may equal r itself when r is on the grid
            if Fraction(self.r) * (1 << d) == int(Fraction(self.r) * (1 << d)):
                lows.append(Dyadic.coerce(Fraction(self.r)))
        highs = _grid(r_lift, self.succ, d, include_lo=False)
        out = []
        for q1 in lows:
            for q2 in highs:
                key = (q1, q2)
                if key not in self.cache:
                    self.cache[key] = self._build(q1, q2)
                c = self.cache[key]
                if c is not None:
                    out.append(c)
        # largest Q first, ties broken by position
        out.sort(key=lambda pq: (-pq[1].length, pq[1].lo))
        return out

    def _build(self, q1, q2):
        q = CircleInterval.between(q1, q2)
        img = image(self.m, _complement(q))
        gap = None
        for arc in img.complement().arcs:
            if arc.contains(self.r):
                gap = arc
                break
        if gap is None:
            self.last_failure = "the image of the complement of Q reaches the repelling point"
            return None
        p = CircleInterval.between(gap.hi, gap.lo)
        if not arcs_disjoint(p, q):
            self.last_failure = "P and Q of one generator overlap"
            return None
        if any(p.contains(x) for x in self.others):
            self.last_failure = "P contains a fixed point of the other generator"
            return None
        return (p, q)


def _hull_tau(arcs, cut):
    """``[start, end)`` of the arcs' hull in coordinates ``tau = (x - cut) mod 1``;
    assumes no arc contains ``cut``."""
    lo = min(mod1(a.lo - cut) for a in arcs)
    hi = max(mod1(a.lo - cut) + a.length for a in arcs)
    return lo, hi


def _windows(pq, cut):
    """The two gaps left by ``pq`` in tau coordinates, when exactly one arc contains ``cut``."""
    inner = [a for a in pq if not a.contains(cut)]
    outer = [a for a in pq if a.contains(cut)]
    if len(outer) != 1 or len(inner) != 1:
        return ()
    o0 = mod1(outer[0].lo - cut)
    o_end = o0 + outer[0].length - (1 if o0 > 0 else 0)
    o_start = o0 if o0 > 0 else Fraction(1)
    i0 = mod1(inner[0].lo - cut)
    i1 = i0 + inner[0].length
    return ((o_end, i0), (i1, o_start))


_BRUTE_LIMIT = 4_000_000


def _match(cu, cv, a_v, separated):
    """Find disjoint arc systems, one from each candidate list.

    When each generator's two fixed points are cyclically adjacent, cut the
    circle at ``a_v``: the u arcs then span an interval ``[alpha, beta)`` and
    must fit in one of the two gaps of the v arcs, a dominance query answered
    by sorting on ``alpha`` and a suffix minimum of ``beta``.
    """
    if separated:
        rows = []
        for pq in cu:
            if any(a.contains(a_v) for a in pq):
                continue
            alpha, beta = _hull_tau(pq, a_v)
            if beta <= 1:
                rows.append((alpha, beta, pq))
        if not rows:
            return None
        rows.sort(key=lambda r: r[0])
        alphas = [r[0] for r in rows]
        best = [0] * len(rows)
        cur = len(rows) - 1
        for idx in range(len(rows) - 1, -1, -1):
            if rows[idx][1] < rows[cur][1]:
                cur = idx
            best[idx] = cur
        for pq in cv:
            for x_v, y_v in _windows(pq, a_v):
                p = bisect_left(alphas, x_v)
                if p < len(rows) and rows[best[p]][1] <= y_v:
                    return rows[best[p]][2], pq
        return None
    if len(cu) * len(cv) > _BRUTE_LIMIT:
        return None
    for pq_v in cv:
        for pq_u in cu:
            if all(arcs_disjoint(x, y) for x in pq_u for y in pq_v):
                return pq_u, pq_v
    return None


def find_certificate(u, v, max_depth: int = 8):
    """Search for a ping-pong certificate with arc endpoints on the grid ``2^-d``, ``d <= max_depth``.

    Depths are tried in increasing order and the candidate sets only grow
    with ``d``, so success at depth ``d`` implies success at every larger depth.
    Returns a :class:`Certificate` or a falsy :class:`NotFound` with a reason.
    """
    mu, mv = _map(u), _map(v)
    rep_u, rep_v = fixed_points(mu), fixed_points(mv)
    if not rep_u.is_north_south:
        return NotFound("u is not north-south")
    if not rep_v.is_north_south:
        return NotFound("v is not north-south")
    a_u, r_u = rep_u.attracting.location, rep_u.repelling.location
    a_v, r_v = rep_v.attracting.location, rep_v.repelling.location
    pts = [a_u, r_u, a_v, r_v]
    if len(set(pts)) < 4:
        return NotFound("u and v share a fixed point")
    gu = _Generator(mu, a_u, r_u, pts)
    gv = _Generator(mv, a_v, r_v, pts)
    order = sorted(pts)
    pos = {p: idx for idx, p in enumerate(order)}
    separated = (pos[a_u] - pos[r_u]) % 4 in (1, 3)
    reason = "no candidate arcs"
    for d in range(1, max_depth + 1):
        cu = gu.candidates(d)
        cv = gv.candidates(d)
        if not cu:
            reason = f"u: {gu.last_failure}"
            continue
        if not cv:
            reason = f"v: {gv.last_failure}"
            continue
        found = _match(cu, cv, a_v, separated)
        if found is not None:
            (pu, qu), (pv, qv) = found
            return Certificate(pu, qu, pv, qv, d, u, v)
        reason = "no pair of candidate arc systems is disjoint"
    return NotFound(reason, max_depth)


# ---------------------------------------------------------------------------
# word tests

LETTERS = "uUvV"
_INVERSE = {"u": "U", "U": "u", "v": "V", "V": "v"}


def random_reduced_word(length: int, rng: random.Random) -> str:
    word = [rng.choice(LETTERS)]
    while len(word) < length:
        choices = [c for c in LETTERS if c != _INVERSE[word[-1]]]
        word.append(rng.choice(choices))
    return "".join(word)


_PROBES = tuple(Fraction(p, q) for p, q in
                ((0, 1), (1, 3), (2, 7), (5, 11), (1, 2), (7, 9), (3, 13), (12, 17)))


def word_map(word: str, u, v) -> PLMap:
    mu, mv = _map(u), _map(v)
    table = {"u": mu, "U": invert(mu), "v": mv, "V": invert(mv)}
    out = PLMap.identity()
    # letters act right to left as written, so compose left to right
    for ch in word:
        out = compose(out, table[ch])
    return out


def random_word_test(u, v, max_len: int, word_count: int, seed: int) -> list:
    """Sample reduced words (length ``1 + t mod max_len`` for word ``t``) and return
    those that evaluate to the identity."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    mu, mv = _map(u), _map(v)
    table = {"u": mu, "U": invert(mu), "v": mv, "V": invert(mv)}
    hits = []
    for t in range(word_count):
        rng = random.Random((seed << 64) | t)
        word = random_reduced_word(1 + t % max_len, rng)
        moved = False
        for x in _PROBES:
            y = x
            for ch in reversed(word):
                y = evaluate(table[ch], y)
            if y != x:
                moved = True
                break
        if moved:
            continue
        if is_identity(word_map(word, mu, mv)) and word not in hits:
            hits.append(word)
    return hits
