import random
from fractions import Fraction
from math import factorial

import pytest

from thompson.density import iter_sphere, trial_rng
from thompson.dyadic import CircleInterval, Dyadic
from thompson.dynamics import FamilyError, fixed_points
from thompson.elements import PLMap, compose, invert, is_identity, to_pl_map
from thompson.freeness import (
    Certificate,
    NotFound,
    adopted_pingpong_ratio_V,
    arcs_disjoint,
    box_arrangements,
    boundary_member,
    enumerate_pingpong_u_T,
    enumerate_pingpong_v_T,
    find_certificate,
    is_pingpong_u_T,
    is_pingpong_u_V,
    is_pingpong_v_T,
    is_pingpong_v_V,
    label_count_u_V,
    label_count_v_V,
    label_triples,
    make_pingpong_u_T,
    make_pingpong_u_V,
    make_pingpong_v_T,
    make_pingpong_v_V,
    pair_count_V,
    product_pair_count_V,
    pingpong_count_T,
    pingpong_pair_T,
    pingpong_ratio_T,
    pingpong_ratio_V,
    random_pingpong_pair,
    random_pingpong_u_V,
    random_pingpong_v_V,
    random_reduced_word,
    random_word_test,
    verify_certificate,
    verify_pingpong,
    word_map,
)
from thompson.trees import BinaryTree, catalan, random_tree

F = Fraction
Q = F(1, 4)


def in_u_regions(e):
    r = fixed_points(e)
    return (r.is_north_south and 0 < r.attracting.location <= Q
            and 3 * Q <= r.repelling.location < 1)


def in_v_regions(e):
    r = fixed_points(e)
    return (r.is_north_south and 2 * Q < r.attracting.location <= 3 * Q
            and Q <= r.repelling.location < 2 * Q)


# -- T families -----------------------------------------------------------------


def test_T_counts():
    assert pingpong_count_T(6) == catalan(3) ** 2 == 25
    for n in range(6, 12):
        assert pingpong_count_T(n) == catalan(n - 3) ** 2 * (n - 5)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_T_enumeration_size(n):
    us = list(enumerate_pingpong_u_T(n))
    vs = list(enumerate_pingpong_v_T(n))
    assert len(set(us)) == len(us) == pingpong_count_T(n)
    assert len(set(vs)) == len(vs) == pingpong_count_T(n)


def test_T_predicates_match_generators_exhaustively():
    n = 6
    us, vs = set(), set()
    for e in iter_sphere("T", n):
        if is_pingpong_u_T(e):
            us.add(e)
        if is_pingpong_v_T(e):
            vs.add(e)
    assert us == set(enumerate_pingpong_u_T(n))
    assert vs == set(enumerate_pingpong_v_T(n))


@pytest.mark.parametrize("n", [6, 7, 8])
def test_T_fixed_point_regions_exhaustive(n):
    assert all(in_u_regions(u) for u in enumerate_pingpong_u_T(n))
    assert all(in_v_regions(v) for v in enumerate_pingpong_v_T(n))


@pytest.mark.parametrize("n", [9, 10])
def test_T_fixed_point_regions_sampled(n):
    rng = random.Random(n)
    for _ in range(200):
        u, v = random_pingpong_pair("T", n, rng)
        assert in_u_regions(u) and in_v_regions(v)


def test_T_shapes():
    s = BinaryTree("1010100")
    u = make_pingpong_u_T(6, s, s, 1)
    assert u.source.bits == "1" + "100" + "10" + s.bits
    assert u.target.bits == "11" + s.bits + "0" + "100"
    # label 0 sits inside the box, neither first nor last
    box = u.labels[:u.n - 2]
    assert 0 in box[1:-1]


def test_T_errors():
    s = BinaryTree("1010100")
    with pytest.raises(FamilyError):
        make_pingpong_u_T(5, BinaryTree("11000"), BinaryTree("11000"), 1)
    with pytest.raises(FamilyError):
        make_pingpong_u_T(7, s, s, 0)
    with pytest.raises(FamilyError):
        make_pingpong_v_T(7, s, s, 3)
    with pytest.raises(FamilyError):
        make_pingpong_v_T(7, s, BinaryTree("10100"), 1)


def test_T_indexed_pairs():
    per = pingpong_count_T(6)
    seen = {pingpong_pair_T(6, i) for i in range(per * per)}
    assert len(seen) == per * per
    with pytest.raises(ValueError):
        pingpong_pair_T(6, per * per)


def test_T_ratio():
    assert pingpong_ratio_T(6) == F(25 ** 2, 132 ** 4 * 49)
    assert abs(pingpong_ratio_T(500) / F(1, 2 ** 24) - 1) < F(2, 100)
    assert all(pingpong_ratio_T(n) > 0 for n in range(6, 60))
    with pytest.raises(ValueError):
        pingpong_ratio_T(5)


# -- V families -----------------------------------------------------------------


def brute_u_triples(n, literal):
    out = []
    for i in range(n + 1):
        for j in range(n + 1):
            for k in range(n + 1):
                if literal:
                    ok = i not in (0, 1) and j not in (0, 2, i) and k not in (0, 1, 2, n, i, j)
                else:
                    ok = (3 <= i <= n and 3 <= j <= n and 3 <= k <= n - 1
                          and len({i, j, k}) == 3)
                if ok:
                    out.append((i, j, k))
    return out


@pytest.mark.parametrize("n", [6, 7, 8])
def test_V_label_triples(n):
    assert label_triples(n, "u") == brute_u_triples(n, False)
    assert label_triples(n, "u", literal=True) == brute_u_triples(n, True)
    assert len(label_triples(n, "u")) == label_count_u_V(n) == (n - 3) ** 2 * (n - 4)
    assert len(label_triples(n, "v")) == label_count_v_V(n) == (n - 3) ** 2 * (n - 4)


def test_V_literal_counts_against_product_factors():
    # the literal rules do not give the per-element factors of the product formula
    lit = {n: (len(label_triples(n, "u", True)), len(label_triples(n, "v", True)))
           for n in (6, 7, 8)}
    assert lit == {6: (39, 52), 7: (84, 105), 8: (155, 186)}
    for n in (6, 7, 8):
        assert lit[n][0] != (n - 1) * (n - 2) * (n - 3)
        assert lit[n][1] != (n - 1) * (n - 3) ** 2


def test_V_box_arrangements():
    # n-2 boxed labels, the special one in none of the two end slots
    for n in (6, 7):
        labels = n - 2
        brute = sum(1 for p in _perms(labels) if p[0] != 0 and p[-1] != 0)
        assert box_arrangements(n) == brute
        assert box_arrangements(n) == (n - 3) * (n - 4) * factorial(n - 4)


def _perms(m):
    import itertools
    return itertools.permutations(range(m))


def test_V_pair_counts():
    for n in (6, 7, 10):
        per = catalan(n - 3) ** 2 * label_count_u_V(n) * box_arrangements(n)
        assert pair_count_V(n) == per * per
    assert product_pair_count_V(6) == (catalan(3) ** 4 * factorial(2) ** 2 * 25 * 4 * 3 ** 5 * 4)


def test_V_ratios_converge():
    lim = F(1, 2 ** 24)
    assert abs(pingpong_ratio_V(1000) / lim - 1) < F(1, 100)
    assert abs(adopted_pingpong_ratio_V(1000) / lim - 1) < F(1, 100)
    assert pingpong_ratio_V(6) > 0 and adopted_pingpong_ratio_V(6) > 0


@pytest.mark.parametrize("n", [6, 7, 8, 10])
def test_V_members_regions(n):
    rng = random.Random(100 + n)
    for _ in range(150):
        u = random_pingpong_u_V(n, rng)
        v = random_pingpong_v_V(n, rng)
        assert is_pingpong_u_V(u) and is_pingpong_v_V(v)
        assert not is_pingpong_v_V(u) and not is_pingpong_u_V(v)
        assert in_u_regions(u) and in_v_regions(v)


def test_V_boundary_members():
    s = random_tree(3, random.Random(0))
    u = make_pingpong_u_V(6, s, s, 4, 5, 3, (1, 0, 6, 2))
    assert boundary_member(u)
    assert fixed_points(u).repelling.location == 3 * Q
    v = make_pingpong_v_V(6, s, s, 2, 1, 3, (6, 5, 4, 0))
    assert boundary_member(v)
    assert fixed_points(v).repelling.location == Q


def test_V_literal_members_can_break_ping_pong():
    # i = 2 is allowed by the literal u rules; source leaf 2, the quarter [1/2, 3/4), then
    # lands on the quarter [1/4, 1/2) where v has its repelling point
    s = BinaryTree("1010100")
    u = make_pingpong_u_V(6, s, s, 2, 3, 4, (1, 0, 6, 5), literal=True)
    assert is_pingpong_u_V(u, literal=True) and not is_pingpong_u_V(u)
    with pytest.raises(FamilyError):
        make_pingpong_u_V(6, s, s, 2, 3, 4, (1, 0, 6, 5))
    rng = random.Random(1)
    for _ in range(5):
        assert not find_certificate(u, random_pingpong_v_V(6, rng), 6)


def test_V_errors():
    s = BinaryTree("1010100")
    with pytest.raises(FamilyError, match="box"):
        make_pingpong_u_V(6, s, s, 3, 4, 5, (0, 1, 2, 6))
    with pytest.raises(FamilyError, match="block_perm"):
        make_pingpong_u_V(6, s, s, 3, 4, 5, (1, 0, 2))
    with pytest.raises(FamilyError):
        make_pingpong_v_V(6, s, s, 1, 2, 5, (3, 0, 4, 6))
    with pytest.raises(FamilyError, match="box"):
        make_pingpong_v_V(6, s, s, 1, 2, 4, (5, 0, 3, 6))


# -- certificates ---------------------------------------------------------------


def test_arc_disjointness_is_half_open():
    a = CircleInterval(Dyadic(0), Dyadic(1, 1))      # [0, 1/2)
    b = CircleInterval(Dyadic(1, 1), Dyadic(1, 1))   # [1/2, 1)
    c = CircleInterval(Dyadic(3, 2), Dyadic(1, 1))   # [3/4, 5/4), wrapping
    assert arcs_disjoint(a, b) and arcs_disjoint(b, a)
    assert not arcs_disjoint(b, c)
    assert not arcs_disjoint(a, c)
    assert arcs_disjoint(CircleInterval(Dyadic(1, 2), Dyadic(1, 1)), c)


def test_certificate_for_family_pair():
    u, v = pingpong_pair_T(6, 0)
    c = find_certificate(u, v, 8)
    assert c and c.depth <= 8
    assert verify_certificate(u, v, c)
    again = Certificate.from_json(c.to_json())
    assert verify_certificate(u, v, again)
    assert random_word_test(u, v, 10, 500, 0) == []


def test_certificate_soundness_checks():
    u, v = pingpong_pair_T(6, 3)
    c = find_certificate(u, v, 8)
    swapped = Certificate(c.P_v, c.Q_v, c.P_u, c.Q_u, c.depth, u, v)
    assert not verify_certificate(u, v, swapped)
    flipped = Certificate(c.Q_u, c.P_u, c.P_v, c.Q_v, c.depth, u, v)
    assert not verify_certificate(u, v, flipped)


def test_u_with_itself_not_found():
    u, _ = pingpong_pair_T(6, 0)
    res = find_certificate(u, u, 8)
    assert isinstance(res, NotFound) and not res
    assert "fixed point" in res.reason


def test_non_north_south_not_found():
    u, _ = pingpong_pair_T(6, 0)
    rot = PLMap.rotation(F(1, 2))
    assert not find_certificate(u, rot, 4)


def test_certificate_depth_monotone():
    rng = random.Random(4)
    for _ in range(5):
        u, v = random_pingpong_pair("V", 8, rng)
        c = find_certificate(u, v, 8)
        assert c
        for d in range(c.depth, c.depth + 3):
            assert find_certificate(u, v, d)
        if c.depth > 1:
            assert not find_certificate(u, v, c.depth - 1)


@pytest.mark.parametrize("group", ["T", "V"])
@pytest.mark.parametrize("n", [8, 10, 12])
def test_random_family_pairs_certified(group, n):
    for t in range(5):
        u, v = random_pingpong_pair(group, n, trial_rng(n, t))
        c = find_certificate(u, v, 8)
        assert c and verify_certificate(u, v, c)


def test_rank_three_smoke():
    # powers of u, v and a rotated conjugate of u play ping-pong on six small arcs
    u, v = pingpong_pair_T(8, 0)
    mu, mv = to_pl_map(u), to_pl_map(v)
    rot = PLMap.rotation(Dyadic(1, 3))
    mw = compose(rot, compose(mu, invert(rot)))

    def power(m, k):
        out = PLMap.identity()
        for _ in range(k):
            out = compose(m, out)
        return out

    def around(x, d):
        lo = (F(x) * 2 ** d).__floor__()
        return CircleInterval(Dyadic(lo % 2 ** d, d), Dyadic(1, d))

    gens = [power(m, 6) for m in (mu, mv, mw)]
    arcs = []
    for g in gens:
        r = fixed_points(g)
        arcs.append((around(r.attracting.location, 5), around(r.repelling.location, 5)))
    assert verify_pingpong(gens, arcs)
    # and the same arcs fail for the unpowered generators
    assert not verify_pingpong([mu, mv, mw], arcs)


# -- words ----------------------------------------------------------------------


def test_reduced_words():
    rng = random.Random(0)
    for length in range(1, 12):
        w = random_reduced_word(length, rng)
        assert len(w) == length
        for a, b in zip(w, w[1:]):
            assert {a, b} not in ({"u", "U"}, {"v", "V"})


def test_word_map_semantics():
    u, v = pingpong_pair_T(6, 5)
    mu, mv = to_pl_map(u), to_pl_map(v)
    x = F(1, 7)
    assert word_map("uv", u, v)(x) == mu(mv(x))
    assert is_identity(word_map("uU", u, v))


def test_inverse_pair_reports_word():
    u, _ = pingpong_pair_T(6, 0)
    hits = random_word_test(u, invert(to_pl_map(u)), 2, 200, 0)
    assert "uv" in hits
    assert "" not in hits


def test_word_test_validation():
    u, v = pingpong_pair_T(6, 0)
    with pytest.raises(ValueError):
        random_word_test(u, v, 0, 10, 0)
