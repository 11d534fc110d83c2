import random

import pytest

from frobsandwich.gf2k import field_make
from frobsandwich.poly import MultiPoly, local_quotient_dim, parse_poly
from frobsandwich.rdp import (TJURINA_TABLE, DualGraph, RDPError, RDPType, classify_rdp,
                              dynkin_shape, is_singular, normalize_square_part,
                              resolve_dual_graph, tjurina)


def Q(text, k=1):
    return parse_poly(text, field_make(k), ("X", "Y"))


FIVE = [
    ("X*Y", 2, ("A", 1), 1),
    ("X^2*Y + X*Y^2", 8, ("D", 4), 4),
    ("X^2*Y + X*Y^3", 12, ("D", 6), 6),
    ("X^3 + X*Y^3", 14, ("E", 7), 7),
    ("X^3 + Y^5", 16, ("E", 8), 8),
]


@pytest.mark.parametrize("f,tau,shape,n", FIVE)
def test_tjurina_against_direct_quotient(f, tau, shape, n):
    g = Q(f)
    assert tjurina(g) == tau
    assert 2 * local_quotient_dim([g.derivative("X"), g.derivative("Y")]) == tau


@pytest.mark.parametrize("f,tau,shape,n", FIVE)
def test_dual_graph_shapes(f, tau, shape, n):
    G = resolve_dual_graph(Q(f))
    assert G.vertices == n
    assert dynkin_shape(G) == shape
    j = G.to_json()
    assert j["self_intersections"] == [-2] * n
    assert len(j["edges"]) == n - 1


@pytest.mark.parametrize("f,want", [
    ("X*Y", "A1"),
    ("X^2*Y + X*Y^2", "D4^0"),
    ("X^2*Y + X*Y^3", "D6^0"),
    ("X^2*Y + X*Y^4", "D8^0"),
    ("X^3 + X*Y^3", "E7^0"),
    ("X^3 + Y^5", "E8^0"),
    # irreducible tangent cone over GF(2): still D4
    ("X^3 + X^2*Y + Y^3", "D4^0"),
])
def test_classify(f, want):
    assert str(classify_rdp(Q(f))) == want


@pytest.mark.parametrize("letter,index,co", sorted(TJURINA_TABLE, key=str))
def test_tjurina_table_from_normal_forms(letter, index, co):
    if letter == "A":
        f = "X*Y"
    elif letter == "D":
        f = f"X^2*Y + X*Y^{index // 2}"
    elif index == 7:
        f = "X^3 + X*Y^3"
    else:
        f = "X^3 + Y^5"
    assert tjurina(Q(f)) == TJURINA_TABLE[(letter, index, co)]
    assert classify_rdp(Q(f)) == RDPType(letter, index, co)


def test_A1_with_higher_order_terms():
    F4 = field_make(2)
    rng = random.Random(1)
    for _ in range(30):
        t = {(1, 1): rng.randrange(1, 4)}
        for _ in range(4):
            e = (rng.randint(0, 5), rng.randint(0, 5))
            if sum(e) >= 3:
                t[e] = rng.randrange(4)
        f = MultiPoly(F4, ("X", "Y"), t)
        assert classify_rdp(f) == RDPType("A", 1)
        assert tjurina(f) == 2


def test_square_part_and_rescale_invariance():
    F4 = field_make(2)
    for text in ("g*X^2*Y + X*Y^2", "X^2*Y + g^2*X*Y^3 + X^2 + Y^4", "g*X^3 + X*Y^3 + X^2*Y^2"):
        f = Q(text, 2)
        n = normalize_square_part(f)
        assert normalize_square_part(n) == normalize_square_part(n, rescale=False)
        assert tjurina(n) == tjurina(f)
        assert classify_rdp(n) == classify_rdp(f)
        assert all(i & 1 or j & 1 for i, j in n.terms)
    assert normalize_square_part(Q("X^2 + X*Y + Y^2"), rescale=False) == Q("X*Y")
    assert is_singular(Q("X^2*Y")) and not is_singular(Q("X + X*Y"))
    assert F4.order == 4


def test_errors():
    with pytest.raises(RDPError, match="smooth"):
        tjurina(Q("X + Y^2"))
    with pytest.raises(RDPError, match="isolated"):
        tjurina(Q("X^2*Y"))
    with pytest.raises(RDPError):
        classify_rdp(Q("X^2*Y"))
    with pytest.raises(RDPError):
        RDPType("E", 9, 0)


def test_type_strings():
    assert str(RDPType("A", 1)) == "A1"
    assert str(RDPType("D", 6, 0)) == "D6^0"
    assert RDPType.parse("E7^0") == RDPType("E", 7, 0)
    assert RDPType.parse("A1") == RDPType("A", 1)


def test_dynkin_shape_rejects_non_ade():
    assert dynkin_shape(DualGraph(3, [(0, 1), (1, 2)])) == ("A", 3)
    assert dynkin_shape(DualGraph(3, [(0, 1), (1, 2), (2, 0)])) is None
    star = DualGraph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert dynkin_shape(star) is None
    e6 = DualGraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    assert dynkin_shape(e6) == ("E", 6)
