import pytest

from frobsandwich.derivation import NormalFormCoefficients, PolyDerivation
from frobsandwich.driver import (Configuration, check_tuple, chern_check, configuration,
                                 configuration_affine, expected_length, label_for,
                                 multiset_name, survey, tuple_at)
from frobsandwich.gf2k import field_make
from frobsandwich.poly import parse_poly
from frobsandwich.rdp import RDPType


def D(F, G, k=1):
    return PolyDerivation.from_text(F, G, field_make(k))


A1, D4, D6 = RDPType("A", 1), RDPType("D", 4, 0), RDPType("D", 6, 0)


class _P:
    def __init__(self, length, degree=1):
        self.length, self.degree = length, degree


def test_expected_length():
    assert [expected_length(n) for n in (1, 0, -1)] == [1, 3, 7]


def test_chern_check():
    assert chern_check(Configuration(1, [(_P(1), A1)], "A1"))
    assert chern_check(Configuration(-1, [(_P(1, 7), A1)], "7A1"))
    assert not chern_check(Configuration(-1, [(_P(4), D4), (_P(1), A1), (_P(1), A1)], "x"))


def test_labels():
    assert multiset_name([A1, D4, A1, A1]) == "D4^0+3A1"
    assert multiset_name([A1, D6]) == "D6^0+A1"
    assert label_for([A1] * 7) == "7A1"
    assert label_for([A1, A1]) == "OTHER(2A1)"


# projective families, a = b = 1
@pytest.mark.parametrize("F,G,deg,label,lengths", [
    ("x", "y", 1, "A1", [1]),
    ("x^2", "y^2", -1, "D4^0+3A1", [4, 1, 1, 1]),
    ("x*(x+1)", "y", -1, "D4^0+3A1", [4, 1, 1, 1]),
    ("x", "y*(y+1)", -1, "D4^0+3A1", [4, 1, 1, 1]),
    ("x*(x+1)", "y*(y+1)", -1, "7A1", [1] * 7),
    ("x^2+x*y^2", "y^3", -1, "D6^0+A1", [6, 1]),
    ("x*y^2", "x^2+y^3", -1, "E7^0", [7]),
])
def test_configurations(F, G, deg, label, lengths):
    c = configuration(D(F, G))
    assert (c.deg_L, c.label, c.lengths) == (deg, label, lengths)
    j = c.to_json()
    assert j["chern"] == {"total_length": sum(lengths), "expected": expected_length(deg),
                          "ok": True}


def test_configuration_over_gf4_with_distinct_constants():
    # x(x+a) d/dx + y(by+a) d/dy with a = 1, b = g
    c = configuration(D("x*(x+1)", "y*(g*y+1)", 2))
    assert (c.deg_L, c.label) == (-1, "7A1")


def test_point_json_reports_lines():
    j = configuration(D("x^2", "y^2")).to_json()
    origin = next(p for p in j["points"] if p["type"] == "D4^0")
    assert origin["point"] == ["1", "0", "0"] and origin["on_lines"] == ["X1", "X2"]


def test_configuration_requires_u0():
    d = PolyDerivation.from_text("z", "w", field_make(1), "U1")
    with pytest.raises(ArithmeticError):
        configuration(d)


def test_affine_configuration():
    pres, pts = configuration_affine(D("x*(x+1)", "y*(y+1)"))
    assert sorted(str(t) for _, t in pts) == ["A1"] * 4
    # h = xy(x + y + 1)
    assert pres.f == parse_poly("X*Y*(X + Y + 1)", field_make(1), ("X", "Y"))


def test_check_tuple_filters():
    F2 = field_make(1)
    assert check_tuple(F2, (0,) * 7) == ("ii", None)
    # a20 = a02 = 1 gives F = x^2 + y^2 with G = 0: condition (ii)
    assert check_tuple(F2, (0, 0, 1, 1, 0, 0, 0))[0] == "ii"
    # F = G = x^2: not coprime
    assert check_tuple(F2, (0, 0, 1, 0, 0, 1, 0))[0] == "iii"
    status, (deg, label, problems) = check_tuple(F2, NormalFormCoefficients(a20=1, b02=1).as_tuple())
    assert (status, deg, label, problems) == ("ok", -1, "D4^0+3A1", [])


def test_tuple_indexing():
    F4 = field_make(2)
    assert tuple_at(F4, 0) == (0,) * 7
    assert tuple_at(F4, 1) == (0,) * 6 + (1,)
    assert tuple_at(F4, 4 ** 7 - 1) == (3,) * 7


def test_survey_gf2():
    F2 = field_make(1)
    r = survey(F2, workers=1)
    assert r.examined == 128 == r.accepted + r.rejected_ii + r.rejected_iii
    assert dict(r.histogram) == {
        "degL=-1/7A1": 24, "degL=-1/D4^0+3A1": 48, "degL=-1/D6^0+A1": 24,
        "degL=-1/E7^0": 6, "degL=1/A1": 1}
    assert r.violations == [] and r.ok()
    assert all(r.assertions().values())


def test_survey_is_independent_of_workers_and_shards():
    F2 = field_make(1)
    a = survey(F2, workers=1).to_json(F2)
    b = survey(F2, workers=2, shard_size=16).to_json(F2)
    assert a == b


def test_sampled_survey_is_reproducible():
    F4 = field_make(2)
    a = survey(F4, samples=50, seed=3)
    b = survey(F4, samples=50, seed=3)
    assert a.mode == "sampled" and a.examined == 50
    assert a.to_json(F4) == b.to_json(F4)
    assert a.ok()
