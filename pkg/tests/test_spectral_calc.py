from collections import Counter
from fractions import Fraction

import pytest

from spectra.lattice_core import Irr, Leg, tits_q
from spectra.notation import SpectralTypeError, normalize, parse_spectral_type
from spectra.spectral_calc import (BlockData, HTLSymbolData, PointData, Shape, lambda_of, lift_lattice,
                                   quiver_of, rigidity_index, shape_of, xi_fiber, xi_project)

WORKED = "(((1)(1))((1)))(((1))),(111)(1),1111"


def _st(text):
    return normalize(parse_spectral_type(text))


def test_worked_example_vertices():
    q, alpha = quiver_of(_st(WORKED))
    tags = {str(v) for v in q.vertices}
    assert tags == {"[0,1]", "[0,2]", "[0,3]", "[0,4]", "[1,1]", "[1,2]", "[1,1,1]", "[1,1,2]",
                    "[2,1,1]", "[2,1,2]", "[2,1,3]"}
    assert dict(zip(map(str, q.vertices), alpha))["[1,1]"] == 3


def test_worked_example_arrows():
    q, _ = quiver_of(_st(WORKED))
    V = q.vertices
    fam = Counter()
    internal = []
    for s, t, m in q.arrows:
        a, b = V[s], V[t]
        if isinstance(a, Irr) and isinstance(b, Irr):
            if a.i == b.i == 0:
                internal.append(m)
            else:
                fam["cross"] += m
        elif isinstance(a, Leg) and isinstance(b, Leg):
            fam["leg chain"] += m
        elif isinstance(a, Leg) and a.i == b.i:
            fam["leg chain"] += m  # first leg vertex to its own block
        else:
            fam["leg to zero"] += m
    assert q.arrow_count() == 24
    assert fam == {"cross": 8, "leg chain": 4, "leg to zero": 4}
    # d-counts over the 6 pairs of point-0 blocks (pairs with d = 0 carry no arrow)
    assert sorted(internal + [0] * (6 - len(internal))) == [0, 1, 1, 2, 2, 2]


def test_hypergeometric_quiver_is_a_star():
    q, alpha = quiver_of(_st("11,11,11"))
    assert q.vertices == (Irr(0, 1), Leg(0, 1, 1), Leg(1, 1, 1), Leg(2, 1, 1))
    assert alpha == (2, 1, 1, 1)
    assert q.arrow_count() == 3


@pytest.mark.parametrize("text,idx", [("11,11,11", 2), ("(1)(1),(1)(1)", 0), ("((1))((1)),(1)(1)", -2),
                                      ("11,11,11,11", 0), ("(((1)))(((1)))", 0),
                                      ("((((1))))((((1))))", -2)])
def test_rigidity_index(text, idx):
    assert rigidity_index(text) == idx


def test_quiver_requires_normal_form():
    with pytest.raises(SpectralTypeError):
        quiver_of(parse_spectral_type("11,(2)(11),(2)"))


def test_lambda_of_examples():
    zero = HTLSymbolData((PointData(2, (BlockData((0,), (0,), (1,)), BlockData((1,), (0,), (1,)))),
                          PointData(2, (BlockData((0,), (0,), (1,)), BlockData((1,), (0,), (1,))))))
    assert all(x == 0 for x in lambda_of(zero))
    h = HTLSymbolData((PointData(2, (BlockData((0,), ("1/2",), (1,)), BlockData((1,), (0,), (1,)))),
                       PointData(2, (BlockData((0,), (0,), (1,)), BlockData((1,), (0,), (1,))))))
    q, _ = quiver_of(h.spectral_type())
    assert lambda_of(h)[q.index(Irr(0, 1))] == Fraction(-1, 2)


def test_symbol_json_round_trip():
    h = HTLSymbolData((PointData(2, (BlockData((0,), ("1/2", 3), (1, 2)), BlockData((1,), (0,), (3,)))),
                       PointData(1, (BlockData((), (1, 2, "-3/4"), (2, 2, 2)),))))
    assert HTLSymbolData.from_json(h.to_json()) == h


def test_lift_lattice_square():
    st = _st("(1)(1),(1)(1)")
    ll = lift_lattice(st)
    assert ll.generators == ((1, 1), (1, 2), (2, 1), (2, 2))
    G = ll.gram
    assert G[0][3] == G[1][2] == -2          # differ in both slots: double bond
    assert G[0][1] == G[0][2] == 0           # differ in one slot


def test_lift_lattice_leg_entries():
    st = _st("(11)(1),(1)(11),111")
    ll = lift_lattice(st)
    gens = list(ll.generators)
    a, b = gens.index(Leg(2, 1, 1)), gens.index(Leg(2, 1, 2))
    assert ll.gram[a][b] == -1 and ll.gram[a][a] == 2
    t = gens.index((1, 1, 1))
    assert ll.gram[t][gens.index(Leg(0, 1, 1))] == -1
    assert ll.gram[t][gens.index(Leg(1, 2, 1))] == 0


def test_xi_fiber_square():
    st = _st("(1)(1),(1)(1)")
    ll = lift_lattice(st)
    _, alpha = quiver_of(st)
    base, kernel = xi_fiber(ll, alpha)
    assert len(kernel) == 1
    assert xi_project(ll, base) == alpha
    # coefficients (a, 1-a, 1-a, a) up to the parameter shift
    k = kernel[0]
    assert k in ((1, -1, -1, 1), (-1, 1, 1, -1))
    assert base[0] + base[1] == 1 and base[0] == base[3] and base[1] == base[2]


def test_xi_injective_with_one_irregular_point():
    st = _st("(11)(1),111,21")
    ll = lift_lattice(st)
    _, alpha = quiver_of(st)
    assert xi_fiber(ll, alpha)[1] == []


def test_shape_examples():
    s = shape_of("(1)(1),(1)(1)")
    assert s.n == 4 and len(s.params) == 1
    assert sorted(m for _, _, m in s.edges()) == [2, 2]
    assert sorted(s.base) in ([0, 0, 1, 1],)
    star = shape_of("11,11,11,11")
    assert star.base == (2, 1, 1, 1, 1) and star.params == ()
    assert sorted(m for _, _, m in star.edges()) == [1, 1, 1, 1]
    pair = shape_of("(((1)))(((1)))")
    assert pair.gram == ((2, -2), (-2, 2)) and pair.base == (1, 1)
    assert Shape.from_json(pair.to_json()) == pair


def test_shape_value_projects_to_alpha():
    st = _st("((1))((1)),(1)(1)")
    s = shape_of(st)
    ll = lift_lattice(st)
    _, alpha = quiver_of(st)
    for a in range(-3, 4):
        assert xi_project(ll, s.value((a,))) == alpha
    q, _ = quiver_of(st)
    assert 2 * tits_q(q, alpha) == -2
