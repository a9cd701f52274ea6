"""Hypothesis property suite: every property runs on at least 200 exact instances."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as hs

from oracles import idx_formula
from spectra.lattice_core import (dot, lambda_reflection, simple_reflection, sym_form)
from spectra.mc_matrix import QuiverRep, arrow_copies, moment_map
from spectra.notation import Block, Node, PointType, SpectralType, normalize, parse_spectral_type
from spectra.ratmat import RatMatrix
from spectra.spectral_calc import all_jtuples, lift_lattice, lift_pairing, quiver_of, rigidity_index, xi_project
from spectra.weyl_engine import mc_reflect_dim, mc_reflect_param

N = 200
PROPS = settings(max_examples=N)


# ------------------------------------------------------------------ strategies

@hs.composite
def compositions(draw, n, max_parts):
    cuts = draw(hs.lists(hs.integers(1, n - 1), unique=True, max_size=min(max_parts, n) - 1)) if n > 1 else []
    cuts = [0] + sorted(cuts) + [n]
    return [b - a for a, b in zip(cuts, cuts[1:])]


@hs.composite
def trees(draw, n, depth):
    if depth == 0:
        return Block(tuple(draw(compositions(n, 3))))
    return Node(tuple(draw(trees(part, depth - 1)) for part in draw(compositions(n, 3))))


@hs.composite
def spectral_types(draw, max_rank=4, max_points=4, max_depth=2):
    n = draw(hs.integers(1, max_rank))
    k = draw(hs.integers(2, max_points))
    pts = tuple(PointType(draw(trees(n, draw(hs.integers(0, max_depth))))) for _ in range(k))
    return normalize(SpectralType(pts))


rationals = hs.fractions(min_value=-20, max_value=20, max_denominator=12)


def vectors(n, lo=-4, hi=6):
    return hs.lists(hs.integers(lo, hi), min_size=n, max_size=n).map(tuple)


def params(n):
    return hs.lists(rationals, min_size=n, max_size=n).map(tuple)


@hs.composite
def type_with_data(draw, **kw):
    st = draw(spectral_types(**kw))
    q, alpha = quiver_of(st)
    ll = lift_lattice(st)
    gamma = draw(vectors(ll.n, -3, 3))
    delta = draw(vectors(ll.n, -3, 3))
    lam = draw(params(q.n))
    t = draw(hs.sampled_from(all_jtuples(st)))
    return st, q, ll, gamma, delta, lam, t


# ------------------------------------------------------------------ reflections

@PROPS
@given(type_with_data(), hs.data())
def test_simple_reflection_involution_and_form_invariance(data, more):
    st, q, ll, gamma, delta, lam, t = data
    a = more.draw(hs.integers(0, q.n - 1))
    u = more.draw(vectors(q.n))
    v = more.draw(vectors(q.n))
    su, sv = simple_reflection(q, a, u), simple_reflection(q, a, v)
    assert simple_reflection(q, a, su) == u
    assert lambda_reflection(q, a, lambda_reflection(q, a, lam)) == lam
    assert sym_form(q, su, sv) == sym_form(q, u, v)
    assert dot(lambda_reflection(q, a, lam), su) == dot(lam, u)


@PROPS
@given(type_with_data())
def test_mc_reflection_involution_duality_invariance(data):
    st, q, ll, gamma, delta, lam, t = data
    # images of the lift lattice are exactly the balanced vectors
    u, v = xi_project(ll, gamma), xi_project(ll, delta)
    su, sv = mc_reflect_dim(st, t, u), mc_reflect_dim(st, t, v)
    assert mc_reflect_dim(st, t, su) == u
    assert mc_reflect_param(st, t, mc_reflect_param(st, t, lam)) == lam
    assert dot(mc_reflect_param(st, t, lam), v) == dot(lam, sv)
    assert sym_form(q, su, sv) == sym_form(q, u, v)


# ------------------------------------------------------------------ the projection Xi

def _lift_reflect(ll, g_idx, gamma):
    e = [0] * ll.n
    e[g_idx] = 1
    c = lift_pairing(ll, gamma, e)
    return tuple(x - c * y for x, y in zip(gamma, e))


@PROPS
@given(type_with_data(), hs.data())
def test_xi_isometry_and_equivariance(data, more):
    st, q, ll, gamma, delta, lam, t = data
    assert lift_pairing(ll, gamma, delta) == sym_form(q, xi_project(ll, gamma), xi_project(ll, delta))
    g_idx = more.draw(hs.integers(0, ll.n - 1))
    g = ll.generators[g_idx]
    image = xi_project(ll, _lift_reflect(ll, g_idx, gamma))
    u = xi_project(ll, gamma)
    if isinstance(g, tuple):
        assert image == mc_reflect_dim(st, g, u)
    else:
        assert image == simple_reflection(q, q.index(g), u)


# ------------------------------------------------------------------ moment map

@hs.composite
def reps(draw):
    st = draw(spectral_types(max_rank=3, max_points=3, max_depth=1))
    q, _ = quiver_of(st)
    dims = tuple(draw(hs.lists(hs.integers(1, 2), min_size=q.n, max_size=q.n)))
    small = hs.integers(-3, 3)

    def mat(r, c):
        return RatMatrix([[draw(small) for _ in range(c)] for _ in range(r)], ncols=c)

    maps = tuple((s, t, mat(dims[t], dims[s]), mat(dims[s], dims[t])) for s, t in arrow_copies(q))
    gs = []
    for d in dims:
        while True:
            g = mat(d, d)
            if g.det() != 0:
                break
            g = g + RatMatrix.identity(d)
            if g.det() != 0:
                break
        gs.append(g)
    return q, QuiverRep(dims, maps), gs


@PROPS
@given(reps())
def test_moment_map_equivariance(data):
    q, rep, g = data
    mu = moment_map(q, rep)
    mug = moment_map(q, rep.act(g))
    for m, mg, ga in zip(mu, mug, g):
        assert mg == ga @ m @ ga.inverse()
    assert sum((m.trace() for m in mu), Fraction(0)) == 0


# ------------------------------------------------------------------ index of rigidity, notation

@PROPS
@given(spectral_types(max_rank=5))
def test_rigidity_matches_closed_formula(st):
    assert rigidity_index(st) == idx_formula(st)
    q, alpha = quiver_of(st)
    assert rigidity_index(st) == sym_form(q, alpha, alpha)


@PROPS
@given(spectral_types(max_rank=5, max_depth=3))
def test_notation_round_trip(st):
    canon = st.canonical()
    again = parse_spectral_type(str(canon))
    assert again == canon
    assert again.canonical() == canon
