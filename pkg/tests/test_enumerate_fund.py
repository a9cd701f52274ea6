import json
import random
from fractions import Fraction

import pytest

from oracles import idx_formula
from spectra.enumerate_fund import (SearchBounds, ShapeTooLarge, canonical_shape, compare_with_fixture,
                                    enumerate_fundamental, is_fundamental_type, load_fixtures, winv_matches,
                                    winv_of)
from spectra.lattice_core import dot
from spectra.notation import is_reduced, normalize, parse_spectral_type
from spectra.spectral_calc import Shape, quiver_of, rigidity_index, shape_of
from spectra.weyl_engine import Mode, is_in_L_fundamental, sigma_membership


@pytest.fixture(scope="module")
def fixtures():
    return load_fixtures()


@pytest.fixture(scope="module")
def enum0():
    return enumerate_fundamental(0)


@pytest.fixture(scope="module")
def enum2():
    return enumerate_fundamental(-2)


def test_fixture_tables_are_consistent(fixtures):
    assert sorted(fixtures) == [-2, 0]
    assert len(fixtures[0].entries) == 8
    assert len(fixtures[-2].entries) == 31
    for idx, table in fixtures.items():
        assert len(table.keys()) == len(table.entries)  # pairwise distinct shapes
        for e in table.entries:
            for s in e.spectral_types:
                st = parse_spectral_type(s)
                assert rigidity_index(st) == idx, s
                assert canonical_shape(shape_of(st)) == canonical_shape(e.shape), (e.label, s)


def test_fixture_winv_labels(fixtures):
    for table in fixtures.values():
        for e in table.entries:
            assert winv_matches(e), e.label


def test_idx0_matches_fixture(enum0, fixtures):
    rep = compare_with_fixture(enum0, fixtures[0])
    assert rep.ok, rep.lines()
    assert len(rep.matched) == 8


def test_idx_minus2_matches_fixture(enum2, fixtures):
    rep = compare_with_fixture(enum2, fixtures[-2])
    assert rep.ok, rep.lines()
    assert len(rep.matched) == 31


def test_small_bounds_strict_subset(enum0, fixtures):
    small = enumerate_fundamental(0, SearchBounds(max_rank=2))
    assert small.keys() < enum0.keys()
    rep = compare_with_fixture(small, fixtures[0])
    assert not rep.ok and rep.missing and not rep.extra


def test_monotone_in_bounds():
    a = enumerate_fundamental(-2, SearchBounds(max_rank=3, max_points=3))
    b = enumerate_fundamental(-2, SearchBounds(max_rank=4, max_points=3))
    assert a.keys() <= b.keys()
    assert set(a.spectral_types()) <= set(b.spectral_types())


def test_emitted_types_satisfy_invariants(enum0, enum2):
    rng = random.Random(0)
    for res in (enum0, enum2):
        for s in res.spectral_types():
            st = normalize(parse_spectral_type(s))
            q, alpha = quiver_of(st)
            assert is_reduced(st) and is_in_L_fundamental(st, alpha) and is_fundamental_type(st)
            assert rigidity_index(st) == res.idx == idx_formula(st)
            # generic: wide nonzero numerators, so no accidental orthogonal sub-roots
            lam = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 10**6), rng.choice((7, 11, 13))) for _ in alpha]
            k = next(i for i, x in enumerate(alpha) if x)
            lam[k] -= dot(lam, alpha) / alpha[k]
            assert sigma_membership(st, lam, alpha, Mode.DIF).member, s


def test_odd_or_positive_idx_rejected():
    with pytest.raises(ValueError):
        enumerate_fundamental(-1)
    with pytest.raises(ValueError):
        enumerate_fundamental(2)


def test_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(max_rank=0)
    assert SearchBounds().widened() == SearchBounds(max_points=5, max_rank=18)


# ------------------------------------------------------------------ canonical shapes

def _relabel(s: Shape, perm):
    n = s.n
    inv = {p: a for a, p in enumerate(perm)}
    return Shape(tuple(s.ids[perm[a]] for a in range(n)),
                 tuple(tuple(s.gram[perm[a]][perm[b]] for b in range(n)) for a in range(n)),
                 tuple(s.base[perm[a]] for a in range(n)),
                 tuple(tuple(p[perm[a]] for a in range(n)) for p in s.params)), inv


def test_canonical_shape_relabel_invariant():
    rng = random.Random(1)
    for text in ("(1)(11),(1)(11)", "(1)(1)(1),(2)(1)", "1111,1111,211", "((11)(1))((11)(1))"):
        s = shape_of(text)
        key = canonical_shape(s)
        for _ in range(5):
            perm = list(range(s.n))
            rng.shuffle(perm)
            assert canonical_shape(_relabel(s, perm)[0]) == key


def test_canonical_shape_groups_three_types():
    keys = {canonical_shape(shape_of(t)) for t in ("((1)(1))((1)(1)(1))", "(1)(1),11,11,11", "(1)(1)(1),21,21")}
    assert len(keys) == 1


def test_canonical_shape_parameter_shift():
    s = shape_of("(1)(1),(1)(1)")
    assert s.params
    shifted = Shape(s.ids, s.gram, s.value([1]), s.params)
    assert canonical_shape(shifted) == canonical_shape(s)
    negated = Shape(s.ids, s.gram, s.base, tuple(tuple(-x for x in p) for p in s.params))
    assert canonical_shape(negated) == canonical_shape(s)


def test_canonical_shape_distinguishes():
    assert canonical_shape(shape_of("11,11,11,11")) != canonical_shape(shape_of("111,111,111"))
    s = shape_of("(1)(1),(1)(1)")
    bumped = Shape(s.ids, s.gram, tuple(x + (u == 0) for u, x in enumerate(s.base)), s.params)
    assert canonical_shape(bumped) != canonical_shape(s)


def test_canonical_shape_cap():
    s = shape_of("11111111,44,332")
    with pytest.raises(ShapeTooLarge):
        canonical_shape(s, cap=s.n - 1)


# ------------------------------------------------------------------ W^inv

def test_winv_examples():
    assert winv_of("(2)(2),(1)(111)") == "D4"
    assert winv_of("((((1))))((((1))))") == "∅"
    assert winv_of("111111,222,33") == "~E8"
    assert winv_of("11,11,11,11") == "~D4"


# ------------------------------------------------------------------ fixture comparison

def test_corrupted_fixture_gives_one_line_diff(tmp_path, enum0):
    raw = json.loads(load_fixtures.__globals__["resources"].files("spectra")
                     .joinpath("data/theorems.json").read_text())
    tab = next(t for t in raw["tables"] if t["idx"] == 0)
    victim = next(e for e in tab["entries"] if e["label"] == "triangle")
    victim["shape"]["edges"][0]["mult"] = 2  # corrupt one edge
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    rep = compare_with_fixture(enum0, load_fixtures(str(path))[0])
    assert not rep.ok
    assert rep.missing == ["triangle"]
    assert len(rep.extra) == 1 and "((1))((1))((1))" in rep.extra[0]
    assert rep.lines()[0] == "missing from enumeration: triangle"
