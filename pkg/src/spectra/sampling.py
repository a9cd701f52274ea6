"""Seeded random generation of irreducible tuples with known formal data."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .mc_matrix import (HTLTuple, McError, _gauge, formal_reduction, is_irreducible)
from .ratmat import RatMatrix
from .spectral_calc import BlockData, HTLSymbolData, PointData


def rand_q(rng: random.Random, num: int = 20) -> Fraction:
    """|numerator| <= num, denominator in {1, 2, 3}."""
    return Fraction(rng.randint(-num, num), rng.choice((1, 2, 3)))


def rand_matrix(rng: random.Random, n: int, num: int = 5) -> RatMatrix:
    return RatMatrix([[rand_q(rng, num) for _ in range(n)] for _ in range(n)], ncols=n)


def rand_invertible(rng: random.Random, n: int, num: int = 5) -> RatMatrix:
    while True:
        g = rand_matrix(rng, n, num)
        if g.det() != 0:
            return g


def _distinct(rng: random.Random, count: int, num: int = 20) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < count:
        x = rand_q(rng, num)
        if x not in out:
            out.append(x)
    return out


def _composition(rng: random.Random, n: int) -> list[int]:
    parts, left = [], n
    while left:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return parts


def _gauge_principal(rng: random.Random, coeffs: list[RatMatrix]) -> list[RatMatrix]:
    """Principal part of X(z) B X(z)^{-1} for a random X = X_0 (I + Y_1 z)(I + Y_2 z^2)...."""
    n = coeffs[0].nrows
    g = rand_invertible(rng, n)
    gi = g.inverse()
    out = [g @ M @ gi for M in coeffs]
    for s in range(1, len(coeffs)):
        out = _gauge(out, rand_matrix(rng, n, 3), s)
    return out


def _random_point(rng: random.Random, n: int, k: int) -> PointData:
    """Random formal data at a point with n >= 2 of pole order k (>= 2 blocks when k > 1)."""
    if k == 1:
        sizes = [n]
    elif n < 2:
        raise ValueError("an irregular point needs rank >= 2 (at least two blocks)")
    else:
        while True:
            sizes = _composition(rng, n)
            if len(sizes) >= 2:
                break
    polys: list[tuple[Fraction, ...]] = []
    while len(polys) < len(sizes):
        p = tuple(rand_q(rng, 6) for _ in range(k - 1))
        if p not in polys:
            polys.append(p)
    polys.sort()
    blocks = []
    for size, poly in zip(sizes, polys):
        mult = _composition(rng, size)
        blocks.append(BlockData(poly, tuple(_distinct(rng, len(mult))), tuple(mult)))
    return PointData(k, tuple(blocks))


def _normal_form(pd: PointData, n: int) -> list[RatMatrix]:
    k = pd.pole_order
    diags: list[list[Fraction]] = [[] for _ in range(k)]
    for b in pd.blocks:
        diags[0].extend(x for x, m in zip(b.xi, b.mult) for _ in range(m))
        for j in range(2, k + 1):
            diags[j - 1].extend([b.poly[k - j]] * b.size)
    return [RatMatrix.diag(d) for d in diags]


@dataclass(frozen=True)
class Sample:
    tuple: HTLTuple
    data: HTLSymbolData


def _point0(rng: random.Random, n: int, k0: int, residue: RatMatrix) -> tuple[list[RatMatrix], PointData]:
    """Point 0 with 1x1 blocks: separated semisimple leading terms, given residue."""
    if k0 == 3 and n >= 2 and rng.random() < 0.5:
        # nested tree: repeated leading eigenvalue, separated at the next order
        lead = _distinct(rng, n - 1, 6)
        lead = sorted(lead + [lead[0]])
    else:
        lead = sorted(_distinct(rng, n, 6))
    coeffs = [residue]
    for order in range(2, k0 + 1):
        if order == k0:
            coeffs.append(RatMatrix.diag(lead))
            continue
        M = [[rand_q(rng, 4) for _ in range(n)] for _ in range(n)]
        for r in range(n):
            for c in range(n):
                if r != c and lead[r] == lead[c]:
                    M[r][c] = Fraction(0)
        # keep equal-lead entries separated on the diagonal
        seen: dict = {}
        for r in range(n):
            key = (lead[r], M[r][r])
            while key in seen:
                M[r][r] += 1
                key = (lead[r], M[r][r])
            seen[key] = r
        coeffs.append(RatMatrix(M, ncols=n))
    fbs = formal_reduction(coeffs)
    blocks = tuple(BlockData(fb.poly, (fb.residue.rows[0][0],), (1,)) for fb in fbs)
    return coeffs, PointData(k0, blocks)


def random_irreducible_sample(rng: random.Random, max_rank: int = 4, max_points: int = 3,
                              max_pole: int = 3, attempts: int = 200) -> Sample:
    for _ in range(attempts):
        n = rng.randint(2, max_rank)
        npts = rng.randint(2, max_points)
        pts_coeffs: list[list[RatMatrix]] = []
        pds: list[PointData] = []
        for _i in range(1, npts):
            k = rng.choice([1, 1, 2] + ([3] if max_pole >= 3 else []))
            pd = _random_point(rng, n, k)
            pds.append(pd)
            pts_coeffs.append(_gauge_principal(rng, _normal_form(pd, n)))
        res = RatMatrix.zeros(n, n)
        for c in pts_coeffs:
            res = res - c[0]
        k0 = rng.choice([2, 3] if max_pole >= 3 else [2])
        try:
            c0, pd0 = _point0(rng, n, k0, res)
        except McError:
            continue
        A = HTLTuple(n, (tuple(c0),) + tuple(tuple(c) for c in pts_coeffs))
        if not is_irreducible(A):
            continue
        return Sample(A, HTLSymbolData((pd0,) + tuple(pds)))
    raise RuntimeError("no irreducible sample found")


@dataclass(frozen=True)
class McInstance:
    tuple: HTLTuple
    data: HTLSymbolData
    choice: tuple[int, ...]


def random_mc_instance(rng: random.Random, max_rank: int = 4, max_points: int = 3,
                       max_pole: int = 3, attempts: int = 500) -> McInstance:
    """Irreducible sample plus a block tuple with xi_t != 0 whose mc output
    has rank between 1 and max_rank."""
    import itertools
    from .mc_matrix import add_choice, canonical_datum, choice_of
    for _ in range(attempts):
        s = random_irreducible_sample(rng, max_rank, max_points, max_pole)
        A, h = s.tuple, s.data
        good = []
        for t in itertools.product(*(range(1, len(p.blocks) + 1) for p in h.points)):
            ch = choice_of(h, t)
            if ch.xi == 0:
                continue
            n2 = canonical_datum(add_choice(A, ch)).dim_W - A.rank
            if 1 <= n2 <= max_rank:
                good.append(t)
        if good:
            return McInstance(A, h, rng.choice(good))
    raise RuntimeError("no admissible instance found")
