"""The middle-convolution Weyl group acting on (alpha, lambda), feasibility
of the additive Deligne-Simpson problem, and reduction to the fundamental set."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .lattice_core import (DimVector, Irr, Leg, ParamVector, Quiver, RootKind, classify_root,
                           dot, lambda_reflection, p_val, simple_reflection, support_connected,
                           sym_form)
from .notation import SpectralType
from .spectral_calc import all_jtuples, is_balanced, quiver_of

JTuple = tuple[int, ...]
Generator = Union[JTuple, Leg]


class Mode(Enum):
    PLAIN = "plain"
    DIF = "dif"


class StuckError(RuntimeError):
    """No admissible reflection lowers the vector."""


def _check_tuple(st: SpectralType, t: Sequence[int]) -> JTuple:
    t = tuple(t)
    if len(t) != len(st.points) or any(not 1 <= j <= pt.m for j, pt in zip(t, st.points)):
        raise ValueError(f"invalid block tuple {t} for {st}")
    return t


def epsilon_of(st: SpectralType, t: Sequence[int]) -> DimVector:
    t = _check_tuple(st, t)
    q, _ = quiver_of(st)
    v = [0] * q.n
    for i in st.irregular_indices():
        v[q.index(Irr(i, t[i]))] = 1
    return tuple(v)


def generators(st: SpectralType) -> list[Generator]:
    q, _ = quiver_of(st)
    return list(all_jtuples(st)) + [v for v in q.vertices if isinstance(v, Leg)]


def generator_vector(st: SpectralType, g: Generator) -> DimVector:
    q, _ = quiver_of(st)
    if isinstance(g, Leg):
        return q.unit(q.index(g))
    return epsilon_of(st, g)


def generator_pairing(st: SpectralType, a: Sequence[int], g: Generator) -> int:
    q, _ = quiver_of(st)
    return sym_form(q, a, generator_vector(st, g))


def lambda_at(st: SpectralType, lam: Sequence, g: Generator) -> Fraction:
    """lambda_g: lambda_i = sum over I_irr of lambda_[i, j_i], or the leg entry."""
    q, _ = quiver_of(st)
    if isinstance(g, Leg):
        return Fraction(lam[q.index(g)])
    return sum((Fraction(lam[q.index(Irr(i, g[i]))]) for i in st.irregular_indices()), Fraction(0))


def mc_reflect_dim(st: SpectralType, t: Sequence[int], a: Sequence[int]) -> DimVector:
    q, _ = quiver_of(st)
    if not is_balanced(st, a):
        raise ValueError("vector is not balanced")
    e = epsilon_of(st, t)
    c = sym_form(q, a, e)
    return tuple(x - c * y for x, y in zip(a, e))


def mc_reflect_param(st: SpectralType, t: Sequence[int], lam: Sequence) -> ParamVector:
    """Parameter update under mc for block tuple t.

    With mu = lambda_t: [0, j_0] loses 2 mu, each [i, j_i, 1] gains mu, and the
    non-chosen blocks [i, j] pick up (d_i(j, j_i) + 2) mu for i != 0 and
    d_0(j, j_0) mu for i = 0 (the residue shifts of the convolved connection).
    """
    t = _check_tuple(st, t)
    q, _ = quiver_of(st)
    mu = lambda_at(st, lam, t)
    out = [Fraction(x) for x in lam]
    for i in st.irregular_indices():
        pt = st.points[i]
        for j in range(1, pt.m + 1):
            a = q.index(Irr(i, j))
            if j == t[i]:
                if i == 0:
                    out[a] -= 2 * mu
            elif i == 0:
                out[a] += pt.d(j, t[0]) * mu
            else:
                out[a] += (pt.d(j, t[i]) + 2) * mu
    for i in range(len(st.points)):
        leg = Leg(i, t[i], 1)
        if leg in q._index:
            out[q.index(leg)] += mu
    return tuple(out)


def reflect_generator(st: SpectralType, g: Generator, a: Sequence[int], lam: Sequence) -> tuple[DimVector, ParamVector]:
    q, _ = quiver_of(st)
    if isinstance(g, Leg):
        return simple_reflection(q, g, a), lambda_reflection(q, g, lam)
    return mc_reflect_dim(st, g, a), mc_reflect_param(st, g, lam)


def is_in_L_fundamental(st: SpectralType, b: Sequence[int]) -> bool:
    q, _ = quiver_of(st)
    if any(x < 0 for x in b) or not any(b) or not is_balanced(st, b):
        return False
    if any(generator_pairing(st, b, g) > 0 for g in generators(st)):
        return False
    return support_connected(q, b)


# ------------------------------------------------------------------ Sigma_lambda

@dataclass(frozen=True)
class Verdict:
    member: bool
    failed_clause: int
    witness: tuple[DimVector, ...] = ()

    def to_json(self) -> dict:
        return {"member": self.member, "failed_clause": self.failed_clause,
                "witness": [list(w) for w in self.witness]}


def _orthogonal_box(lam: Sequence, a: Sequence[int]) -> list[tuple[int, ...]]:
    """All 0 <= b <= a (componentwise) with lam.b = 0, in lexicographic order.

    Meet in the middle: lam is scaled to integers, the coordinates are split
    where the two half-boxes have about equal size, and half-vectors are
    joined on opposite partial sums.
    """
    lam = [Fraction(x) for x in lam]
    den = math.lcm(*(x.denominator for x in lam)) if lam else 1
    c = [int(x * den) for x in lam]
    n = len(a)
    total = math.prod(x + 1 for x in a)
    h, left_size = 0, 1
    while h < n and left_size * left_size < total:
        left_size *= a[h] + 1
        h += 1

    def half(lo: int, hi: int):
        return [(sum(ci * v for ci, v in zip(c[lo:hi], b)), b)
                for b in itertools.product(*(range(x + 1) for x in a[lo:hi]))]

    right: dict[int, list[tuple[int, ...]]] = {}
    for sm, b in half(h, n):
        right.setdefault(sm, []).append(b)
    out = [bl + br for sm, bl in half(0, h) for br in right.get(-sm, ())]
    out.sort()
    return out


def sigma_membership(st: SpectralType, lam: Sequence, a: Sequence[int], mode: Mode = Mode.DIF) -> Verdict:
    q, _ = quiver_of(st)
    a = tuple(a)
    if len(a) != q.n or any(x < 0 for x in a) or not any(a):
        raise ValueError("sigma_membership expects a positive vector")
    dif = mode is Mode.DIF
    root_kind = lru_cache(maxsize=None)(lambda v: classify_root(q, v))
    if root_kind(a) is RootKind.NOT_ROOT or (dif and not is_balanced(st, a)):
        return Verdict(False, 1)
    if dot(lam, a) != 0:
        return Verdict(False, 2)
    cands = []
    for b in _orthogonal_box(lam, a):
        if b == a or not any(b):
            continue
        if dif and not is_balanced(st, b):
            continue
        if root_kind(b) is RootKind.NOT_ROOT:
            continue
        cands.append(b)
    cands.sort()
    pv = {b: p_val(q, b) for b in cands}
    target = p_val(q, a)
    NEG = None

    @lru_cache(maxsize=None)
    def best(v: tuple[int, ...], lo: int):
        """Max sum of p over decompositions of v into >=1 candidates with index >= lo."""
        if not any(v):
            return 0
        res = NEG
        for c in range(lo, len(cands)):
            b = cands[c]
            if any(x > y for x, y in zip(b, v)):
                continue
            rest = tuple(y - x for x, y in zip(b, v))
            r = best(rest, c)
            if r is not NEG:
                val = pv[b] + r
                if res is NEG or val > res:
                    res = val
        return res

    # lexicographically least violating decomposition (parts non-decreasing)
    def search(v, lo, acc, parts):
        for c in range(lo, len(cands)):
            b = cands[c]
            if any(x > y for x, y in zip(b, v)):
                continue
            rest = tuple(y - x for x, y in zip(b, v))
            if not any(rest):
                if len(parts) >= 1 and acc + pv[b] >= target:
                    return parts + [b]
                continue
            r = best(rest, c)
            if r is NEG or acc + pv[b] + r < target:
                continue
            found = search(rest, c, acc + pv[b], parts + [b])
            if found:
                return found
        return None

    w = search(a, 0, 0, [])
    if w:
        return Verdict(False, 3, tuple(w))
    return Verdict(True, 0)


# ------------------------------------------------------------------ reduction

class Terminal(Enum):
    FUNDAMENTAL = "fundamental"
    REAL_ROOT = "real_root"


@dataclass(frozen=True)
class ReductionTrace:
    word: tuple[Generator, ...]
    states: tuple[tuple[DimVector, ParamVector], ...]  # (alpha, lambda) before each step, then final
    terminal: Terminal

    @property
    def alpha(self) -> DimVector:
        return self.states[-1][0]

    @property
    def lam(self) -> ParamVector:
        return self.states[-1][1]

    def to_json(self) -> dict:
        word = []
        for g in self.word:
            if isinstance(g, Leg):
                word.append({"kind": "leg", "i": g.i, "j": g.j, "k": g.k})
            else:
                word.append({"kind": "J", "tuple": list(g)})
        return {"word": word, "terminal": self.terminal.value, "alpha": list(self.alpha),
                "lambda": [f"{x.numerator}/{x.denominator}" for x in self.lam]}


def _rank(st: SpectralType, a: Sequence[int]) -> int:
    q, _ = quiver_of(st)
    return sum(a[q.index(Irr(0, j))] for j in range(1, st.points[0].m + 1))


def reduce_to_fundamental(st: SpectralType, lam: Sequence, a: Sequence[int], max_steps: int = 10_000) -> ReductionTrace:
    gens = generators(st)
    a = tuple(a)
    lam = tuple(Fraction(x) for x in lam)
    word: list[Generator] = []
    states = [(a, lam)]
    eps = {epsilon_of(st, t) for t in all_jtuples(st)}
    for _ in range(max_steps):
        if any(x < 0 for x in a):
            raise StuckError(f"vector left the positive cone: {a}")
        if a in eps:
            return ReductionTrace(tuple(word), tuple(states), Terminal.REAL_ROOT)
        if is_in_L_fundamental(st, a):
            return ReductionTrace(tuple(word), tuple(states), Terminal.FUNDAMENTAL)
        best, best_val, blocked = None, 0, []
        for g in gens:
            c = generator_pairing(st, a, g)
            if c <= 0:
                continue
            if lambda_at(st, lam, g) == 0:
                blocked.append(g)
                continue
            if not isinstance(g, Leg) and _rank(st, mc_reflect_dim(st, g, a)) <= 0:
                # would leave the cone of positive-rank vectors (e.g. land on a leg root)
                continue
            if c > best_val:
                best, best_val = g, c
        if best is None:
            raise StuckError(f"no admissible reflection at alpha={a}; "
                             f"positive pairings blocked by lambda_g = 0 at {blocked}")
        a, lam = reflect_generator(st, best, a, lam)
        word.append(best)
        states.append((a, lam))
    raise StuckError("step limit exceeded")


# ------------------------------------------------------------------ fractionality

def _block_leg_deltas(st: SpectralType, q: Quiver, lam: ParamVector, i: int, j: int,
                      cap: int) -> set[tuple[Fraction, ...]]:
    """Distinct changes of the Irr-vertex entries reachable by the legs of block (i, j)."""
    legs = [q.index(Leg(i, j, k)) for k in range(1, st.points[i].blocks[j - 1].e)]
    irr_idx = [a for a, v in enumerate(q.vertices) if isinstance(v, Irr)]
    if not legs:
        return {tuple(Fraction(0) for _ in irr_idx)}
    start = tuple(lam)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for a in legs:
                r = lambda_reflection(q, a, s)
                if r not in seen:
                    seen.add(r)
                    if len(seen) > cap:
                        raise RuntimeError("leg-reflection orbit exceeds the iteration cap")
                    nxt.append(r)
        frontier = nxt
    return {tuple(s[a] - start[a] for a in irr_idx) for s in seen}


def leg_orbit_tuple_values(st: SpectralType, lam: Sequence, cap: int = 10**6) -> set[Fraction]:
    """All values lambda'_t over block tuples t and lambda' in the leg-reflection orbit.

    Leg reflections of different blocks commute and touch disjoint legs, so
    the orbit is the product of the per-block orbits.
    """
    q, _ = quiver_of(st)
    lam = tuple(Fraction(x) for x in lam)
    irr_idx = [a for a, v in enumerate(q.vertices) if isinstance(v, Irr)]
    pos = {q.vertices[a]: n for n, a in enumerate(irr_idx)}
    per_block = []
    for i, pt in enumerate(st.points):
        for j in range(1, pt.m + 1):
            per_block.append(sorted(_block_leg_deltas(st, q, lam, i, j, cap)))
    base = [lam[a] for a in irr_idx]
    values: set[Fraction] = set()
    irr = st.irregular_indices()
    tuples = all_jtuples(st)
    for combo in itertools.product(*per_block):
        cur = list(base)
        for delta in combo:
            for n, d in enumerate(delta):
                if d:
                    cur[n] += d
        for t in tuples:
            values.add(sum((cur[pos[Irr(i, t[i])]] for i in irr), Fraction(0)))
    return values


def is_fractional(st: SpectralType, lam: Sequence) -> bool:
    return all(v.denominator != 1 for v in leg_orbit_tuple_values(st, lam))


def has_fractional_reduction(st: SpectralType, lam: Sequence, a: Sequence[int]) -> bool:
    tr = reduce_to_fundamental(st, lam, a)
    return all(is_fractional(st, l) for _, l in tr.states[1:])


def transform_spectral_data(st: SpectralType, t: Sequence[int], lam: Sequence, a: Sequence[int]) -> tuple[ParamVector, DimVector]:
    t = _check_tuple(st, t)
    if lambda_at(st, lam, t) == 0:
        raise ValueError("lambda_t = 0: the reflection is undefined on moduli")
    if not is_fractional(st, lam):
        raise ValueError("lambda is not fractional")
    return mc_reflect_param(st, t, lam), mc_reflect_dim(st, t, a)
