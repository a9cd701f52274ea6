"""Exhaustive enumeration of fundamental spectral types at a fixed rigidity
index, canonical forms of shapes, W^inv labels and fixture comparison.

Pruning.  For a point with blocks j (sizes n_j, first chain multiplicity
m_j, divergence depths d) put c(j) = n_j + m_j - sum_{j'} d(j, j') n_{j'},
C = max_j c(j), D = 2n - C and s = sum_j n_j (C - c(j)) + sum_j (m_j n_j - |chain_j|^2).
Then s >= 0, the maximal pairing of alpha with the vectors eps_t equals
2n - sum_i D_i, and

    sum_i s_i + n (sum_i D_i - 2n) = -idx.

So alpha pairs non-positively with every eps_t iff sum_i D_i >= 2n, and then
every point has s <= -idx.  Scalar points (D = s = 0) never matter and are
left out.  Chains must be partitions (non-positive pairing with the legs).
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .coxeter import coxeter_label, normalize_label
from .intlat import affine_normal_form
from .lattice_core import Leg, p_val, support_connected, sym_form, tits_q
from .notation import Block, Node, PointType, SpectralType, is_reduced, normalize, parse_spectral_type
from .spectral_calc import Shape, lift_lattice, quiver_of, shape_of
from .weyl_engine import epsilon_of, is_in_L_fundamental


@dataclass(frozen=True)
class SearchBounds:
    max_points: int = 4
    max_pole: int = 5
    max_rank: int = 14
    max_blocks: int = 5
    max_chain: int = 8

    def __post_init__(self):
        for k, v in asdict(self).items():
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"bound {k} must be a positive integer")

    def widened(self, rank: int = 4, points: int = 1, pole: int = 0, blocks: int = 0,
                chain: int = 0) -> "SearchBounds":
        return SearchBounds(self.max_points + points, self.max_pole + pole, self.max_rank + rank,
                            self.max_blocks + blocks, self.max_chain + chain)

    @classmethod
    def from_json(cls, d: dict) -> "SearchBounds":
        return cls(**{k: int(v) for k, v in d.items()})


# ------------------------------------------------------------------ point types

def _partitions(n: int, max_part: int | None = None) -> Iterable[tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _chains(size: int, slack: int, max_len: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of size with defect m_1*size - sum m^2 <= slack."""
    out = []
    for lam in _partitions(size):
        if len(lam) <= max_len and lam[0] * size - sum(m * m for m in lam) <= slack:
            out.append(lam)
    return tuple(out)


@dataclass(frozen=True)
class PointInfo:
    point: PointType
    D: int
    s: int

    @property
    def key(self) -> str:
        return str(self.point)


def _tree_key(t) -> tuple:
    if isinstance(t, int):
        return (0, t)
    return (1, tuple(_tree_key(c) for c in t))


@lru_cache(maxsize=None)
def _size_trees(depth: int, total: int, max_leaves: int) -> tuple[tuple, ...]:
    """Canonical trees of the given leaf depth with integer leaves summing to total:
    (tree, leaf count) pairs; a tree is an int (leaf) or a tuple of children."""
    if total < 1 or max_leaves < 1:
        return ()
    if depth == 0:
        return ((total, 1),)
    subs = []
    for s in range(1, total + 1):
        for t, lc in _size_trees(depth - 1, s, max_leaves):
            subs.append((s, _tree_key(t), t, lc))
    # any fixed total order gives each multiset once; size-descending lets us skip ahead
    subs.sort(key=lambda x: (x[0], x[1]), reverse=True)
    first_le = {}
    for i in range(len(subs) - 1, -1, -1):
        first_le[subs[i][0]] = i
    starts = [len(subs)] * (total + 1)
    nxt = len(subs)
    for size in range(1, total + 1):
        if size in first_le:
            nxt = first_le[size]
        starts[size] = nxt
    out = []

    def rec(start, left, leaves, acc):
        if left == 0:
            out.append((tuple(acc), leaves))
            return
        for idx in range(max(start, starts[left]), len(subs)):
            s, _, t, lc = subs[idx]
            if leaves + lc <= max_leaves:
                acc.append(t)
                rec(idx, left - s, leaves + lc, acc)
                acc.pop()

    rec(0, total, 0, [])
    return tuple(out)


def _leaves_with_paths(t, path=()):
    if isinstance(t, int):
        return [(path, t)]
    out = []
    for c, ch in enumerate(t):
        out.extend(_leaves_with_paths(ch, path + (c,)))
    return out


def _attach(t, chains, it=None):
    if it is None:
        it = iter(chains)
    if isinstance(t, int):
        return Block(next(it))
    return Node(tuple(_attach(c, chains, it) for c in t))


def point_types(n: int, slack: int, b: SearchBounds) -> list[PointInfo]:
    """All non-scalar normalized point types of rank n with s <= slack."""
    found: dict[str, PointInfo] = {}
    for lam in _chains(n, slack, b.max_chain):
        if len(lam) < 2:
            continue
        pt = PointType(Block(lam))
        found[str(pt)] = PointInfo(pt, n - lam[0], lam[0] * n - sum(m * m for m in lam))
    for depth in range(1, b.max_pole):
        k = depth + 1
        for tree, _ in _size_trees(depth, n, b.max_blocks):
            if len(tree) < 2:
                continue  # a single-child root is a removable scalar part
            leaves = _leaves_with_paths(tree)
            sizes = [s for _, s in leaves]
            m = len(leaves)
            dm = [[0] * m for _ in range(m)]
            for a in range(m):
                for c in range(m):
                    if a != c:
                        pa, pc = leaves[a][0], leaves[c][0]
                        l = 0
                        while pa[l] == pc[l]:
                            l += 1
                        dm[a][c] = (k - 2) - l
            pen = [sum(dm[a][c] * sizes[c] for c in range(m)) for a in range(m)]
            opts = [_chains(s, slack, b.max_chain) for s in sizes]
            if any(not o for o in opts):
                continue
            # choose first parts, prune with minimal defects, then expand chains
            firsts = [sorted({lam[0] for lam in o}) for o in opts]
            mindef = [{f: min(lam[0] * s - sum(x * x for x in lam) for lam in o if lam[0] == f)
                       for f in fs} for o, fs, s in zip(opts, firsts, sizes)]

            prefix = [sum(sizes[:a]) for a in range(m + 1)]

            def rec_first(a, chosen, cs, C, base, defs):
                # base = sum over chosen leaves of n_j (C - c_j): only grows as C grows
                if base + defs > slack:
                    return
                if a == m:
                    expand(chosen, base, 2 * n - C)
                    return
                for f in firsts[a]:
                    c = sizes[a] + f - pen[a]
                    if C is None:
                        nb, nC = 0, c
                    elif c > C:
                        nb = base + (c - C) * prefix[a]
                        nC = c
                    else:
                        nb = base + sizes[a] * (C - c)
                        nC = C
                    chosen.append(f)
                    cs.append(c)
                    rec_first(a + 1, chosen, cs, nC, nb, defs + mindef[a][f])
                    cs.pop()
                    chosen.pop()

            def expand(chosen, base, D):
                per = [[lam for lam in opts[j] if lam[0] == chosen[j]] for j in range(m)]

                def rec(j, acc, s):
                    if s > slack:
                        return
                    if j == m:
                        pt = PointType(_attach(tree, acc)).canonical()
                        key = str(pt)
                        if key not in found:
                            found[key] = PointInfo(pt, D, s)
                        return
                    for lam in per[j]:
                        acc.append(lam)
                        rec(j + 1, acc, s + lam[0] * sizes[j] - sum(x * x for x in lam))
                        acc.pop()

                rec(0, [], base)

            rec_first(0, [], [], None, 0, 0)
    return sorted(found.values(), key=lambda p: (p.D, p.s, p.key))


# ------------------------------------------------------------------ enumeration

@dataclass
class EnumerationResult:
    idx: int
    bounds: SearchBounds
    groups: dict = field(default_factory=dict)   # canonical key -> {"shape", "spectral_types"}

    def keys(self) -> set:
        return set(self.groups)

    def spectral_types(self) -> list[str]:
        return sorted(s for g in self.groups.values() for s in g["spectral_types"])

    def to_json(self) -> dict:
        out = []
        for key in sorted(self.groups, key=repr):
            g = self.groups[key]
            out.append({"shape": g["shape"].to_json(), "spectral_types": sorted(g["spectral_types"]),
                        "winv": g["winv"]})
        return {"idx": self.idx, "bounds": asdict(self.bounds), "shapes": out}


def is_effective(st: SpectralType) -> bool:
    """alpha indivisible, or alpha = r beta (r >= 2) only with p(alpha) > r p(beta)."""
    q, a = quiver_of(st)
    g = 0
    for x in a:
        g = math.gcd(g, x)
    for r in range(2, g + 1):
        if g % r == 0:
            beta = tuple(x // r for x in a)
            if p_val(q, a) <= r * p_val(q, beta):
                return False
    return True


def is_fundamental_type(st: SpectralType) -> bool:
    st = normalize(st)
    if not is_reduced(st):
        return False
    q, a = quiver_of(st)
    return is_in_L_fundamental(st, a) and is_effective(st)


def enumerate_fundamental(idx: int, b: SearchBounds = SearchBounds()) -> EnumerationResult:
    if idx % 2 or idx > 0:
        raise ValueError("idx must be even and non-positive")
    slack = -idx
    res = EnumerationResult(idx, b)
    for n in range(1, b.max_rank + 1):
        types = point_types(n, slack, b)
        limit = 2 * n + slack // n  # sum of D never exceeds this

        def rec(start, chosen, sD, ss):
            if chosen and sD >= 2 * n and ss + n * (sD - 2 * n) == slack:
                _emit(res, [types[c].point for c in chosen])
            if len(chosen) == b.max_points:
                return
            for c in range(start, len(types)):
                t = types[c]
                if sD + t.D > limit:
                    break
                if ss + t.s + n * max(0, sD + t.D - 2 * n) > slack:
                    continue
                chosen.append(c)
                rec(c, chosen, sD + t.D, ss + t.s)
                chosen.pop()

        rec(0, [], 0, 0)
    return res


def _emit(res: EnumerationResult, points: list[PointType]) -> None:
    st = SpectralType(tuple(points)).canonical()
    q, a = quiver_of(st)
    if not support_connected(q, a):
        return
    if 2 * tits_q(q, a) != res.idx:
        raise AssertionError(f"index bookkeeping failed for {st}")
    if not is_fundamental_type(st):
        return
    shape = shape_of(st)
    key = canonical_shape(shape)
    g = res.groups.setdefault(key, {"shape": shape, "spectral_types": [], "winv": winv_of(st)})
    s = str(st)
    if s not in g["spectral_types"]:
        g["spectral_types"].append(s)


# ------------------------------------------------------------------ canonical shapes

class ShapeTooLarge(ValueError):
    pass


def _refine(G, colors: list[int]) -> list[int]:
    n = len(G)
    while True:
        sig = [(colors[u], tuple(sorted((colors[v], G[u][v]) for v in range(n) if v != u and G[u][v])))
               for u in range(n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_shape(s: Shape, cap: int = 14) -> tuple:
    """Labeling-independent key: minimum over individualization-refinement
    leaves of (Gram matrix, HNF of the parameter lattice, reduced base)."""
    n = s.n
    if n > cap:
        raise ShapeTooLarge(f"shape with {n} nodes exceeds the cap {cap}")
    G = s.gram
    init = []
    for u in range(n):
        free = any(p[u] for p in s.params)
        init.append((1, 0) if free else (0, s.base[u]))
    order = {c: r for r, c in enumerate(sorted(set(init)))}
    colors = _refine(G, [order[c] for c in init])
    best = [None]

    def leaf_key(perm):
        Gp = tuple(tuple(G[perm[a]][perm[b]] for b in range(n)) for a in range(n))
        kernel = [tuple(p[perm[a]] for a in range(n)) for p in s.params]
        base = tuple(s.base[perm[a]] for a in range(n))
        H, rb = affine_normal_form(base, kernel)
        return (n, Gp, H, rb)

    def search(cols):
        if len(set(cols)) == n:
            perm = sorted(range(n), key=lambda u: cols[u])
            k = leaf_key(perm)
            if best[0] is None or k < best[0]:
                best[0] = k
            return
        counts = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c in counts if counts[c] > 1), key=lambda c: (counts[c], c))
        for u in range(n):
            if cols[u] == target:
                # individualize u: give it a fresh color just below its class
                new = [2 * c + (0 if (v == u) else 1) if c == target else 2 * c for v, c in enumerate(cols)]
                search(_refine(G, new))

    search(colors)
    return best[0]


# ------------------------------------------------------------------ W^inv

def winv_of(st: SpectralType | str) -> str:
    """Coxeter type of the reflections in (J u legs)_alpha fixing alpha."""
    if isinstance(st, str):
        st = parse_spectral_type(st)
    st = normalize(st)
    q, a = quiver_of(st)
    ll = lift_lattice(st, a)
    fixed = []
    for idx_g, g in enumerate(ll.generators):
        vec = q.unit(q.index(g)) if isinstance(g, Leg) else epsilon_of(st, g)
        if sym_form(q, a, vec) == 0:
            fixed.append(idx_g)
    G = [[ll.gram[u][v] for v in fixed] for u in fixed]
    return coxeter_label(G)


# ------------------------------------------------------------------ fixtures

@dataclass(frozen=True)
class FixtureEntry:
    label: str
    shape: Shape
    spectral_types: tuple[str, ...]
    winv: str | None


@dataclass(frozen=True)
class FixtureTable:
    idx: int
    entries: tuple[FixtureEntry, ...]

    def keys(self) -> dict:
        return {canonical_shape(e.shape): e for e in self.entries}


def load_fixtures(path: str | None = None) -> dict[int, FixtureTable]:
    if path is None:
        text = resources.files("spectra").joinpath("data/theorems.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    raw = json.loads(text)
    out = {}
    for tab in raw["tables"]:
        entries = tuple(FixtureEntry(e["label"], Shape.from_json(e["shape"]), tuple(e["spectral_types"]),
                                     e.get("winv")) for e in tab["entries"])
        out[int(tab["idx"])] = FixtureTable(int(tab["idx"]), entries)
    return out


@dataclass
class DiffReport:
    matched: list[str]
    missing: list[str]
    extra: list[list[str]]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def lines(self) -> list[str]:
        out = [f"missing from enumeration: {m}" for m in self.missing]
        out += [f"not in fixture: {', '.join(sts)}" for sts in self.extra]
        return out

    def to_json(self) -> dict:
        return {"ok": self.ok, "matched": self.matched, "missing": self.missing, "extra": self.extra}


def compare_with_fixture(result: EnumerationResult, table: FixtureTable) -> DiffReport:
    fk = table.keys()
    rk = result.groups
    matched = sorted(fk[k].label for k in fk if k in rk)
    missing = sorted(fk[k].label for k in fk if k not in rk)
    extra = [sorted(rk[k]["spectral_types"]) for k in rk if k not in fk]
    return DiffReport(matched, missing, sorted(extra))


def winv_matches(entry: FixtureEntry) -> bool:
    if entry.winv is None:
        return True
    return all(normalize_label(winv_of(s)) == normalize_label(entry.winv) for s in entry.spectral_types)
