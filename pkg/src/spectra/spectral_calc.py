"""From spectral types to quivers, dimension/parameter vectors, the lift
lattice with its projection onto the balanced lattice, and shapes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .intlat import solve_integer
from .lattice_core import DimVector, Irr, Leg, ParamVector, Quiver, tits_q
from .notation import (Block, Node, PointType, SpectralType, SpectralTypeError, normalize,
                       parse_spectral_type)
from .rational import fmt, to_fraction

# ------------------------------------------------------------------ quiver


def _check_normalized(st: SpectralType) -> None:
    for i, pt in enumerate(st.points):
        if pt.m == 1 and pt.pole_order > 1:
            raise SpectralTypeError(
                f"point {i} has a single block with pole order {pt.pole_order}; normalize first")


@lru_cache(maxsize=4096)
def _quiver_cached(st: SpectralType) -> tuple[Quiver, DimVector]:
    _check_normalized(st)
    irr = st.irregular_indices()
    reg = st.regular_indices()
    verts: list = []
    alpha: list[int] = []
    for i in irr:
        for j, b in enumerate(st.points[i].blocks, 1):
            verts.append(Irr(i, j))
            alpha.append(b.size)
    for i, pt in enumerate(st.points):
        for j, b in enumerate(pt.blocks, 1):
            rest = b.size
            for k in range(1, b.e):
                rest -= b.chain[k - 1]
                verts.append(Leg(i, j, k))
                alpha.append(rest)
    idx = {v: a for a, v in enumerate(verts)}
    arrows = []
    p0 = st.points[0]
    for i in irr:
        if i == 0:
            continue
        for j in range(1, p0.m + 1):
            for jp in range(1, st.points[i].m + 1):
                arrows.append((idx[Irr(0, j)], idx[Irr(i, jp)], 1))
    for i in irr:
        pt = st.points[i]
        for j in range(1, pt.m + 1):
            for jp in range(j + 1, pt.m + 1):
                d = pt.d(j, jp)
                if d:
                    arrows.append((idx[Irr(i, j)], idx[Irr(i, jp)], d))
    for i, pt in enumerate(st.points):
        for j, b in enumerate(pt.blocks, 1):
            for k in range(2, b.e):
                arrows.append((idx[Leg(i, j, k)], idx[Leg(i, j, k - 1)], 1))
            if b.e > 1:
                if i in irr:
                    arrows.append((idx[Leg(i, j, 1)], idx[Irr(i, j)], 1))
                else:
                    for j0 in range(1, p0.m + 1):
                        arrows.append((idx[Leg(i, 1, 1)], idx[Irr(0, j0)], 1))
    return Quiver(tuple(verts), tuple(arrows)), tuple(alpha)


def quiver_of(st: SpectralType | str) -> tuple[Quiver, DimVector]:
    """Quiver and dimension vector of a (normalized) spectral type, points in given order."""
    if isinstance(st, str):
        st = parse_spectral_type(st)
    return _quiver_cached(st)


def rigidity_index(st: SpectralType | str) -> int:
    if isinstance(st, str):
        st = parse_spectral_type(st)
    q, a = quiver_of(normalize(st))
    return 2 * tits_q(q, a)


def is_balanced(st: SpectralType, beta: Sequence[int]) -> bool:
    q, _ = quiver_of(st)
    tot0 = sum(beta[q.index(Irr(0, j))] for j in range(1, st.points[0].m + 1))
    for i in st.irregular_indices()[1:]:
        if sum(beta[q.index(Irr(i, j))] for j in range(1, st.points[i].m + 1)) != tot0:
            return False
    return True


# ------------------------------------------------------------------ HTL symbol data

@dataclass(frozen=True)
class BlockData:
    """One HTL block: polynomial part, eigenvalue chain and its multiplicities.

    poly holds the coefficients of z^{-k}, ..., z^{-2}; xi the chain
    xi_1, ..., xi_e; mult the multiplicities m_1, ..., m_e, so that
    rank prod_{l<=k}(R - xi_l) = size - (m_1 + ... + m_k).
    """
    poly: tuple[Fraction, ...]
    xi: tuple[Fraction, ...]
    mult: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(to_fraction(x) for x in self.poly))
        object.__setattr__(self, "xi", tuple(to_fraction(x) for x in self.xi))
        if len(self.xi) != len(self.mult) or not self.xi:
            raise ValueError("inconsistent chain data")
        if len(set(self.xi)) != len(self.xi):
            raise ValueError("chain eigenvalues must be pairwise distinct")
        if any(m < 1 for m in self.mult):
            raise ValueError("chain multiplicities must be positive")

    @property
    def size(self) -> int:
        return sum(self.mult)

    def to_json(self) -> dict:
        return {"poly": [fmt(x) for x in self.poly], "xi": [fmt(x) for x in self.xi],
                "mult": list(self.mult)}

    @classmethod
    def from_json(cls, d: Mapping) -> "BlockData":
        return cls(tuple(d.get("poly", ())), tuple(d["xi"]), tuple(int(m) for m in d["mult"]))

    def rank_chain(self) -> tuple[int, ...]:
        out, r = [], self.size
        for m in self.mult:
            r -= m
            out.append(r)
        return tuple(out)


@dataclass(frozen=True)
class PointData:
    pole_order: int
    blocks: tuple[BlockData, ...]

    def __post_init__(self):
        if any(len(b.poly) != self.pole_order - 1 for b in self.blocks):
            raise ValueError("polynomial part length must equal pole order - 1")
        if len({b.poly for b in self.blocks}) != len(self.blocks):
            raise ValueError("blocks of one point need distinct polynomial parts")

    def to_json(self) -> dict:
        return {"pole_order": self.pole_order, "blocks": [b.to_json() for b in self.blocks]}

    @classmethod
    def from_json(cls, d: Mapping) -> "PointData":
        return cls(int(d["pole_order"]), tuple(BlockData.from_json(b) for b in d["blocks"]))

    def point_type(self) -> PointType:
        k = self.pole_order
        if k == 1 or len(self.blocks) == 1:
            if len(self.blocks) != 1:
                raise ValueError("regular point must have one block")
            return PointType(Block(self.blocks[0].mult))

        def build(idxs: list[int], level: int):
            if level == k - 1:
                assert len(idxs) == 1
                return Block(self.blocks[idxs[0]].mult)
            groups: dict[Fraction, list[int]] = {}
            for t in idxs:
                groups.setdefault(self.blocks[t].poly[level], []).append(t)
            return Node(tuple(build(g, level + 1) for g in groups.values()))

        tree = build(list(range(len(self.blocks))), 0)
        pt = PointType(tree)
        order = [b.chain for b in pt.blocks]
        if order != [b.mult for b in self.blocks]:
            # DFS order of the tree must agree with the stored block order
            leaves = []

            def walk(idxs, level):
                if level == k - 1:
                    leaves.extend(idxs)
                    return
                groups: dict[Fraction, list[int]] = {}
                for t in idxs:
                    groups.setdefault(self.blocks[t].poly[level], []).append(t)
                for g in groups.values():
                    walk(g, level + 1)
            walk(list(range(len(self.blocks))), 0)
            if leaves != list(range(len(self.blocks))):
                raise ValueError("blocks must be listed in polynomial-part tree order")
        return pt


@dataclass(frozen=True)
class HTLSymbolData:
    points: tuple[PointData, ...]

    def spectral_type(self) -> SpectralType:
        return SpectralType(tuple(pd.point_type() for pd in self.points))

    def to_json(self) -> dict:
        return {"points": [pd.to_json() for pd in self.points]}

    @classmethod
    def from_json(cls, d: Mapping) -> "HTLSymbolData":
        return cls(tuple(PointData.from_json(p) for p in d["points"]))

    def residue_trace(self, i: int) -> Fraction:
        return sum((x * m for b in self.points[i].blocks for x, m in zip(b.xi, b.mult)), Fraction(0))


def lambda_of(h: HTLSymbolData) -> ParamVector:
    st = h.spectral_type()
    q, _ = quiver_of(st)
    irr = set(st.irregular_indices())
    reg = st.regular_indices()
    lam = [Fraction(0)] * q.n
    reg_sum = sum((h.points[i].blocks[0].xi[0] for i in reg), Fraction(0))
    for a, v in enumerate(q.vertices):
        b = h.points[v.i].blocks[v.j - 1]
        if isinstance(v, Irr):
            lam[a] = -b.xi[0] - (reg_sum if v.i == 0 else 0)
        else:
            lam[a] = b.xi[v.k - 1] - b.xi[v.k]
    del irr
    return tuple(lam)


# ------------------------------------------------------------------ lift lattice

JTupleT = tuple[int, ...]


@dataclass(frozen=True)
class LiftLattice:
    st: SpectralType
    generators: tuple  # JTupleT (tuple of block indices) or Leg
    gram: tuple[tuple[int, ...], ...]
    xi: tuple[tuple[int, ...], ...]  # rows: quiver vertices, cols: generators

    @property
    def n(self) -> int:
        return len(self.generators)

    def node_id(self, g) -> str:
        if isinstance(g, Leg):
            return f"L{g.i},{g.j},{g.k}"
        return "J" + ",".join(map(str, g))


def gen_pairing(st: SpectralType, g, h) -> int:
    """Bilinear form on generators of the lift lattice."""
    gl, hl = isinstance(g, Leg), isinstance(h, Leg)
    if not gl and not hl:
        if g == h:
            return 2
        return 2 - sum(st.points[i].d(a, b) + 2 for i, (a, b) in enumerate(zip(g, h)) if a != b)
    if gl and hl:
        if g == h:
            return 2
        if (g.i, g.j) == (h.i, h.j) and abs(g.k - h.k) == 1:
            return -1
        return 0
    t, leg = (h, g) if gl else (g, h)
    return -1 if (leg.k == 1 and t[leg.i] == leg.j) else 0


def all_jtuples(st: SpectralType) -> list[JTupleT]:
    return list(itertools.product(*(range(1, pt.m + 1) for pt in st.points)))


def lift_lattice(st: SpectralType, beta: Sequence[int] | None = None) -> LiftLattice:
    q, alpha = quiver_of(st)
    if beta is None:
        beta = alpha
    if len(beta) != q.n:
        raise ValueError("beta has wrong length")
    if not is_balanced(st, beta):
        raise ValueError("beta is not balanced")
    irr = st.irregular_indices()
    tuples = [t for t in all_jtuples(st)
              if all(beta[q.index(Irr(i, t[i]))] != 0 for i in irr)]
    legs = [v for a, v in enumerate(q.vertices) if isinstance(v, Leg) and beta[a] != 0]
    gens = tuple(tuples) + tuple(legs)
    G = tuple(tuple(gen_pairing(st, g, h) for h in gens) for g in gens)
    X = []
    for v in q.vertices:
        row = []
        for g in gens:
            if isinstance(v, Irr):
                row.append(int(not isinstance(g, Leg) and g[v.i] == v.j))
            else:
                row.append(int(g == v))
        X.append(tuple(row))
    return LiftLattice(st, gens, G, tuple(X))


def xi_project(ll: LiftLattice, gamma: Sequence[int]) -> DimVector:
    if len(gamma) != ll.n:
        raise ValueError("gamma has wrong length")
    return tuple(sum(x * g for x, g in zip(row, gamma)) for row in ll.xi)


def xi_fiber(ll: LiftLattice, beta: Sequence[int]) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    res = solve_integer([list(r) for r in ll.xi], list(beta))
    if res is None:
        raise ValueError("beta is not in the image of the projection")
    return res


def lift_pairing(ll: LiftLattice, g: Sequence[int], h: Sequence[int]) -> int:
    G = ll.gram
    return sum(g[a] * G[a][b] * h[b] for a in range(ll.n) if g[a] for b in range(ll.n) if h[b])


# ------------------------------------------------------------------ shapes

@dataclass(frozen=True)
class Shape:
    """Diagram on the lift-lattice generators with affine coefficient forms.

    coefficients of node u: base[u] + sum_r params[r][u] * a_r, a_r in Z.
    """
    ids: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    base: tuple[int, ...]
    params: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.ids)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, -self.gram[u][v]) for u in range(self.n) for v in range(u + 1, self.n)
                if self.gram[u][v]]

    def to_json(self) -> dict:
        return {"nodes": [{"id": self.ids[u], "coeff_base": self.base[u],
                           "coeff_params": [p[u] for p in self.params]} for u in range(self.n)],
                "edges": [{"u": self.ids[u], "v": self.ids[v], "mult": m} for u, v, m in self.edges()],
                "n_params": len(self.params)}

    @classmethod
    def from_json(cls, d: dict) -> "Shape":
        ids = tuple(nd["id"] for nd in d["nodes"])
        pos = {x: u for u, x in enumerate(ids)}
        n = len(ids)
        G = [[2 if u == v else 0 for v in range(n)] for u in range(n)]
        for e in d["edges"]:
            u, v = pos[e["u"]], pos[e["v"]]
            G[u][v] = G[v][u] = -int(e["mult"])
        k = int(d.get("n_params", 0))
        params = tuple(tuple(int(nd["coeff_params"][r]) for nd in d["nodes"]) for r in range(k))
        return cls(ids, tuple(map(tuple, G)), tuple(int(nd["coeff_base"]) for nd in d["nodes"]), params)

    def value(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.base[u] + sum(p[u] * x for p, x in zip(self.params, a)) for u in range(self.n))


def shape_of(st: SpectralType | str) -> Shape:
    if isinstance(st, str):
        st = parse_spectral_type(st)
    st = normalize(st)
    _, alpha = quiver_of(st)
    ll = lift_lattice(st, alpha)
    base, kernel = xi_fiber(ll, alpha)
    ids = tuple(ll.node_id(g) for g in ll.generators)
    return Shape(ids, ll.gram, tuple(base), tuple(tuple(k) for k in kernel))
