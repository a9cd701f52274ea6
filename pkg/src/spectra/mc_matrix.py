"""Matrix-level middle convolution on tuples of principal parts.

A tuple is stored per point i as coefficients A^(i)_1, ..., A^(i)_{k_i} of the
principal part sum_j A^(i)_j z^{-j}.  Everything is exact over Q.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .lattice_core import Quiver
from .rational import fmt, to_fraction
from .ratmat import RatMatrix
from .spectral_calc import HTLSymbolData, PointData


class McError(ValueError):
    """Mathematical precondition of the matrix pipeline violated."""


# ------------------------------------------------------------------ tuples

@dataclass(frozen=True)
class HTLTuple:
    rank: int
    points: tuple[tuple[RatMatrix, ...], ...]  # points[i][j-1] = A^(i)_j

    def __post_init__(self):
        for coeffs in self.points:
            if not coeffs:
                raise ValueError("each point needs at least the residue coefficient")
            for M in coeffs:
                if M.shape != (self.rank, self.rank):
                    raise ValueError("coefficient size differs from the rank")

    def pole_order(self, i: int) -> int:
        return len(self.points[i])

    def residue_sum(self) -> RatMatrix:
        out = RatMatrix.zeros(self.rank, self.rank)
        for coeffs in self.points:
            out = out + coeffs[0]
        return out

    def conjugate(self, g: RatMatrix) -> "HTLTuple":
        gi = g.inverse()
        return HTLTuple(self.rank, tuple(tuple(g @ M @ gi for M in c) for c in self.points))

    def generators(self) -> list[RatMatrix]:
        return [M for c in self.points for M in c]

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "points": [{"pole_order": len(c),
                            "coeffs": [[[fmt(x) for x in row] for row in M.rows] for M in c]}
                           for c in self.points]}

    @classmethod
    def from_json(cls, d: Mapping) -> "HTLTuple":
        n = int(d["rank"])
        pts = []
        for p in d["points"]:
            coeffs = tuple(RatMatrix([[to_fraction(x) for x in row] for row in M], ncols=n)
                           for M in p["coeffs"])
            if len(coeffs) != int(p["pole_order"]):
                raise ValueError("pole_order does not match the number of coefficients")
            pts.append(coeffs)
        return cls(n, tuple(pts))


def build_htl_tuple(h: HTLSymbolData, conjugators: Sequence[RatMatrix | None] | None = None) -> HTLTuple:
    """Normal-form tuple of h, optionally conjugated point by point.

    If the residues do not sum to zero, the point-0 residue is replaced by
    minus the sum of the others provided that replacement still has the
    point-0 formal data of h; otherwise McError.
    """
    n = sum(b.size for b in h.points[0].blocks)
    pts = []
    for i, pd in enumerate(h.points):
        k = pd.pole_order
        diag_by_order: list[list[Fraction]] = [[] for _ in range(k)]
        for b in pd.blocks:
            res = [x for x, m in zip(b.xi, b.mult) for _ in range(m)]
            diag_by_order[0].extend(res)
            for j in range(2, k + 1):
                c = b.poly[k - j]  # poly stores z^{-k}, ..., z^{-2}
                diag_by_order[j - 1].extend([c] * b.size)
        if any(len(d) != n for d in diag_by_order):
            raise McError("block sizes do not add up to the rank")
        coeffs = [RatMatrix.diag(d) for d in diag_by_order]
        g = conjugators[i] if conjugators else None
        if g is not None:
            gi = g.inverse()
            coeffs = [g @ M @ gi for M in coeffs]
        pts.append(tuple(coeffs))
    A = HTLTuple(n, tuple(pts))
    if A.residue_sum().is_zero():
        return A
    rest = RatMatrix.zeros(n, n)
    for c in pts[1:]:
        rest = rest + c[0]
    cand = HTLTuple(n, ((-rest,) + pts[0][1:],) + tuple(pts[1:]))
    if not _point_matches(cand.points[0], h.points[0]):
        raise McError("residue-sum constraint cannot be met with the given data")
    return cand


def _point_matches(coeffs: Sequence[RatMatrix], pd: PointData) -> bool:
    try:
        blocks = formal_reduction(coeffs)
    except McError:
        return False
    want = sorted((b.poly, b.size) for b in pd.blocks)
    got = sorted((fb.poly, fb.residue.nrows) for fb in blocks)
    if want != got:
        return False
    by_poly = {fb.poly: fb for fb in blocks}
    for b in pd.blocks:
        R = by_poly[b.poly].residue
        if rank_chain(R, b.xi) != b.rank_chain():
            return False
    return True


def addition(t: int, poly: Sequence, A: HTLTuple) -> HTLTuple:
    """Subtract the scalar polynomial sum_j poly[j-1] z^{-j} at point t."""
    poly = [to_fraction(x) for x in poly]
    k = A.pole_order(t)
    if len(poly) > k:
        raise ValueError("polynomial degree exceeds the pole order at this point")
    n = A.rank
    new = tuple(M if j >= len(poly) else M - RatMatrix.scalar(n, poly[j])
                for j, M in enumerate(A.points[t]))
    return HTLTuple(n, A.points[:t] + (new,) + A.points[t + 1:])


# ------------------------------------------------------------------ choices for mc

@dataclass(frozen=True)
class McChoice:
    """What mc at a block tuple needs: per point the chosen block's polynomial
    part (z^{-k}, ..., z^{-2} coefficients) and head eigenvalue xi_1."""
    polys: tuple[tuple[Fraction, ...], ...]
    xis: tuple[Fraction, ...]

    @property
    def xi(self) -> Fraction:
        return sum(self.xis, Fraction(0))

    def add_polys(self) -> list[list[Fraction]]:
        """Coefficient lists (z^{-1}, z^{-2}, ...) of q_{j_i} + xi_1 z^{-1} per point."""
        return [[x] + list(reversed(p)) for p, x in zip(self.polys, self.xis)]

    def dual(self) -> "McChoice":
        """The choice for applying mc again to the output (xi flips sign)."""
        xi = self.xi
        return McChoice(self.polys, (self.xis[0] - 2 * xi,) + self.xis[1:])


def choice_of(h: HTLSymbolData, t: Sequence[int]) -> McChoice:
    if len(t) != len(h.points):
        raise ValueError("block tuple length differs from the number of points")
    polys, xis = [], []
    for pd, j in zip(h.points, t):
        if not 1 <= j <= len(pd.blocks):
            raise ValueError("block index out of range")
        b = pd.blocks[j - 1]
        polys.append(b.poly)
        xis.append(b.xi[0])
    return McChoice(tuple(polys), tuple(xis))


# ------------------------------------------------------------------ canonical datum

def _block_toeplitz(coeffs: Sequence[RatMatrix]) -> RatMatrix:
    """A-hat: block (r, c) = A_{k-(c-r)} for c >= r, zero below."""
    k = len(coeffs)
    n = coeffs[0].nrows
    rows = []
    for r in range(k):
        for i in range(n):
            row = []
            for c in range(k):
                if c < r:
                    row.extend([Fraction(0)] * n)
                else:
                    row.extend(coeffs[k - (c - r) - 1].rows[i])
            rows.append(row)
    return RatMatrix(rows, ncols=k * n)


def _shift_hat(k: int, n: int) -> RatMatrix:
    """N-hat: identity blocks on the block super-diagonal."""
    N = [[Fraction(0)] * (k * n) for _ in range(k * n)]
    for r in range(k - 1):
        for i in range(n):
            N[r * n + i][(r + 1) * n + i] = Fraction(1)
    return RatMatrix(N, ncols=k * n)


def _coords(basis: RatMatrix, v: RatMatrix) -> RatMatrix:
    X = basis.solve(v)
    if X is None:
        raise AssertionError("vector outside the span")
    return X


@dataclass(frozen=True)
class CanonicalDatum:
    n: int
    dims: tuple[int, ...]              # dim W_i
    T: RatMatrix                       # on W, block diagonal N_i
    Q: RatMatrix                       # W -> V
    P: RatMatrix                       # V -> W
    A_hat: tuple[RatMatrix, ...]
    kernels: tuple[tuple[tuple[Fraction, ...], ...], ...]  # bases of Ker A-hat_i
    images: tuple[RatMatrix, ...]      # columns: basis of Im A-hat_i = coordinates of W_i

    @property
    def dim_W(self) -> int:
        return sum(self.dims)

    def offsets(self) -> list[int]:
        out, s = [], 0
        for d in self.dims:
            out.append(s)
            s += d
        return out


def canonical_datum(A: HTLTuple) -> CanonicalDatum:
    """W_i = W-hat_i / Ker A-hat_i, realized as Im A-hat_i via A-hat_i."""
    n = A.rank
    Ts, Qs, Ps, Ahats, kers, ims, dims = [], [], [], [], [], [], []
    for coeffs in A.points:
        k = len(coeffs)
        Ah = _block_toeplitz(coeffs)
        Nh = _shift_hat(k, n)
        cols = Ah.column_space()
        Ahats.append(Ah)
        kers.append(tuple(Ah.kernel()))
        d = len(cols)
        dims.append(d)
        if d == 0:
            B = RatMatrix.zeros(k * n, 0)
            ims.append(B)
            Ts.append(RatMatrix.zeros(0, 0))
            Qs.append(RatMatrix.zeros(n, 0))
            Ps.append(RatMatrix.zeros(0, n))
            continue
        B = RatMatrix.from_columns(cols, k * n)
        ims.append(B)
        Ph = RatMatrix.vstack([RatMatrix.zeros((k - 1) * n, n), RatMatrix.identity(n)])
        Ps.append(_coords(B, Ah @ Ph))
        Qs.append(B.submatrix(0, n, 0, d))       # top block row of A-hat equals Q-hat
        Ts.append(_coords(B, Nh @ B))
    T = RatMatrix.block_diag(Ts)
    Q = RatMatrix.hstack(Qs) if sum(dims) else RatMatrix.zeros(n, 0)
    P = RatMatrix.vstack(Ps) if sum(dims) else RatMatrix.zeros(0, n)
    return CanonicalDatum(n, tuple(dims), T, Q, P, tuple(Ahats), tuple(kers), tuple(ims))


# ------------------------------------------------------------------ middle convolution

def _as_choice(h, t) -> McChoice:
    if isinstance(h, McChoice):
        return h
    return choice_of(h, t)


def add_choice(A: HTLTuple, ch: McChoice, sign: int = 1) -> HTLTuple:
    for i, poly in enumerate(ch.add_polys()):
        A = addition(i, [sign * x for x in poly], A)
    return A


def middle_convolution(A: HTLTuple, t: Sequence[int] | None, h: HTLSymbolData | McChoice,
                       basis_change: RatMatrix | None = None) -> HTLTuple:
    """mc at the block tuple t (the data of h locates the chosen blocks).

    V' = W / P(V) is identified with Ker Q (a complement of P(V) since
    QP = -xi Id); basis_change re-coordinatizes V' and yields a conjugate output.
    """
    ch = _as_choice(h, t)
    xi = ch.xi
    if xi == 0:
        raise McError("xi_t = 0: middle convolution undefined")
    B = add_choice(A, ch)
    cd = canonical_datum(B)
    if cd.dim_W == 0:
        raise McError("W = 0")
    K = cd.Q.kernel()
    n2 = len(K)
    if n2 == 0:
        raise McError("output rank is zero")
    Kmat = RatMatrix.from_columns(K, cd.dim_W)
    if basis_change is not None:
        Kmat = Kmat @ basis_change
    dW = cd.dim_W
    proj = RatMatrix.identity(dW) + (cd.P @ cd.Q).scale(1 / xi)  # onto Ker Q along P(V)
    Qp = Kmat.solve(proj)                                           # W -> V'
    if Qp is None:
        raise AssertionError("projection leaves Ker Q")
    Pp = Kmat.scale(xi)                                             # V' -> W
    pts = []
    for off, d, k in zip(cd.offsets(), cd.dims, (len(c) for c in A.points)):
        if d == 0:
            pts.append(tuple(RatMatrix.zeros(n2, n2) for _ in range(k)))
            continue
        Qi = Qp.submatrix(0, n2, off, off + d)
        Pi = Pp.submatrix(off, off + d, 0, n2)
        Ni = cd.T.submatrix(off, off + d, off, off + d)
        coeffs, M = [], Pi
        for _ in range(k):
            coeffs.append(Qi @ M)
            M = Ni @ M
        pts.append(tuple(coeffs))
    Ap = HTLTuple(n2, tuple(pts))
    Ap = addition(0, [2 * xi], Ap)
    return add_choice(Ap, ch, sign=-1)


# ------------------------------------------------------------------ irreducibility, equivalence

def _span_insert(basis: list[list[Fraction]], pivots: list[int], v: list[Fraction]) -> bool:
    """Insert v into an echelon basis; True iff v was independent."""
    v = list(v)
    for row, p in zip(basis, pivots):
        if v[p]:
            c = v[p]
            v = [a - c * b for a, b in zip(v, row)]
    p = next((j for j, x in enumerate(v) if x), None)
    if p is None:
        return False
    c = v[p]
    v = [x / c for x in v]
    for r in range(len(basis)):
        if basis[r][p]:
            f = basis[r][p]
            basis[r] = [a - f * b for a, b in zip(basis[r], v)]
    basis.append(v)
    pivots.append(p)
    return True


def algebra_dimension(mats: Sequence[RatMatrix], n: int) -> int:
    flat = lambda M: [x for r in M.rows for x in r]
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    words = [RatMatrix.identity(n)]
    _span_insert(basis, pivots, flat(words[0]))
    frontier = list(words)
    while frontier and len(basis) < n * n:
        nxt = []
        for W in frontier:
            for G in mats:
                M = G @ W
                if _span_insert(basis, pivots, flat(M)):
                    nxt.append(M)
        frontier = nxt
    return len(basis)


def is_irreducible(A: HTLTuple) -> bool:
    """Burnside: irreducible over an algebraically closed field iff the
    generated algebra is all of M_n."""
    n = A.rank
    if n <= 1:
        return True
    return algebra_dimension(A.generators(), n) == n * n


def intertwiners(A: HTLTuple, B: HTLTuple) -> list[RatMatrix]:
    """Basis of {g : g A^(i)_j = B^(i)_j g for all i, j}."""
    if A.rank != B.rank or len(A.points) != len(B.points) or \
            any(len(a) != len(b) for a, b in zip(A.points, B.points)):
        raise ValueError("tuples of different shape")
    n = A.rank
    rows = []
    for ca, cb in zip(A.points, B.points):
        for Ma, Mb in zip(ca, cb):
            # (g Ma - Mb g)[r][c] = sum_s g[r][s] Ma[s][c] - Mb[r][s] g[s][c]
            for r in range(n):
                for c in range(n):
                    row = [Fraction(0)] * (n * n)
                    for s in range(n):
                        row[r * n + s] += Ma.rows[s][c]
                        row[s * n + c] -= Mb.rows[r][s]
                    rows.append(row)
    K = RatMatrix(rows, ncols=n * n).kernel() if rows else \
        [tuple(Fraction(int(i == j)) for i in range(n * n)) for j in range(n * n)]
    return [RatMatrix([list(v[r * n:(r + 1) * n]) for r in range(n)], ncols=n) for v in K]


def equivalent(A: HTLTuple, B: HTLTuple, seed: int = 0) -> RatMatrix | None:
    """An invertible g with g A g^{-1} = B, or None."""
    try:
        basis = intertwiners(A, B)
    except ValueError:
        return None
    if not basis:
        return None
    for g in basis:
        if g.det() != 0:
            return g
    rng = random.Random(seed)
    for _ in range(50):
        g = RatMatrix.zeros(A.rank, A.rank)
        for b in basis:
            g = g + b.scale(rng.randint(-20, 20))
        if g.det() != 0:
            return g
    return None


# ------------------------------------------------------------------ formal reduction

@dataclass(frozen=True)
class FormalBlock:
    poly: tuple[Fraction, ...]   # z^{-k}, ..., z^{-2}
    residue: RatMatrix


def _series_mul(a: dict[int, RatMatrix], b: dict[int, RatMatrix], n: int, lo: int) -> dict[int, RatMatrix]:
    """Product of Laurent polynomials {power: coeff}, keeping powers <= -1 and >= lo."""
    out: dict[int, RatMatrix] = {}
    for pa, Ma in a.items():
        for pb, Mb in b.items():
            p = pa + pb
            if lo <= p <= -1:  # the other factor has no negative powers
                out[p] = out.get(p, RatMatrix.zeros(n, n)) + Ma @ Mb
    return out


def _gauge(coeffs: list[RatMatrix], Y: RatMatrix, s: int) -> list[RatMatrix]:
    """Principal part of (I + Y z^s) A (I + Y z^s)^{-1}; coeffs[j-1] = A_j."""
    n = Y.nrows
    k = len(coeffs)
    A = {-(j + 1): M for j, M in enumerate(coeffs)}
    X = {0: RatMatrix.identity(n), s: Y}
    Xi = {}
    P = RatMatrix.identity(n)
    r = 0
    while r * s <= k:
        Xi[r * s] = P.scale((-1) ** r)
        P = P @ Y
        r += 1
    XA = _series_mul(X, A, n, -k)
    out = _series_mul(XA, Xi, n, -k)
    return [out.get(-(j + 1), RatMatrix.zeros(n, n)) for j in range(k)]


def _eigen_split(M: RatMatrix) -> list[tuple[Fraction, list[tuple[Fraction, ...]]]]:
    try:
        ev = M.eigenvalues_rational()
    except ValueError as e:
        raise McError(f"leading coefficient has irrational spectrum: {e}") from None
    out = []
    for lam in sorted(ev):
        vecs = M.shift(lam).kernel()
        if len(vecs) != ev[lam]:
            raise McError("leading coefficient is not semisimple")
        out.append((lam, vecs))
    return out


def formal_reduction(coeffs: Sequence[RatMatrix]) -> list[FormalBlock]:
    """Formal block splitting of sum_j A_j z^{-j} (coeffs[j-1] = A_j) into
    blocks q(z^{-1}) I + R z^{-1}; requires semisimple rational leading terms."""
    coeffs = list(coeffs)
    k = len(coeffs)
    n = coeffs[0].nrows
    if n == 0:
        return []
    if k == 1:
        return [FormalBlock((), coeffs[0])]
    lead = coeffs[-1]
    split = _eigen_split(lead)
    if len(split) == 1:
        c = split[0][0]
        sub = formal_reduction(coeffs[:-1])
        return [FormalBlock((c,) + fb.poly, fb.residue) for fb in sub]
    S = RatMatrix.from_columns([v for _, vs in split for v in vs], n)
    Si = S.inverse()
    C = [Si @ M @ S for M in coeffs]
    sizes = [len(vs) for _, vs in split]
    offs = [sum(sizes[:a]) for a in range(len(sizes))]
    lams = [lam for lam, _ in split]
    blk = [a for a, sz in enumerate(sizes) for _ in range(sz)]
    for s in range(1, k):
        M = C[k - 1 - s]
        Y = [[Fraction(0)] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                if blk[r] != blk[c] and M.rows[r][c]:
                    Y[r][c] = M.rows[r][c] / (lams[blk[r]] - lams[blk[c]])
        Ymat = RatMatrix(Y, ncols=n)
        if not Ymat.is_zero():
            C = _gauge(C, Ymat, s)
    out = []
    for a, (o, sz) in enumerate(zip(offs, sizes)):
        sub = [M.submatrix(o, o + sz, o, o + sz) for M in C]
        for fb in formal_reduction(sub):
            out.append(fb)
    return sorted(out, key=lambda fb: fb.poly)


def rank_chain(R: RatMatrix, xi: Sequence[Fraction]) -> tuple[int, ...]:
    """rank prod_{l <= k} (R - xi_l) for k = 1..len(xi)."""
    out, M = [], RatMatrix.identity(R.nrows)
    for x in xi:
        M = M @ R.shift(x)
        out.append(M.rank())
    return tuple(out)


@dataclass(frozen=True)
class ResidueBlock:
    poly: tuple[Fraction, ...]
    size: int
    residue: RatMatrix
    eigenvalues: dict
    rank_chain: tuple[int, ...] | None


def residue_spectral_data(A: HTLTuple, h: HTLSymbolData | None = None) -> list[list[ResidueBlock]]:
    """Per point, the formal blocks with their residue spectra; with h, the
    rank chains along h's eigenvalue chains (blocks matched by polynomial part)."""
    out = []
    for i, coeffs in enumerate(A.points):
        fbs = formal_reduction(coeffs)
        chains = {}
        if h is not None:
            chains = {b.poly: b.xi for b in h.points[i].blocks}
        pt = []
        for fb in fbs:
            R = fb.residue
            ev = R.eigenvalues_rational() if R.nrows else {}
            rc = rank_chain(R, chains[fb.poly]) if fb.poly in chains else None
            pt.append(ResidueBlock(fb.poly, R.nrows, R, ev, rc))
        out.append(pt)
    return out


# ------------------------------------------------------------------ moment map

@dataclass(frozen=True)
class QuiverRep:
    """Representation of the doubled quiver: for each arrow copy (s, t), the
    pair (x_rho: V_s -> V_t, x_rho*: V_t -> V_s)."""
    dims: tuple[int, ...]
    maps: tuple[tuple[int, int, RatMatrix, RatMatrix], ...]

    def __post_init__(self):
        for s, t, x, xs in self.maps:
            if x.shape != (self.dims[t], self.dims[s]) or xs.shape != (self.dims[s], self.dims[t]):
                raise ValueError("map shape does not match the dimension vector")

    def act(self, g: Sequence[RatMatrix]) -> "QuiverRep":
        gi = [x.inverse() if x.nrows else x for x in g]
        return QuiverRep(self.dims, tuple((s, t, g[t] @ x @ gi[s], g[s] @ xs @ gi[t])
                                          for s, t, x, xs in self.maps))


def arrow_copies(q: Quiver) -> list[tuple[int, int]]:
    return [(s, t) for s, t, m in q.arrows for _ in range(m)]


def moment_map(q: Quiver, rep: QuiverRep) -> list[RatMatrix]:
    if len(rep.dims) != q.n or [(s, t) for s, t, _, _ in rep.maps] != arrow_copies(q):
        raise ValueError("representation does not match the quiver")
    out = [RatMatrix.zeros(d, d) for d in rep.dims]
    for s, t, x, xs in rep.maps:
        out[t] = out[t] + x @ xs
        out[s] = out[s] - xs @ x
    return out


# ------------------------------------------------------------------ predicted output data

@dataclass(frozen=True)
class PredictedBlock:
    poly: tuple[Fraction, ...]
    size: int
    xi: tuple[Fraction, ...]
    mult: tuple[int, ...]   # the head multiplicity may be 0

    def rank_chain(self) -> tuple[int, ...]:
        out, r = [], self.size
        for m in self.mult:
            r -= m
            out.append(r)
        return tuple(out)


def predict_mc_data(h: HTLSymbolData, t: Sequence[int], dim_W: int) -> list[list[PredictedBlock]]:
    """Formal data of mc_t(A) predicted from that of A.

    Non-chosen blocks keep their size and shift every residue eigenvalue by
    (d_i(j, j_i) + 2) xi_t (i != 0) or d_0(j, j_0) xi_t (i = 0).  The chosen
    block of point i gets size n_j + dim W - 2n, the same head eigenvalue
    (minus 2 xi_t at i = 0) and the remaining chain shifted by +xi_t (i != 0)
    or -xi_t (i = 0), with unchanged multiplicities.
    """
    st = h.spectral_type()
    ch = choice_of(h, t)
    xi = ch.xi
    n = sum(b.size for b in h.points[0].blocks)
    out = []
    for i, (pd, pt) in enumerate(zip(h.points, st.points)):
        blocks = []
        for j, b in enumerate(pd.blocks, 1):
            if j != t[i]:
                shift = (pt.d(j, t[i]) + (2 if i else 0)) * xi
                blocks.append(PredictedBlock(b.poly, b.size, tuple(x + shift for x in b.xi), b.mult))
                continue
            size = b.size + dim_W - 2 * n
            sgn = 1 if i else -1
            head = b.xi[0] - (0 if i else 2 * xi)
            tail = tuple(x + sgn * xi for x in b.xi[1:])
            m1 = size - sum(b.mult[1:])
            if m1 < 0:
                raise McError("predicted head multiplicity is negative")
            blocks.append(PredictedBlock(b.poly, size, (head,) + tail, (m1,) + b.mult[1:]))
        out.append(blocks)
    return out


def check_mc_prediction(A_out: HTLTuple, pred: list[list[PredictedBlock]]) -> list[str]:
    """Compare the formal data of an mc output with the prediction; returns mismatches."""
    problems = []
    for i, (coeffs, blocks) in enumerate(zip(A_out.points, pred)):
        fbs = {fb.poly: fb for fb in formal_reduction(coeffs)}
        for pb in blocks:
            fb = fbs.pop(pb.poly, None)
            size = fb.residue.nrows if fb else 0
            if size != pb.size:
                problems.append(f"point {i} block {pb.poly}: size {size} != {pb.size}")
                continue
            if size and rank_chain(fb.residue, pb.xi) != pb.rank_chain():
                problems.append(f"point {i} block {pb.poly}: rank chain "
                                f"{rank_chain(fb.residue, pb.xi)} != {pb.rank_chain()}")
        for poly, fb in fbs.items():
            if fb.residue.nrows:
                problems.append(f"point {i}: unexpected block {poly}")
    return problems
