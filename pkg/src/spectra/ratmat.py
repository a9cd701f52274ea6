"""Dense exact-rational matrices.

Row reduction is done fraction-free: each row is scaled to integers and
eliminated Bareiss-style, so intermediate entries stay minors of the input
instead of accumulating denominators.  Results are returned as Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .rational import to_fraction


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
    return out


def ff_rref(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan on an integer matrix (in place).

    Returns (rows, pivot columns, final divisor d); the reduced row echelon
    form is rows[r] / d on the pivot rows.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        pr = rows[r]
        for i in range(m):
            if i == r:
                continue
            a = rows[i][c]
            ri = rows[i]
            rows[i] = [(p * x - a * y) // prev for x, y in zip(ri, pr)]
        # earlier pivot rows were multiplied through as well; keep pivot row consistent
        prev = p
        pivots.append(c)
        r += 1
    # normalize sign so the common divisor is positive
    if prev < 0:
        rows[:] = [[-x for x in row] for row in rows]
        prev = -prev
    return rows, pivots, prev


class RatMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rr = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        self.rows = rr
        self.nrows = len(rr)
        if rr:
            self.ncols = len(rr[0])
            if any(len(r) != self.ncols for r in rr):
                raise ValueError("ragged matrix")
        else:
            self.ncols = ncols or 0

    # -- constructors
    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def scalar(cls, n: int, c) -> "RatMatrix":
        c = to_fraction(c)
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "RatMatrix":
        if not cols:
            return cls.zeros(nrows, 0)
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @classmethod
    def block_diag(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[r0 + i][c0 + j] = b.rows[i][j]
            r0 += b.nrows
            c0 += b.ncols
        return cls(out, ncols=m)

    @classmethod
    def hstack(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = [m for m in mats]
        n = mats[0].nrows
        if any(m.nrows != n for m in mats):
            raise ValueError("hstack: row mismatch")
        return cls([sum((m.rows[i] for m in mats), ()) for i in range(n)],
                   ncols=sum(m.ncols for m in mats))

    @classmethod
    def vstack(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = [m for m in mats]
        c = mats[0].ncols
        if any(m.ncols != c for m in mats):
            raise ValueError("vstack: column mismatch")
        return cls([r for m in mats for r in m.rows], ncols=c)

    # -- basic protocol
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"RatMatrix[{self.nrows}x{self.ncols}]({body})"

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list[tuple[Fraction, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix([self.col(j) for j in range(self.ncols)], ncols=self.nrows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "RatMatrix":
        return RatMatrix([row[c0:c1] for row in self.rows[r0:r1]], ncols=c1 - c0)

    # -- arithmetic
    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         ncols=self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         ncols=self.ncols)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c) -> "RatMatrix":
        c = to_fraction(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"matmul shape mismatch {self.shape} @ {other.shape}")
        oc = other.cols()
        return RatMatrix([[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in oc]
                          for r in self.rows], ncols=other.ncols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def shift(self, c) -> "RatMatrix":
        """self - c*Id."""
        c = to_fraction(c)
        return RatMatrix([[x - c if i == j else x for j, x in enumerate(r)]
                          for i, r in enumerate(self.rows)], ncols=self.ncols)

    def power(self, k: int) -> "RatMatrix":
        out = RatMatrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    # -- elimination
    def rref(self) -> tuple["RatMatrix", list[int]]:
        if self.nrows == 0 or self.ncols == 0:
            return self, []
        rows, piv, d = ff_rref(_int_rows(self.rows))
        out = []
        for r, c in enumerate(piv):
            p = rows[r][c]
            out.append([Fraction(x, p) for x in rows[r]])
        for _ in range(self.nrows - len(piv)):
            out.append([Fraction(0)] * self.ncols)
        return RatMatrix(out, ncols=self.ncols), piv

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return len(ff_rref(_int_rows(self.rows))[1])

    def kernel(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right null space (as column vectors)."""
        n = self.ncols
        if self.nrows == 0:
            return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
        R, piv = self.rref()
        free = [j for j in range(n) if j not in piv]
        basis = []
        for f in free:
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for r, c in enumerate(piv):
                v[c] = -R.rows[r][f]
            basis.append(tuple(v))
        return basis

    def column_space(self) -> list[tuple[Fraction, ...]]:
        """Basis of the column space: the pivot columns of self."""
        if self.nrows == 0 or self.ncols == 0:
            return []
        _, piv = self.rref()
        return [self.col(j) for j in piv]

    def solve(self, B: "RatMatrix") -> "RatMatrix | None":
        """One solution X of self @ X = B, or None."""
        if B.nrows != self.nrows:
            raise ValueError("solve: row mismatch")
        aug = RatMatrix.hstack([self, B])
        R, piv = aug.rref()
        n = self.ncols
        if any(c >= n for c in piv):
            return None
        X = [[Fraction(0)] * B.ncols for _ in range(n)]
        for r, c in enumerate(piv):
            for j in range(B.ncols):
                X[c][j] = R.rows[r][n + j]
        return RatMatrix(X, ncols=B.ncols)

    def inverse(self) -> "RatMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        X = self.solve(RatMatrix.identity(self.nrows))
        if X is None or self.rank() < self.nrows:
            raise ZeroDivisionError("singular matrix")
        return X

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        # Bareiss on an integer-scaled copy; undo the row scalings at the end
        scales = [lcm(*(x.denominator for x in r)) for r in self.rows]
        M = [[int(x * s) for x in r] for r, s in zip(self.rows, scales)]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if M[k][k] == 0:
                sw = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
                if sw is None:
                    return Fraction(0)
                M[k], M[sw] = M[sw], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        denom = 1
        for s in scales:
            denom *= s
        return Fraction(sign * M[n - 1][n - 1], denom)

    def eigenvalues_rational(self) -> dict[Fraction, int]:
        """Rational eigenvalues with algebraic multiplicity, via the characteristic polynomial.

        Raises ValueError when the spectrum is not fully rational.
        """
        from .polyq import char_poly, rational_roots
        cp = char_poly(self)
        roots = rational_roots(cp)
        if sum(roots.values()) != self.nrows:
            raise ValueError("spectrum is not rational")
        return roots


def vec_is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)
