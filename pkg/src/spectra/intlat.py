"""Integer lattices: Hermite normal form, integer linear solves, affine-lattice normal forms."""
from __future__ import annotations

from typing import Sequence


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hnf_with_transform(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-style Hermite normal form.

    Returns (H, U, pivots) with U unimodular, U @ M = H, the nonzero rows of
    H first (pivots strictly increasing, pivot entries positive, entries above
    a pivot reduced into [0, pivot)), zero rows last.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(map(int, r)) for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        # combine rows r..m-1 so only row r keeps a nonzero entry in column c
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = _xgcd(a, b)
            if a == 0:
                H[r], H[i] = H[i], H[r]
                U[r], U[i] = U[i], U[r]
                continue
            p, q = a // g, b // g
            Hr, Hi, Ur, Ui = H[r], H[i], U[r], U[i]
            H[r] = [x * u + y * v for u, v in zip(Hr, Hi)]
            H[i] = [-q * u + p * v for u, v in zip(Hr, Hi)]
            U[r] = [x * u + y * v for u, v in zip(Ur, Ui)]
            U[i] = [-q * u + p * v for u, v in zip(Ur, Ui)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[r])]
                U[i] = [u - f * v for u, v in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return H, U, pivots


def hnf(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    if not rows:
        return []
    H, _, piv = hnf_with_transform(rows)
    return [tuple(H[i]) for i in range(len(piv))]


def reduce_mod_lattice(v: Sequence[int], basis_hnf: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical representative of v modulo the lattice with the given HNF basis."""
    w = list(v)
    for row in basis_hnf:
        c = next(j for j, x in enumerate(row) if x != 0)
        f = w[c] // row[c]
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    return tuple(w)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[tuple[int, ...], list[tuple[int, ...]]] | None:
    """All integer solutions of A x = b as (particular solution, kernel basis), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return ((), []) if all(x == 0 for x in b) else None
    At = [[A[i][j] for i in range(m)] for j in range(n)]  # n x m
    H, U, piv = hnf_with_transform(At)                     # U At = H  =>  A U^T = H^T
    s = len(piv)
    y = [0] * n
    for t in range(s):
        c = piv[t]
        acc = b[c] - sum(H[u][c] * y[u] for u in range(t))
        if acc % H[t][c]:
            return None
        y[t] = acc // H[t][c]
    x = [sum(U[u][j] * y[u] for u in range(n)) for j in range(n)]
    if any(sum(A[i][j] * x[j] for j in range(n)) != b[i] for i in range(m)):
        return None
    kernel = [tuple(U[u]) for u in range(s, n)]
    return tuple(x), kernel


def affine_normal_form(base: Sequence[int], kernel: Sequence[Sequence[int]]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Canonical (HNF kernel basis, reduced base) describing base + Z-span(kernel)."""
    H = hnf(kernel) if kernel else []
    return tuple(H), reduce_mod_lattice(base, H)
