"""Quivers and the arithmetic of their root lattices.

Vectors are plain integer tuples (dimension vectors) or Fraction tuples
(parameters), indexed by the quiver's vertex order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

DimVector = tuple[int, ...]
ParamVector = tuple[Fraction, ...]


@dataclass(frozen=True, order=True)
class Irr:
    """Vertex [i, j]: block j of an irregular (or infinity) point i."""
    i: int
    j: int

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]"


@dataclass(frozen=True, order=True)
class Leg:
    """Vertex [i, j, k]: depth k on the leg hanging off block j of point i."""
    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("leg depth must be >= 1")

    def __str__(self) -> str:
        return f"[{self.i},{self.j},{self.k}]"


VertexTag = Irr | Leg


class RootKind(Enum):
    REAL = "RealRoot"
    IMAGINARY = "ImaginaryRoot"
    NOT_ROOT = "NotRoot"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[VertexTag, ...]
    arrows: tuple[tuple[int, int, int], ...]  # (src index, dst index, multiplicity)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _gram: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex tags must be unique")
        if not all(isinstance(v, (Irr, Leg)) for v in self.vertices):
            raise TypeError("vertices must be Irr or Leg tags")
        n = len(self.vertices)
        merged: dict[tuple[int, int], int] = {}
        for s, t, m in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError("arrow endpoint out of range")
            if m < 0:
                raise ValueError("negative arrow multiplicity")
            if m:
                merged[(s, t)] = merged.get((s, t), 0) + m
        object.__setattr__(self, "arrows", tuple(sorted((s, t, m) for (s, t), m in merged.items())))
        object.__setattr__(self, "_index", {v: a for a, v in enumerate(self.vertices)})
        # symmetric Cartan-type matrix: C[a][b] = (eps_a, eps_b)
        C = [[0] * n for _ in range(n)]
        for a in range(n):
            C[a][a] = 2
        for s, t, m in self.arrows:
            C[s][t] -= m
            C[t][s] -= m
        object.__setattr__(self, "_gram", tuple(tuple(r) for r in C))

    # -- construction helpers
    @classmethod
    def from_edges(cls, vertices: Sequence[VertexTag], edges: Iterable[tuple]) -> "Quiver":
        """edges given as (src tag, dst tag[, mult])."""
        idx = {v: a for a, v in enumerate(vertices)}
        arrows = []
        for e in edges:
            s, t = e[0], e[1]
            m = e[2] if len(e) > 2 else 1
            arrows.append((idx[s], idx[t], m))
        return cls(tuple(vertices), tuple(arrows))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, tag: VertexTag) -> int:
        return self._index[tag]

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """(eps_a, eps_b) for all vertex pairs."""
        return self._gram

    def loops(self, a: int) -> int:
        return sum(m for s, t, m in self.arrows if s == t == a)

    def arrow_count(self) -> int:
        return sum(m for _, _, m in self.arrows)

    def unit(self, a: int) -> DimVector:
        return tuple(int(b == a) for b in range(self.n))

    def _check(self, *vs: Sequence) -> None:
        for v in vs:
            if len(v) != self.n:
                raise ValueError(f"vector of length {len(v)} for quiver with {self.n} vertices")

    def to_json(self) -> dict:
        def tag(v):
            if isinstance(v, Irr):
                return {"tag": "irr", "i": v.i, "j": v.j}
            return {"tag": "leg", "i": v.i, "j": v.j, "k": v.k}
        return {"vertices": [tag(v) for v in self.vertices],
                "arrows": [{"src": s, "dst": t, "mult": m} for s, t, m in self.arrows]}

    @classmethod
    def from_json(cls, d: Mapping) -> "Quiver":
        vs = []
        for v in d["vertices"]:
            vs.append(Irr(v["i"], v["j"]) if v["tag"] == "irr" else Leg(v["i"], v["j"], v["k"]))
        return cls(tuple(vs), tuple((a["src"], a["dst"], a["mult"]) for a in d["arrows"]))


def _resolve(q: Quiver, a) -> int:
    return a if isinstance(a, int) else q.index(a)


def euler_form(q: Quiver, a: Sequence[int], b: Sequence[int]) -> int:
    q._check(a, b)
    return sum(x * y for x, y in zip(a, b)) - sum(m * a[s] * b[t] for s, t, m in q.arrows)


def sym_form(q: Quiver, a: Sequence, b: Sequence):
    q._check(a, b)
    G = q.gram
    return sum(a[i] * sum(G[i][j] * b[j] for j in range(q.n) if G[i][j]) for i in range(q.n) if a[i])


def tits_q(q: Quiver, a: Sequence[int]) -> int:
    s = sym_form(q, a, a)
    assert s % 2 == 0
    return s // 2


def p_val(q: Quiver, a: Sequence[int]) -> int:
    return 1 - tits_q(q, a)


def pairing_with_simple(q: Quiver, v: Sequence, a: int):
    """(v, eps_a)."""
    G = q.gram
    return sum(v[b] * G[b][a] for b in range(q.n) if v[b])


def simple_reflection(q: Quiver, a, v: Sequence[int]) -> DimVector:
    a = _resolve(q, a)
    q._check(v)
    if q.loops(a):
        raise ValueError(f"vertex {q.vertices[a]} carries an edge-loop; no reflection")
    c = pairing_with_simple(q, v, a)
    out = list(v)
    out[a] -= c
    return tuple(out)


def lambda_reflection(q: Quiver, a, lam: Sequence) -> ParamVector:
    a = _resolve(q, a)
    q._check(lam)
    if q.loops(a):
        raise ValueError(f"vertex {q.vertices[a]} carries an edge-loop; no reflection")
    G = q.gram
    la = Fraction(lam[a])
    return tuple(Fraction(lam[b]) - G[a][b] * la for b in range(q.n))


def support_connected(q: Quiver, v: Sequence[int]) -> bool:
    q._check(v)
    if any(x < 0 for x in v):
        raise ValueError("support_connected expects a non-negative vector")
    supp = [a for a in range(q.n) if v[a]]
    if not supp:
        return False
    adj: dict[int, set[int]] = {a: set() for a in supp}
    for s, t, _ in q.arrows:
        if s in adj and t in adj and s != t:
            adj[s].add(t)
            adj[t].add(s)
    seen = {supp[0]}
    dq = deque([supp[0]])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                dq.append(y)
    return len(seen) == len(supp)


def is_in_fundamental_set(q: Quiver, v: Sequence[int]) -> bool:
    q._check(v)
    if any(x < 0 for x in v) or not any(v):
        raise ValueError("fundamental-set test expects a nonzero non-negative vector")
    for a in range(q.n):
        if not q.loops(a) and pairing_with_simple(q, v, a) > 0:
            return False
    return support_connected(q, v)


def classify_root(q: Quiver, v: Sequence[int]) -> RootKind:
    """Height descent: reflect while some pairing is positive."""
    q._check(v)
    if not any(v):
        raise ValueError("zero vector")
    v = tuple(v)
    if any(x < 0 for x in v):
        if any(x > 0 for x in v):
            return RootKind.NOT_ROOT
        v = tuple(-x for x in v)
    while True:
        if sum(v) == 1 and not q.loops(v.index(1)):
            return RootKind.REAL
        best = None
        for a in range(q.n):
            if q.loops(a):
                continue
            c = pairing_with_simple(q, v, a)
            if c > 0:
                best = a
                break
        if best is None:
            return RootKind.IMAGINARY if support_connected(q, v) else RootKind.NOT_ROOT
        v = simple_reflection(q, best, v)
        if any(x < 0 for x in v):
            return RootKind.NOT_ROOT
        if not any(v):
            return RootKind.NOT_ROOT


def dot(lam: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(lam, v)), Fraction(0))
