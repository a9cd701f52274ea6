"""Recognition of simply-laced finite and affine Coxeter types from a Gram matrix."""
from __future__ import annotations

from typing import Sequence


class UnknownTypeError(ValueError):
    """The diagram is neither of finite nor of affine ADE type."""


def components(G: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(G)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(n):
                if v != u and G[u][v] and v not in seen:
                    seen.add(v)
                    stack.append(v)
        out.append(sorted(comp))
    return out


def _arm_lengths(adj: dict[int, list[int]], center: int) -> list[int]:
    arms = []
    for nb in adj[center]:
        length, prev, cur = 1, center, nb
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if len(nxt) != 1:
                if nxt:
                    return []
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def component_type(G: Sequence[Sequence[int]], comp: list[int]) -> str:
    n = len(comp)
    if any(G[u][u] != 2 for u in comp):
        raise UnknownTypeError("diagonal entries must be 2")
    edges = {}
    for a, u in enumerate(comp):
        for v in comp[a + 1:]:
            if G[u][v]:
                edges[(u, v)] = -G[u][v]
    if any(m < 0 for m in edges.values()):
        raise UnknownTypeError("positive off-diagonal entry")
    if n == 1:
        return "A1"
    if any(m >= 2 for m in edges.values()):
        if n == 2 and list(edges.values()) == [2]:
            return "~A1"
        raise UnknownTypeError(f"multiple edge in a diagram on {n} nodes")
    adj = {u: [] for u in comp}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    deg = sorted(len(adj[u]) for u in comp)
    m = len(edges)
    if m == n:
        if all(d == 2 for d in deg):
            return f"~A{n - 1}"
        raise UnknownTypeError("cycle with branches")
    if m != n - 1:
        raise UnknownTypeError("diagram with several cycles")
    branch = [u for u in comp if len(adj[u]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) == 1:
        arms = _arm_lengths(adj, branch[0])
        if len(arms) == 4 and arms == [1, 1, 1, 1]:
            return "~D4"
        if len(arms) == 3:
            a, b, c = arms
            if a == 1 and b == 1:
                return f"D{n}"
            if (a, b) == (1, 2) and c in (2, 3, 4):
                return f"E{n}"
            if arms == [2, 2, 2]:
                return "~E6"
            if arms == [1, 3, 3]:
                return "~E7"
            if arms == [1, 2, 5]:
                return "~E8"
        raise UnknownTypeError(f"star with arms {arms}")
    if len(branch) == 2 and all(len(adj[u]) == 3 for u in branch):
        leaves = [u for u in comp if len(adj[u]) == 1]
        if len(leaves) == 4 and all(sum(1 for w in adj[b] if len(adj[w]) == 1) == 2 for b in branch):
            return f"~D{n - 1}"
    raise UnknownTypeError("unrecognized tree")


def _sort_key(label: str):
    affine = label.startswith("~")
    body = label.lstrip("~")
    return (affine, "ADE".index(body[0]), -int(body[1:]))


def coxeter_type(G: Sequence[Sequence[int]]) -> list[str]:
    """Component types, sorted (finite before affine, then A, D, E, larger rank first)."""
    return sorted((component_type(G, c) for c in components(G)), key=_sort_key)


def coxeter_label(G: Sequence[Sequence[int]]) -> str:
    """Canonical label such as 'E8xA1'; the empty diagram gives '∅'."""
    types = coxeter_type(G)
    return "x".join(types) if types else "∅"


def normalize_label(label: str) -> str:
    label = label.strip()
    if label in ("", "∅", "empty", "1"):
        return "∅"
    parts = []
    for p in label.replace("×", "x").split("x"):
        p = p.strip()
        if "^" in p:
            base, e = p.split("^")
            parts.extend([base] * int(e))
        else:
            parts.append(p)
    return "x".join(sorted(parts, key=_sort_key))
