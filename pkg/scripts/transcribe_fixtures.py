"""Write src/spectra/data/theorems.json from a hand transcription of the
published classification tables of fundamental shapes (idx 0 and idx -2).

Each shape is given as nodes name=coefficient, where a coefficient is an
affine form in the integer parameters a, b (e.g. "1-a", "a+b-1"), and edges
"X-Y" (simple), "X=Y" (double) or "X#Y" (triple).  Running the script is
idempotent; the JSON it writes is what the fixture loader reads.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "spectra" / "data" / "theorems.json"

PARAMS = ("a", "b")


def affine(expr: str) -> tuple[int, list[int]]:
    base, coeffs = 0, [0] * len(PARAMS)
    for sign, num, var in re.findall(r"([+-]?)(\d*)([ab]?)", expr.replace(" ", "")):
        if not num and not var:
            continue
        k = int(num) if num else 1
        if sign == "-":
            k = -k
        if var:
            coeffs[PARAMS.index(var)] += k
        else:
            base += k
    return base, coeffs


def shape(nodes: str, edges: str) -> dict:
    parsed = []
    for item in nodes.split():
        name, expr = item.split("=", 1)
        parsed.append((name, *affine(expr)))
    used = max((i + 1 for _, _, c in parsed for i, x in enumerate(c) if x), default=0)
    out_nodes = [{"id": n, "coeff_base": b, "coeff_params": c[:used]} for n, b, c in parsed]
    out_edges = []
    for e in edges.split():
        for sym, mult in (("#", 3), ("=", 2), ("-", 1)):
            if sym in e:
                u, v = e.split(sym)
                out_edges.append({"u": u, "v": v, "mult": mult})
                break
    return {"nodes": out_nodes, "edges": out_edges, "n_params": used}


def star(center: int, arms: list[list[int]]) -> tuple[str, str]:
    nodes, edges = [f"O={center}"], []
    for i, arm in enumerate(arms):
        prev = "O"
        for j, x in enumerate(arm):
            name = f"R{i}_{j}"
            nodes.append(f"{name}={x}")
            edges.append(f"{prev}-{name}")
            prev = name
    return " ".join(nodes), " ".join(edges)


IDX0 = [
    ("~E6 star", star(3, [[2, 1], [2, 1], [2, 1]]), ["111,111,111"], "~E6"),
    ("~E7 star", star(4, [[3, 2, 1], [3, 2, 1], [2]]), ["1111,1111,22"], "~E7"),
    ("~E8 star", star(6, [[5, 4, 3, 2, 1], [4, 2], [3]]), ["111111,222,33"], "~E8"),
    ("~D4 star", star(2, [[1], [1], [1], [1]]), ["11,11,11,11"], "~D4"),
    ("square", ("A=1 B=1 C=1 D=1", "A-B C-D A-C B-D"),
     ["(1)(1),11,11", "((1)(1))((1)(1))"], "~A3"),
    ("triangle", ("A=1 B=1 C=1", "A-B A-C B-C"), ["((1))((1)),11", "((1))((1))((1))"], "~A2"),
    ("double edge", ("A=1 B=1", "A=B"), ["(((1)))(((1)))"], "~A1"),
    ("two double edges", ("A=1-a B=1-a C=a D=a", "A=B C=D"), ["(1)(1),(1)(1)"], "~A1x~A1"),
]

IDX2 = [
    ("C1", ("A=a B=1-a C=1-a D=a", "A-B C-D A#D B#C"), ["((1))((1)),(1)(1)"], "∅"),
    ("C2", ("A=1-a B=1-a C=1 D=a E=a", "A=B D=E A-C B-C D-C E-C"), ["(1)(1),(1)(1),11"], "A1"),
    ("C3", ("A=2-a B=2-a C=1 D=a E=1 F=a-1", "A=B C-D D-E D=F A-C B-E"),
     ["(1)(11),(1)(11)"], "A3"),
    ("C4", ("X=2-a A=2-a B=1 C=a Y=a", "X=A A-B B-C C=Y"), ["(2)(2),(2)(11)"], "A1^3"),
    ("C5", ("A=a B=b C=2-a-b P=1-a Q=1-b R=a+b-1", "A=Q A=R B=P B=R C=P C=Q"),
     ["(1)(1)(1),(2)(1)"], "A1^3"),
    ("C6", ("X=a-1 A=a B=2 C=3-a Y=2-a Z=1", "X=A A-B B-C C=Y B-Z"), ["(2)(2),(1)(111)"], "D4"),
    ("C7", ("A=1 B=1", "A#B"), ["((((1))))((((1))))"], "∅"),
    ("C8", ("A=2 B=2 C=1", "A=B B-C"), ["(((2)))(((11)))"], "A1xA1"),
    ("C9", ("A=1 B=1 C=1", "A=B B=C"), ["(((1)(1)))(((1)))"], "A1xA1"),
    ("C10", ("A=1 B=1 C=1", "A=B A-C B-C"), ["(((1)))(((1))),11"], "A1"),
    ("C11", star(2, [[1]] * 5), ["11,11,11,11,11"], "A1^5"),
    ("C12", star(4, [[2], [2], [2], [2, 1]]), ["22,22,22,211"], "D4xA1"),
    ("C13", star(3, [[2, 1], [2, 1], [1], [1]]), ["111,111,21,21"], "A5"),
    ("C14", star(4, [[3, 2, 1], [2], [2], [1]]), ["1111,22,22,31"], "D6"),
    ("C15", star(6, [[4, 2], [4, 2], [4, 2, 1]]), ["222,222,2211"], "E6xA1"),
    ("C16", star(4, [[3, 2, 1], [3, 2, 1], [2, 1]]), ["1111,1111,211"], "A7xA1"),
    ("C17", star(8, [[6, 4, 2, 1], [6, 4, 2], [4]]), ["22211,2222,44"], "E7xA1"),
    ("C18", star(6, [[5, 4, 3, 2, 1], [4, 2, 1], [3]]), ["111111,2211,33"], "D8xA1"),
    ("C19", star(12, [[10, 8, 6, 4, 2, 1], [8, 4], [6]]), ["2222211,444,66"], "E8xA1"),
    ("C20", star(5, [[4, 3, 2, 1], [4, 3, 2, 1], [2]]), ["11111,11111,32"], "A9"),
    ("C21", star(8, [[7, 6, 5, 4, 3, 2, 1], [4], [5, 2]]), ["11111111,44,332"], "D10"),
    ("C22", star(10, [[7, 4, 1], [8, 6, 4, 2], [5]]), ["3331,22222,55"], "E8"),
    ("C23", star(5, [[3, 1], [3, 1], [4, 3, 2, 1]]), ["221,221,11111"], "D7"),
    ("C24", ("A=2 B=2 C=2 D=1", "A-B A-C B-C A-D"),
     ["((2))((2))((11))", "((2))((11)),22", "((2))((2)),211"], "A2xA1"),
    ("C25", ("A=2 B=2 C=1 D=1 E=1", "A-B A-C B-C A-D B-E"),
     ["((11))((11))((1))", "((11))((1)),111", "((11))((11)),31"], "A4"),
    ("C26", ("A=2 B=2 C=2 D=2 E=1", "A-B A-C B-D C-D E-A"),
     ["((2)(2))((2)(11))", "(2)(2),22,211", "(2)(11),22,22"], "A3xA1"),
    ("C27", ("A=2 B=2 C=2 D=1 F=1 G=1", "A-B A-C B-D C-D F-B G-C"),
     ["((11)(11))((2)(1))", "(11)(11),22,31", "(2)(1),111,111"], "A5"),
    ("C28", ("A=2 B=1 C=2 D=1 E=1 F=1", "A-B A-C B-D C-D E-A F-C"),
     ["((11)(1))((11)(1))", "((11)(1)),21,111"], "A4"),
    ("C29", ("A=3 B=2 C=2 D=1 E=2 G=1", "A-B A-C B-D C-D E-A G-E"),
     ["((1)(111))((2)(2))", "(1)(111),22,22", "(2)(2),31,1111"], "D5"),
    ("C30", ("A=1 B=1 C=1 D=1 E=1", "A-B A-C C-D A-E E-D B-D"),
     ["((1)(1))((1)(1)(1))", "(1)(1),11,11,11", "(1)(1)(1),21,21"], "A1^3"),
    ("C31", ("A=1 B=1 C=1 D=1", "A-B A-C C-D A-D B-D"),
     ["((1))((1))((1)(1))", "((1))((1)),11,11"], "A1xA1"),
]


def table(idx: int, rows) -> dict:
    return {"idx": idx, "entries": [
        {"label": label, "shape": shape(*nodes_edges), "spectral_types": types, "winv": winv}
        for label, nodes_edges, types, winv in rows]}


def main() -> None:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    data = {"tables": [table(0, IDX0), table(-2, IDX2)]}
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
