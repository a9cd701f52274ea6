"""Command-line front end.

Exit codes: 0 success, 1 mathematical precondition violated (xi = 0,
lambda_t = 0, reduction stuck, mc verification failed), 2 parse or
validation error.  All JSON output has sorted keys; rationals are "p/q".
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from .enumerate_fund import SearchBounds, compare_with_fixture, enumerate_fundamental, load_fixtures
from .mc_matrix import (HTLTuple, McChoice, McError, canonical_datum, check_mc_prediction, choice_of,
                        add_choice, equivalent, formal_reduction, is_irreducible, middle_convolution,
                        predict_mc_data)
from .ratmat import RatMatrix
from .notation import SpectralType, SpectralTypeError, normalize, parse_spectral_type
from .rational import fmt, to_fraction
from .spectral_calc import HTLSymbolData, quiver_of, rigidity_index, shape_of
from .weyl_engine import Mode, StuckError, reduce_to_fundamental, sigma_membership


class UsageError(ValueError):
    """Invalid input (exit code 2)."""


class MathError(RuntimeError):
    """Mathematical precondition violated (exit code 1)."""


# ------------------------------------------------------------------ I/O helpers

def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _emit(obj, out: str | None, stream) -> None:
    text = dumps(obj)
    if out in (None, "-"):
        stream.write(text + "\n")
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e


def _spectral_type(text: str) -> SpectralType:
    return normalize(parse_spectral_type(text))


def _vertex_key(v) -> str:
    return str(v)


def read_lambda(path: str, st: SpectralType) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """A lambda file holds {"lambda": [...]} in quiver vertex order, or
    {"lambda": {"[i,j]": "p/q", "[i,j,k]": ...}} (missing vertices are 0),
    plus an optional "alpha" list (default: the dimension vector of st)."""
    q, a = quiver_of(st)
    d = _read_json(path)
    if not isinstance(d, dict) or "lambda" not in d:
        raise UsageError("lambda file must be an object with a 'lambda' entry")
    raw = d["lambda"]
    try:
        if isinstance(raw, list):
            if len(raw) != q.n:
                raise UsageError(f"lambda has {len(raw)} entries, the quiver has {q.n} vertices")
            lam = tuple(to_fraction(x) for x in raw)
        elif isinstance(raw, dict):
            keys = {_vertex_key(v): idx for idx, v in enumerate(q.vertices)}
            vals = [Fraction(0)] * q.n
            for k, x in raw.items():
                if k.replace(" ", "") not in keys:
                    raise UsageError(f"unknown vertex {k}")
                vals[keys[k.replace(' ', '')]] = to_fraction(x)
            lam = tuple(vals)
        else:
            raise UsageError("'lambda' must be a list or an object")
        alpha = tuple(int(x) for x in d.get("alpha", a))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"invalid lambda entry: {e}") from e
    if len(alpha) != q.n:
        raise UsageError(f"alpha has {len(alpha)} entries, the quiver has {q.n} vertices")
    return lam, alpha


def read_tuple(path: str) -> tuple[HTLTuple, HTLSymbolData | None]:
    d = _read_json(path)
    try:
        A = HTLTuple.from_json(d)
        h = HTLSymbolData.from_json(d["symbol"]) if "symbol" in d else None
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise UsageError(f"invalid tuple file: {e}") from e
    if h is not None and len(h.points) != len(A.points):
        raise UsageError("symbol data and tuple have different numbers of points")
    return A, h


def parse_choice(text: str, npoints: int) -> tuple[int, ...]:
    try:
        t = tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise UsageError(f"choice must be comma-separated block indices: {text!r}") from e
    if len(t) != npoints:
        raise UsageError(f"choice has {len(t)} entries for {npoints} points")
    if any(j < 1 for j in t):
        raise UsageError("block indices are 1-based")
    return t


def resolve_choice(A: HTLTuple, h: HTLSymbolData | None, t: Sequence[int],
                   xi: str | None) -> McChoice:
    """Chosen blocks' polynomial parts and head eigenvalues: from the symbol
    data if present, else from the formal reduction of each point (blocks in
    sorted polynomial order) with head eigenvalues from --xi or, when the
    block residue has a single eigenvalue, that eigenvalue."""
    if h is not None:
        try:
            return choice_of(h, t)
        except ValueError as e:
            raise UsageError(str(e)) from e
    given = None
    if xi is not None:
        try:
            given = [to_fraction(x) for x in xi.split(",")]
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"invalid --xi: {xi!r}") from e
        if len(given) != len(t):
            raise UsageError("--xi needs one eigenvalue per point")
    polys, xis = [], []
    for i, (coeffs, j) in enumerate(zip(A.points, t)):
        fbs = formal_reduction(list(coeffs))
        if j > len(fbs):
            raise UsageError(f"point {i} has {len(fbs)} blocks, block {j} requested")
        fb = fbs[j - 1]
        ev = fb.residue.eigenvalues_rational()
        if given is not None:
            if given[i] not in ev:
                raise UsageError(f"{fmt(given[i])} is not an eigenvalue of block {j} at point {i}")
            x = given[i]
        elif len(ev) == 1:
            x = next(iter(ev))
        else:
            raise UsageError(f"block {j} at point {i} has several eigenvalues; pass --xi "
                             "or include symbol data")
        polys.append(fb.poly)
        xis.append(x)
    return McChoice(tuple(polys), tuple(xis))


# ------------------------------------------------------------------ subcommands

def cmd_parse(args, out) -> int:
    st = parse_spectral_type(args.st)
    canon = st.canonical()
    out.write(str(canon) + "\n")
    for i, pt in enumerate(canon.points):
        out.write(f"point {i}: pole order {pt.pole_order}, {pt.m} block(s), sizes "
                  f"{[b.size for b in pt.blocks]}, chains {[list(b.chain) for b in pt.blocks]}\n")
    return 0


def cmd_quiver(args, out) -> int:
    st = _spectral_type(args.st)
    q, a = quiver_of(st)
    _emit({"quiver": q.to_json(), "alpha": list(a), "vertex_tags": [str(v) for v in q.vertices]},
          args.out, out)
    return 0


def cmd_rigidity(args, out) -> int:
    out.write(f"{rigidity_index(_spectral_type(args.st))}\n")
    return 0


def cmd_shape(args, out) -> int:
    st = _spectral_type(args.st)
    _emit(shape_of(st).to_json(), args.out, out)
    return 0


def cmd_check_ds(args, out) -> int:
    st = _spectral_type(args.st)
    lam, alpha = read_lambda(args.lambda_file, st)
    mode = Mode.DIF if args.mode == "dif" else Mode.PLAIN
    _emit(sigma_membership(st, lam, alpha, mode).to_json(), args.out, out)
    return 0


def cmd_reduce(args, out) -> int:
    st = _spectral_type(args.st)
    lam, alpha = read_lambda(args.lambda_file, st)
    try:
        tr = reduce_to_fundamental(st, lam, alpha)
    except StuckError as e:
        raise MathError(f"reduction stuck: {e}") from e
    _emit(tr.to_json(), args.out, out)
    return 0


def _mc(A: HTLTuple, t, ch: McChoice) -> HTLTuple:
    try:
        return middle_convolution(A, t, ch)
    except McError as e:
        raise MathError(str(e)) from e


def cmd_mc_apply(args, out) -> int:
    A, h = read_tuple(args.tuple)
    t = parse_choice(args.choice, len(A.points))
    ch = resolve_choice(A, h, t, args.xi)
    _emit(_mc(A, t, ch).to_json(), args.out, out)
    return 0


def verify_instance(A: HTLTuple, h: HTLSymbolData | None, t, ch: McChoice, seed: int) -> dict:
    B = _mc(A, t, ch)
    C = _mc(B, t, ch.dual())
    g = equivalent(C, A, seed=seed)
    B_add = add_choice(A, ch)
    cd = canonical_datum(B_add)
    qp = cd.Q @ cd.P
    report = {
        "choice": list(t),
        "xi": fmt(ch.xi),
        "rank_in": A.rank,
        "rank_out": B.rank,
        "involution": g is not None,
        "irreducible_in": is_irreducible(A),
        "irreducible_out": is_irreducible(B),
        "qp_is_minus_xi": qp == RatMatrix.scalar(A.rank, -ch.xi),
    }
    if h is not None:
        problems = check_mc_prediction(B, predict_mc_data(h, t, cd.dim_W))
        report["prediction_problems"] = problems
    return report


def _report_ok(r: dict) -> bool:
    return (r["involution"] and r["qp_is_minus_xi"] and (r["irreducible_out"] or not r["irreducible_in"])
            and not r.get("prediction_problems"))


def cmd_mc_verify(args, out) -> int:
    seed = int(os.environ.get("SPECTRA_SEED", "0"))
    reports = []
    if args.tuple:
        if not args.choice:
            raise UsageError("--choice is required with --tuple")
        A, h = read_tuple(args.tuple)
        t = parse_choice(args.choice, len(A.points))
        reports.append(verify_instance(A, h, t, resolve_choice(A, h, t, args.xi), seed))
    else:
        from .sampling import random_mc_instance
        rng = random.Random(seed)
        for _ in range(args.samples):
            inst = random_mc_instance(rng)
            ch = choice_of(inst.data, inst.choice)
            reports.append(verify_instance(inst.tuple, inst.data, inst.choice, ch, seed))
    ok = all(_report_ok(r) for r in reports)
    _emit({"ok": ok, "seed": seed, "instances": reports}, args.out, out)
    return 0 if ok else 1


def cmd_enumerate(args, out) -> int:
    b = SearchBounds()
    if args.bounds:
        try:
            b = SearchBounds.from_json(_read_json(args.bounds))
        except (TypeError, ValueError) as e:
            raise UsageError(f"invalid bounds: {e}") from e
    try:
        res = enumerate_fundamental(args.idx, b)
    except ValueError as e:
        raise UsageError(str(e)) from e
    doc = res.to_json()
    doc["effectiveness_filter"] = "reconstructed (divisibility test for generic lambda)"
    code = 0
    if args.fixture is not None:
        tables = load_fixtures(args.fixture or None)
        if args.idx not in tables:
            raise UsageError(f"fixture has no table for idx {args.idx}")
        diff = compare_with_fixture(res, tables[args.idx])
        doc["fixture_diff"] = diff.to_json()
        for line in diff.lines():
            args.err.write(line + "\n")
        code = 0 if diff.ok else 1
    _emit(doc, args.out, out)
    return code


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectra", description="Spectral types, quivers and middle convolution.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="canonical form and per-point summary")
    s.add_argument("st")
    s.set_defaults(fn=cmd_parse)

    for name, fn, help_ in (("quiver", cmd_quiver, "quiver JSON and dimension vector"),
                            ("shape", cmd_shape, "shape JSON")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("st")
        s.add_argument("--out", default="-")
        s.set_defaults(fn=fn)

    s = sub.add_parser("rigidity", help="index of rigidity")
    s.add_argument("st")
    s.set_defaults(fn=cmd_rigidity)

    s = sub.add_parser("check-ds", help="membership in Sigma_lambda")
    s.add_argument("--st", required=True)
    s.add_argument("--lambda", dest="lambda_file", required=True)
    s.add_argument("--mode", choices=("dif", "plain"), default="dif")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_check_ds)

    s = sub.add_parser("reduce", help="reduce (alpha, lambda) to a fundamental or real-root state")
    s.add_argument("--st", required=True)
    s.add_argument("--lambda", dest="lambda_file", required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_reduce)

    mc = sub.add_parser("mc", help="middle convolution of a matrix tuple")
    mcs = mc.add_subparsers(dest="mc_command", required=True)
    s = mcs.add_parser("apply")
    s.add_argument("--tuple", required=True)
    s.add_argument("--choice", required=True)
    s.add_argument("--xi", help="head eigenvalue per point, comma-separated p/q")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_mc_apply)
    s = mcs.add_parser("verify")
    s.add_argument("--tuple")
    s.add_argument("--choice")
    s.add_argument("--xi")
    s.add_argument("--samples", type=int, default=5,
                   help="random instances when no tuple is given (seed from SPECTRA_SEED)")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_mc_verify)

    s = sub.add_parser("enumerate", help="fundamental spectral types of a rigidity index")
    s.add_argument("--idx", type=int, required=True)
    s.add_argument("--bounds")
    s.add_argument("--fixture", nargs="?", const="",
                   help="compare with a fixture file (bundled tables when no path is given)")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_enumerate)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    args.err = err
    try:
        return args.fn(args, out)
    except (UsageError, SpectralTypeError) as e:
        err.write(f"error: {e}\n")
        return 2
    except (MathError, McError, StuckError) as e:
        err.write(f"error: {e}\n")
        return 1
    except ValueError as e:
        err.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())
