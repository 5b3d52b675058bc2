"""Command-line front end.

Machine-readable results go to stdout as ``key=value`` lines; anything meant
for a human goes to stderr.  Decision subcommands exit 0 for yes and 1 for no;
usage errors exit 2 and unreadable input exits 3.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import hardness as hd
from .classic import bisect_frechet, decide_frechet
from .decide_general import DeciderStats, bisect_general, decide_shortcut_3approx
from .decide_vertex import bisect_vertex, decide_vertex
from .geom import CurveFormatError, DegenerateCurve, PolygonalCurve, read_curve, write_curve
from .oracle import CurveTooLarge, brute_frechet, exhaustive_vertex_shortcut, refine_and_decide
from .render import render_svg


EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class _InputError(Exception):
    pass


class _UsageError(Exception):
    pass


def _out(**kv) -> None:
    for k, v in kv.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, float):
            v = repr(v)
        print(f"{k}={v}")


def _load(path: str) -> PolygonalCurve:
    try:
        _, pts = read_curve(path)
        return PolygonalCurve(pts)
    except (OSError, CurveFormatError, DegenerateCurve, ValueError) as e:
        raise _InputError(f"{path}: {e}") from e


def _pair(a):
    return _load(a.target), _load(a.base)


def _positive(v: str) -> float:
    x = float(v)
    if not x >= 0:
        raise argparse.ArgumentTypeError("must be a non-negative number")
    return x


# ---------------------------------------------------------------------------
# subcommands


def cmd_frechet(a) -> int:
    T, B = _pair(a)
    ok = decide_frechet(T, B, a.delta).feasible
    _out(decision=ok, delta=a.delta)
    return EXIT_YES if ok else EXIT_NO


def cmd_decide_general(a) -> int:
    T, B = _pair(a)
    st = DeciderStats()
    d = decide_shortcut_3approx(T, B, a.delta, witness=a.witness is not None, stats=st)
    _out(verdict=d.verdict.value, delta=a.delta, cells=st.cells_visited, arrays=st.arrays_allocated)
    if d.witness is not None:
        _out(witness=";".join(f"{p[0]!r},{p[1]!r}" for p in d.witness))
        if isinstance(a.witness, str):
            write_curve(a.witness, "witness", list(d.witness))
        if a.out_prefix:
            write_curve(f"{a.out_prefix}_witness.curve", "witness", list(d.witness))
    return EXIT_YES if d.within else EXIT_NO


def cmd_decide_vertex(a) -> int:
    T, B = _pair(a)
    ok = decide_vertex(T, B, a.delta)
    _out(decision=ok, delta=a.delta)
    return EXIT_YES if ok else EXIT_NO


def cmd_bisect(a) -> int:
    T, B = _pair(a)
    if a.mode == "classic":
        _out(mode="classic", distance=bisect_frechet(T, B, a.tol), tol=a.tol)
    elif a.mode == "vertex":
        _out(mode="vertex", distance=bisect_vertex(T, B, a.tol), tol=a.tol)
    else:
        lo, hi = bisect_general(T, B, a.tol)
        _out(mode="general", lower=lo, upper=hi, tol=a.tol)
        print("general mode: the shortcut distance lies in [lower, upper]", file=sys.stderr)
    return EXIT_YES


def _values(text: str) -> tuple:
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as e:
        raise _UsageError(f"bad --values {text!r}") from e
    return vals


def cmd_gen_hardness(a) -> int:
    vals = _values(a.values)
    if a.n is not None and a.n != len(vals):
        raise _UsageError(f"--n {a.n} but {len(vals)} values given")
    try:
        c = hd.generate(hd.SubsetSumInstance(vals, a.sigma))
    except hd.ParamViolation as e:
        raise _UsageError(str(e)) from e
    pre = a.out_prefix
    write_curve(f"{pre}_T.curve", "T", c.T, digits=30)
    write_curve(f"{pre}_B.curve", "B", c.B, digits=30)
    write_curve(f"{pre}_T.rcurve", "T", c.T, digits=0)
    write_curve(f"{pre}_B.rcurve", "B", c.B, digits=0)
    Path(f"{pre}_meta.json").write_text(json.dumps(c.metadata(), indent=1) + "\n", encoding="utf-8")
    _out(n=len(vals), T_vertices=len(c.T), B_vertices=len(c.B), prefix=pre)
    return EXIT_YES


def _construction_from_files(pre: str) -> hd.Construction:
    try:
        meta = json.loads(Path(f"{pre}_meta.json").read_text(encoding="utf-8"))
        _, T = read_curve(f"{pre}_T.rcurve", exact=True)
        _, B = read_curve(f"{pre}_B.rcurve", exact=True)
        inst = hd.SubsetSumInstance(tuple(meta["values"]), int(meta["sigma"]))
        params = hd.GadgetParams(**{k: Fraction(v) for k, v in meta["params"].items()})
    except (OSError, KeyError, ValueError, TypeError, CurveFormatError) as e:
        raise _InputError(f"{pre}: {e}") from e
    c = hd.generate(inst, params)
    if len(T) != len(c.T) or len(B) != len(c.B):
        raise _InputError(f"{pre}: curve files do not match the metadata")
    # audit what is on disk, not what we would have written
    c.T, c.B = [tuple(p) for p in T], [tuple(p) for p in B]
    return c


def cmd_verify_hardness(a) -> int:
    if a.out_prefix:
        c = _construction_from_files(a.out_prefix)
    elif a.values:
        try:
            c = hd.generate(hd.SubsetSumInstance(_values(a.values), a.sigma))
        except hd.ParamViolation as e:
            raise _UsageError(str(e)) from e
    else:
        raise _UsageError("verify-hardness needs --out-prefix or --values/--sigma")
    rep = hd.audit_construction(c)
    for e in rep.failures():
        print(f"audit failed: {e.check} gadget={e.gadget} {e.detail}", file=sys.stderr)
    count, feas = hd.enumerate_subsets(c)
    sets = ", ".join("{" + ",".join(map(str, sorted(I))) + "}" for I in feas) or "none"
    _out(audits_passed=rep.passed, audit_checks=len(rep), subsets=count, feasible=len(feas))
    _out(report=f"{count} subsets enumerated, {len(feas)} feasible: {sets}")
    return EXIT_YES if rep.passed else EXIT_NO


def cmd_render(a) -> int:
    T, B = _pair(a)
    wit, gates = None, None
    if a.delta is not None:
        gates = {}
        d = decide_shortcut_3approx(T, B, a.delta, witness=a.witness, trace=gates)
        wit = d.witness
    svg = render_svg(T, B, a.delta, witness=wit, gates=gates, grid=a.grid)
    if a.out:
        Path(a.out).write_text(svg, encoding="utf-8")
        _out(svg=a.out)
    else:
        sys.stdout.write(svg)
    return EXIT_YES


def cmd_oracle(a) -> int:
    print("oracle subcommands are for debugging; their interface is unstable", file=sys.stderr)
    T, B = _pair(a)
    try:
        if a.which == "brute":
            lo, hi = brute_frechet(T, B, a.k)
            _out(lower=lo, upper=hi, k=a.k)
            return EXIT_YES
        if a.delta is None:
            raise _UsageError(f"oracle {a.which} needs --delta")
        if a.which == "vertex":
            ok = exhaustive_vertex_shortcut(T, B, a.delta)
        else:
            ok = refine_and_decide(T, B, a.delta, a.k)
    except CurveTooLarge as e:
        raise _UsageError(str(e)) from e
    _out(decision=ok, delta=a.delta)
    return EXIT_YES if ok else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shortcut-frechet", description="Shortcut Fréchet distance tools")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    def pair(sp):
        sp.add_argument("target", help="curve file for T")
        sp.add_argument("base", help="curve file for B")

    sp = sub.add_parser("frechet", help="classic Fréchet decision")
    pair(sp)
    sp.add_argument("--delta", type=_positive, required=True)
    sp.set_defaults(fn=cmd_frechet)

    sp = sub.add_parser("decide-general", help="3-approximate shortcut decision")
    pair(sp)
    sp.add_argument("--delta", type=_positive, required=True)
    sp.add_argument("--witness", nargs="?", const=True, default=None, metavar="OUT.curve",
                    help="reconstruct a witness; optionally write it to OUT.curve")
    sp.add_argument("--out-prefix")
    sp.set_defaults(fn=cmd_decide_general)

    sp = sub.add_parser("decide-vertex", help="exact vertex-restricted shortcut decision")
    pair(sp)
    sp.add_argument("--delta", type=_positive, required=True)
    sp.set_defaults(fn=cmd_decide_vertex)

    sp = sub.add_parser("bisect", help="distance by bisection over a decider")
    pair(sp)
    sp.add_argument("--mode", choices=("classic", "vertex", "general"), default="classic")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(fn=cmd_bisect)

    sp = sub.add_parser("gen-hardness", help="SUBSET-SUM reduction instance")
    sp.add_argument("--n", type=int)
    sp.add_argument("--values", required=True)
    sp.add_argument("--sigma", type=int, required=True)
    sp.add_argument("--out-prefix", required=True)
    sp.set_defaults(fn=cmd_gen_hardness)

    sp = sub.add_parser("verify-hardness", help="audits plus one-touch subset enumeration")
    sp.add_argument("--out-prefix")
    sp.add_argument("--values")
    sp.add_argument("--sigma", type=int)
    sp.set_defaults(fn=cmd_verify_hardness)

    sp = sub.add_parser("render", help="SVG of curves and free space")
    pair(sp)
    sp.add_argument("--delta", type=_positive)
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_render)

    sp = sub.add_parser("oracle", help="brute-force references (unstable)")
    sp.add_argument("which", choices=("brute", "vertex", "refine"))
    pair(sp)
    sp.add_argument("--delta", type=_positive)
    sp.add_argument("--k", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0, help="accepted for interface symmetry; oracles are deterministic")
    sp.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return a.fn(a)
    except _InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
