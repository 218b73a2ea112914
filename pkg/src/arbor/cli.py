"""Command-line interface.

Exit codes: 0 success, 1 failed check (witness printed), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import checks, dendriform as dend, dual, hopf
from .coefficients import Params, format_coeff, parse_rational
from .lincomb import LinComb, parse_lincomb
from .trees import Forest, ParseError, enumerate_forests, enumerate_trees, parse_key

OPERADS = {"com": "unordered", "ass": "planar", "k": "k"}


class UsageError(Exception):
    pass


def _add_algebra_flags(p: argparse.ArgumentParser, params: bool = True) -> None:
    p.add_argument("--operad", choices=sorted(OPERADS), default="com", help="com (unordered), ass (planar), k")
    p.add_argument("--colors", type=int, default=None, help="number of edge colors n (default 2)")
    if params:
        p.add_argument("--q1", help="comma-separated rationals q1_1,...,q1_n")
        p.add_argument("--q2", help="comma-separated rationals q2_1,...,q2_n")
        p.add_argument("--symbolic", action="store_true", help="formal parameters (default when --q1/--q2 absent)")


def _add_dend_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--colors", type=int, default=None, help="arity n of the trees (default 2)")
    p.add_argument("--k", type=int, default=None, help="color k in q1_j = delta_kj (default n)")
    p.add_argument("--l", type=int, default=None, help="color l in q2_j = delta_lj (default 1)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arbor", description="Hopf algebras of colored rooted trees.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coproduct", help="deformed coproduct")
    _add_algebra_flags(p)
    p.add_argument("--reduced", action="store_true", help="reduced coproduct")
    p.add_argument("expr")

    p = sub.add_parser("antipode", help="antipode")
    _add_algebra_flags(p)
    p.add_argument("--method", choices=("series", "partitions"), default="series")
    p.add_argument("expr")

    p = sub.add_parser("counit", help="counit")
    _add_algebra_flags(p)
    p.add_argument("expr")

    p = sub.add_parser("convolve-check", help="check S*id = id*S = u eps on the input")
    _add_algebra_flags(p)
    p.add_argument("expr")

    for name, text in (("dual-star", "D_s * D_t"), ("bracket", "[D_s, D_t]")):
        p = sub.add_parser(name, help=text)
        _add_algebra_flags(p)
        p.add_argument("s")
        p.add_argument("t")

    for name, text in (("prelie", "pre-Lie product by cut counting"), ("graft-star", "grafting product")):
        p = sub.add_parser(name, help=text)
        _add_algebra_flags(p, params=False)
        p.add_argument("--colorset", help="comma-separated colors P (default all)")
        p.add_argument("s")
        p.add_argument("t")

    p = sub.add_parser("embed-prelie", help="embedding into the free pre-Lie algebra")
    _add_algebra_flags(p, params=False)
    p.add_argument("expr")

    p = sub.add_parser("dendriform", help="star / left / right products of n-ary trees")
    _add_dend_flags(p)
    p.add_argument("--op", choices=("star", "left", "right"), default="star")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("lr-coproduct", help="Loday-Ronco coproduct of n-ary trees")
    _add_dend_flags(p)
    p.add_argument("expr")

    p = sub.add_parser("prune", help="pruning operator on binary trees")
    p.add_argument("--delta", action="store_true", help="print 1 (x) T + P(T) + T (x) 1 instead of P(T)")
    p.add_argument("expr")

    p = sub.add_parser("enumerate", help="list trees of a given size")
    _add_algebra_flags(p, params=False)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--forests", action="store_true", help="forests instead of trees")
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("check", help="run a property suite")
    _add_algebra_flags(p)
    p.add_argument("--suite", choices=checks.SUITES, required=True)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--k", type=int, default=None, help="dend-hopf: color k (default n)")
    p.add_argument("--l", type=int, default=None, help="dend-hopf: color l (default 1)")
    p.add_argument("--form", choices=("displayed", "complete"), default="displayed", help="dend-hopf identity form")
    return ap


def _n(args) -> int:
    n = 2 if args.colors is None else args.colors
    if n < 1:
        raise UsageError("--colors must be at least 1")
    return n


def _row(text: str, n: int, name: str) -> list:
    try:
        vals = [parse_rational(x) for x in text.split(",")]
    except ValueError as e:
        raise UsageError(f"--{name}: {e}") from None
    if len(vals) != n:
        raise UsageError(f"--{name} has {len(vals)} entries, expected {n}")
    return vals


def _params(args, n: int) -> Params | None:
    given = args.q1 is not None or args.q2 is not None
    if given and args.symbolic:
        raise UsageError("--symbolic conflicts with --q1/--q2")
    if given:
        if args.q1 is None or args.q2 is None:
            raise UsageError("--q1 and --q2 must be given together")
        return Params.concrete(_row(args.q1, n, "q1"), _row(args.q2, n, "q2"))
    return None


def _ctx(args) -> hopf.HopfContext:
    n = _n(args)
    flavor = OPERADS[args.operad]
    params = _params(args, n)
    if params is None:
        if flavor == "k":
            raise UsageError("the k operad needs concrete --q1/--q2")
        params = Params.symbolic_params(n)
    try:
        return hopf.HopfContext(flavor, n, params)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _forest_input(text: str, flavor: str, n: int, nvars: int) -> LinComb:
    return parse_lincomb(text, lambda t: parse_key(t, flavor, n), nvars)


def _tree_arg(text: str, flavor: str, n: int):
    key = parse_key(text, flavor, n)
    if len(key) != 1:
        raise UsageError(f"expected a single nonempty tree, got {text!r}")
    return key


def _dend_ctx(args) -> dend.DendCtx:
    n = _n(args)
    k = n if args.k is None else args.k
    l = 1 if args.l is None else args.l
    try:
        return dend.DendCtx(n, k, l)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _nary_input(text: str, n: int) -> LinComb:
    return parse_lincomb(text, lambda t: dend.parse_nary(t, n))


def _colorset(args, n: int) -> tuple[int, ...]:
    if args.colorset is None:
        return tuple(range(1, n + 1))
    try:
        cols = tuple(sorted({int(x) for x in args.colorset.split(",") if x.strip()}))
    except ValueError:
        raise UsageError(f"--colorset must be comma-separated integers, got {args.colorset!r}") from None
    if any(not 1 <= c <= n for c in cols):
        raise UsageError(f"--colorset entries must lie in 1..{n}")
    return cols


def _cap_degree(d: int) -> None:
    cap = dual.max_degree()
    if d > cap:
        raise UsageError(f"degree {d} exceeds ARBOR_MAX_DEGREE={cap}")


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd in ("coproduct", "antipode", "counit", "convolve-check"):
        ctx = _ctx(args)
        x = _forest_input(args.expr, ctx.flavor, ctx.n, ctx.params.nvars)
        for k in x.terms:
            _cap_degree(k.degree)
        if cmd == "coproduct":
            y = hopf.reduced_coproduct(x, ctx) if args.reduced else hopf.coproduct(x, ctx)
            print(y, file=out)
        elif cmd == "antipode":
            f = hopf.antipode_series if args.method == "series" else hopf.antipode_partitions
            print(f(x, ctx), file=out)
        elif cmd == "counit":
            print(format_coeff(hopf.counit(x)), file=out)
        else:
            if ctx.flavor == "k":
                raise UsageError("the k operad has no product")

            def S(k):
                return hopf.antipode_series(LinComb.basis(k), ctx)

            ue = LinComb.basis(Forest(()), hopf.counit(x))
            a = hopf.convolve(S, hopf.identity, x, ctx)
            b = hopf.convolve(hopf.identity, S, x, ctx)
            print(f"S * id = {a}", file=out)
            print(f"id * S = {b}", file=out)
            if a != ue or b != ue:
                print(f"FAIL: expected {ue}", file=out)
                return 1
            print("PASS", file=out)
        return 0

    if cmd in ("dual-star", "bracket"):
        ctx = _ctx(args)
        if ctx.flavor == "k":
            raise UsageError("dual products are computed for the com and ass operads")
        s, t = (_tree_arg(v, ctx.flavor, ctx.n) for v in (args.s, args.t))
        f = dual.dual_star if cmd == "dual-star" else dual.lie_bracket
        print(f(s, t, ctx), file=out)
        return 0

    if cmd in ("prelie", "graft-star", "embed-prelie"):
        n = _n(args)
        if args.operad != "com":
            raise UsageError("pre-Lie structures are defined for the com operad")
        if cmd == "embed-prelie":
            print(dual.embed_free_prelie(_tree_arg(args.expr, "unordered", n), n), file=out)
            return 0
        cols = _colorset(args, n)
        s, t = (_tree_arg(v, "unordered", n) for v in (args.s, args.t))
        if cmd == "prelie":
            print(dual.prelie_star(s, t, cols, n), file=out)
        else:
            print(dual.grafting_star(s, t, cols), file=out)
        return 0

    if cmd == "dendriform":
        ctx = _dend_ctx(args)
        a, b = _nary_input(args.a, ctx.n), _nary_input(args.b, ctx.n)
        f = {"star": dend.star, "left": dend.left, "right": dend.right}[args.op]
        print(f(a, b, ctx), file=out)
        return 0

    if cmd == "lr-coproduct":
        ctx = _dend_ctx(args)
        x = _nary_input(args.expr, ctx.n)
        y = LinComb.zero()
        for k, c in x.terms.items():
            y = y + dend.lr_coproduct(k, ctx).scale(c)
        print(y, file=out)
        return 0

    if cmd == "prune":
        x = _nary_input(args.expr, 2)
        f = dend.delta_pruning if args.delta else dend.pruning_P
        y = LinComb.zero()
        for k, c in x.terms.items():
            y = y + f(k).scale(c)
        print(y, file=out)
        return 0

    if cmd == "enumerate":
        n = _n(args)
        if args.size < 0:
            raise UsageError("--size must be nonnegative")
        _cap_degree(args.size)
        flavor = OPERADS[args.operad]
        keys = (enumerate_forests if args.forests else enumerate_trees)(flavor, n, args.size)
        if args.count_only:
            print(len(keys), file=out)
        else:
            for k in keys:
                print(k, file=out)
        return 0

    if cmd == "check":
        n = _n(args)
        _cap_degree(args.max_degree)
        flavor = OPERADS[args.operad]
        params = _params(args, n)
        try:
            report = checks.run_suite(
                args.suite,
                flavor=flavor,
                n=n,
                params=params,
                max_degree=args.max_degree,
                k=args.k,
                l=args.l,
                form=args.form,
            )
        except ValueError as e:
            raise UsageError(str(e)) from None
        print(report, file=out)
        return 0 if report.passed else 1

    raise UsageError(f"unknown command {cmd!r}")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _dispatch(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process; returns ``(exit code, stdout text)``."""
    import io

    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
