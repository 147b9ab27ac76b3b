"""``arr``: command-line front end.

Exit codes: 0 success (including passing reports), 1 correctness alarm or a
failing report, 2 usage, input or resource errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from fractions import Fraction

from .algebra import Poly, characteristic_from_coboundary, region_counts, tutte_from_coboundary
from .core import Arrangement, arrangement_rank
from .errors import ArrangementError, CorrectnessAlarm, HypothesisViolated, ResourceLimit
from .finite_field import DEFAULT_BUDGET, FieldConfig

log = logging.getLogger("tuttearr")

FAMILY_KINDS = (
    "braid", "coxeter_b", "coxeter_d", "threshold", "shi", "linial", "semiorder",
    "catalan", "generic_deformation", "graphical", "slope_deformation",
)
EGF_IDENTITIES = {
    "an": "braid",
    "bn": "coxeter_b",
    "dn": "coxeter_d",
    "threshold": "threshold",
    "generic": "generic_deformation",
}


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("ARR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _config(args) -> FieldConfig:
    return FieldConfig(
        primes=tuple(_ints(args.primes)) if args.primes else None,
        budget=_budget(args),
        workers=args.workers,
    )


# input


def _add_source(p: argparse.ArgumentParser, positional: bool = True):
    if positional:
        p.add_argument("input", nargs="?", help="arrangement JSON file, or - for stdin")
    p.add_argument("--kind", choices=FAMILY_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--slopes", help="comma-separated slope set for slope_deformation")
    p.add_argument("--edges", help="edge list like 1-2,2-3 for graphical")


def _add_method(p: argparse.ArgumentParser):
    p.add_argument("--method", default="ff", choices=("ff", "ff-fast", "brute", "moebius", "auto"))
    p.add_argument("--primes", help="comma-separated primes overriding the prime plan")
    p.add_argument("--budget", type=int, help="cap on enumerated points (default $ARR_BUDGET or 1e9)")
    p.add_argument("--workers", type=int, default=1)


def build_family(kind: str, n, slopes=None, edges=None) -> Arrangement:
    from .families import SimpleGraph, graphical, make, slope_deformation

    if kind == "graphical":
        if edges is None:
            raise ValueError("graphical needs --edges")
        return graphical(SimpleGraph.parse(edges, n))
    if n is None:
        raise ValueError("--n is required")
    if kind == "slope_deformation":
        if slopes is None:
            raise ValueError("slope_deformation needs --slopes")
        return slope_deformation(n, _ints(slopes))
    return make(kind, n)


def load_arrangement(args) -> Arrangement:
    if getattr(args, "input", None):
        if args.kind:
            raise ValueError("give either an input file or --kind, not both")
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        return Arrangement.from_json(text)
    if not args.kind:
        raise ValueError("no arrangement: give a file, - for stdin, or --kind/--n")
    return build_family(args.kind, args.n, args.slopes, args.edges)


def compute_coboundary(arr: Arrangement, args) -> Poly:
    from .pipeline import coboundary

    config = _config(args)
    if args.method == "ff":
        try:
            return coboundary(arr, "ff", config)
        except ResourceLimit as exc:
            print(f"arr: {exc}; falling back to brute force", file=sys.stderr)
            return coboundary(arr, "brute")
    return coboundary(arr, args.method, config)


# verbs


def cmd_family(args):
    return load_arrangement(args).to_dict()


def cmd_coboundary(args):
    return compute_coboundary(load_arrangement(args), args)


def cmd_tutte(args):
    arr = load_arrangement(args)
    return tutte_from_coboundary(compute_coboundary(arr, args), arrangement_rank(arr))


def cmd_char(args):
    arr = load_arrangement(args)
    return characteristic_from_coboundary(compute_coboundary(arr, args), arr.n, arrangement_rank(arr))


def cmd_regions(args):
    arr = load_arrangement(args)
    r = arrangement_rank(arr)
    chi = characteristic_from_coboundary(compute_coboundary(arr, args), arr.n, r)
    regions, bounded = region_counts(chi, arr.n, r)
    return {"regions": regions, "bounded": bounded}


def _dc(arr: Arrangement, index):
    from .oracles import deletion_contraction_check

    indices = [index] if index is not None else range(len(arr))
    checks, skipped = [], []
    for i in indices:
        try:
            checks.append((i, deletion_contraction_check(arr, i)))
        except HypothesisViolated as exc:
            if index is not None:
                raise
            skipped.append({"index": i, "reason": str(exc)})
    if index is not None:
        return checks[0][1].to_dict()
    return {
        "identity": "deletion_contraction",
        "pass": all(c.passed for _, c in checks),
        "checked": [dict(c.to_dict(), index=i) for i, c in checks],
        "skipped": skipped,
    }


def _triple(arr: Arrangement, args):
    from .pipeline import coboundary

    config = _config(args)
    ff = coboundary(arr, "auto", config)
    bf = coboundary(arr, "brute")
    mo = coboundary(arr, "moebius")
    return {
        "identity": "triple",
        "finite_field": ff.to_dict(),
        "brute": bf.to_dict(),
        "moebius": mo.to_dict(),
        "pass": ff == bf == mo,
    }


def _expectation(arr: Arrangement, args):
    from .oracles import expected_characteristic
    from .pipeline import point_polynomial

    rows = []
    pp = point_polynomial(arr, "brute")
    for text in (args.t or "0,1/2,2/3,1").split(","):
        t = Fraction(text)
        lhs = expected_characteristic(arr, t)
        rhs = pp.evaluate({"t": t})
        rows.append({"t": str(t), "lhs": lhs.to_dict(), "rhs": tpoly_q(rhs).to_dict(), "pass": lhs == rhs})
    return {"identity": "expectation", "pass": all(r["pass"] for r in rows), "checks": rows}


def tpoly_q(p: Poly) -> Poly:
    if p.vars == ("q",):
        return p
    return Poly(("q",), {(e[0],): c for e, c in p.terms.items()}) if p.terms else Poly(("q",))


def _oracle(kind: str, args):
    from .families import make, slope_deformation
    from .oracles import CheckReport, combinatorial_oracle
    from .pipeline import point_polynomial

    n = args.n
    if n is None:
        raise ValueError("--n is required")
    if kind == "forests":
        arr = make("generic_deformation", n)
    elif kind == "all_graphs":
        arr = make("threshold", n)
    else:
        if args.slopes is None:
            raise ValueError("planted needs --slopes")
        arr = slope_deformation(n, _ints(args.slopes))
    slopes = _ints(args.slopes) if args.slopes else None
    lhs = combinatorial_oracle(kind, n, slopes)
    rhs = point_polynomial(arr, "auto")
    return CheckReport(f"oracle:{kind}", lhs, rhs).to_dict()


def cmd_verify(args):
    if args.check in ("forests", "all_graphs", "planted_A_graphs"):
        return _oracle(args.check, args)
    arr = load_arrangement(args)
    if args.check == "dc":
        return _dc(arr, args.index)
    if args.check == "triple":
        return _triple(arr, args)
    if args.check == "expectation":
        return _expectation(arr, args)
    raise ValueError(args.check)


def cmd_egf(args):
    from . import egf

    if args.egf_cmd == "verify":
        qs = _ints(args.q) if args.q else None
        ident = args.identity
        if ident.startswith("esa:"):
            kind = ident[4:]
            slopes = _ints(args.slopes) if args.slopes else None
            return egf.verify_esa(kind, qs, args.order, slopes, args.method).to_dict()
        if ident not in EGF_IDENTITIES:
            raise ValueError(f"unknown identity {ident!r}")
        return egf.verify_family_egf(EGF_IDENTITIES[ident], qs, args.order, args.method).to_dict()
    slopes = _ints(args.slopes)
    res = egf.limit_ratio(slopes, args.order, args.t0)
    out = {
        "slopes": sorted(set(slopes)),
        "order": args.order,
        "t0": args.t0,
        "threshold": res.threshold,
        "stabilized_at": res.stabilized_at,
        "ratio": res.ratio.to_dict(),
    }
    if args.t0:
        out["inverse"] = res.ratio.inverse().to_dict()
    return out


def cmd_graph(args):
    from .codes import coloring_from_arrangement, coloring_polynomial
    from .families import SimpleGraph

    g = SimpleGraph.parse(args.edges or "", args.n)
    lhs = coloring_polynomial(g, args.q, _budget(args))
    if not args.check:
        return lhs
    from .oracles import CheckReport

    return CheckReport("coloring", lhs, coloring_from_arrangement(g, args.q)).to_dict()


def cmd_code(args):
    from .codes import GeneratorMatrix, codeweight_polynomial, greene_check

    if args.generator:
        text = sys.stdin.read() if args.generator == "-" else open(args.generator).read()
        U = GeneratorMatrix.from_dict(json.loads(text))
    elif args.rows:
        if args.p is None:
            raise ValueError("--rows needs --p")
        rows = tuple(tuple(int(c) for c in row) for row in args.rows.split(";"))
        U = GeneratorMatrix(args.p, rows)
    else:
        raise ValueError("give --generator FILE or --p with --rows 111;011")
    if args.p is not None and args.p != U.p:
        raise ValueError(f"--p {args.p} disagrees with generator p={U.p}")
    if args.code_cmd == "weight":
        return codeweight_polynomial(U, _budget(args))
    return greene_check(U, strict=False).to_dict()


# plumbing


def build_parser() -> argparse.ArgumentParser:
    # --format and -v work before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(
        prog="arr",
        description="Tutte, coboundary and characteristic polynomials of integer arrangements.",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("family", help="emit a family member as arrangement JSON", parents=[common])
    _add_source(p, positional=False)
    p.set_defaults(func=cmd_family)

    for name, func, what in (
        ("coboundary", cmd_coboundary, "coboundary polynomial chibar(q,t)"),
        ("tutte", cmd_tutte, "Tutte polynomial T(x,y)"),
        ("char", cmd_char, "characteristic polynomial chi(q)"),
        ("regions", cmd_regions, "region and bounded-region counts"),
    ):
        p = sub.add_parser(name, help=what, parents=[common])
        _add_source(p)
        _add_method(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run an identity check", parents=[common])
    p.add_argument("check", choices=("dc", "triple", "expectation", "forests", "all_graphs", "planted_A_graphs"))
    _add_source(p)
    _add_method(p)
    p.add_argument("--index", type=int, help="hyperplane for dc (default: every eligible one)")
    p.add_argument("--t", help="comma-separated rationals for expectation (default 0,1/2,2/3,1)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("egf", help="generating-function identities", parents=[common])
    esub = p.add_subparsers(dest="egf_cmd", required=True)
    v = esub.add_parser("verify", parents=[common])
    v.add_argument("--identity", required=True, help="an|bn|dn|threshold|generic|esa:<kind>")
    v.add_argument("--order", type=int, default=5)
    v.add_argument("--q", help="comma-separated integer q values")
    v.add_argument("--slopes", help="slopes for esa:slope_deformation")
    v.add_argument("--method", default="auto", choices=("ff", "ff-fast", "brute", "moebius", "auto"))
    v.set_defaults(func=cmd_egf)
    lim = esub.add_parser("limit", parents=[common])
    lim.add_argument("--slopes", required=True)
    lim.add_argument("--order", type=int, default=4)
    lim.add_argument("--t0", action="store_true", help="set t = 0")
    lim.set_defaults(func=cmd_egf)

    p = sub.add_parser("graph", help="graph colorings", parents=[common])
    gsub = p.add_subparsers(dest="graph_cmd", required=True)
    c = gsub.add_parser("coloring", parents=[common])
    c.add_argument("--edges", default="")
    c.add_argument("--n", type=int, help="vertex count (default: largest vertex in --edges)")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--budget", type=int)
    c.add_argument("--check", action="store_true", help="compare with q^c chibar of the graphical arrangement")
    c.set_defaults(func=cmd_graph)

    p = sub.add_parser("code", help="linear codes", parents=[common])
    csub = p.add_subparsers(dest="code_cmd", required=True)
    for name in ("weight", "greene"):
        c = csub.add_parser(name, parents=[common])
        c.add_argument("--generator", help='JSON file {"p":2,"rows":[[1,1,1]]}, or - for stdin')
        c.add_argument("--p", type=int)
        c.add_argument("--rows", help="rows as digit strings separated by ';', e.g. 1001;0111")
        c.add_argument("--budget", type=int)
        c.set_defaults(func=cmd_code)
    return ap


def _jsonable(obj):
    if isinstance(obj, Poly):
        return obj.to_dict()
    return obj


def render(obj, fmt: str) -> str:
    if fmt == "text":
        if isinstance(obj, Poly):
            return str(obj)
        if isinstance(obj, dict):
            lines = []
            for k, v in obj.items():
                if isinstance(v, dict) and "terms" in v:
                    v = str(Poly.from_dict(v))
                elif isinstance(v, (dict, list)):
                    v = json.dumps(v)
                lines.append(f"{k}: {v}")
            return "\n".join(lines)
    return json.dumps(_jsonable(obj))


def _glue_negative(argv: list[str]) -> list[str]:
    """Let ``--slopes -1,0,1`` through; argparse would read -1,0,1 as an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--slopes", "--q", "--primes") and i + 1 < len(argv) and re.match(r"-\d", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "json")
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING, stream=sys.stderr)
    try:
        result = args.func(args)
    except CorrectnessAlarm as exc:
        print(f"arr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ArrangementError, ValueError, KeyError, OSError, IndexError) as exc:
        print(f"arr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(render(result, fmt), file=out)
    if isinstance(result, dict) and result.get("pass") is False:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
