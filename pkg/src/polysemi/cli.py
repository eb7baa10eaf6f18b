"""Command-line front end.

Exit status: 0 when the query ran (negative or absent answers included),
1 on an engine error, 2 on a usage error or unparsable input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import decompose as dec
from . import invariant_curves as curves
from . import julia_numeric as jn
from . import semiconj_engine as eng
from . import special_forms as sf
from .errors import ParseError, PolysemiError
from .poly_core import AffineMap, ExactScalar, Polynomial, compose, iterate
from .poly_core.polynomial import DEFAULT_DEGREE_CAP

DEGREE_CAP_ENV = "POLYSEMI_DEGREE_CAP"
SEARCH_CAP_ENV = "POLYSEMI_SEARCH_DEGREE_CAP"


class UsageError(Exception):
    pass


# -- conversion --------------------------------------------------------------------
def _poly(text: str) -> Polynomial:
    return Polynomial.parse(text)


def _affine(text: str) -> AffineMap:
    P = _poly(text)
    if P.degree != 1:
        raise UsageError(f"{text!r} is not an affine map a*z + b")
    return AffineMap.from_polynomial(P)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{name} must be positive")
    return value


def _plain(obj):
    """JSON-ready form of engine results; polynomials become their text."""
    if isinstance(obj, (Polynomial, ExactScalar, AffineMap)):
        return str(obj)
    if isinstance(obj, curves.BivariatePoly):
        return f"{obj} = 0"
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    return obj


def _text_lines(obj, indent: str = "") -> list[str]:
    plain = _plain(obj)
    if not isinstance(plain, dict):
        return [f"{indent}{_scalar_text(plain)}"]
    lines = []
    for key, value in plain.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                sub = _text_lines(item, indent + "    ")
                sub[0] = indent + "  - " + sub[0].lstrip()
                lines.extend(sub)
        else:
            lines.append(f"{indent}{key}: {_scalar_text(value)}")
    return lines


def _scalar_text(value) -> str:
    if value is None:
        return "absent"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar_text(v) for v in value) + "]"
    return str(value)


# -- commands ------------------------------------------------------------------------
def cmd_compose(args):
    cap = args.degree_cap
    polys = [_poly(p) for p in args.polys]
    out = polys[-1]
    for P in reversed(polys[:-1]):
        out = compose(P, out, degree_cap=cap)
    return out


def cmd_iterate(args):
    if args.k < 0:
        raise UsageError("iteration count must be nonnegative")
    return iterate(_poly(args.poly), args.k, degree_cap=args.degree_cap)


def cmd_decompose(args):
    P = _poly(args.poly)
    if args.degree is not None:
        return dec.right_factor_of_degree(P, args.degree)
    return {
        str(d): dec.right_factor_of_degree(P, d)
        for d in range(2, P.degree) if P.degree % d == 0
    }


def cmd_quotient(args):
    P, F = _poly(args.poly), _poly(args.factor)
    if args.side == "left":
        return {"G": dec.left_quotient(P, F)}
    return {"H": dec.right_quotient(P, F)}


def cmd_ritt_move(args):
    form = dec.RittMoveForm(
        family=args.family,
        n=args.n,
        s=args.s,
        R=_poly(args.R),
        m=args.m,
        sigma1=_affine(args.sigma1),
        sigma2=_affine(args.sigma2),
        mu=_affine(args.mu),
        nu=_affine(args.nu),
    )
    res = dec.ritt_move(form)
    return {
        "A": res.first.left, "C": res.first.right,
        "D": res.second.left, "B": res.second.right,
        "composite": res.composite,
        "canonical_family": res.form.family,
        "swapped": res.swapped,
    }


def cmd_classify_special(args):
    return sf.classify_special(_poly(args.poly))


def cmd_cheb(args):
    if args.n < 0:
        raise UsageError("Chebyshev index must be nonnegative")
    return sf.chebyshev(args.n)


def cmd_symmetry(args):
    return sf.symmetry_order(_poly(args.poly))


def cmd_semiconj(args):
    if args.action == "solve-a":
        w = eng.solve_A(_poly(args.x), _poly(args.b))
        return {"A": None if w is None else w.A}
    if args.action == "solve-b":
        w = eng.solve_B(_poly(args.a), _poly(args.x))
        return {"B": None if w is None else w.B}
    return {"semiconjugacy": eng.is_semiconjugacy(_poly(args.a), _poly(args.x), _poly(args.b))}


def _budget(args, B: Polynomial):
    cap = args.search_cap or _env_int(SEARCH_CAP_ENV, eng.DEFAULT_SEARCH_DEGREE_CAP)
    return eng.SearchBudget.for_degree(B.degree, depth=args.depth, degree_cap=cap)


def cmd_enumerate_e(args):
    B = _poly(args.poly)
    res = eng.enumerate_E(B, _budget(args, B), strict=not args.partial)
    return {
        "complete": res.complete,
        "witnesses": [{"X": w.X, "A": w.A} for w in res.witnesses],
        "notes": res.notes,
    }


def cmd_commutant(args):
    B = _poly(args.poly)
    st = eng.commutant(B, degree_cap=args.max_degree, budget=_budget(args, B))
    return {
        "R": st.R,
        "ell": st.symmetry.ell,
        "B": {"symmetry": st.B_form.symmetry, "power": st.B_form.power},
        "elements": [{"element": e.element, "symmetry": e.symmetry, "power": e.power} for e in st.elements],
    }


def cmd_equiv(args):
    A, B = _poly(args.a), _poly(args.b)
    res = eng.are_equivalent(A, B, _budget(args, B))
    out = _plain(res)
    out["result"] = {True: "true", False: "false", None: "undecided"}[res.result]
    return out


def cmd_strip_iterate(args):
    return eng.strip_iterate(_poly(args.y), _poly(args.x), _poly(args.b), args.s)


def cmd_universal_pair(args):
    B = _poly(args.poly)
    up = eng.universal_pair(B, _budget(args, B))
    return {
        "A": up.A, "X": up.X, "B": up.B, "bound": up.bound,
        "registry": [{"C": r.C, "X_C": r.X_C, "U_C": r.U_C} for r in up.registry],
    }


def cmd_curve(args):
    f, g = _poly(args.f), _poly(args.g)
    if args.action == "verify":
        return {"invariant": curves.verify_invariant(curves.BivariatePoly.parse(args.curve), f, g)}
    pair = curves.ParametrizedPair(_poly(args.pi), _poly(args.rho), _poly(args.h))
    cs = curves.build_curve(pair, f, g)
    return {"curve": cs.text(), "u": cs.u, "v": cs.v, "t": cs.t}


def _floats(text: str, count: int, what: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated numbers") from None
    if len(vals) != count:
        raise UsageError(f"{what} must be {count} comma-separated numbers")
    return vals


def cmd_julia(args):
    if args.action == "check":
        rep = jn.check_preimage_identity(
            _poly(args.a), _poly(args.x), _poly(args.b),
            samples=args.samples, seed=args.seed, margin=args.margin, cap=args.cap,
        )
        return rep
    x0, x1, y0, y1 = _floats(args.bounds, 4, "--bounds")
    w, h = (int(v) for v in _floats(args.size, 2, "--size"))
    if w < 1 or h < 1 or x1 <= x0 or y1 <= y0:
        raise UsageError("empty render window")
    grid = jn.JuliaGrid((x0, x1, y0, y1), (w, h), args.cap, args.radius)
    jn.render(grid, _poly(args.poly), Path(args.out))
    return {"written": args.out, "width": w, "height": h}


# -- parser --------------------------------------------------------------------------
def _add_budget(p):
    p.add_argument("--depth", type=int, help="iterate depth (default from the degree)")
    p.add_argument("--search-cap", type=int, help=f"largest right-factor degree tried (env {SEARCH_CAP_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polysemi", description="Exact semiconjugacy tools for polynomials over Q(i).")
    parser.add_argument("--json", action="store_true", help="print results as JSON")
    parser.add_argument("--degree-cap", type=int, help=f"cap on composite degrees (env {DEGREE_CAP_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="P1 o P2 o ... o Pk")
    p.add_argument("polys", nargs="+")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("iterate", help="k-fold iterate of P")
    p.add_argument("poly")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("decompose", help="right factors P = G o H")
    p.add_argument("poly")
    p.add_argument("--degree", type=int, help="only this degree of H")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("quotient", help="left (G with G o H = P) or right (H with G o H = P) quotient")
    p.add_argument("side", choices=["left", "right"])
    p.add_argument("poly")
    p.add_argument("factor")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("ritt-move", help="materialize A o C = D o B from a family")
    p.add_argument("--family", choices=[dec.POWER, dec.CHEBYSHEV], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--R", default="1")
    p.add_argument("--m", type=int, default=0)
    for name in ("sigma1", "sigma2", "mu", "nu"):
        p.add_argument(f"--{name}", default="z")
    p.set_defaults(func=cmd_ritt_move)

    p = sub.add_parser("classify-special", help="power / Chebyshev / not special")
    p.add_argument("poly")
    p.set_defaults(func=cmd_classify_special)

    p = sub.add_parser("cheb", help="Chebyshev polynomial T_n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_cheb)

    p = sub.add_parser("symmetry", help="rotational symmetry order of the centered form")
    p.add_argument("poly")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("semiconj", help="solve or check A o X = X o B")
    p.add_argument("action", choices=["solve-a", "solve-b", "check"])
    p.add_argument("--a")
    p.add_argument("--x", required=True)
    p.add_argument("--b")
    p.set_defaults(func=cmd_semiconj)

    p = sub.add_parser("enumerate-e", help="semiconjugacies from B")
    p.add_argument("poly")
    p.add_argument("--partial", action="store_true", help="report skipped candidates instead of failing")
    _add_budget(p)
    p.set_defaults(func=cmd_enumerate_e)

    p = sub.add_parser("commutant", help="polynomials commuting with B")
    p.add_argument("poly")
    p.add_argument("--max-degree", type=int, default=64)
    _add_budget(p)
    p.set_defaults(func=cmd_commutant)

    p = sub.add_parser("equiv", help="decide whether A and B semiconjugate to each other")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_budget(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("strip-iterate", help="strip iterates of B from Y o X = B^s")
    p.add_argument("--y", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_strip_iterate)

    p = sub.add_parser("universal-pair", help="universal semiconjugacy from B")
    p.add_argument("poly")
    _add_budget(p)
    p.set_defaults(func=cmd_universal_pair)

    p = sub.add_parser("curve", help="invariant curves u(x) - v(y) = 0")
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("curve", nargs="?", help="curve text for verify")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--pi")
    p.add_argument("--rho")
    p.add_argument("--h")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("julia", help="escape-time rendering and preimage checks")
    p.add_argument("action", choices=["render", "check"])
    p.add_argument("poly", nargs="?", help="polynomial to render")
    p.add_argument("--a")
    p.add_argument("--x")
    p.add_argument("--b")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--margin", type=int, default=jn.DEFAULT_MARGIN)
    p.add_argument("--cap", type=int, default=jn.DEFAULT_CAP)
    p.add_argument("--bounds", default="-2,2,-2,2", help="re_min,re_max,im_min,im_max")
    p.add_argument("--size", default="400,400", help="width,height")
    p.add_argument("--radius", type=float)
    p.add_argument("--out", default="julia.pgm")
    p.set_defaults(func=cmd_julia)
    return parser


_REQUIRED = {
    ("semiconj", "solve-a"): ("x", "b"),
    ("semiconj", "solve-b"): ("a", "x"),
    ("semiconj", "check"): ("a", "x", "b"),
    ("curve", "build"): ("pi", "rho", "h"),
    ("curve", "verify"): ("curve",),
    ("julia", "check"): ("a", "x", "b"),
    ("julia", "render"): ("poly",),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        for name in _REQUIRED.get((args.command, getattr(args, "action", None)), ()):
            if getattr(args, name) is None:
                raise UsageError(f"{args.command} {args.action} needs {name}")
        if args.degree_cap is None:
            args.degree_cap = _env_int(DEGREE_CAP_ENV, DEFAULT_DEGREE_CAP)
        result = args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"polysemi: error: {exc}", file=sys.stderr)
        return 2
    except (PolysemiError, ValueError) as exc:
        print(f"polysemi: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(_plain(result), sort_keys=False))
    else:
        print("\n".join(_text_lines(result)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
