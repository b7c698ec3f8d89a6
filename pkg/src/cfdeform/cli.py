"""Command-line front end.

Six subcommands: ``eval`` (solution pair and deformed value), ``series``
(Taylor coefficients of deformed rationals and builtin constants),
``qseries`` (the q-bracket deformation), ``compare`` (both side by side),
``check`` (bounded property sweeps), ``cf`` (expansion, term-sum weight and
the involution rewrite).  Output formats: human text, machine JSON, LaTeX
fragments.

JSON document shape: {command, input, result, version}; polynomials are
ascending arrays of integer strings, series are ascending arrays of
rational strings ("a" or "a/b"), so coefficients never lose precision.

Exit codes: 0 success, 1 malformed input or a failed hard property,
2 degenerate parameter matrix, 3 stabilization failure or an exhausted
term source.  UDEFORM_MAX_ORDER (default 200) caps series orders.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .analysis import (
    OBSERVATION_PROPERTIES,
    PROPERTY_NAMES,
    irrational_series,
    run_property_sweep,
)
from .contfrac import StreamingCF, cf_expand, cf_value, format_cf, j_rewrite, parse_rational
from .errors import (
    DegenerateParametersError,
    DomainError,
    StabilizationError,
    TermsExhaustedError,
)
from .exactnum import RationalFunction, RingPoly, TruncatedSeries, series_of_ratfun
from .qdeform import q_deform, q_deform_series
from .udeform import U_RZERO_POLY, U_SZERO_POLY, UParams, f_pair, j_quotient, quantize

MAX_ORDER_ENV = "UDEFORM_MAX_ORDER"
DEFAULT_MAX_ORDER = 200

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_STABILIZATION = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# Serialization helpers


def _entry_json(v) -> list[str]:
    if isinstance(v, RingPoly):
        return [str(c) for c in v.coeffs] or ["0"]
    return [str(v)]


def _value_json(v) -> dict:
    if isinstance(v, RationalFunction):
        return {"num": _entry_json(v.num), "den": _entry_json(v.den)}
    frac = Fraction(v)
    return {"num": [str(frac.numerator)], "den": [str(frac.denominator)]}


def _series_json(s: TruncatedSeries) -> list[str]:
    return [str(c) for c in s]


def _value_text(v) -> str:
    return str(v)


def _latex_poly(v, var: str) -> str:
    coeffs = v.coeffs if isinstance(v, RingPoly) else (int(v),)
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            power = var if i == 1 else f"{var}^{{{i}}}"
            body = f"{head}{power}"
        parts.append(sign + body)
    return "".join(parts) if parts else "0"


def _latex_value(v, var: str) -> str:
    if isinstance(v, RationalFunction):
        if v.is_polynomial():
            return _latex_poly(v.num, var)
        return rf"\frac{{{_latex_poly(v.num, var)}}}{{{_latex_poly(v.den, var)}}}"
    frac = Fraction(v)
    if frac.denominator == 1:
        return str(frac.numerator)
    return rf"\frac{{{frac.numerator}}}{{{frac.denominator}}}"


def _latex_series(s: TruncatedSeries, var: str) -> str:
    parts = []
    for i, c in enumerate(s):
        if c == 0:
            continue
        frac = Fraction(c)
        sign = "-" if frac < 0 else ("+" if parts else "")
        mag = abs(frac)
        mag_str = str(mag.numerator) if mag.denominator == 1 else rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        if i == 0:
            body = mag_str
        else:
            head = "" if mag == 1 else mag_str
            power = var if i == 1 else f"{var}^{{{i}}}"
            body = f"{head}{power}"
        parts.append(sign + body)
    rendered = "".join(parts) if parts else "0"
    return rf"{rendered}+O\left({var}^{{{s.order + 1}}}\right)"


def _latex_cf(terms) -> str:
    terms = list(terms)
    out = str(terms[-1])
    for t in reversed(terms[:-1]):
        out = rf"{t}+\cfrac{{1}}{{{out}}}"
    return out


def _print_document(command: str, inputs: dict, result: dict, fmt: str, text_lines, latex_lines):
    if fmt == "json":
        doc = {
            "command": command,
            "input": inputs,
            "result": result,
            "version": __version__,
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "latex":
        for line in latex_lines():
            sys.stdout.write(line + "\n")
    else:
        for line in text_lines():
            sys.stdout.write(line + "\n")


def _max_order() -> int:
    raw = os.environ.get(MAX_ORDER_ENV, "")
    try:
        return int(raw) if raw else DEFAULT_MAX_ORDER
    except ValueError:
        return DEFAULT_MAX_ORDER


def _check_order(order: int) -> int:
    cap = _max_order()
    if order < 0:
        raise DomainError("order must be nonnegative")
    if order > cap:
        raise DomainError(f"order {order} exceeds the cap {cap} (set {MAX_ORDER_ENV} to raise it)")
    return order


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_eval(args) -> int:
    u = UParams.parse(args.u)
    x = parse_rational(args.x)
    pair = f_pair(u, x)
    value = quantize(u, x)
    var = "p"
    inputs = {"u": args.u, "x": args.x}
    result = {
        "fx": _entry_json(pair.fx),
        "finv": _entry_json(pair.finv),
        "quantization": _value_json(value),
    }

    def text():
        yield f"U = {u}, x = {x} = {format_cf(cf_expand(x))}"
        yield f"f(x)   = {_value_text(pair.fx)}"
        yield f"f(1/x) = {_value_text(pair.finv)}"
        yield f"[[x]]  = {_value_text(value)}"

    def latex():
        yield rf"f(x) = {_latex_poly(pair.fx, var) if isinstance(pair.fx, RingPoly) else pair.fx}"
        yield rf"f(1/x) = {_latex_poly(pair.finv, var) if isinstance(pair.finv, RingPoly) else pair.finv}"
        yield rf"\llbracket x \rrbracket = {_latex_value(value, var)}"

    _print_document("eval", inputs, result, args.format, text, latex)
    return EXIT_OK


_CONST_SOURCES = {
    "e": StreamingCF.e_pattern,
    "pi": StreamingCF.pi_embedded,
    "golden": StreamingCF.golden,
}


def _cmd_series(args) -> int:
    u = UParams.parse(args.u)
    order = _check_order(args.order)
    if not u.symbolic:
        raise DomainError("series extraction needs the formal variable in U (e.g. --u p,1,1,0)")
    if args.x is not None:
        x = parse_rational(args.x)
        value = quantize(u, x)
        series = series_of_ratfun(value, order)
        subject = args.x
    else:
        if u == U_SZERO_POLY:
            pass
        elif u == U_RZERO_POLY:
            if not args.heuristic:
                raise DomainError(
                    "constants under the (p,1;0,1) family are heuristic; pass --heuristic"
                )
        else:
            raise DomainError(
                "constant series support the families p,1,1,0 and p,1,0,1 only"
            )
        source = _CONST_SOURCES[args.const]()
        series = irrational_series(source, u, order)
        subject = args.const
    inputs = {"u": args.u, "x": subject, "order": order}
    result = {"variable": "p", "order": order, "coefficients": _series_json(series)}

    def text():
        yield f"U = {u}, x = {subject}, order = {order}"
        yield str(series)

    def latex():
        yield _latex_series(series, "p")

    _print_document("series", inputs, result, args.format, text, latex)
    return EXIT_OK


def _cmd_qseries(args) -> int:
    order = _check_order(args.order)
    if args.x is not None:
        x = parse_rational(args.x)
        series = q_deform_series(x, order)
        subject = args.x
    else:
        series = q_deform_series(StreamingCF.golden(), order)
        subject = args.const
    inputs = {"x": subject, "order": order}
    result = {"variable": "q", "order": order, "coefficients": _series_json(series)}

    def text():
        yield f"x = {subject}, order = {order}"
        yield series.render("q")

    def latex():
        yield _latex_series(series, "q")

    _print_document("qseries", inputs, result, args.format, text, latex)
    return EXIT_OK


def _cmd_compare(args) -> int:
    order = _check_order(args.order)
    x = parse_rational(args.x)
    u_series = series_of_ratfun(quantize(U_SZERO_POLY, x), order)
    q_series = q_deform_series(x, order)
    inputs = {"x": args.x, "order": order}
    result = {
        "order": order,
        "u_series": _series_json(u_series),
        "q_series": _series_json(q_series),
    }

    def text():
        yield f"x = {x}, order = {order}"
        yield f"{'n':>4}  {'deformation (p)':>24}  {'q-bracket (q)':>24}"
        for i in range(order + 1):
            yield f"{i:>4}  {str(u_series[i]):>24}  {str(q_series[i]):>24}"

    def latex():
        yield _latex_series(u_series, "p")
        yield _latex_series(q_series, "q")

    _print_document("compare", inputs, result, args.format, text, latex)
    return EXIT_OK


_DEFAULT_CHECK_U = {
    "defining-equations": "p,1,1,0",
    "integrality": "p,1,1,0",
    "unimodality": "p,1,1,0",
    "anti-unimodality": "p,1,0,1",
    "alternation": "p,1,1,0",
    "stabilization": "p,1,1,0",
    "involution": "1,1,0,1",
    "oracle-equivalence": "p,1,1,0",
}


def _cmd_check(args) -> int:
    name = args.property
    if name not in PROPERTY_NAMES:
        raise DomainError(
            f"unknown property {name!r}; choose from {', '.join(PROPERTY_NAMES)}"
        )
    u_text = args.u if args.u is not None else _DEFAULT_CHECK_U[name]
    u = UParams.parse(u_text)
    order = _check_order(args.order)
    if name == "integrality" and not u.symbolic:
        raise DomainError("integrality sweep needs a symbolic family, e.g. --u p,1,1,0")
    report = run_property_sweep(name, u, args.max_ell, order, jobs=args.jobs)
    inputs = {"property": name, "u": u_text, "max_ell": args.max_ell, "order": order}
    result = report.as_dict()

    def text():
        status = "holds" if report.holds else "violated"
        yield f"property {name} over ell <= {args.max_ell}: {status} ({report.tested} inputs)"
        if report.counterexample is not None:
            yield f"counterexample: {report.counterexample}"
        if name in OBSERVATION_PROPERTIES:
            yield "observation check: outcome recorded, exit status unaffected"

    def latex():
        yield rf"\texttt{{{name}}}: {'holds' if report.holds else 'violated'}"

    _print_document("check", inputs, result, args.format, text, latex)
    if name in OBSERVATION_PROPERTIES:
        return EXIT_OK
    return EXIT_OK if report.holds else EXIT_USAGE


def _cmd_cf(args) -> int:
    if args.x is not None:
        x = parse_rational(args.x)
        exp = cf_expand(x)
        inputs = {"x": args.x}
        result = {"terms": list(exp.terms), "ell": sum(exp.terms)}

        def text():
            yield f"{x} = {format_cf(exp)}   ell = {sum(exp.terms)}"

        def latex():
            yield _latex_cf(exp.terms)

        _print_document("cf", inputs, result, args.format, text, latex)
        return EXIT_OK

    x = parse_rational(args.j)
    exp = cf_expand(x)
    if len(exp) >= 2:
        rewritten = j_rewrite(exp)
    else:
        rewritten = cf_expand(j_quotient(x))
    value = cf_value(rewritten)
    inputs = {"j": args.j}
    result = {
        "terms": list(exp.terms),
        "ell": sum(exp.terms),
        "rewritten": list(rewritten.terms),
        "value": str(value),
    }

    def text():
        yield f"{x} = {format_cf(exp)}"
        yield f"involution image: {format_cf(rewritten)} = {value}"

    def latex():
        yield _latex_cf(rewritten.terms)

    _print_document("cf", inputs, result, args.format, text, latex)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="cfdeform", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cfdeform {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")

    p_eval = sub.add_parser("eval", help="solution pair and deformed value at a rational")
    p_eval.add_argument("--u", required=True, help="four entries, ints or p (e.g. p,1,1,0)")
    p_eval.add_argument("--x", required=True, help="positive rational, a/b or integer")
    add_format(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_series = sub.add_parser("series", help="Taylor coefficients of a deformed value")
    p_series.add_argument("--u", required=True, help="parameter entries, must include p")
    group = p_series.add_mutually_exclusive_group(required=True)
    group.add_argument("--x", help="positive rational to deform")
    group.add_argument("--const", choices=sorted(_CONST_SOURCES),
                       help="builtin irrational constant")
    p_series.add_argument("--order", type=int, required=True, help="last Taylor index")
    p_series.add_argument("--heuristic", action="store_true",
                          help="allow constants under the heuristic (p,1;0,1) family")
    add_format(p_series)
    p_series.set_defaults(func=_cmd_series)

    p_q = sub.add_parser("qseries", help="Taylor coefficients of the q-bracket deformation")
    group = p_q.add_mutually_exclusive_group(required=True)
    group.add_argument("--x", help="positive rational to deform")
    group.add_argument("--const", choices=("golden",), help="builtin constant")
    p_q.add_argument("--order", type=int, required=True, help="last Taylor index")
    add_format(p_q)
    p_q.set_defaults(func=_cmd_qseries)

    p_cmp = sub.add_parser("compare", help="deformation vs q-bracket, per index")
    p_cmp.add_argument("--x", required=True, help="positive rational to deform")
    p_cmp.add_argument("--order", type=int, required=True, help="last Taylor index")
    add_format(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_chk = sub.add_parser("check", help="run a bounded property sweep")
    p_chk.add_argument("--property", required=True, metavar="NAME",
                       help=f"one of: {', '.join(PROPERTY_NAMES)}")
    p_chk.add_argument("--u", default=None, help="parameter entries (per-property default)")
    p_chk.add_argument("--max-ell", type=int, default=10, dest="max_ell",
                       help="sweep every rational with term sum at most this")
    p_chk.add_argument("--order", type=int, default=20, help="series order where relevant")
    p_chk.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")
    add_format(p_chk)
    p_chk.set_defaults(func=_cmd_check)

    p_cf = sub.add_parser("cf", help="continued fraction, term sum, involution rewrite")
    group = p_cf.add_mutually_exclusive_group(required=True)
    group.add_argument("--x", help="expand this positive rational")
    group.add_argument("--j", help="expand and rewrite through the involution")
    add_format(p_cf)
    p_cf.set_defaults(func=_cmd_cf)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DegenerateParametersError as exc:
        print(f"cfdeform: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (StabilizationError, TermsExhaustedError) as exc:
        print(f"cfdeform: {exc}", file=sys.stderr)
        return EXIT_STABILIZATION
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"cfdeform: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
