"""Command-line front end: integrate, check-equal, corpus, oracle.

Exit codes: 0 success, 1 negative verdict or numeric failure, 2 parse
error, 3 unsupported input, 4 improper integral, 5 corpus failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal
from fractions import Fraction

from . import expr as E
from .constants import (ConstExpr, NotAConstant, Undecided, const_equal, const_eval,
                        const_to_expr, expr_to_const)
from .definite import (ImproperIntegral, Interval, InvalidAntiderivative, compare_with_oracle,
                       definite_from_antiderivative, definite_integrate)
from .numeric import NoConvergence, quad_oracle
from .parser import ParseError, parse, print_expr
from .ratint import NotFullySplit, UnsupportedAlgebraicDegree, integrate_rational
from .symmetry import PiInterval, UnsupportedShape, evaluate_trig_definite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_IMPROPER, EXIT_CORPUS = 0, 1, 2, 3, 4, 5

UNSUPPORTED = (UnsupportedAlgebraicDegree, UnsupportedShape, E.NotRationalInVar, NotAConstant,
               InvalidAntiderivative, NotFullySplit, E.UnsupportedNode)

MAX_DIGITS = 200


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, ImproperIntegral):
        return EXIT_IMPROPER
    if isinstance(exc, UNSUPPORTED):
        return EXIT_UNSUPPORTED
    return EXIT_FAIL


# -- shared pipeline ------------------------------------------------------------------

def _rational_bound(text: str) -> Fraction:
    v = E.const_value(parse(text))
    if v is None or not isinstance(v, Fraction):
        raise UnsupportedShape(f"bound {text!r} is not a rational number")
    return v


def _pi_bound(text: str) -> Fraction:
    """q for a bound equal to q*pi."""
    c = expr_to_const(parse(text))
    if not c.is_pi_polynomial() or any(t.pi_power not in (0, 1) for t in c.terms) or c.rational_part != 0:
        raise UnsupportedShape(f"bound {text!r} is not a rational multiple of pi")
    return Fraction(c.pi_coeff)


def _numeric(value: ConstExpr, digits: int) -> str:
    return str(const_eval(value, digits))


def run_integrate(text: str, var: str = "x", lo: str | None = None, hi: str | None = None,
                  digits: int = 10, antiderivative: str | None = None, naive: bool = False,
                  route: str = "auto") -> dict:
    """Run the integration pipeline; returns the result document.

    Errors propagate as exceptions (see ``exit_code_for``).
    """
    if (lo is None) != (hi is None):
        raise ValueError("give both --from and --to, or neither")
    e = parse(text)
    diagnostics = []
    out = {"status": "ok"}
    if lo is None:
        f = E.expr_to_ratfun(e, var)
        F = integrate_rational(f)
        if F.derivative() != f:
            raise ArithmeticError("derivative identity failed")
        diagnostics.append("derivative identity: exact")
        out["antiderivative"] = print_expr(F.to_expr(var))
        out["diagnostics"] = diagnostics
        return out
    try:
        f = E.expr_to_ratfun(e, var)
    except E.NotRationalInVar:
        f = None
    if f is None:
        if antiderivative is not None or naive:
            raise UnsupportedShape("--antiderivative needs a rational integrand")
        value = evaluate_trig_definite(e, PiInterval(_pi_bound(lo), _pi_bound(hi)), var, route)
        diagnostics.append(f"trigonometric reduction ({route} route)")
    else:
        I = Interval(_rational_bound(lo), _rational_bound(hi))
        if antiderivative is None:
            value = definite_integrate(f, I)
            diagnostics.append("derivative identity: exact")
        else:
            value = definite_from_antiderivative(parse(antiderivative), f, I, var, split=not naive)
            diagnostics.append("supplied antiderivative verified by differentiation")
            if naive:
                chk = compare_with_oracle(value, f, I)
                if chk.pi_multiple:
                    diagnostics.append(
                        f"warning: naive evaluation differs from quadrature by {chk.pi_multiple}*pi "
                        f"(antiderivative is discontinuous inside the interval)")
                out["pi_discrepancy"] = chk.pi_multiple
    out["value"] = print_expr(const_to_expr(value))
    out["numeric"] = _numeric(value, digits)
    out["diagnostics"] = diagnostics
    out["_const"] = value
    return out


# -- verbs ------------------------------------------------------------------------------

def _emit(doc: dict, as_json: bool, stream=None):
    stream = stream or sys.stdout
    doc = {k: v for k, v in doc.items() if not k.startswith("_")}
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True), file=stream)


def _fail(exc: Exception, as_json: bool) -> int:
    name = type(exc).__name__
    print(f"{name}: {exc}", file=sys.stderr)
    if as_json:
        _emit({"status": "error", "error": name, "diagnostics": [str(exc)]}, True)
    return exit_code_for(exc)


def cmd_integrate(args) -> int:
    try:
        doc = run_integrate(args.expr, args.var, args.lo, args.hi, args.digits,
                            args.antiderivative, args.naive_splitting)
    except Exception as exc:  # mapped to exit codes
        if not isinstance(exc, (ParseError, ImproperIntegral, ValueError, ArithmeticError) + UNSUPPORTED):
            raise
        return _fail(exc, args.json)
    if args.json:
        _emit(doc, True)
    else:
        if "antiderivative" in doc:
            print(doc["antiderivative"])
        else:
            print(doc["value"])
            print(doc["numeric"])
        for d in doc["diagnostics"]:
            if d.startswith("warning"):
                print(d, file=sys.stderr)
    return EXIT_OK


def cmd_check_equal(args) -> int:
    try:
        a, b = expr_to_const(parse(args.e1)), expr_to_const(parse(args.e2))
    except (ParseError, NotAConstant, ValueError) as exc:
        return _fail(exc, args.json)
    verdict = const_equal(a, b)
    if args.json:
        doc = {"status": "ok", "verdict": type(verdict).__name__, "diagnostics": [str(verdict)]}
        if isinstance(verdict, Undecided):
            doc["numerically_equal"] = verdict.numerically_equal
            doc["difference"] = verdict.difference
        _emit(doc, True)
    else:
        print(verdict)
    return EXIT_OK if type(verdict).__name__ == "Equal" else EXIT_FAIL


def cmd_oracle(args) -> int:
    try:
        e = parse(args.expr)
        lo, hi = (E.evalf(parse(t), {}) for t in (args.lo, args.hi))
        q = quad_oracle(e, lo, hi, tol=args.tol, var=args.var)
    except (ParseError, NoConvergence, ValueError, KeyError) as exc:
        return _fail(exc, args.json)
    doc = {"status": "ok", "numeric": repr(q.value), "error_estimate": q.error_estimate,
           "diagnostics": [f"{q.subdivisions} subintervals"]}
    if args.json:
        _emit(doc, True)
    else:
        print(f"{q.value!r}  (error estimate {q.error_estimate:.3g})")
    return EXIT_OK


# -- corpus ---------------------------------------------------------------------------

class MalformedEntry(ValueError):
    pass


KINDS = ("integrate", "diff", "equal")


def parse_entry(line: str) -> dict:
    try:
        entry = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedEntry(f"invalid JSON ({exc.msg})") from exc
    if not isinstance(entry, dict):
        raise MalformedEntry("entry is not a JSON object")
    for key in ("id", "input"):
        if not isinstance(entry.get(key), str):
            raise MalformedEntry(f"missing string field {key!r}")
    kind = entry.setdefault("kind", "integrate")
    if kind not in KINDS:
        raise MalformedEntry(f"unknown kind {kind!r}")
    if ("lo" in entry) != ("hi" in entry):
        raise MalformedEntry("definite entries need both lo and hi")
    entry.setdefault("var", "x")
    return entry


def _same_print(produced: E.Expr, expected: str) -> bool:
    return print_expr(produced) == print_expr(parse(expected))


def check_entry(entry: dict, tol: float) -> tuple[bool, str]:
    """Run one corpus entry; returns (passed, detail)."""
    kind, var = entry["kind"], entry["var"]
    notes = []
    ok = True
    if kind == "equal":
        verdict = const_equal(expr_to_const(parse(entry["input"])), expr_to_const(parse(entry["expect"])))
        want = entry.get("verdict", "Equal")
        got = type(verdict).__name__
        return got == want, f"verdict {got} (expected {want})"
    if kind == "diff":
        d = E.differentiate(parse(entry["input"]), var)
        exact = _same_print(d, entry["expect"])
        equiv = exact or E.expr_equivalent(d, parse(entry["expect"]))
        ok = equiv and (exact or not entry.get("exact"))
        return ok, f"{print_expr(d)} ({'exact match' if exact else 'equivalent' if equiv else 'mismatch'})"
    doc = run_integrate(entry["input"], var, entry.get("lo"), entry.get("hi"), 30,
                        entry.get("antiderivative"), entry.get("naive", False), entry.get("route", "auto"))
    if "antiderivative" in doc:
        shown = doc["antiderivative"]
        if "expect" in entry:
            f = E.expr_to_ratfun(parse(entry["input"]), var)
            d = E.expr_to_ratfun(E.differentiate(parse(entry["expect"]), var), var)
            if d != f:
                ok = False
                notes.append("expected antiderivative does not differentiate to the integrand")
            exact = shown == print_expr(parse(entry["expect"]))
            if entry.get("exact") and not exact:
                ok = False
            notes.append("exact match" if exact else "same derivative as expected form")
        return ok, "; ".join([shown] + notes)
    value = doc["_const"]
    shown = doc["value"]
    if "expect" in entry:
        verdict = const_equal(value, expr_to_const(parse(entry["expect"])))
        if isinstance(verdict, Undecided) and verdict.numerically_equal:
            notes.append("numerically equal to 150 digits")
        elif type(verdict).__name__ != "Equal":
            ok = False
            notes.append(f"checker verdict {verdict}")
        if entry.get("exact") and shown != print_expr(parse(entry["expect"])):
            ok = False
            notes.append("printed form differs")
    if "expect_value" in entry:
        delta = abs(const_eval(value, 30) - Decimal(entry["expect_value"]))
        limit = Decimal(str(entry.get("tol", tol)))
        if delta >= limit:
            ok = False
            notes.append(f"numeric delta {delta:.3E} >= {limit}")
    if "pi_discrepancy" in doc:
        notes.append(f"pi discrepancy {doc['pi_discrepancy']}")
    return ok, "; ".join([shown] + notes)


def run_corpus(lines, tol: float = 1e-6) -> tuple[list, int]:
    """Check every entry; returns (rows, failures).  Each row is
    (label, kind, passed, detail)."""
    rows = []
    failures = 0
    for n, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            entry = parse_entry(line)
        except MalformedEntry as exc:
            rows.append((f"line {n}", "-", False, f"malformed entry: {exc}"))
            failures += 1
            continue
        try:
            ok, detail = check_entry(entry, tol)
        except Exception as exc:  # one entry must not stop the run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append((entry["id"], entry["kind"], ok, detail))
        failures += not ok
    return rows, failures


def cmd_corpus(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rows, failures = run_corpus(lines, args.tol if args.tol is not None else 1e-6)
    if args.json:
        doc = {"status": "ok" if not failures else "failed",
               "entries": [{"id": r[0], "kind": r[1], "passed": r[2], "detail": r[3]} for r in rows],
               "diagnostics": [f"{len(rows)} entries, {len(rows) - failures} passed, {failures} failed"]}
        _emit(doc, True)
    else:
        width = max((len(r[0]) for r in rows), default=2)
        for label, kind, ok, detail in rows:
            print(f"{label:<{width}}  {kind:<9}  {'PASS' if ok else 'FAIL'}  {detail}")
        print(f"summary: {len(rows)} entries, {len(rows) - failures} passed, {failures} failed")
    return EXIT_CORPUS if failures else EXIT_OK


# -- argument parsing ---------------------------------------------------------------

def _digits(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_DIGITS:
        raise argparse.ArgumentTypeError(f"digits must be between 1 and {MAX_DIGITS}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symint", description="Exact integration of rational functions.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--digits", type=_digits, default=10, help="significant digits (max 200)")

    sp = sub.add_parser("integrate", help="indefinite or definite integral")
    sp.add_argument("expr")
    sp.add_argument("--var", default="x")
    sp.add_argument("--from", dest="lo")
    sp.add_argument("--to", dest="hi")
    sp.add_argument("--naive-splitting", action="store_true",
                    help="evaluate F(hi) - F(lo) without correcting jumps of the antiderivative")
    sp.add_argument("--antiderivative", help="use this antiderivative instead of computing one")
    common(sp)
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("check-equal", help="decide whether two constants are equal")
    sp.add_argument("e1")
    sp.add_argument("e2")
    common(sp)
    sp.set_defaults(func=cmd_check_equal)

    sp = sub.add_parser("corpus", help="run a line-delimited JSON corpus")
    sp.add_argument("path")
    sp.add_argument("--tol", type=float, default=None, help="numeric tolerance (default 1e-6)")
    common(sp)
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("oracle", help="adaptive quadrature value")
    sp.add_argument("expr")
    sp.add_argument("--var", default="x")
    sp.add_argument("--from", dest="lo", required=True)
    sp.add_argument("--to", dest="hi", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
