"""Command-line front end.

Every command prints one JSON record on standard output and a short
human-readable line on standard error.  Exit codes: 0 success, 1 engine
error (a JSON error record is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import oracles
from .dirichlet import character, character_from_values, l_function
from .errors import LatsumError, ParseError
from .families import diagonal_even_power, one_dim_power, parse_complex, parse_family, quadratic_power
from .fourier import fourier_transform, mollified_transform_oracle
from .hsum import h_sum, h_sum_translated
from .lerch import freg, functional_equation_check, lerch_F
from .polynomials import parse_polynomial
from .scalar import TorusPoint
from .special import SpecialProblem, special_G, special_G_limit
from .tsum import SumResult, t_sum

SCHEMA = 1
DEFAULT_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _jsonable(obj):
    if isinstance(obj, complex):
        return _cplx(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _vector(text: str) -> list[float]:
    try:
        return [float(Fraction(t.strip())) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"cannot parse vector {text!r}") from None


def _phases(text: str) -> TorusPoint:
    """``z`` given by its phases ``y`` with ``z = e(y)``; fractions stay exact."""
    out = []
    for t in text.split(","):
        t = t.strip()
        try:
            out.append(Fraction(t) if "/" in t or t.lstrip("-").isdigit() else float(t))
        except ValueError:
            raise ParseError(f"cannot parse phase {t!r}") from None
    return TorusPoint(tuple(out))


def _points(text: str | None, k: int):
    if not text:
        return None
    pts = []
    for chunk in text.split(";"):
        v = [int(c) for c in chunk.split(",") if c.strip()]
        if len(v) != k:
            raise ParseError(f"excluded point {chunk!r} is not in Z^{k}")
        pts.append(tuple(v))
    return pts


def _family(text: str):
    return parse_family(text)


# -- commands -------------------------------------------------------------------

def cmd_zeta(a):
    s = parse_complex(a.s)
    r = h_sum(one_dim_power(s), tol=a.tol)
    res = SumResult(r.value / 2, r.error_estimate / 2, r.terms_used, r.method)
    return {"s": a.s}, res, (lambda: oracles.euler_maclaurin_zeta(s))


def cmd_eta(a):
    s = parse_complex(a.s)
    r = t_sum(one_dim_power(s), TorusPoint((Fraction(1, 2),)), tol=a.tol)
    res = SumResult(-r.value / 2, r.error_estimate / 2, r.terms_used, r.method)
    return {"s": a.s}, res, (lambda: oracles.eta(s))


def cmd_lfun(a):
    s = parse_complex(a.s)
    if a.values:
        chi = character_from_values([parse_complex(v) for v in a.values.split(",")])
    elif a.q is not None and a.index is not None:
        chi = character(a.q, a.index)
    else:
        raise UsageError("lfun needs --q and --index, or --values")
    oracle = None
    if chi.modulus == 4 and chi.parity == -1:
        oracle = lambda: oracles.dirichlet_beta(s)  # noqa: E731
    params = {"q": chi.modulus, "index": a.index, "s": a.s, "values": [_cplx(v) for v in chi.values]}
    return params, l_function(chi, s, tol=a.tol), oracle


def cmd_lerch(a):
    fam = _family(a.family)
    x = _vector(a.x)
    if a.z is not None:
        r = lerch_F(fam, x, _phases(a.z), tol=a.tol)
        return {"family": a.family, "x": x, "z": a.z}, r, None
    y = _vector(a.y or ",".join(["0"] * fam.k))
    ev = freg(fam, x, y, tol=a.tol)
    method = {"path": "regularized", "side": ev.side, "side_a": ev.side_a, "side_b": ev.side_b,
              "residual": ev.residual}
    return {"family": a.family, "x": x, "y": y}, SumResult(ev.value, ev.error_estimate, 0, method), None


def _direct(fam, excluded=None):
    k = fam.k
    F = excluded or [(0,) * k]
    return lambda: oracles.direct_lattice_sum(fam.evaluate_array, k, complex(fam.s).real, F)


def cmd_epstein(a):
    Q = [[Fraction(c) for c in row.split(",")] for row in a.Q.split(";")]
    s = parse_complex(a.s)
    fam = quadratic_power(Q, s)
    return {"Q": a.Q, "s": a.s}, h_sum(fam, tol=a.tol), _direct(fam)


def cmd_diag_form(a):
    s = parse_complex(a.s)
    fam = diagonal_even_power(a.k, a.r, s)
    r = h_sum(fam, tol=a.tol, modulus=a.modulus)
    return {"k": a.k, "r": a.r, "s": a.s, "modulus": a.modulus}, r, _direct(fam)


def cmd_special(a):
    P = parse_polynomial(a.poly, a.k)
    prob = SpecialProblem(P, _points(a.exclude, a.k))
    params = {"poly": a.poly, "k": a.k, "excluded": sorted(prob.excluded)}
    if a.limit_at is not None:
        params["limit_at"] = a.limit_at
        return params, special_G_limit(prob, parse_complex(a.limit_at)), None
    if a.s is None:
        raise UsageError("special needs --s or --limit-at")
    s = parse_complex(a.s)
    params["s"] = a.s
    oracle = None
    if s.real * prob.d > a.k:
        oracle = lambda: oracles.direct_lattice_sum(  # noqa: E731
            oracles.power_sum_integrand(P.evaluate_array, s), a.k, prob.d * s.real, prob.excluded)
    return params, special_G(prob, s, tol=a.tol), oracle


def cmd_tsum(a):
    fam = _family(a.family)
    x = _vector(a.x) if a.x else None
    r = t_sum(fam, _phases(a.z), offset=x, excluded=_points(a.exclude, fam.k), tol=a.tol, order=a.order)
    return {"family": a.family, "z": a.z, "x": x}, r, None


def cmd_hsum(a):
    fam = _family(a.family)
    excluded = _points(a.exclude, fam.k)
    if a.x:
        x = _vector(a.x)
        r = h_sum_translated(fam, x, excluded=excluded, tol=a.tol)
        return {"family": a.family, "x": x}, r, None
    r = h_sum(fam, excluded=excluded, tol=a.tol, modulus=a.modulus)
    oracle = _direct(fam, excluded) if complex(fam.s).real > fam.k else None
    return {"family": a.family, "modulus": a.modulus}, r, oracle


def cmd_fourier_check(a):
    fam = _family(a.family)
    y = _vector(a.y)
    pair = fourier_transform(fam)
    closed = pair.evaluate(y)
    ref = mollified_transform_oracle(fam, y)
    diff = abs(closed - ref)
    method = {"path": "fourier", "constant": pair.constant, "dual": pair.dual.describe(), "oracle": ref,
              "difference": diff}
    return {"family": a.family, "y": y}, SumResult(closed, diff, 0, method), None


def cmd_fe_check(a):
    fam = _family(a.family)
    r = functional_equation_check(fam, tol=a.tol)
    return {"family": a.family}, SumResult(r, 0.0, 0, {"path": "functional_equation", "residual": r}), None


COMMANDS = {
    "zeta": cmd_zeta, "eta": cmd_eta, "lfun": cmd_lfun, "lerch": cmd_lerch, "epstein": cmd_epstein,
    "diag-form": cmd_diag_form, "special": cmd_special, "tsum": cmd_tsum, "hsum": cmd_hsum,
    "fourier-check": cmd_fourier_check, "fe-check": cmd_fe_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latsum", description="Summation of divergent lattice series.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--oracle", action="store_true", help="also compute an independent reference value")
        return sp

    sp = add("zeta", "Riemann zeta as half the h-sum of |n|^-s")
    sp.add_argument("--s", required=True)
    sp = add("eta", "alternating zeta as a t-sum at z = -1")
    sp.add_argument("--s", required=True)
    sp = add("lfun", "Dirichlet L-function of a primitive character")
    sp.add_argument("--q", type=int)
    sp.add_argument("--index", type=int)
    sp.add_argument("--values", help="comma-separated value table chi(0),...,chi(q-1)")
    sp.add_argument("--s", required=True)
    sp = add("lerch", "F_f(x, z) for given z, or the regularised value at (x, y)")
    sp.add_argument("--family", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y")
    sp.add_argument("--z", help="phases of z, e.g. 1/3 or 0.25,1/2")
    sp = add("epstein", "h-sum of Q(n)^-s for a positive definite form")
    sp.add_argument("--Q", required=True, help="rows separated by ';', e.g. '1,0;0,1'")
    sp.add_argument("--s", required=True)
    sp = add("diag-form", "h-sum of (n_1^2r + ... + n_k^2r)^-s")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--s", required=True)
    sp.add_argument("--modulus", type=int)
    sp = add("special", "continuation G(s) of sum P(n)^-s for inhomogeneous P")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s")
    sp.add_argument("--limit-at")
    sp.add_argument("--exclude", help="points separated by ';', e.g. '0,0;1,0'")
    sp = add("tsum", "t-sum of sum f(x+n) z^n")
    sp.add_argument("--family", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--x")
    sp.add_argument("--exclude")
    sp.add_argument("--order", type=int)
    sp = add("hsum", "h-sum of a homogeneous family, optionally translated by x")
    sp.add_argument("--family", required=True)
    sp.add_argument("--x")
    sp.add_argument("--exclude")
    sp.add_argument("--modulus", type=int)
    sp = add("fourier-check", "closed-form Fourier transform vs the quadrature oracle")
    sp.add_argument("--family", required=True)
    sp.add_argument("--y", required=True)
    sp = add("fe-check", "residual of sum f = sum fhat")
    sp.add_argument("--family", required=True)
    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--criteria", help="comma-separated subset of 1..9")
    return p


def _emit(record: dict, out) -> None:
    out.write(json.dumps(_jsonable(record)) + "\n")
    out.flush()


def _run_verify(a, out, err) -> int:
    from .verify import run_all
    selected = None
    if a.criteria:
        try:
            selected = {int(c) for c in a.criteria.split(",")}
        except ValueError:
            raise UsageError("--criteria takes comma-separated integers") from None
    t0 = time.perf_counter()
    results = run_all(selected, stream=err)
    for r in results:
        _emit({"schema": SCHEMA, "command": "verify", "criterion": r.number, "title": r.title,
               "passed": r.passed, "checks": r.count, "failures": [list(c) for c in r.failures],
               "seconds": r.seconds}, out)
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed in {time.perf_counter() - t0:.1f}s",
          file=err)
    return 0 if ok else 1


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.command is None:
            raise UsageError("a subcommand is required")
        if a.command == "verify":
            return _run_verify(a, out, err)
        t0 = time.perf_counter()
        params, result, oracle = COMMANDS[a.command](a)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
        parser.print_usage(err)
        return 2
    except LatsumError as e:
        _emit({"schema": SCHEMA, "command": a.command, "error": e.to_record()}, out)
        print(f"error ({e.code}): {e}", file=err)
        return 1
    record = {"schema": SCHEMA, "command": a.command, "params": params, "value": _cplx(result.value),
              "error_estimate": result.error_estimate, "method": result.method,
              "seconds": time.perf_counter() - t0}
    if a.oracle:
        if oracle is None:
            record["oracle"] = None
        else:
            try:
                o = oracle()
                record["oracle"] = {"value": _cplx(o.value), "accuracy": o.accuracy, "method": o.method}
            except LatsumError as e:
                record["oracle"] = {"error": e.to_record()}
    _emit(record, out)
    v = complex(result.value)
    print(f"{a.command}: {v.real:.15g}{v.imag:+.15g}i (error estimate {result.error_estimate:.2e})", file=err)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
