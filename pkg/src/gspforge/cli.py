"""Command-line surface for the pipeline and its diagnostic primitives.

Exit codes: 0 success or all checks pass, 1 a verification check failed,
2 usage or contract errors, 3 anticipated runtime limits (search budgets,
closure caps, factorization timeouts).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import kernels, synth, verify, weilselect
from .arith import factorize
from .errors import (BadReduction, BudgetExceeded, CapExceeded, DegenerateLeading,
                     DegreeMismatch, FactorizationTimeout, GspForgeError,
                     InconsistentTarget, MultipleRoot, NonCoprimeModuli,
                     NoSupersingularParam, NotFound, OutOfContract, ParityViolation,
                     SelectionExhausted, SingularCurve, VerificationFailed,
                     ZeroInput)
from .finitefield import FpPoly, deuring_poly, factor_small
from .hypercurve import HyperCurve, count_points, frobenius_data
from .igusa import classify_reduction, igusa_invariants
from .sympgroup import closure, gsp_order, sp_order
from .weilselect import DEFAULT_SEED, search_curve

# bad input data counts as usage; runtime limits are anticipated internal errors
_USAGE_ERRORS = (OutOfContract, ValueError, OSError, KeyError, ZeroDivisionError,
                 MultipleRoot, DegreeMismatch, ZeroInput, SingularCurve,
                 DegenerateLeading, BadReduction, ParityViolation,
                 InconsistentTarget, NonCoprimeModuli)
_LIMIT_ERRORS = (BudgetExceeded, NotFound, CapExceeded, FactorizationTimeout,
                 SelectionExhausted, NoSupersingularParam)


def _parse_poly(text: str) -> tuple[int, ...]:
    """Accept g2:v1:[...] or a bare comma list, leading coefficient first."""
    text = text.strip()
    if text.startswith("g2:"):
        return HyperCurve.from_text(text).coeffs
    coeffs = tuple(int(c) for c in text.split(","))
    if len(coeffs) != 7:
        raise ValueError(f"expected 7 coefficients f6..f0, got {len(coeffs)}")
    return coeffs


def _parse_fixed(text: str) -> list[int | None]:
    parts = text.split(",")
    if len(parts) != 7:
        raise ValueError("--fixed needs 7 comma slots (empty slot = free)")
    return [int(p) if p.strip() != "" else None for p in parts]


def _emit(payload: dict, json_path: str | None, human: str):
    if json_path:
        text = json.dumps(payload, indent=2) + "\n"
        if json_path == "-":
            sys.stdout.write(text)
        else:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(text)
    if human:
        print(human)


def _report_lines(report) -> str:
    width = max(len(r.name) for r in report.rows)
    lines = [f"{r.name:<{width}}  {r.status}" + (f"  {r.detail}" if r.detail else "")
             for r in report.rows]
    lines.append("overall: " + ("PASS" if report.overall else "FAIL"))
    return "\n".join(lines)


def _report_payload(report) -> dict:
    return {"overall": report.overall,
            "rows": [{"name": r.name, "status": r.status, "detail": r.detail}
                     for r in report.rows]}


def _threads(args) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("FORGE_THREADS")
    return int(env) if env else None


def _cmd_synth(args) -> int:
    witnesses = None
    if args.witness1 or args.witness2:
        if not (args.witness1 and args.witness2):
            raise OutOfContract("--witness1 and --witness2 must come together")
        witnesses = (_parse_poly(args.witness1), _parse_poly(args.witness2))
    cert = synth.synthesize(args.ell, seed=args.seed, strategy=args.strategy,
                            minimize=args.minimize, witnesses=witnesses,
                            threads=_threads(args))
    text = synth.certificate_to_json(cert)
    if args.json and args.json != "-":
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"certificate for ell = {args.ell}: curve {cert.curve.to_text()}")
        print(f"written to {args.json}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    if bool(args.cert) == bool(args.curve):
        raise OutOfContract("verify needs exactly one of --cert or --curve")
    if args.cert:
        with open(args.cert, encoding="utf-8") as fh:
            cert = synth.certificate_from_json(fh.read())
        report = verify.verify_certificate(cert)
    else:
        if args.ell is None:
            raise OutOfContract("--curve verification requires --ell")
        curve = HyperCurve(_parse_poly(args.curve))
        pset = synth.prime_set(args.ell)
        sel = weilselect.select_aux(args.ell, pset)
        if args.verbose:
            print(f"diagnosing against q1 = {sel.q1}, q2 = {sel.q2}", file=sys.stderr)
        report = verify.diagnose_curve(curve, args.ell, q1=sel.q1, q2=sel.q2)
    _emit(_report_payload(report), args.json, _report_lines(report))
    return 0 if report.overall else 1


def _cmd_ell5(args) -> int:
    curve = HyperCurve(_parse_poly(args.curve)) if args.curve else None
    report = verify.verify_ell5(curve)
    _emit(_report_payload(report), args.json, _report_lines(report))
    return 0 if report.overall else 1


def _cmd_igusa(args) -> int:
    inv = igusa_invariants(_parse_poly(args.poly))
    names = ("J2", "J4", "J6", "J8", "J10", "I12")
    values = inv.as_tuple() + (inv.i12,)
    payload = {n: str(v) for n, v in zip(names, values)}
    _emit(payload, args.json, "\n".join(f"{n} = {v}" for n, v in payload.items()))
    return 0


def _cmd_classify(args) -> int:
    r = classify_reduction(_parse_poly(args.poly), args.p)
    human = r.kind if r.e is None else f"{r.kind}, e = {r.e}"
    _emit({"p": str(args.p), "kind": r.kind,
           "e": None if r.e is None else str(r.e)}, args.json, human)
    return 0


def _cmd_count(args) -> int:
    poly = FpPoly(list(reversed(_parse_poly(args.poly))), args.q)
    n1, n2 = count_points(poly)
    w = frobenius_data(args.q, n1, n2)
    human = (f"N1 = {n1}, N2 = {n2}\n"
             f"a = {w.a}, b = {w.b}\n"
             f"charpoly X^4 + {w.a} X^3 + {w.b} X^2 + {w.a * w.q} X + {w.q ** 2}")
    _emit({"q": str(args.q), "n1": str(n1), "n2": str(n2),
           "a": str(w.a), "b": str(w.b)}, args.json, human)
    return 0


def _cmd_deuring(args) -> int:
    h = deuring_poly(args.ell)
    factors = factor_small(h)
    shown = "".join(f"({f})" if m == 1 else f"({f})^{m}" for f, m in factors)
    _emit({"ell": str(args.ell), "poly": str(h),
           "factors": [{"factor": str(f), "multiplicity": str(m)}
                       for f, m in factors]},
          args.json, f"{h} = {shown} mod {args.ell}")
    return 0


def _cmd_search(args) -> int:
    fixed = _parse_fixed(args.fixed) if args.fixed else None
    poly = search_curve(args.q, args.n1, args.n2, strategy=args.strategy,
                        seed=args.seed, fixed=fixed, threads=_threads(args))
    desc = tuple(reversed(poly.coeffs))
    text = "g2:v1:[" + ",".join(str(c) for c in desc) + "]"
    _emit({"q": str(args.q), "curve": text,
           "n1": str(args.n1), "n2": str(args.n2), "seed": str(args.seed),
           "strategy": args.strategy},
          args.json, f"{text}  (y^2 = {poly} over F_{args.q})")
    return 0


def _cmd_group_order(args) -> int:
    order = gsp_order(args.n, args.q)
    fact = factorize(order)
    _emit({"n": str(args.n), "q": str(args.q), "order": str(order),
           "factorization": str(fact)}, args.json, f"{order} = {fact}")
    return 0


def _cmd_closure(args) -> int:
    with open(args.gens, encoding="utf-8") as fh:
        data = json.load(fh)
    gens = [tuple(tuple(int(x) for x in row) for row in m) for m in data]
    if any(len(m) != 4 or any(len(row) != 4 for row in m) for m in gens):
        raise OutOfContract("generators must be 4x4 integer matrices")
    kernels.set_threads(_threads(args))
    size = closure(gens, args.ell, cap=args.cap)
    notes = []
    if size == sp_order(2, args.ell):
        notes.append("= |Sp4|")
    if size == gsp_order(2, args.ell):
        notes.append("= |GSp4|")
    human = f"closure size {size}" + (" " + " ".join(notes) if notes else "")
    _emit({"ell": str(args.ell), "size": str(size),
           "full_sp": size == sp_order(2, args.ell)}, args.json, human)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gspforge",
        description="Genus-2 curves with tame full-symplectic mod-ell torsion")
    sub = top.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--json", metavar="PATH",
                       help="write machine-readable JSON here ('-' for stdout)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--threads", type=int, default=None,
                       help="worker bound (default: FORGE_THREADS or all cores)")
        p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("synth", help="run the full pipeline for one ell")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--strategy", choices=("random", "lex"), default="lex")
    p.add_argument("--minimize", action="store_true",
                   help="use symmetric residues for smaller coefficients")
    p.add_argument("--witness1", help="skip the search: curve over F_q1")
    p.add_argument("--witness2", help="skip the search: curve over F_q2")
    common(p)
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("verify", help="re-check a certificate or diagnose a curve")
    p.add_argument("--cert", metavar="FILE")
    p.add_argument("--curve", metavar="G2")
    p.add_argument("--ell", type=int)
    p.add_argument("--diagnostic", action="store_true",
                   help="granular per-congruence rows (implied by --curve)")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("ell5", help="check the fixed ell = 5 witness model")
    p.add_argument("--curve", metavar="G2", help="candidate replacement model")
    common(p)
    p.set_defaults(fn=_cmd_ell5)

    p = sub.add_parser("igusa", help="exact invariants of a sextic")
    p.add_argument("--poly", required=True, metavar="F6..F0")
    common(p)
    p.set_defaults(fn=_cmd_igusa)

    p = sub.add_parser("classify", help="reduction type at an odd prime")
    p.add_argument("--poly", required=True, metavar="F6..F0")
    p.add_argument("--p", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("count", help="point counts and Frobenius data over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--poly", required=True, metavar="F6..F0")
    common(p)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("deuring", help="Deuring polynomial and its factors")
    p.add_argument("--ell", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_deuring)

    p = sub.add_parser("search", help="find a curve with prescribed counts")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--strategy", choices=("random", "lex"), default="random")
    p.add_argument("--fixed", metavar="SLOTS",
                   help="7 comma slots pinning coefficients, empty = free")
    common(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("group-order", help="order of the similitude group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_group_order)

    p = sub.add_parser("closure", help="subgroup size from a generator file")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--gens", required=True, metavar="FILE",
                   help="JSON list of 4x4 matrices")
    p.add_argument("--cap", type=int, default=12_000_000)
    common(p)
    p.set_defaults(fn=_cmd_closure)

    return top


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except VerificationFailed as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except _LIMIT_ERRORS as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except _USAGE_ERRORS as e:
        print(f"usage error: {e}", file=sys.stderr)
        print(parser.format_usage(), end="", file=sys.stderr)
        return 2
    except GspForgeError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
