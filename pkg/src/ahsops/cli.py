"""Command line interface.

Exit status: 0 on success, 1 when the mathematics rejects the input (for
instance lambda + k theta not dominant, or a non-extremal direction), 2 for
malformed invocations.
"""
from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from .casimir import a_constants, c_ladder, operator_data, standard_operator_data
from .catalog import AhsStructure, FAMILY_NAMES, extremal_weights, parse_structure, smallness_check
from .decomp import DEFAULT_DIMENSION_CAP, decompose_g1_tensor, klimyk, weight_system
from .errors import CatalogError, DomainError
from .operator import FORMATS, build_formula, obstruction_audit, render
from .rootsystem import RootSystem, Weight, format_rational, format_vector

DEFAULT_SWEEP = ("conf-even:4", "conf-odd:3", "symplectic:3", "spinorial:4", "grassmannian:1,2")

_L_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*L(\d+)")


class UsageError(Exception):
    pass


def parse_weight(r: RootSystem, spec: str) -> Weight:
    """"0", fundamental coefficients "1,0,2", or an L-combination like "L1+L2" or "-L3"."""
    text = spec.replace(" ", "")
    if not text:
        raise UsageError("empty weight")
    if "L" in text:
        pos, out = 0, r.zero()
        for m in _L_TERM.finditer(text):
            if m.start() != pos:
                break
            sign = -1 if m.group(1) == "-" else 1
            if pos and not m.group(1):
                raise UsageError(f"bad weight {spec!r}")
            coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            try:
                out = out + sign * coef * r.basis(int(m.group(3)))
            except IndexError as exc:
                raise UsageError(str(exc)) from None
            pos = m.end()
        if pos != len(text):
            raise UsageError(f"bad weight {spec!r}")
        return out
    try:
        values = [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad weight {spec!r}") from None
    if values == [0]:
        return r.zero()
    if len(values) != r.rank:
        raise UsageError(f"weight {spec!r} needs {r.rank} fundamental coefficients")
    return r.from_labels(values)


def _labels(w: Weight) -> str:
    return format_vector(w.labels)


def _structure(args) -> AhsStructure:
    if not args.structure:
        raise UsageError("--structure is required")
    try:
        return parse_structure(args.structure)
    except CatalogError as exc:
        raise UsageError(str(exc)) from None


def _direction(args, s: AhsStructure):
    """Operator data from either (lambda, theta, k) or (lambda, w, ambient root)."""
    lam = parse_weight(s.g0s, args.lam or "0")
    if args.root is not None:
        if args.w is None:
            raise UsageError("--root needs --w")
        try:
            w = Fraction(args.w)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad conformal weight {args.w!r}") from None
        return standard_operator_data(s, lam, w, parse_weight(s.ambient, args.root))
    if args.theta is None or args.k is None:
        raise UsageError("need --theta and --k (or --root and --w)")
    return operator_data(s, lam, parse_weight(s.g0s, args.theta), args.k)


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args, out: TextIO) -> None:
    if not args.structure:
        for name in FAMILY_NAMES:
            print(name, file=out)
        return
    s = _structure(args)
    report = smallness_check(s)
    print(f"structure: {s.name}", file=out)
    print("ambient: " + " x ".join(map(str, s.ambient.factors)), file=out)
    print("g0s: " + " x ".join(map(str, s.g0s.factors)), file=out)
    print(f"dim g1: {s.dim_g1}", file=out)
    print(f"alpha: {_labels(s.alpha)}", file=out)
    print(f"A1: {format_rational(s.a1)}", file=out)
    print(f"form scale: {format_rational(s.ambient_scale)}", file=out)
    print(f"smallness: {report.theorem} (min coefficient {format_rational(report.min_fundamental_coefficient)})", file=out)
    ext = extremal_weights(s)
    for w, m in s.g1_weights:
        tag = " extremal" if w in ext else ""
        print(f"  {_labels(w)} L{format_vector(w.coords)} x{m}{tag}", file=out)


def cmd_decompose(args, out: TextIO) -> None:
    s = _structure(args)
    lam = parse_weight(s.g0s, args.lam or "0")
    if args.mu:
        mu = parse_weight(s.g0s, args.mu)
        dec = klimyk(lam, weight_system(mu, args.cap))
    else:
        dec = decompose_g1_tensor(s, lam)
    for w, m in dec.items():
        print(f"{_labels(w)} mult {m} dim {s.g0s.weyl_dimension(w)}", file=out)
    print(f"total dim {dec.total_dimension()}", file=out)


def cmd_constants(args, out: TextIO) -> None:
    s = _structure(args)
    print(f"alpha: {_labels(s.alpha)}", file=out)
    print(f"|alpha|^2: {format_rational(s.alpha_norm2)}", file=out)
    print(f"A1: {format_rational(s.a1)}", file=out)
    print(f"dim g1: {s.dim_g1}", file=out)
    for n, (mu, a) in enumerate(a_constants(s), 1):
        print(f"A{n}: {format_rational(a)} at {_labels(mu)}", file=out)
    if args.theta is not None or args.root is not None:
        d = _direction(args, s)
        ladder = c_ladder(s, d.lam, d.theta, d.k)
        print("c: " + " ".join(format_rational(c) for c in ladder.values), file=out)
        print(f"k: {d.k}", file=out)
        print(f"w: {format_rational(d.w)}", file=out)


def cmd_formula(args, out: TextIO) -> None:
    s = _structure(args)
    f = build_formula(_direction(args, s))
    print(render(f, args.format), file=out)


def cmd_audit(args, out: TextIO) -> None:
    s = _structure(args)
    report = obstruction_audit(_direction(args, s))
    for j, ms, v in report.entries:
        print(f"j={j} s={ms} {format_rational(v)}", file=out)
    print("all obstruction coefficients vanish" if report.all_zero else "NONZERO obstruction", file=out)


def sweep_records(structures: Sequence[str], kmax: int, max_coeff: int, audit: bool = True):
    """Records per (structure, lambda, theta, k), then a summary record."""
    per_k: dict[int, set] = {}
    failures = cases = 0
    for name in structures:
        s = parse_structure(name)
        ext = sorted(extremal_weights(s), key=lambda w: w.labels, reverse=True)
        for labels in itertools.product(range(max_coeff + 1), repeat=s.g0s.rank):
            lam = s.g0s.from_labels(labels)
            for theta in ext:
                for k in range(1, kmax + 1):
                    try:
                        d = operator_data(s, lam, theta, k)
                    except DomainError:
                        continue
                    rec = {
                        "structure": s.name,
                        "lambda": [format_rational(x) for x in lam.labels],
                        "theta": [format_rational(x) for x in theta.labels],
                        "k": k,
                        "w": format_rational(d.w),
                    }
                    try:
                        f = build_formula(d)
                        if audit:
                            obstruction_audit(d)
                        coeffs = [format_rational(c) for c in f.coefficients()]
                        shapes = [[str(t.s), t.i] for t in f.terms]
                        rec["terms"] = [[a, b, c] for (a, b), c in zip(shapes, coeffs)]
                        rec["status"] = "ok"
                        per_k.setdefault(k, set()).add(json.dumps(rec["terms"]))
                    except DomainError as exc:
                        rec["status"] = f"error: {exc}"
                        failures += 1
                    cases += 1
                    yield rec
    universal = all(len(v) == 1 for v in per_k.values())
    yield {
        "summary": True,
        "cases": cases,
        "orders": sorted(per_k),
        "universal": universal,
        "failures": failures,
        "passed": universal and failures == 0,
    }


def cmd_sweep(args, out: TextIO) -> int:
    names = args.structures.split(";") if args.structures else list(DEFAULT_SWEEP)
    for name in names:
        try:
            parse_structure(name)
        except CatalogError as exc:
            raise UsageError(str(exc)) from None
    sink = open(args.output, "w", encoding="utf-8") if args.output else out
    try:
        for rec in sweep_records(names, args.kmax, args.max_coeff, not args.no_audit):
            if rec.get("summary"):
                summary = rec
            print(json.dumps(rec, ensure_ascii=False), file=sink)
    finally:
        if sink is not out:
            sink.close()
    if sink is not out:
        print(json.dumps(summary), file=out)
    return 0 if summary["passed"] else 1


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ahsops", description="Standard invariant operators on AHS structures.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, direction: bool = False):
        sp.add_argument("--structure", help="e.g. conf-even:4, grassmannian:1,2, e6")
        sp.add_argument("--lambda", dest="lam", help='weight: "0", "1,0,0", "L1+L2"')
        if direction:
            sp.add_argument("--theta", help="extremal g1 weight")
            sp.add_argument("--k", type=int, help="order of the operator")
            sp.add_argument("--root", help="ambient positive root, instead of --theta/--k")
            sp.add_argument("--w", help="conformal weight of the source, with --root")

    common(sub.add_parser("catalog", help="list families or describe one structure"))
    sp = sub.add_parser("decompose", help="components of g1 x V_lambda")
    common(sp)
    sp.add_argument("--mu", help="decompose V_lambda x V_mu instead")
    sp.add_argument("--cap", type=int, default=DEFAULT_DIMENSION_CAP, help="dimension cap for weight systems")
    common(sub.add_parser("constants", help="alpha, A_i, ladder and conformal weight"), True)
    sp = sub.add_parser("formula", help="explicit operator formula")
    common(sp, True)
    sp.add_argument("--format", choices=FORMATS, default="plain")
    common(sub.add_parser("audit", help="obstruction coefficients at the invariant weight"), True)
    sp = sub.add_parser("sweep", help="universality sweep, one JSON record per line")
    sp.add_argument("--structures", help='";"-separated structures (default: five families)')
    sp.add_argument("--kmax", type=int, default=7)
    sp.add_argument("--max-coeff", type=int, default=1)
    sp.add_argument("--no-audit", action="store_true")
    sp.add_argument("--output", help="write records here instead of stdout")
    return p


_COMMANDS = {
    "catalog": cmd_catalog,
    "decompose": cmd_decompose,
    "constants": cmd_constants,
    "formula": cmd_formula,
    "audit": cmd_audit,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status = _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
