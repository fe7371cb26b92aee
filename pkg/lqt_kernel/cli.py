"""
Command-line front door.

Commands:
    build       instance file -> bundle with every structure constant
    verify      bundle -> report (hopf | pairing | copairing | lqt | duality)
    emit-r      bundle -> R_n and R_n^-1 as exact terms
    braid       bundle + module certificates -> braiding matrices and report
    ybe-defect  bundle -> R12 R13 R23 - R23 R13 R12 at a level
    report      re-render a saved report

Exit codes: 0 when every attempted check passes, 1 on a verification
failure (the report is still written), 2 on malformed input or an
insufficient truncation budget.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from .braidmod import (
    FiniteCycleModule,
    braiding_matrix,
    braiding_stability,
    check_braid_relation,
    check_module,
    hexagon_check,
    yd_structure,
)
from .bundle import dumps, matrix_document, read_bundle, tensor_document, write_bundle
from .exceptions import BudgetError, InputError, KernelError, VerificationError
from .gradedhopf import duality_check, opposite_coalgebra, verify_hopf
from .loader import instance_group, instance_lqt, instance_modules
from .lqt import LqtStructure, qybe_defect, verify_copairing, verify_double, verify_lqt, verify_skew_pairing
from .reports import Report, Tally
from .schema import load_instance_file, load_module_files, read_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2

VERIFY_TARGETS = ("hopf", "pairing", "copairing", "lqt", "duality")


# ──── Output ────


def _emit(document: Any, out: str | None) -> None:
    text = dumps(document)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _finish(report: Report, args: argparse.Namespace, extra: dict[str, Any] | None = None) -> int:
    document: dict[str, Any] = {"report": report.to_dict(include_timing=args.timing)}
    if extra:
        document.update(extra)
    _emit(document, args.out)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def _levels(s: LqtStructure, requested: int | None, factor: int, what: str) -> list[int]:
    """Levels to check; refuses when the truncation cannot support them."""
    N = s.truncation
    top = s.level if requested is None else requested
    if top > s.level:
        raise BudgetError(
            f"{what} at level {top}: bundle only carries R up to {s.level}",
            required=top,
            available=s.level,
        )
    if factor * top > N:
        raise BudgetError(
            f"{what} at level {top} needs N >= {factor * top}, bundle has N = {N}",
            required=factor * top,
            available=N,
        )
    return list(range(top + 1)) if requested is None else [top]


def _timed(report: Report, name: str, fn: Callable[[], Report]) -> Report:
    start = time.perf_counter()
    result = fn()
    report.timing[name] = round(time.perf_counter() - start, 3)
    return result


# ──── Commands ────


def cmd_build(args: argparse.Namespace) -> int:
    if not args.out:
        raise InputError("build needs --out for the bundle path")
    spec = load_instance_file(args.input).with_overrides(
        max_degree=args.max_degree,
        level=args.level,
        field=args.field,
        variant=args.variant,
        r_unit_variant=args.r_unit_variant,
    )
    s = instance_lqt(spec, threads=args.threads, verify=not args.no_verify)
    write_bundle(args.out, s, spec)
    dims = s.double.double.dims
    print(f"{args.out}: D dims {list(dims)}, dim D_({s.truncation}) = {sum(dims)}, R up to level {s.level}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    s, _ = read_bundle(args.input)
    d = s.double
    report = Report(f"verify:{args.what}")
    if args.what == "hopf":
        report.extend(_timed(report, "A", lambda: verify_hopf(d.algebra, args.threads)), prefix="A:")
        report.extend(_timed(report, "H", lambda: verify_hopf(d.coalgebra, args.threads)), prefix="H:")
        report.extend(_timed(report, "D", lambda: verify_double(d, args.threads)), prefix="D:")
    elif args.what == "pairing":
        report.extend(_timed(report, "tau", lambda: verify_skew_pairing(d.pairing, args.threads)))
    elif args.what == "copairing":
        for n in _levels(s, args.level, 2, "copairing"):
            p = s.copairings[n]
            report.extend(_timed(report, f"P_{n}", lambda: verify_copairing(p, args.threads)), prefix=f"n={n}:")
    elif args.what == "lqt":
        for n in _levels(s, args.level, 2, "verify_lqt"):
            report.extend(_timed(report, f"n={n}", lambda: verify_lqt(s, n, args.threads)), prefix=f"n={n}:")
    else:
        algebra = opposite_coalgebra(d.algebra)
        report.extend(_timed(report, "duality", lambda: duality_check(algebra, d.coalgebra, threads=args.threads)))
    report.ledger.update(s.ledger)
    return _finish(report, args)


def cmd_emit_r(args: argparse.Namespace) -> int:
    s, _ = read_bundle(args.input)
    D = s.double.double
    levels = _levels(s, args.level, 1, "emit-r")
    document = {
        "variant": s.variant,
        "unit_variant": s.unit_variant,
        "levels": {
            str(n): {
                "R": tensor_document(s.r_at(n), [D, D]),
                "R_inverse": tensor_document(s.r_inverse_at(n), [D, D]),
            }
            for n in levels
        },
    }
    _emit(document, args.out)
    return EXIT_OK


def _modules(args: argparse.Namespace, s: LqtStructure, spec: Any) -> list[FiniteCycleModule]:
    specs = load_module_files(args.modules) if args.modules else list(spec.modules if spec else [])
    if not specs:
        raise InputError("braid needs at least one module certificate (--modules or 'modules' in the instance)")
    group = instance_group(spec) if spec is not None else None
    if group is None and any(m.type in ("conjugation", "class", "yd") for m in specs):
        raise InputError("degree-0 modules need the group recorded in the bundle instance")
    return instance_modules(specs, s.double, group)


def cmd_braid(args: argparse.Namespace) -> int:
    s, spec = read_bundle(args.input)
    modules = _modules(args, s, spec)
    report = Report("braid")
    for m in modules:
        report.extend(check_module(m, s.double, args.threads), prefix=f"{m.name}:")
    if not report.passed:
        return _finish(report, args)

    braidings = {}
    matrices: dict[str, Any] = {}
    field = s.double.double.field
    for u, v in itertools.product(modules, repeat=2):
        op = braiding_matrix(s, u, v)
        braidings[(u.name, v.name)] = op
        rows = [f"{y}⊗{x}" for y in v.basis for x in u.basis]
        cols = [f"{x}⊗{y}" for x in u.basis for y in v.basis]
        matrices[f"{u.name},{v.name}"] = {
            "level": op.level,
            "C": matrix_document(op.matrix, field, rows, cols),
            "C_inverse": matrix_document(op.inverse, field, cols, rows),
        }
        report.extend(braiding_stability(s, u, v), prefix=f"{u.name},{v.name}:")
    for u, v, w in itertools.product(modules, repeat=3):
        triple = f"{u.name},{v.name},{w.name}:"
        report.extend(
            check_braid_relation(braidings[(u.name, v.name)], braidings[(u.name, w.name)], braidings[(v.name, w.name)]),
            prefix=triple,
        )
        report.extend(hexagon_check(s, u, v, w), prefix=triple)
    extra: dict[str, Any] = {"braidings": matrices}
    if args.yd:
        coactions = {}
        D = s.double.double
        for m in modules:
            yd = yd_structure(s, m)
            report.extend(yd.report, prefix=f"{m.name}:")
            coactions[m.name] = {
                m.basis[x]: [
                    [[k.degree, k.ordinal], D.text(k), m.basis[i], field.format(c)]
                    for (k, i), c in sorted(delta.items())
                ]
                for x, delta in yd.coaction.items()
            }
        extra["coactions"] = coactions
    return _finish(report, args, extra)


def cmd_ybe_defect(args: argparse.Namespace) -> int:
    s, _ = read_bundle(args.input)
    D = s.double.double
    [n] = _levels(s, args.level if args.level is not None else 0, 3, "ybe-defect")
    defect, lowest = qybe_defect(s, n)
    report = Report(f"ybe-defect:n={n}")
    tally = Tally("QYBE", note="exact in D (x) D (x) D")
    tally.record(not defect, f"lowest nonzero total degree {lowest}")
    report.add(tally)
    report.ledger["lowest_defect_degree"] = lowest
    return _finish(report, args, {"defect": tensor_document(defect, [D, D, D])})


def cmd_report(args: argparse.Namespace) -> int:
    data = read_json(args.input)
    payload = data.get("report", data) if isinstance(data, dict) else None
    if not isinstance(payload, dict) or "checks" not in payload:
        raise InputError(f"{args.input}: not a report")
    report = Report.from_dict(payload)
    if args.format == "json":
        sys.stdout.write(dumps(report.to_dict(include_timing=args.timing)))
    else:
        print(report.summary())
    return EXIT_OK if report.passed else EXIT_VERIFICATION


# ──── Parser ────


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lqt-kernel", description="Local quasitriangular structures on Hopf quivers.")
    parser.add_argument("--log-level", default="WARNING", help="Logging level for stderr (default WARNING).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="Input file (instance, bundle or report).")
    common.add_argument("--out", default=None, help="Output path (stdout when omitted).")
    common.add_argument("--threads", type=int, default=1, help="Worker threads for verification sweeps.")
    common.add_argument("--timing", action="store_true", help="Include timings in reports.")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="Build a bundle from an instance file.")
    build.add_argument("--max-degree", type=int, default=None, help="Truncation degree N.")
    build.add_argument("--level", type=int, default=None, help="Highest LQT level n.")
    build.add_argument("--field", default=None, help="QQ or GF(p).")
    build.add_argument("--variant", choices=("path", "semipath"), default=None)
    build.add_argument("--r-unit-variant", choices=("unit", "single"), default=None)
    build.add_argument("--no-verify", action="store_true", help="Skip construction-time verification.")
    build.set_defaults(handler=cmd_build)

    verify = sub.add_parser("verify", parents=[common], help="Verify a bundle.")
    verify.add_argument("--what", choices=VERIFY_TARGETS, default="lqt")
    verify.add_argument("--level", type=int, default=None, help="Single level to check (default: all).")
    verify.set_defaults(handler=cmd_verify)

    emit = sub.add_parser("emit-r", parents=[common], help="Export R_n and R_n^-1.")
    emit.add_argument("--level", type=int, default=None)
    emit.set_defaults(handler=cmd_emit_r)

    braid = sub.add_parser("braid", parents=[common], help="Braiding matrices for module certificates.")
    braid.add_argument("--modules", nargs="*", default=[], help="Module certificate files.")
    braid.add_argument("--yd", action="store_true", help="Also build and check Yetter-Drinfeld coactions.")
    braid.set_defaults(handler=cmd_braid)

    ybe = sub.add_parser("ybe-defect", parents=[common], help="Quantum Yang-Baxter defect of R_n.")
    ybe.add_argument("--level", type=int, default=None)
    ybe.set_defaults(handler=cmd_ybe_defect)

    rep = sub.add_parser("report", parents=[common], help="Render a saved report.")
    rep.add_argument("--format", choices=("text", "json"), default="text")
    rep.set_defaults(handler=cmd_report)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch, and map exceptions onto exit codes."""
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), stream=sys.stderr)
    try:
        return args.handler(args)
    except (InputError, BudgetError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFICATION
    except KernelError as e:
        logger.debug("kernel error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFICATION


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
