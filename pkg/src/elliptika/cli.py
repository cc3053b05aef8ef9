"""Command-line interface: verification suites and single evaluations.

Subcommands
-----------
verify   run an identity-verification suite (JSON or CSV report)
eval     evaluate one quantity (theta, sn/cn/dn, f, wp, C) and print it
sweep    residual grid over pairs and tau values, CSV output

Complex arguments use the "a+bi" form ("2i", "i", "0.3+1.5i", "1-2i", "3").
Logging verbosity comes from ELLIPTIKA_LOG in {quiet, info, debug}.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .elliptic import context_from_tau, f_ij, jacobi_basic, weierstrass_p
from .errors import EllipticaError, ParseError
from .identities import IdentityCase
from .laurent import laurent_C
from .report import SuiteConfig, render, run_suite, to_csv
from .theta import theta_eval

log = logging.getLogger("elliptika")


def parse_complex(text: str) -> complex:
    """Parse "a+bi" / "a-bi" / "bi" / "i" / "a" into a complex number."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty complex literal")
    s = s.replace("i", "j")
    # bare imaginary units: "j", "+j", "-j", "1+j", "1-j"
    for bare, repl in (("+j", "+1j"), ("-j", "-1j")):
        if s.endswith(bare):
            s = s[: -len(bare)] + repl
    if s == "j":
        s = "1j"
    try:
        return complex(s)
    except ValueError as exc:
        raise ParseError(f"cannot parse complex number {text!r}") from exc


def _parse_case(text: str) -> IdentityCase:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 4:
        raise ParseError(f"case needs four indices i j m n, got {text!r}")
    try:
        i, j, m, n = (int(p) for p in parts)
        return IdentityCase((i, j), (m, n))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_config_file(path: str) -> dict:
    """Flat key = value config mirroring SuiteConfig.

    Lists are comma-separated; pairs and cases use ';' between entries, e.g.
        tau_list = 2i, 8i
        pairs = 1,2; 2,3
        cases = 1,0,1,0; 1,1,1,0
    """
    values: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "tau_list":
                values["tau_list"] = tuple(parse_complex(p) for p in val.split(","))
            elif key == "pairs":
                values["pairs"] = tuple(
                    tuple(int(x) for x in entry.split(",")) for entry in val.split(";") if entry.strip()
                )
            elif key == "cases":
                values["cases"] = tuple(
                    _case_tuple(entry) for entry in val.split(";") if entry.strip()
                )
            elif key in ("N_max", "samples"):
                values[key] = int(val)
            elif key == "output_format":
                values["output_format"] = val
            elif key == "output_path":
                values["output_path"] = val
            elif key.startswith("tol_"):
                values.setdefault("tolerances", {})[key[4:]] = float(val)
            else:
                raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def _case_tuple(entry: str):
    case = _parse_case(entry)
    return ((case.first.i, case.first.j), (case.second.i, case.second.j))


def _suite_config_from_args(args) -> SuiteConfig:
    values: dict = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    if args.tau:
        values["tau_list"] = tuple(parse_complex(t) for t in args.tau)
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise ParseError("--a and --b must be given together")
        values["pairs"] = ((args.a, args.b),)
    if args.case:
        values["cases"] = tuple(_case_tuple(c) for c in args.case)
    if args.N is not None:
        values["N_max"] = args.N
    if args.samples is not None:
        values["samples"] = args.samples
    if args.tol is not None:
        values["tolerances"] = {
            key: args.tol
            for key in ("function_equation", "reciprocity", "derivative_N1",
                        "derivative_N2", "degeneration", "classical")
        }
    if args.format:
        values["output_format"] = args.format
    if args.out:
        values["output_path"] = args.out
    return SuiteConfig(**values)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    config = _suite_config_from_args(args)
    for warning in config.warnings():
        log.info("%s", warning)
    result = run_suite(config)
    log.info(
        "suite finished in %.2fs: %d passed, %d failed, %d skipped",
        result.wall_time,
        result.summary["passed"],
        result.summary["failed"],
        result.summary["skipped_not_admissible"],
    )
    _emit(render(result), config.output_path)
    return 0 if result.summary["failed"] == 0 else 1


def _print_value(value: complex, err: float) -> None:
    sign = "+" if value.imag >= 0 else "-"
    print(f"{value.real:.17g}{sign}{abs(value.imag):.17g}i {err:.3g}")


def cmd_eval(args) -> int:
    tau = parse_complex(args.tau)
    what = args.what
    indices = [int(x) for x in args.indices]
    if what == "theta":
        if len(indices) != 1:
            raise ParseError("eval theta needs one index 1..4")
        z = parse_complex(args.z) if args.z is not None else 0j
        tv = theta_eval(indices[0], z, tau)
        _print_value(complex(tv.value), tv.tail_estimate)
        return 0
    ctx = context_from_tau(tau)
    if what in ("sn", "cn", "dn"):
        z = parse_complex(args.z)
        value = dict(zip(("sn", "cn", "dn"), jacobi_basic(z, ctx)))[what]
    elif what == "f":
        if len(indices) != 2:
            raise ParseError("eval f needs two indices i j")
        z = parse_complex(args.z)
        value = f_ij((indices[0], indices[1]), z, ctx, method=args.method)
    elif what == "wp":
        z = parse_complex(args.z)
        value = weierstrass_p(z, ctx)
    elif what == "C":
        if len(indices) != 2:
            raise ParseError("eval C needs two indices i j")
        mode = "closed_form" if args.s <= 2 else "contour"
        value = laurent_C((indices[0], indices[1]), args.s, ctx, mode)
    else:
        raise ParseError(f"unknown eval target {what!r}")
    # crude but honest: truncation target plus rounding at the value's scale
    err = ctx.trunc.epsilon + 1e-14 * (1.0 + abs(value))
    _print_value(complex(value), err)
    return 0


def cmd_sweep(args) -> int:
    config = _suite_config_from_args(args)
    # residual grid only: the z-sampled function equation per (case, pair, tau)
    from .identities import verify_function_equation

    reports = []
    contexts = {t: context_from_tau(t) for t in config.tau_list}
    for case in config.cases:
        for pair in config.pairs:
            if not case.is_admissible(pair):
                continue
            for t in config.tau_list:
                reports.append(
                    verify_function_equation(
                        case, pair, contexts[t], config.samples,
                        config.tolerances["function_equation"],
                    )
                )
    from .report import SuiteResult

    passed = sum(1 for r in reports if r.passed)
    result = SuiteResult(
        reports,
        {"total": len(reports), "passed": passed, "failed": len(reports) - passed,
         "skipped_not_admissible": 0},
        config,
        0.0,
    )
    _emit(to_csv(result), config.output_path)
    return 0 if result.summary["failed"] == 0 else 1


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--tau", action="append", help="tau value, e.g. 2i (repeatable)")
    p.add_argument("--a", type=int, help="restrict to one pair: a")
    p.add_argument("--b", type=int, help="restrict to one pair: b")
    p.add_argument("--case", action="append", help='index case "i,j,m,n" (repeatable)')
    p.add_argument("--N", type=int, help="highest derivative-law order")
    p.add_argument("--samples", type=int, help="sample points per identity")
    p.add_argument("--tol", type=float, help="override every tolerance")
    p.add_argument("--format", choices=("json", "csv"), help="report format")
    p.add_argument("--out", help="write report to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elliptika",
        description="Numerical verification of elliptic cotangent-sum identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    _add_common_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate one quantity")
    p_eval.add_argument("what", choices=("theta", "sn", "cn", "dn", "f", "wp", "C"))
    p_eval.add_argument("indices", nargs="*", help="function indices, e.g. 1 0")
    p_eval.add_argument("--z", help="argument z")
    p_eval.add_argument("--tau", required=True, help="lattice parameter")
    p_eval.add_argument("--s", type=int, default=1, help="Laurent order for C")
    p_eval.add_argument(
        "--method",
        default="theta_quotient",
        choices=("theta_quotient", "fourier", "eisenstein", "mumford"),
    )
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="residual grid over pairs and tau (CSV)")
    _add_common_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


_LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _setup_logging():
    level_name = os.environ.get("ELLIPTIKA_LOG", "quiet").lower()
    if level_name not in _LOG_LEVELS:
        raise ParseError(f"ELLIPTIKA_LOG must be one of {sorted(_LOG_LEVELS)}")
    logging.basicConfig(level=_LOG_LEVELS[level_name], stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    try:
        _setup_logging()
        args = build_parser().parse_args(argv)
        return args.func(args)
    except EllipticaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
