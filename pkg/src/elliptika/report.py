"""Suite runner and deterministic JSON/CSV report serialization."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field

from .elliptic import EllipticContext, context_from_tau
from .errors import ConfigError, NotAdmissible
from .identities import (
    FAMILIES,
    CoprimePair,
    IdentityCase,
    VerificationReport,
    classical_case_for,
    degeneration_check,
    verify_classical,
    verify_derivative_reciprocity,
    verify_function_equation,
    verify_reciprocity,
)

DEGENERATION_MIN_IM = 6.0

DEFAULT_TOLERANCES = {
    "function_equation": 1e-9,
    "reciprocity": 1e-9,
    "derivative_N1": 1e-7,
    "derivative_N2": 1e-6,
    "degeneration": 1e-8,
    "classical": 1e-12,
}


def default_pairs(limit: int = 5) -> tuple[CoprimePair, ...]:
    """All ordered coprime pairs with a, b <= limit."""
    return tuple(
        CoprimePair(a, b)
        for a in range(1, limit + 1)
        for b in range(1, limit + 1)
        if math.gcd(a, b) == 1
    )


@dataclass
class SuiteConfig:
    """Everything the suite runner needs; validated on construction."""

    tau_list: tuple = (2j, 0.3 + 1.5j, 8j)
    pairs: tuple = ()
    cases: tuple = ()
    N_max: int = 2
    samples: int = 16
    tolerances: dict = field(default_factory=dict)
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        if not self.pairs:
            self.pairs = default_pairs()
        if not self.cases:
            self.cases = FAMILIES
        try:
            self.pairs = tuple(
                p if isinstance(p, CoprimePair) else CoprimePair(*p) for p in self.pairs
            )
            self.cases = tuple(
                c if isinstance(c, IdentityCase) else IdentityCase(*c) for c in self.cases
            )
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
        self.tau_list = tuple(complex(t) for t in self.tau_list)
        for t in self.tau_list:
            if not t.imag > 0:
                raise ConfigError(f"tau must have positive imaginary part, got {t}")
        if self.N_max < 0:
            raise ConfigError("N_max must be non-negative")
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(self.tolerances)
        unknown = set(tol) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        self.tolerances = tol
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"output_format must be json or csv, got {self.output_format!r}")

    def warnings(self) -> list[str]:
        from .theta import TauParameter

        return [
            f"tau {t} lies outside the level-2 fundamental domain"
            for t in self.tau_list
            if not TauParameter(t).in_fundamental_domain
        ]


@dataclass
class SuiteResult:
    reports: list
    summary: dict
    config: SuiteConfig
    wall_time: float  # informational only; never serialized

    @property
    def failed(self) -> int:
        return self.summary["failed"]


def run_suite(config: SuiteConfig) -> SuiteResult:
    """Run every check the config asks for, in deterministic order."""
    t0 = time.monotonic()
    reports: list[VerificationReport] = []
    skipped = 0

    contexts: dict[complex, EllipticContext] = {
        t: context_from_tau(t) for t in config.tau_list
    }
    tol = config.tolerances

    for case in config.cases:
        for pair in config.pairs:
            if not case.is_admissible(pair):
                skipped += len(config.tau_list)
                continue
            for t in config.tau_list:
                ctx = contexts[t]
                reports.append(
                    verify_function_equation(
                        case, pair, ctx, config.samples, tol["function_equation"]
                    )
                )
                reports.append(verify_reciprocity(case, pair, ctx, tol["reciprocity"]))
                for order in range(1, config.N_max + 1):
                    key = f"derivative_N{order}"
                    reports.append(
                        verify_derivative_reciprocity(
                            case, pair, ctx, order,
                            tol.get(key, tol["derivative_N2"]),
                        )
                    )
                if t.imag >= DEGENERATION_MIN_IM:
                    reports.append(
                        degeneration_check(case, pair, ctx, tolerance=tol["degeneration"])
                    )

    # one classical check per matched (case number, pair)
    seen: set[tuple[int, int, int]] = set()
    for case in config.cases:
        for pair in config.pairs:
            if not case.is_admissible(pair):
                continue
            number = classical_case_for(case, pair)
            key = (number, pair.a, pair.b)
            if key in seen:
                continue
            seen.add(key)
            reports.append(verify_classical(number, pair, tolerance=tol["classical"]))

    passed = sum(1 for r in reports if r.passed)
    failed = len(reports) - passed
    summary = {
        "total": len(reports) + skipped,
        "passed": passed,
        "failed": failed,
        "skipped_not_admissible": skipped,
    }
    return SuiteResult(reports, summary, config, time.monotonic() - t0)


# ---------------------------------------------------------------------------
# serialization (deterministic: fixed key order, %.17g floats, no timing)
# ---------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return '"%s"' % repr(x)
    s = format(float(x), ".17g")
    return s


def _json_value(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return '"%s"' % obj.replace("\\", "\\\\").replace('"', '\\"')
    if isinstance(obj, complex):
        return "[%s, %s]" % (_fmt_float(obj.real), _fmt_float(obj.imag))
    if isinstance(obj, (list, tuple)):
        return "[%s]" % ", ".join(_json_value(v) for v in obj)
    if isinstance(obj, dict):
        return "{%s}" % ", ".join(
            '"%s": %s' % (k, _json_value(v)) for k, v in obj.items()
        )
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _report_dict(r: VerificationReport) -> dict:
    return {
        "identity": r.identity,
        "case": list(r.case),
        "pair": list(r.pair),
        "tau": complex(r.tau),
        "max_abs_residual": float(r.max_abs_residual),
        "tolerance": float(r.tolerance),
        "passed": bool(r.passed),
    }


def _config_dict(config: SuiteConfig) -> dict:
    return {
        "tau_list": [complex(t) for t in config.tau_list],
        "pairs": [[p.a, p.b] for p in config.pairs],
        "cases": [list(c.as_tuple()) for c in config.cases],
        "N_max": config.N_max,
        "samples": config.samples,
        "tolerances": {k: float(v) for k, v in sorted(config.tolerances.items())},
        "warnings": config.warnings(),
    }


def to_json(result: SuiteResult) -> str:
    doc = {
        "suite": "elliptika",
        "config": _config_dict(result.config),
        "reports": [_report_dict(r) for r in result.reports],
        "summary": result.summary,
    }
    return _json_value(doc) + "\n"


CSV_FIELDS = (
    "identity", "case_i", "case_j", "case_m", "case_n", "pair_a", "pair_b",
    "tau_re", "tau_im", "max_abs_residual", "tolerance", "passed",
)


def to_csv(result: SuiteResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in result.reports:
        writer.writerow([
            r.identity, *r.case, *r.pair,
            format(r.tau.real, ".17g"), format(r.tau.imag, ".17g"),
            format(r.max_abs_residual, ".17g"), format(r.tolerance, ".17g"),
            "true" if r.passed else "false",
        ])
    return buf.getvalue()


def render(result: SuiteResult) -> str:
    if result.config.output_format == "csv":
        return to_csv(result)
    return to_json(result)
