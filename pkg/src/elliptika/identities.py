"""Lattice-sum identities for the odd elliptic family and their verification.

For coprime (a, b) and indices (i,j), (m,n) with (ia+mb, ja+nb) != (0,0)
mod 2, the twisted lattice sum Phi(z) equals the closed form Psi(z):

    Phi(z) = (1/a) sum'_{mu,nu in [0,a)} (-1)^{i mu + j nu}
                 f_{m,n}(b (mu tau + nu)/a) f_{I,J}(z + (mu tau + nu)/a)
           + (same with a <-> b, (i,j) <-> (m,n)),
    Psi(z) = -f_{i,j}(a z) f_{m,n}(b z) + (1/ab) f_{I+1,1}(z) f_{1,J+1}(z),

with (I, J) = (ia+mb, ja+nb) mod 2.  Comparing derivatives at the lattice
offsets against Laurent data yields reciprocity laws; sending the lattice
parameter to i*infinity recovers the classical cotangent/cosecant identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .elliptic import (
    CS,
    DS,
    NS,
    EllipticContext,
    ParityIndex,
    f_ij,
    lattice_distance,
    trig_degeneration,
)
from .errors import NotAdmissible, ParityViolation, PoleProximity
from .laurent import (
    DEFAULT_CONTOUR,
    ContourConfig,
    closed_form_lambda_poly,
    laurent_C,
    laurent_C_auto,
)

SAMPLE_BASE = 0.1234 + 0.0567j
SAMPLE_STEP = 0.0789 + 0.0123j
SAMPLE_GUARD = 1e-3

CLASSICAL_SIN_GUARD = 1e-9


@dataclass(frozen=True)
class CoprimePair:
    """An ordered pair of coprime positive integers."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive integers")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"({self.a}, {self.b}) is not coprime")


@dataclass(frozen=True)
class IdentityCase:
    """A pair of function indices (i,j), (m,n) selecting one identity family."""

    first: ParityIndex
    second: ParityIndex

    def __post_init__(self):
        if not isinstance(self.first, ParityIndex):
            object.__setattr__(self, "first", ParityIndex(*self.first))
        if not isinstance(self.second, ParityIndex):
            object.__setattr__(self, "second", ParityIndex(*self.second))
        if self.first.is_zero or self.second.is_zero:
            raise ValueError("function indices must be nonzero mod 2")

    def combined(self, pair: CoprimePair) -> ParityIndex:
        """(ia + mb, ja + nb) mod 2."""
        i, j = self.first.i, self.first.j
        m, n = self.second.i, self.second.j
        return ParityIndex(i * pair.a + m * pair.b, j * pair.a + n * pair.b)

    def is_admissible(self, pair: CoprimePair) -> bool:
        return not self.combined(pair).is_zero

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.first.i, self.first.j, self.second.i, self.second.j)

    def __str__(self) -> str:
        return f"{self.first}x{self.second}"


FAMILIES = (
    IdentityCase(CS, CS),
    IdentityCase(DS, CS),
    IdentityCase(NS, CS),
    IdentityCase(DS, DS),
    IdentityCase(NS, DS),
    IdentityCase(NS, NS),
)


@dataclass
class VerificationReport:
    """Outcome of checking one identity at one (case, pair, tau).

    `passed` is scale-relative: max_rel_residual = max |lhs - rhs| / scale
    with scale = max(1, |rhs|) pointwise, and passed iff it is below the
    tolerance.
    """

    identity: str
    case: tuple[int, int, int, int]
    pair: tuple[int, int]
    tau: complex
    max_abs_residual: float
    max_rel_residual: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)


def _residuals(lhs, rhs) -> tuple[float, float]:
    lhs = np.atleast_1d(np.asarray(lhs, dtype=complex))
    rhs = np.atleast_1d(np.asarray(rhs, dtype=complex))
    diff = np.abs(lhs - rhs)
    scale = np.maximum(1.0, np.abs(rhs))
    return float(np.max(diff)), float(np.max(diff / scale))


def _require_admissible(case: IdentityCase, pair: CoprimePair) -> ParityIndex:
    combined = case.combined(pair)
    if combined.is_zero:
        raise NotAdmissible(
            f"case {case} with (a, b) = ({pair.a}, {pair.b}): "
            "both combined indices are even"
        )
    return combined


def _offsets_weights(case: IdentityCase, pair: CoprimePair, ctx: EllipticContext):
    """Lattice offsets w and weights (-1)^(..) f(..)(b w) / a for both sums."""
    t = ctx.tau.tau
    offsets = []
    weights = []
    halves = (
        (pair.a, pair.b, case.first, case.second),
        (pair.b, pair.a, case.second, case.first),
    )
    for aa, bb, own, other in halves:
        mu, nu = np.meshgrid(np.arange(aa), np.arange(aa), indexing="ij")
        mask = (mu != 0) | (nu != 0)
        mu, nu = mu[mask], nu[mask]
        if mu.size == 0:
            continue
        w = (mu * t + nu) / aa
        sign = (-1.0) ** ((own.i * mu + own.j * nu) % 2)
        offsets.append(w)
        weights.append(sign * f_ij(other, bb * w, ctx) / aa)
    if not offsets:
        return np.zeros(0, dtype=complex), np.zeros(0, dtype=complex)
    return np.concatenate(offsets), np.concatenate(weights)


def phi_sum(case: IdentityCase, pair: CoprimePair, z, ctx: EllipticContext):
    """The twisted double lattice sum Phi(z)."""
    combined = _require_admissible(case, pair)
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz)
    offsets, weights = _offsets_weights(case, pair, ctx)
    if offsets.size == 0:
        val = np.zeros(zz.shape, dtype=complex)
    else:
        grid = f_ij(combined, offsets[:, None] + zz[None, :], ctx)
        val = weights @ grid
    return complex(val[0]) if scalar else val


def psi_sum(case: IdentityCase, pair: CoprimePair, z, ctx: EllipticContext):
    """The closed form Psi(z) that Phi(z) collapses to."""
    combined = _require_admissible(case, pair)
    a, b = pair.a, pair.b
    zz = np.asarray(z, dtype=complex)
    product = -f_ij(case.first, a * zz, ctx) * f_ij(case.second, b * zz, ctx)
    cross = (
        f_ij(ParityIndex(combined.i + 1, 1), zz, ctx)
        * f_ij(ParityIndex(1, combined.j + 1), zz, ctx)
        / (a * b)
    )
    return product + cross


def sample_points(
    pair: CoprimePair,
    ctx: EllipticContext,
    count: int = 16,
    seed_offset: complex = 0j,
) -> np.ndarray:
    """Deterministic sample line with pole avoidance.

    Walks z_j = z0 + seed_offset + j*step and skips any point within 1e-3 of
    a pole of either side (lattice points of z, az or bz, the latter two in
    z-units), extending the progression until exactly `count` points are
    accepted.
    """
    pts = []
    j = 0
    while len(pts) < count:
        z = SAMPLE_BASE + complex(seed_offset) + j * SAMPLE_STEP
        j += 1
        closeness = min(
            lattice_distance(pair.a * z, ctx.tau) / pair.a,
            lattice_distance(pair.b * z, ctx.tau) / pair.b,
            lattice_distance(z, ctx.tau),
        )
        if closeness <= SAMPLE_GUARD:
            continue
        pts.append(z)
    return np.asarray(pts, dtype=complex)


def verify_function_equation(
    case: IdentityCase,
    pair: CoprimePair,
    ctx: EllipticContext,
    samples: int = 16,
    tolerance: float = 1e-9,
) -> VerificationReport:
    """Check Phi(z) = Psi(z) on the deterministic sample line."""
    zs = sample_points(pair, ctx, samples)
    abs_res, rel_res = _residuals(phi_sum(case, pair, zs, ctx), psi_sum(case, pair, zs, ctx))
    return VerificationReport(
        identity="function_equation",
        case=case.as_tuple(),
        pair=(pair.a, pair.b),
        tau=ctx.tau.tau,
        max_abs_residual=abs_res,
        max_rel_residual=rel_res,
        tolerance=tolerance,
        passed=rel_res < tolerance,
        details={"samples": int(len(zs))},
    )


# ---------------------------------------------------------------------------
# reciprocity laws (z-free lattice sums against Laurent data)
# ---------------------------------------------------------------------------


def reciprocity_lhs(case: IdentityCase, pair: CoprimePair, ctx: EllipticContext) -> complex:
    """The z-free twisted lattice sum (the z -> 0 limit of Phi)."""
    combined = _require_admissible(case, pair)
    offsets, weights = _offsets_weights(case, pair, ctx)
    if offsets.size == 0:
        return 0j
    return complex(weights @ f_ij(combined, offsets, ctx))


def reciprocity_rhs(case: IdentityCase, pair: CoprimePair, ctx: EllipticContext) -> complex:
    """-(b/a) C_mn - (a/b) C_ij - (1/ab) C_combined, all at order 1."""
    combined = _require_admissible(case, pair)
    a, b = pair.a, pair.b
    return (
        -(b / a) * laurent_C(case.second, 1, ctx)
        - (a / b) * laurent_C(case.first, 1, ctx)
        - laurent_C(combined, 1, ctx) / (a * b)
    )


def reciprocity_constants(case: IdentityCase, pair: CoprimePair) -> tuple[Fraction, Fraction]:
    """Exact (c0, c1) with RHS / (2K)^2 = c0 + c1 * lambda."""
    combined = _require_admissible(case, pair)
    a, b = pair.a, pair.b
    c0, c1 = Fraction(0), Fraction(0)
    for idx, factor in (
        (case.second, Fraction(-b, a)),
        (case.first, Fraction(-a, b)),
        (combined, Fraction(-1, a * b)),
    ):
        p0, p1 = closed_form_lambda_poly(idx, 1)
        c0 += factor * p0
        c1 += factor * p1
    return c0, c1


def verify_reciprocity(
    case: IdentityCase,
    pair: CoprimePair,
    ctx: EllipticContext,
    tolerance: float = 1e-9,
) -> VerificationReport:
    """Check the first reciprocity law, plus its exact lambda-polynomial form."""
    lhs = reciprocity_lhs(case, pair, ctx)
    rhs = reciprocity_rhs(case, pair, ctx)
    c0, c1 = reciprocity_constants(case, pair)
    exact = (float(c0) + float(c1) * ctx.lam) * ctx.two_K**2
    abs1, rel1 = _residuals(lhs, rhs)
    abs2, rel2 = _residuals(rhs, exact)
    abs_res, rel_res = max(abs1, abs2), max(rel1, rel2)
    return VerificationReport(
        identity="reciprocity",
        case=case.as_tuple(),
        pair=(pair.a, pair.b),
        tau=ctx.tau.tau,
        max_abs_residual=abs_res,
        max_rel_residual=rel_res,
        tolerance=tolerance,
        passed=rel_res < tolerance,
        details={"c0": str(c0), "c1": str(c1)},
    )


def derivative_reciprocity_lhs(
    case: IdentityCase,
    pair: CoprimePair,
    ctx: EllipticContext,
    order: int,
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> complex:
    """Twisted lattice sum over the 2N-th derivative of f at the offsets."""
    combined = _require_admissible(case, pair)
    if order < 1:
        raise ValueError("order N must be >= 1; order 0 is the plain reciprocity law")
    offsets, weights = _offsets_weights(case, pair, ctx)
    if offsets.size == 0:
        return 0j
    # One batched contour pass: every offset gets its own circle, all theta
    # evaluations happen in a single (offsets x nodes) call.
    n = 2 * order
    radii = cfg.radius_fraction * lattice_distance(offsets, ctx.tau)
    angles = 2.0 * math.pi * np.arange(cfg.n_samples) / cfg.n_samples
    rim = np.exp(1j * angles)
    vals = f_ij(combined, offsets[:, None] + radii[:, None] * rim[None, :], ctx)
    derivs = (
        math.factorial(n)
        / (cfg.n_samples * radii**n)
        * (vals @ np.exp(-1j * n * angles))
    )
    return complex(weights @ derivs) / math.factorial(2 * order)


def derivative_reciprocity_rhs(
    case: IdentityCase,
    pair: CoprimePair,
    ctx: EllipticContext,
    order: int,
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> complex:
    """Laurent-coefficient convolution side of the higher reciprocity law."""
    combined = _require_admissible(case, pair)
    if order < 1:
        raise ValueError("order N must be >= 1; order 0 is the plain reciprocity law")
    a, b = pair.a, pair.b
    total = 0j
    for s in range(order + 2):
        total -= (
            laurent_C_auto(case.first, s, ctx, cfg)
            * laurent_C_auto(case.second, order + 1 - s, ctx, cfg)
            * a ** (2 * s - 1)
            * b ** (2 * (order + 1 - s) - 1)
        )
    total -= (2 * order + 1) / (a * b) * laurent_C_auto(combined, order + 1, ctx, cfg)
    return total


def verify_derivative_reciprocity(
    case: IdentityCase,
    pair: CoprimePair,
    ctx: EllipticContext,
    order: int,
    tolerance: float | None = None,
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> VerificationReport:
    """Check the order-N reciprocity law (N = 0 falls back to the plain one)."""
    if order == 0:
        return verify_reciprocity(case, pair, ctx)
    if tolerance is None:
        tolerance = 1e-7 if order == 1 else 1e-6
    lhs = derivative_reciprocity_lhs(case, pair, ctx, order, cfg)
    rhs = derivative_reciprocity_rhs(case, pair, ctx, order, cfg)
    abs_res, rel_res = _residuals(lhs, rhs)
    return VerificationReport(
        identity=f"derivative_reciprocity_N{order}",
        case=case.as_tuple(),
        pair=(pair.a, pair.b),
        tau=ctx.tau.tau,
        max_abs_residual=abs_res,
        max_rel_residual=rel_res,
        tolerance=tolerance,
        passed=rel_res < tolerance,
        details={"order": order},
    )


# ---------------------------------------------------------------------------
# classical trigonometric identities (the degenerate limits)
# ---------------------------------------------------------------------------


def _cot(x):
    s = np.sin(x)
    if np.min(np.abs(s)) < CLASSICAL_SIN_GUARD:
        raise PoleProximity("cotangent argument too close to a multiple of pi")
    return np.cos(x) / s


def _csc(x):
    s = np.sin(x)
    if np.min(np.abs(s)) < CLASSICAL_SIN_GUARD:
        raise PoleProximity("cosecant argument too close to a multiple of pi")
    return 1.0 / s


def _check_classical_parity(case_number: int, pair: CoprimePair):
    a, b = pair.a, pair.b
    if case_number == 1 and a % 2 != 0:
        raise ParityViolation("case 1 requires a even")
    if case_number == 2 and a % 2 != 1:
        raise ParityViolation("case 2 requires a odd")
    if case_number == 3 and (a + b) % 2 != 0:
        raise ParityViolation("case 3 requires a + b even")
    if case_number == 4 and (a + b) % 2 != 1:
        raise ParityViolation("case 4 requires a + b odd")
    if case_number not in (0, 1, 2, 3, 4):
        raise ValueError(f"classical case number must be 0..4, got {case_number}")


# per classical case: (factor kind at the fixed node, factor kind at z,
# alternating sign) for the a-sum and the b-sum
_CLASSICAL_SUMS = {
    0: (("cot", "cot", False), ("cot", "cot", False)),
    1: (("cot", "cot", True), ("csc", "cot", False)),
    2: (("cot", "csc", True), ("csc", "csc", False)),
    3: (("csc", "cot", True), ("csc", "cot", True)),
    4: (("csc", "csc", True), ("csc", "csc", True)),
}


def _classical_factor(kind: str, x):
    return _cot(x) if kind == "cot" else _csc(x)


def classical_lhs(case_number: int, pair: CoprimePair, z) -> complex:
    """The single-index cot/csc lattice sum of the classical identity."""
    _check_classical_parity(case_number, pair)
    terms_a, terms_b = _CLASSICAL_SUMS[case_number]
    total = 0j
    pi = math.pi
    for (aa, bb), (fixed, moving, alternating) in (
        ((pair.a, pair.b), terms_a),
        ((pair.b, pair.a), terms_b),
    ):
        acc = 0j
        for nu in range(1, aa):
            sign = (-1.0) ** nu if alternating else 1.0
            acc += sign * _classical_factor(fixed, pi * bb * nu / aa) * _classical_factor(
                moving, pi * (complex(z) + nu / aa)
            )
        total += acc / aa
    return total


def classical_rhs(case_number: int, pair: CoprimePair, z) -> complex:
    """Closed form of the classical identity."""
    _check_classical_parity(case_number, pair)
    a, b = pair.a, pair.b
    pi = math.pi
    z = complex(z)
    first = {
        0: lambda: -_cot(pi * a * z) * _cot(pi * b * z),
        1: lambda: -_csc(pi * a * z) * _cot(pi * b * z),
        2: lambda: -_csc(pi * a * z) * _cot(pi * b * z),
        3: lambda: -_csc(pi * a * z) * _csc(pi * b * z),
        4: lambda: -_csc(pi * a * z) * _csc(pi * b * z),
    }[case_number]()
    if case_number in (0, 1, 3):
        second = _csc(pi * z) ** 2 / (a * b)
    else:
        second = _csc(pi * z) * _cot(pi * z) / (a * b)
    return first + second + (-1.0 if case_number == 0 else 0.0)


_CLASSICAL_CONSTANTS = {
    0: lambda a, b: Fraction(a * a + b * b + 1 - 3 * a * b, 3 * a * b),
    1: lambda a, b: Fraction(-a * a + 2 * b * b + 2, 6 * a * b),
    2: lambda a, b: Fraction(-a * a + 2 * b * b - 1, 6 * a * b),
    3: lambda a, b: Fraction(-a * a - b * b + 2, 6 * a * b),
    4: lambda a, b: Fraction(-a * a - b * b - 1, 6 * a * b),
}


def classical_reciprocity_constant(case_number: int, pair: CoprimePair) -> Fraction:
    """Exact value of the z-free classical cot/csc reciprocity sum."""
    _check_classical_parity(case_number, pair)
    return _CLASSICAL_CONSTANTS[case_number](pair.a, pair.b)


def classical_reciprocity_lhs(case_number: int, pair: CoprimePair) -> complex:
    """The z-free cot/csc double sum (moving factor frozen at z = 0)."""
    _check_classical_parity(case_number, pair)
    terms_a, terms_b = _CLASSICAL_SUMS[case_number]
    total = 0j
    pi = math.pi
    for (aa, bb), (fixed, moving, alternating) in (
        ((pair.a, pair.b), terms_a),
        ((pair.b, pair.a), terms_b),
    ):
        acc = 0j
        for nu in range(1, aa):
            sign = (-1.0) ** nu if alternating else 1.0
            acc += sign * _classical_factor(fixed, pi * bb * nu / aa) * _classical_factor(
                moving, pi * nu / aa
            )
        total += acc / aa
    return total


def classical_case_for(case: IdentityCase, pair: CoprimePair) -> int:
    """Classical identity that the elliptic family degenerates to."""
    combined = _require_admissible(case, pair)
    cs_count = (case.first == CS) + (case.second == CS)
    if cs_count == 2:
        return 0
    if cs_count == 1:
        return 2 if combined.j == 1 else 1
    return 4 if combined.j == 1 else 3


def verify_classical(
    case_number: int,
    pair: CoprimePair,
    z=0.21 + 0.13j,
    tolerance: float = 1e-12,
) -> VerificationReport:
    """Check one classical identity and its reciprocity constant."""
    lhs = classical_lhs(case_number, pair, z)
    rhs = classical_rhs(case_number, pair, z)
    rec_lhs = classical_reciprocity_lhs(case_number, pair)
    rec_rhs = float(classical_reciprocity_constant(case_number, pair))
    abs1, rel1 = _residuals(lhs, rhs)
    abs2, rel2 = _residuals(rec_lhs, rec_rhs)
    abs_res, rel_res = max(abs1, abs2), max(rel1, rel2)
    return VerificationReport(
        identity=f"classical_case{case_number}",
        case=(case_number, 0, 0, 0),
        pair=(pair.a, pair.b),
        tau=0j,
        max_abs_residual=abs_res,
        max_rel_residual=rel_res,
        tolerance=tolerance,
        passed=rel_res < tolerance,
        details={"constant": str(classical_reciprocity_constant(case_number, pair))},
    )


# ---------------------------------------------------------------------------
# degeneration: the i*infinity limit of Phi and Psi, summand by summand
# ---------------------------------------------------------------------------


def phi_limit(case: IdentityCase, pair: CoprimePair, z) -> complex:
    """Limit of Phi(z) / (2K)^2 as the lattice parameter goes to i*infinity."""
    combined = _require_admissible(case, pair)
    total = 0j
    halves = (
        (pair.a, pair.b, case.first, case.second),
        (pair.b, pair.a, case.second, case.first),
    )
    for aa, bb, own, other in halves:
        for mu in range(aa):
            for nu in range(aa):
                if (mu, nu) == (0, 0):
                    continue
                g1 = trig_degeneration(other, bb * nu / aa, bb * mu / aa)
                g2 = trig_degeneration(combined, complex(z) + nu / aa, mu / aa)
                total += (-1.0) ** ((own.i * mu + own.j * nu) % 2) * g1 * g2 / aa
    return total


def psi_limit(case: IdentityCase, pair: CoprimePair, z) -> complex:
    """Limit of Psi(z) / (2K)^2 as the lattice parameter goes to i*infinity."""
    combined = _require_admissible(case, pair)
    a, b = pair.a, pair.b
    z = complex(z)
    product = -trig_degeneration(case.first, a * z, 0.0) * trig_degeneration(
        case.second, b * z, 0.0
    )
    cross = (
        trig_degeneration(ParityIndex(combined.i + 1, 1), z, 0.0)
        * trig_degeneration(ParityIndex(1, combined.j + 1), z, 0.0)
        / (a * b)
    )
    return product + cross


def degeneration_check(
    case: IdentityCase,
    pair: CoprimePair,
    ctx: EllipticContext,
    z=0.21 + 0.13j,
    tolerance: float = 1e-8,
) -> VerificationReport:
    """Compare Phi/(2K)^2 and Psi/(2K)^2 against their trigonometric limits.

    Also records the constant by which the limit differs from the matching
    classical identity (1 for the cs x cs family, 0 otherwise).
    """
    _require_admissible(case, pair)
    scale = ctx.two_K**2
    phi_num = phi_sum(case, pair, z, ctx) / scale
    psi_num = psi_sum(case, pair, z, ctx) / scale
    phi_lim = phi_limit(case, pair, z)
    psi_lim = psi_limit(case, pair, z)
    residual = max(abs(phi_num - phi_lim), abs(psi_num - psi_lim))

    case_number = classical_case_for(case, pair)
    offset_phi = phi_lim - classical_lhs(case_number, pair, z)
    offset_psi = psi_lim - classical_rhs(case_number, pair, z)
    expected = 1.0 if case_number == 0 else 0.0
    offset_err = max(abs(offset_phi - expected), abs(offset_psi - expected))

    worst = max(residual, offset_err)
    return VerificationReport(
        identity="degeneration",
        case=case.as_tuple(),
        pair=(pair.a, pair.b),
        tau=ctx.tau.tau,
        max_abs_residual=worst,
        max_rel_residual=worst,
        tolerance=tolerance,
        passed=worst < tolerance,
        details={"classical_case": case_number, "constant_offset": expected},
    )
