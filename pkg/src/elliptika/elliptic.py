"""Jacobi elliptic functions and the unified odd family built on theta quotients.

The central objects are the three functions

    f_{1,0}(z) = 2K cs(2Kz, k),   f_{1,1}(z) = 2K ds(2Kz, k),
    f_{0,1}(z) = 2K ns(2Kz, k),

indexed by (i, j) in (Z/2Z)^2 \\ {(0,0)}, all taking the *reduced* argument z
(the elliptic argument is 2Kz throughout).  Four independent evaluation paths
are provided: theta quotients (default), Fourier series over shifted
cosecants, the literal Eisenstein-convention double partial-fraction sum, and
the theta-characteristic quotient formula.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleProximity
from .theta import (
    DEFAULT_TRUNCATION,
    SeriesTruncation,
    TauParameter,
    as_tau,
    theta,
    theta_mumford,
)

POLE_GUARD = 1e-6

EVAL_METHODS = ("theta_quotient", "fourier", "eisenstein", "mumford")


@dataclass(frozen=True)
class ParityIndex:
    """An index (i, j) in (Z/2Z)^2; arithmetic is reduced mod 2."""

    i: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % 2)
        object.__setattr__(self, "j", self.j % 2)

    @property
    def is_zero(self) -> bool:
        return self.i == 0 and self.j == 0

    def shifted(self, di: int, dj: int) -> "ParityIndex":
        return ParityIndex(self.i + di, self.j + dj)

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


CS = ParityIndex(1, 0)
DS = ParityIndex(1, 1)
NS = ParityIndex(0, 1)
FUNCTION_INDICES = (CS, DS, NS)


@dataclass(frozen=True)
class EllipticContext:
    """Cached modulus data for a fixed tau: k, lambda = k^2, and 2K."""

    tau: TauParameter
    k: complex
    lam: complex
    two_K: complex
    trunc: SeriesTruncation
    theta_nulls: tuple  # (theta2, theta3, theta4) at z = 0


def context_from_tau(tau, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> EllipticContext:
    """Build an EllipticContext from theta null values at z = 0."""
    tau = as_tau(tau)
    t2 = theta(2, 0.0, tau, trunc)
    t3 = theta(3, 0.0, tau, trunc)
    t4 = theta(4, 0.0, tau, trunc)
    k = t2**2 / t3**2
    return EllipticContext(tau, k, k**2, math.pi * t3**2, trunc, (t2, t3, t4))


def reduce_to_cell(z, tau):
    """Shift z by the lattice Z + Z tau into the centered fundamental cell.

    Returns (z_reduced, mu, nu) with z = z_reduced + mu*tau + nu.
    """
    t = as_tau(tau).tau
    zz = np.asarray(z, dtype=complex)
    mu = np.round(zz.imag / t.imag)
    nu = np.round((zz - mu * t).real)
    zr = zz - mu * t - nu
    if zz.ndim == 0:
        return complex(zr), int(mu), int(nu)
    return zr, mu.astype(int), nu.astype(int)


def lattice_distance(z, tau):
    """Distance from z to the nearest point of Z + Z tau."""
    t = as_tau(tau).tau
    zr, _, _ = reduce_to_cell(z, tau)
    zr = np.asarray(zr, dtype=complex)
    best = np.full(zr.shape, np.inf)
    for dm in (-1, 0, 1):
        for dn in (-1, 0, 1):
            best = np.minimum(best, np.abs(zr - dm * t - dn))
    return float(best) if best.ndim == 0 else best


def _check_pole_guard(z, tau, guard: float = POLE_GUARD):
    d = lattice_distance(z, tau)
    if np.min(d) < guard:
        raise PoleProximity(
            f"argument within {guard:g} of the period lattice (distance {np.min(d):.3e})"
        )


def jacobi_basic(z, ctx: EllipticContext):
    """(sn, cn, dn) at elliptic argument 2Kz, as theta quotients."""
    tau = ctx.tau
    half_tau = tau.tau / 2.0
    d = lattice_distance(np.asarray(z, dtype=complex) - half_tau, tau)
    if np.min(d) < POLE_GUARD:
        raise PoleProximity("z is within the guard distance of a zero of theta4")
    t2, t3, t4 = ctx.theta_nulls
    th1 = theta(1, z, tau, ctx.trunc)
    th2 = theta(2, z, tau, ctx.trunc)
    th3 = theta(3, z, tau, ctx.trunc)
    th4 = theta(4, z, tau, ctx.trunc)
    sn = (t3 / t2) * th1 / th4
    cn = (t4 / t2) * th2 / th4
    dn = (t4 / t3) * th3 / th4
    return sn, cn, dn


def _f_theta_quotient(idx: ParityIndex, zr, ctx: EllipticContext):
    # theta4(z) cancels between numerator and denominator of the cs/ds/ns
    # quotients, so the reduced-cell evaluation never divides by it.
    t2, t3, t4 = ctx.theta_nulls
    th1 = theta(1, zr, ctx.tau, ctx.trunc)
    if idx == CS:
        return math.pi * t3 * t4 * theta(2, zr, ctx.tau, ctx.trunc) / th1
    if idx == DS:
        return math.pi * t2 * t4 * theta(3, zr, ctx.tau, ctx.trunc) / th1
    return math.pi * t2 * t3 * theta(4, zr, ctx.tau, ctx.trunc) / th1


def _f_mumford(idx: ParityIndex, zr, ctx: EllipticContext):
    t2, t3, t4 = ctx.theta_nulls
    # residue-normalized quotient: near z = 0 the denominator behaves like
    # theta'_{1,1}(0) z, so this prefactor pins the residue of f at 1
    theta11_prime0 = -math.pi * t2 * t3 * t4
    num = theta_mumford(idx.j + 1, idx.i + 1, zr, ctx.tau, ctx.trunc)
    num0 = theta_mumford(idx.j + 1, idx.i + 1, 0.0, ctx.tau, ctx.trunc)
    den = theta_mumford(1, 1, zr, ctx.tau, ctx.trunc)
    return theta11_prime0 / num0 * num / den


def _f_fourier(idx: ParityIndex, z, ctx: EllipticContext):
    t = ctx.tau.tau
    zz = np.asarray(z, dtype=complex)
    if np.max(np.abs(zz.imag)) >= t.imag:
        raise DomainError("fourier method requires |Im z| < Im tau")
    pi = math.pi
    if idx == CS:
        acc = pi * np.cos(pi * zz) / np.sin(pi * zz)
        for m in range(1, ctx.trunc.max_terms):
            term = (
                (-1.0) ** m
                * pi
                * np.sin(2 * pi * zz)
                / (np.sin(pi * (zz + m * t)) * np.sin(pi * (zz - m * t)))
            )
            acc = acc + term
            if np.max(np.abs(term)) < ctx.trunc.epsilon:
                break
        return acc
    # Summed cosecant series: the alternating-in-m sum has the ds
    # periodicity character, the plain sum the ns character.
    sign = -1.0 if idx == DS else 1.0
    acc = pi / np.sin(pi * zz)
    for m in range(1, ctx.trunc.max_terms):
        term = sign**m * pi * (
            1.0 / np.sin(pi * (zz + m * t)) + 1.0 / np.sin(pi * (zz - m * t))
        )
        acc = acc + term
        if np.max(np.abs(term)) < ctx.trunc.epsilon:
            break
    return acc


def _f_eisenstein_point(idx: ParityIndex, z: complex, ctx: EllipticContext, m_max: int, n_max: int):
    t = ctx.tau.tau
    n = np.arange(1, n_max + 1)
    n_sign = (-1.0) ** (n % 2) if idx.j else np.ones(n_max)

    def inner(m: int) -> complex:
        base = m * t + z
        return 1.0 / base + np.sum(n_sign / (base + n) + n_sign / (base - n))

    total = inner(0)
    for m in range(1, m_max + 1):
        m_sign = (-1.0) ** (m % 2) if idx.i else 1.0
        total += m_sign * (inner(m) + inner(-m))
    return total


def f_ij(
    idx: ParityIndex,
    z,
    ctx: EllipticContext,
    method: str = "theta_quotient",
    eisenstein_limits: tuple[int, int] = (2000, 2000),
):
    """Evaluate f_{i,j}(z, tau) by the requested method.

    z may be a scalar or an ndarray (fourier and eisenstein loop pointwise
    where needed).  Raises PoleProximity within 1e-6 of the period lattice.
    """
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    if idx.is_zero:
        raise ValueError("(0,0) is not a valid function index")
    if method not in EVAL_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {EVAL_METHODS}")
    _check_pole_guard(z, ctx.tau)

    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0

    if method in ("theta_quotient", "mumford"):
        zr, mu, nu = reduce_to_cell(zz, ctx.tau)
        sign = (-1.0) ** ((idx.i * np.asarray(mu) + idx.j * np.asarray(nu)) % 2)
        evaluate = _f_theta_quotient if method == "theta_quotient" else _f_mumford
        val = sign * evaluate(idx, zr, ctx)
    elif method == "fourier":
        val = _f_fourier(idx, zz, ctx)
    else:
        m_max, n_max = eisenstein_limits
        flat = zz.reshape(-1)
        val = np.array(
            [_f_eisenstein_point(idx, complex(p), ctx, m_max, n_max) for p in flat]
        ).reshape(zz.shape)
    return complex(val) if scalar else np.asarray(val)


def f_ij_derivative(idx: ParityIndex, z, ctx: EllipticContext, method: str = "theta_quotient"):
    """f'_{i,j}(z) = -f_{i+1,1}(z) f_{1,j+1}(z), indices mod 2."""
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    if idx.is_zero:
        raise ValueError("(0,0) is not a valid function index")
    left = f_ij(ParityIndex(idx.i + 1, 1), z, ctx, method)
    right = f_ij(ParityIndex(1, idx.j + 1), z, ctx, method)
    return -left * right


def laurent_center_constant(idx: ParityIndex, ctx: EllipticContext) -> complex:
    """C_{i,j}(tau): the z^1 Laurent coefficient of f_{i,j} at z = 0."""
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    lam, k2 = ctx.lam, ctx.two_K**2
    if idx == CS:
        return (-1.0 / 3.0 + lam / 6.0) * k2
    if idx == DS:
        return (1.0 / 6.0 - lam / 3.0) * k2
    if idx == NS:
        return (1.0 / 6.0 + lam / 6.0) * k2
    raise ValueError("(0,0) is not a valid function index")


def weierstrass_p(z, ctx: EllipticContext, mode: str = "from_f", lattice_radius: int = 600):
    """Weierstrass p-function.

    mode="from_f" uses p(z) = f_{1,0}(z)^2 - 2 C_{1,0}(tau) (spectrally
    accurate); mode="lattice" is the truncated symmetric lattice sum, kept
    only as a slowly converging (~1/R) cross-check.
    """
    if mode == "from_f":
        v = f_ij(CS, z, ctx)
        return v * v - 2.0 * laurent_center_constant(CS, ctx)
    if mode != "lattice":
        raise ValueError(f"unknown mode {mode!r}")
    _check_pole_guard(z, ctx.tau)
    zc = complex(z)
    t = ctx.tau.tau
    rng = np.arange(-lattice_radius, lattice_radius + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    w = (m * t + n)[(m != 0) | (n != 0)]
    return 1.0 / zc**2 + complex(np.sum(1.0 / (w + zc) ** 2 - 1.0 / w**2))


def weierstrass_p_derivative(z, ctx: EllipticContext):
    """p'(z) = -2 f_{1,0}(z) f_{1,1}(z) f_{0,1}(z)."""
    return -2.0 * f_ij(CS, z, ctx) * f_ij(DS, z, ctx) * f_ij(NS, z, ctx)


def trig_degeneration(idx: ParityIndex, z, w: float):
    """tau -> i*inf limit of cs/ds/ns(2K(z + w*tau), k), without the 2K factor."""
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    if idx.is_zero:
        raise ValueError("(0,0) is not a valid function index")
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    w_int = round(w)
    if abs(w - w_int) < 1e-12:
        s = np.sin(math.pi * zz)
        if np.min(np.abs(s)) < 1e-12:
            raise DomainError("cot/csc pole: z is an integer while w is integral")
        sign = (-1.0) ** (w_int % 2)
        if idx == CS:
            val = sign * np.cos(math.pi * zz) / s
        elif idx == DS:
            val = sign / s
        else:
            val = 1.0 / s
    else:
        if idx == CS:
            val = np.full(zz.shape, -1j * (-1.0) ** (math.floor(w) % 2))
        else:
            val = np.zeros(zz.shape, dtype=complex)
    return complex(val) if scalar else val
