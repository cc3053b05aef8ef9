"""Laurent coefficients of f_{i,j} at z = 0 and contour-based derivatives.

Closed forms cover the expansion through z^3; everything deeper comes from
Cauchy integrals evaluated with the trapezoid rule on a circle, which is
spectrally accurate for these analytic integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
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
)
from .errors import PoleProximity, RadiusTooLarge, UnsupportedOrder


@dataclass(frozen=True)
class ContourConfig:
    """Circle radius (as a fraction of the nearest-pole distance) and node count."""

    radius_fraction: float = 0.5
    n_samples: int = 256

    def __post_init__(self):
        if not 0.0 < self.radius_fraction < 1.0:
            raise ValueError("radius_fraction must lie in (0, 1)")
        if self.n_samples < 8:
            raise ValueError("n_samples must be at least 8")


DEFAULT_CONTOUR = ContourConfig()


@dataclass(frozen=True)
class LaurentCoefficient:
    """Coefficient of z^{2s-1} in the expansion of f_{i,j} at z = 0."""

    idx: ParityIndex
    s: int
    value: complex


# lambda-polynomials multiplying (2K)^{2s}, rows cs / ds / ns
_CLOSED_FORMS = {
    CS: {
        0: (Fraction(1),),
        1: (Fraction(-1, 3), Fraction(1, 6)),
        2: (Fraction(-1, 45), Fraction(1, 45), Fraction(7, 360)),
    },
    DS: {
        0: (Fraction(1),),
        1: (Fraction(1, 6), Fraction(-1, 3)),
        2: (Fraction(7, 360), Fraction(1, 45), Fraction(-1, 45)),
    },
    NS: {
        0: (Fraction(1),),
        1: (Fraction(1, 6), Fraction(1, 6)),
        2: (Fraction(7, 360), Fraction(-11, 180), Fraction(7, 360)),
    },
}


def closed_form_lambda_poly(idx: ParityIndex, s: int) -> tuple[Fraction, ...]:
    """Exact lambda-polynomial for C_{i,j}(s), normalized by (2K)^{2s}."""
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    if s < 0:
        raise ValueError("s must be non-negative")
    if s > 2:
        raise UnsupportedOrder(f"no closed form for s = {s} (only s <= 2)")
    return _CLOSED_FORMS[idx][s]


def _origin_pole_distance(ctx: EllipticContext) -> float:
    t = ctx.tau.tau
    return min(1.0, abs(t), abs(t - 1.0), abs(t + 1.0))


def series_coefficient(
    idx: ParityIndex,
    power: int,
    ctx: EllipticContext,
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> complex:
    """Coefficient of z^power in the Laurent expansion of f_{i,j} at z = 0."""
    if power < -1:
        raise ValueError("f_{i,j} has a simple pole at 0; power >= -1")
    radius = cfg.radius_fraction * _origin_pole_distance(ctx)
    angles = 2.0 * math.pi * np.arange(cfg.n_samples) / cfg.n_samples
    zs = radius * np.exp(1j * angles)
    vals = f_ij(idx, zs, ctx)
    return complex(np.mean(vals * zs ** (-power)))


def laurent_C(
    idx: ParityIndex,
    s: int,
    ctx: EllipticContext,
    mode: str = "closed_form",
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> complex:
    """C_{i,j}(s, tau): the coefficient of z^{2s-1} in f_{i,j} at z = 0."""
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    if s < 0:
        raise ValueError("s must be non-negative")
    if mode == "closed_form":
        poly = closed_form_lambda_poly(idx, s)
        lam = ctx.lam
        acc = 0j
        for t, c in enumerate(poly):
            acc += float(c) * lam**t
        return acc * ctx.two_K ** (2 * s)
    if mode != "contour":
        raise ValueError(f"unknown mode {mode!r}")
    return series_coefficient(idx, 2 * s - 1, ctx, cfg)


def laurent_coefficient(
    idx: ParityIndex,
    s: int,
    ctx: EllipticContext,
    mode: str = "closed_form",
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> LaurentCoefficient:
    if not isinstance(idx, ParityIndex):
        idx = ParityIndex(*idx)
    return LaurentCoefficient(idx, s, laurent_C(idx, s, ctx, mode, cfg))


def laurent_C_auto(idx: ParityIndex, s: int, ctx: EllipticContext,
                   cfg: ContourConfig = DEFAULT_CONTOUR) -> complex:
    """Closed form where available (s <= 2), contour extraction otherwise."""
    if s <= 2:
        return laurent_C(idx, s, ctx, "closed_form")
    return laurent_C(idx, s, ctx, "contour", cfg)


def f_nth_derivative(
    idx: ParityIndex,
    n: int,
    z0,
    ctx: EllipticContext,
    cfg: ContourConfig = DEFAULT_CONTOUR,
    radius: float | None = None,
) -> complex:
    """n-th derivative of f_{i,j} at z0 via a Cauchy integral around z0."""
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    z0 = complex(z0)
    dist = lattice_distance(z0, ctx.tau)
    if dist < 1e-6:
        raise PoleProximity(f"z0 within guard distance of a pole (distance {dist:.3e})")
    r = radius if radius is not None else cfg.radius_fraction * dist
    if r >= dist:
        raise RadiusTooLarge(f"radius {r:g} reaches the nearest pole at distance {dist:g}")
    angles = 2.0 * math.pi * np.arange(cfg.n_samples) / cfg.n_samples
    vals = f_ij(idx, z0 + r * np.exp(1j * angles), ctx)
    return complex(
        math.factorial(n) / (cfg.n_samples * r**n) * np.sum(vals * np.exp(-1j * n * angles))
    )
