"""Jacobi theta functions from q-series and product expansions.

All four theta functions are evaluated from their sine/cosine q-series with a
term-magnitude truncation rule: summation stops as soon as the |q|-power bound
on the next term drops below the tail target.  Fractional q-powers are always
computed as e(tau * exponent) directly from tau, never as fractional powers of
the complex nome, which avoids branch-cut ambiguity.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, TruncationNotConverged

TWO_PI = 2.0 * math.pi


def exponential_e(x):
    """e(x) = exp(2 pi sqrt(-1) x).  Accepts scalars or ndarrays."""
    if isinstance(x, np.ndarray):
        return np.exp(2j * math.pi * x)
    return cmath.exp(2j * math.pi * complex(x))


@dataclass(frozen=True)
class SeriesTruncation:
    """Tail target and hard term cap for theta series and products."""

    epsilon: float = 1e-18
    max_terms: int = 512

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_terms < 4:
            raise ValueError("max_terms must be at least 4")


DEFAULT_TRUNCATION = SeriesTruncation()


@dataclass(frozen=True)
class TauParameter:
    """A point tau in the upper half plane, with cached nome q.

    `in_fundamental_domain` flags membership in the Gamma(2) fundamental
    domain |Re tau| <= 1, |tau +- 1/2| >= 1/2.
    """

    tau: complex
    q: complex = field(init=False)
    in_fundamental_domain: bool = field(init=False)

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise DomainError(f"tau must have positive imaginary part, got {tau}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "q", exponential_e(tau))
        in_dom = (
            abs(tau.real) < 1
            and abs(tau + 0.5) > 0.5
            and abs(tau - 0.5) > 0.5
        )
        object.__setattr__(self, "in_fundamental_domain", in_dom)


def as_tau(tau) -> TauParameter:
    """Coerce a complex number into a TauParameter."""
    if isinstance(tau, TauParameter):
        return tau
    return TauParameter(tau)


@dataclass(frozen=True)
class ThetaValue:
    """Theta evaluation together with its truncation-error accounting."""

    value: object  # complex, or ndarray matching the z argument
    tail_estimate: float
    terms: int
    converged: bool


def _half_integer_terms(abs_q: float, trunc: SeriesTruncation) -> tuple[int, bool]:
    # smallest n with |q|^{(n+1/2)^2/2} < epsilon; terms are n = 0..n_stop-1
    log_inv_q = -math.log(abs_q)
    n_stop = math.ceil(math.sqrt(2.0 * -math.log(trunc.epsilon) / log_inv_q) - 0.5)
    n_stop = max(n_stop, 1)
    if n_stop > trunc.max_terms:
        return trunc.max_terms, False
    return n_stop, True


def _integer_terms(abs_q: float, trunc: SeriesTruncation) -> tuple[int, bool]:
    # smallest n with |q|^{n^2/2} < epsilon; terms are n = 1..n_stop-1
    log_inv_q = -math.log(abs_q)
    n_stop = math.ceil(math.sqrt(2.0 * -math.log(trunc.epsilon) / log_inv_q))
    n_stop = max(n_stop, 2)
    if n_stop > trunc.max_terms:
        return trunc.max_terms, False
    return n_stop, True


@lru_cache(maxsize=512)
def _series_coefficients(index: int, tau: complex, trunc: SeriesTruncation):
    """q-power coefficient vector for one theta series, cached per tau."""
    abs_q = math.exp(-TWO_PI * tau.imag)
    if index in (1, 2):
        n_stop, converged = _half_integer_terms(abs_q, trunc)
        n = np.arange(n_stop)
        coef = 2.0 * np.exp(2j * math.pi * tau * 0.5 * (n + 0.5) ** 2)
        if index == 1:
            coef = coef * (-1.0) ** (n % 2)
        return coef, converged
    n_stop, converged = _integer_terms(abs_q, trunc)
    n = np.arange(1, n_stop)
    coef = 2.0 * np.exp(2j * math.pi * tau * 0.5 * n**2)
    if index == 4:
        coef = coef * (-1.0) ** (n % 2)
    return coef, converged


def theta_eval(index: int, z, tau, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> ThetaValue:
    """Evaluate theta_index(z, tau) from its q-series, with error accounting.

    z may be a scalar or an ndarray; the value matches its shape.  The tail
    estimate is the truncation target inflated by exp(2 pi |Im z| n_last),
    reflecting the growth of the trig factors off the real axis.
    """
    if index not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1..4, got {index}")
    tau = as_tau(tau)
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0

    coef, converged = _series_coefficients(index, tau.tau, trunc)
    n = np.arange(len(coef))
    if index in (1, 2):
        arg = np.multiply.outer((2 * n + 1) * math.pi, zz)
        trig = np.sin(arg) if index == 1 else np.cos(arg)
        val = np.tensordot(coef, trig, axes=(0, 0))
        terms = len(coef)
    else:
        arg = np.multiply.outer(2 * (n + 1) * math.pi, zz)
        val = 1.0 + np.tensordot(coef, np.cos(arg), axes=(0, 0))
        terms = len(coef) + 1

    max_im = float(np.max(np.abs(zz.imag))) if zz.size else 0.0
    tail = trunc.epsilon * (1.0 + math.exp(min(700.0, TWO_PI * max_im * terms)))
    if not converged:
        warnings.warn(
            f"theta_{index} series hit max_terms={trunc.max_terms} before the "
            f"tail target {trunc.epsilon:g}",
            TruncationNotConverged,
            stacklevel=2,
        )
    return ThetaValue(complex(val) if scalar else val, tail, terms, converged)


def theta(index: int, z, tau, trunc: SeriesTruncation = DEFAULT_TRUNCATION):
    """theta_index(z, tau) via the sine/cosine q-series."""
    return theta_eval(index, z, tau, trunc).value


def theta_product(index: int, z, tau, trunc: SeriesTruncation = DEFAULT_TRUNCATION):
    """theta_index(z, tau) via the infinite product expansion.

    Factors are truncated once |q|^n drops below the tail target.  Serves as
    an independent cross-check of the series path.
    """
    if index not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1..4, got {index}")
    tau = as_tau(tau)
    t = tau.tau
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0

    abs_q = math.exp(-TWO_PI * t.imag)
    n_stop = max(2, math.ceil(-math.log(trunc.epsilon) / (TWO_PI * t.imag)) + 1)
    if n_stop > trunc.max_terms:
        n_stop = trunc.max_terms
        warnings.warn(
            f"theta_{index} product hit max_terms={trunc.max_terms}",
            TruncationNotConverged,
            stacklevel=2,
        )

    ez = np.exp(2j * math.pi * zz)
    prod = np.ones_like(zz)
    for n in range(1, n_stop):
        qn = cmath.exp(2j * math.pi * t * n)
        if index == 1:
            prod = prod * (1 - qn) * (1 - qn * ez) * (1 - qn / ez)
        elif index == 2:
            prod = prod * (1 - qn) * (1 + qn * ez) * (1 + qn / ez)
        else:
            qh = cmath.exp(2j * math.pi * t * (n - 0.5))
            sign = 1.0 if index == 3 else -1.0
            prod = prod * (1 - qn) * (1 + sign * qh * ez) * (1 + sign * qh / ez)
    if index == 1:
        val = 2 * cmath.exp(2j * math.pi * t / 8) * np.sin(math.pi * zz) * prod
    elif index == 2:
        val = 2 * cmath.exp(2j * math.pi * t / 8) * np.cos(math.pi * zz) * prod
    else:
        val = prod
    return complex(val) if scalar else val


_MUMFORD = {(0, 0): 3, (1, 0): 2, (0, 1): 4}


def theta_mumford(alpha: int, beta: int, z, tau, trunc: SeriesTruncation = DEFAULT_TRUNCATION):
    """Theta with integer characteristics reduced mod 2.

    theta_{0,0} = theta3, theta_{1,0} = theta2, theta_{0,1} = theta4,
    theta_{1,1} = -theta1.
    """
    key = (alpha % 2, beta % 2)
    if key == (1, 1):
        value = theta(1, z, tau, trunc)
        return -value
    return theta(_MUMFORD[key], z, tau, trunc)
