# ringstab/core/stability.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Hall's potential, its derivatives, and the linear stability of regular
n-gon relative equilibria.

A relative equilibrium is linearly stable iff it is a local minimum of V
modulo rotation, i.e. the Hessian has the single rotational zero and is
otherwise positive. For n = 2j with alternating masses the Hessian is a
2x2 block circulant and its spectrum reduces to one quadratic per Fourier
index, with coefficients built from the sums g1, g2, g3.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..models.reports import RatioInterval, StabilityReport
from ..models.ring import RingConfiguration
from ..utils.logger import get_logger
from .circulant import BlockCirculantSpec, CirculantSpec, solve_block_quadratic
from .errors import ConfigurationError, ConsistencyError, DomainError, InvalidRatioError
from .oracle import bisect_root
from .special_functions import eval_f

logger = get_logger("stability")

ZERO_TOL_FACTOR = 1e-9
# residual = RESIDUAL_SIGN * (1/mu_i) dV/dtheta_i, fixed against finite differences
RESIDUAL_SIGN = -1.0


@dataclass(frozen=True)
class HessianAtRing:
    n: int
    masses: Tuple[float, ...]
    dense: np.ndarray
    block: Optional[BlockCirculantSpec] = None

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.dense)))


def hall_potential(config: RingConfiguration) -> float:
    """V = sum_{i<k} mu_i mu_k (1/r_ki + r_ki^2/2)."""
    r = config.chords()
    mu = config.mu
    i, k = np.triu_indices(config.n, k=1)
    pair = r[i, k]
    return float(np.sum(mu[i] * mu[k] * (1.0 / pair + 0.5 * pair * pair)))


def hall_gradient(config: RingConfiguration) -> np.ndarray:
    """dV/dtheta_i from the chord derivative d(1/r + r^2/2)/dr = r - 1/r^2."""
    theta = config.theta
    mu = config.mu
    delta = theta[None, :] - theta[:, None]  # theta_k - theta_i
    half = delta / 2.0
    r = 2.0 * np.abs(np.sin(half))
    np.fill_diagonal(r, 1.0)
    # dr_ki/dtheta_i = -cos(delta/2) * sign(sin(delta/2))
    dr = -np.cos(half) * np.sign(np.sin(half))
    terms = (r - 1.0 / (r * r)) * dr * mu[None, :]
    np.fill_diagonal(terms, 0.0)
    return mu * terms.sum(axis=1)


def hessian(config: RingConfiguration) -> HessianAtRing:
    theta = config.theta
    mu = config.mu
    n = config.n
    delta = theta[None, :] - theta[:, None]
    r = config.chords()
    np.fill_diagonal(r, 1.0)
    cos_delta = np.cos(delta)
    dense = -np.outer(mu, mu) * ((3.0 + cos_delta) / (2.0 * r ** 3) + cos_delta)
    np.fill_diagonal(dense, 0.0)
    np.fill_diagonal(dense, -dense.sum(axis=1))

    block = None
    if config.alternating_masses() is not None and config.is_regular():
        block = BlockCirculantSpec(
            a=CirculantSpec.from_row(dense[0, 0::2]),
            b=CirculantSpec.from_row(dense[1, 1::2]),
            c=CirculantSpec.from_row(dense[0, 1::2]),
        )
    return HessianAtRing(n=n, masses=config.masses, dense=dense, block=block)


def _check_j_l(j: int, l: int) -> None:
    if j < 2:
        raise DomainError(f"j must be at least 2, got {j}")
    if not 1 <= l <= j:
        raise DomainError(f"l must lie in [1, {j}], got {l}")


def _turns(numerator: np.ndarray, j: int) -> np.ndarray:
    """numerator*pi/j with the integer numerator reduced mod 2j."""
    return np.pi * (numerator % (2 * j)) / j


def g1(j: int, l: int) -> float:
    """sum_{k=1}^{j-1} f(2k pi/j) (1 - cos(2(l-1)k pi/j))."""
    _check_j_l(j, l)
    k = np.arange(1, j)
    return float(np.sum(eval_f(_turns(2 * k, j)) * (1.0 - np.cos(_turns(2 * (l - 1) * k, j)))))


def g2(j: int) -> float:
    """sum_{k=1}^{j} f((2k-1) pi/j)."""
    if j < 1:
        raise DomainError(f"j must be at least 1, got {j}")
    k = np.arange(1, j + 1)
    return float(np.sum(eval_f(_turns(2 * k - 1, j))))


def g3(j: int, l: int) -> float:
    """sum_{k=1}^{j} f((2k-1) pi/j) cos((l-1)(2k-1) pi/j); |gamma_l| = mu1 mu2 |g3|."""
    _check_j_l(j, l)
    k = np.arange(1, j + 1)
    odd = 2 * k - 1
    return float(np.sum(eval_f(_turns(odd, j)) * np.cos(_turns((l - 1) * odd, j))))


def g1_parts(j: int, l: int) -> Tuple[float, float]:
    """g1 = c1 + c2 with c1 >= 0; for j >= 3, c2 = -j/2 at l = 2 and l = j, zero for 3 <= l <= j-1."""
    _check_j_l(j, l)
    k = np.arange(1, j)
    x = _turns(k, j)
    weight = 1.0 - np.cos(_turns(2 * (l - 1) * k, j))
    cos_2x = np.cos(_turns(2 * k, j))
    c1 = np.sum((3.0 + cos_2x) / (16.0 * np.sin(x) ** 3) * weight)
    c2 = np.sum(cos_2x * weight)
    return float(c1), float(c2)


def c1_increment(j: int, l: int) -> float:
    """Closed form of c1(l+1) - c1(l)."""
    _check_j_l(j, l + 1)
    k = np.arange(1, j)
    s2 = np.sin(_turns(k, j)) ** 2
    return float(np.sum((2.0 - s2) / (4.0 * s2) * np.sin(_turns((2 * l - 1) * k, j))))


def g2_rewritten(j: int) -> float:
    """sum_k (1/sin^2 x_k - 1/2) / (4 sin x_k), x_k = (2k-1)pi/2j; equals g2(j) only for j >= 2."""
    if j < 1:
        raise DomainError(f"j must be at least 1, got {j}")
    k = np.arange(1, j + 1)
    s = np.sin(np.pi * (2 * k - 1) / (2 * j))
    return float(np.sum((1.0 / (s * s) - 0.5) / (4.0 * s)))


def _check_masses(mu1: float, mu2: float) -> None:
    if not (mu1 > 0.0 and mu2 > 0.0) or not (math.isfinite(mu1) and math.isfinite(mu2)):
        raise ConfigurationError(f"masses must be finite and positive, got ({mu1}, {mu2})")


def chi(j: int, l: int, mu1: float, mu2: float) -> float:
    """(alpha_l beta_l - |gamma_l|^2) / (mu1 mu2)."""
    _check_masses(mu1, mu2)
    a, b, c = g1(j, l), g2(j), g3(j, l)
    return mu1 * mu2 * (a * a + b * b - c * c) + (mu1 * mu1 + mu2 * mu2) * a * b


def alpha_beta_gamma(j: int, l: int, mu1: float, mu2: float) -> Tuple[float, float, float]:
    """(alpha_l, beta_l, |gamma_l|^2) of the alternating-mass 2j-gon."""
    _check_masses(mu1, mu2)
    a, b, c = g1(j, l), g2(j), g3(j, l)
    alpha = mu1 * mu1 * a + mu1 * mu2 * b
    beta = mu2 * mu2 * a + mu1 * mu2 * b
    gamma = mu1 * mu2 * c
    return alpha, beta, gamma * gamma


def equal_mass_spectrum(n: int) -> List[float]:
    """Eigenvalue l of the unit-mass circulant Hessian, l = 1..n; l = 1 is the rotational zero."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    return [g1(n, l) for l in range(1, n + 1)]


def masses_for_ratio(ratio: float) -> Tuple[float, float]:
    """mu1/mu2 = ratio with mu1*mu2 = 1, so ratio and 1/ratio are relabellings."""
    if not (math.isfinite(ratio) and ratio > 0.0):
        raise InvalidRatioError(f"mass ratio must be finite and positive, got {ratio}")
    root = math.sqrt(ratio)
    return root, 1.0 / root


def default_zero_tol(eigenvalues: Sequence[float], factor: float = ZERO_TOL_FACTOR) -> float:
    return factor * max(float(np.max(np.abs(eigenvalues))), 1e-300)


def _verdict(eigenvalues: np.ndarray, zero_tol: float) -> Tuple[str, int]:
    zero_modes = int(np.sum(np.abs(eigenvalues) <= zero_tol))
    negative = bool(np.any(eigenvalues < -zero_tol))
    if zero_modes == 0:
        raise ConsistencyError("rotational zero mode missing from the spectrum")
    if negative:
        return "unstable", zero_modes
    if zero_modes == 1:
        return "stable", zero_modes
    return "degenerate", zero_modes


def classify(
    n: int,
    ratio: float = 1.0,
    zero_tol: Optional[float] = None,
    *,
    zero_tol_factor: float = ZERO_TOL_FACTOR,
) -> StabilityReport:
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if zero_tol is not None and not (math.isfinite(zero_tol) and zero_tol > 0.0):
        raise ConfigurationError(f"zero_tol must be finite and positive, got {zero_tol}")
    mu1, mu2 = masses_for_ratio(ratio)
    if n % 2:
        if ratio != 1.0:
            raise InvalidRatioError(
                f"odd n={n} admits only the one-parameter family of equal masses; ratio must be 1, got {ratio}"
            )
        mu1 = mu2 = 1.0
        spectrum = np.asarray(equal_mass_spectrum(n))
        tol = zero_tol if zero_tol is not None else default_zero_tol(spectrum, zero_tol_factor)
        failed = [l for l, value in enumerate(spectrum, start=1) if value < -tol]
        method = "circulant"
    else:
        j = n // 2
        triples = np.array([alpha_beta_gamma(j, l, mu1, mu2) for l in range(1, j + 1)])
        alpha, beta, gamma_sq = triples[:, 0], triples[:, 1], triples[:, 2]
        spectrum = solve_block_quadratic(alpha, beta, gamma_sq).ravel()
        tol = zero_tol if zero_tol is not None else default_zero_tol(spectrum, zero_tol_factor)
        slack = tol * (np.abs(alpha) + np.abs(beta))
        failed = [
            l
            for l in range(1, j + 1)
            if alpha[l - 1] + beta[l - 1] < -tol
            or alpha[l - 1] * beta[l - 1] - gamma_sq[l - 1] < -slack[l - 1]
        ]
        method = "block"

    eigenvalues = np.sort(spectrum)
    verdict, zero_modes = _verdict(eigenvalues, tol)
    logger.debug("classify n=%d ratio=%g -> %s (%d zero modes)", n, ratio, verdict, zero_modes)
    return StabilityReport(
        n=n,
        ratio=ratio,
        mu1=mu1,
        mu2=mu2,
        verdict=verdict,
        eigenvalues=eigenvalues.tolist(),
        zero_mode_count=zero_modes,
        zero_tol=tol,
        failed_conditions=failed,
        method=method,
    )


def sweep(
    n: int,
    ratios: Sequence[float],
    zero_tol: Optional[float] = None,
    *,
    zero_tol_factor: float = ZERO_TOL_FACTOR,
) -> List[StabilityReport]:
    return [classify(n, ratio, zero_tol, zero_tol_factor=zero_tol_factor) for ratio in ratios]


def _reciprocal_roots(t: float) -> Tuple[float, float]:
    """Roots of rho^2 - t rho + 1 = 0 for t > 2."""
    root = math.sqrt(t * t - 4.0)
    hi = 0.5 * (t + root)
    return 1.0 / hi, hi


def stability_interval(j: int) -> RatioInterval:
    """
    Ratios mu1/mu2 for which the alternating 2j-gon is linearly stable:
    chi(j,2) > 0 between the roots of g1 g2 rho^2 + h5 rho + g1 g2 = 0,
    intersected with alpha_2 + beta_2 > 0.
    """
    if j < 2:
        raise DomainError(f"j must be at least 2, got {j}")
    a, b, c = g1(j, 2), g2(j), g3(j, 2)
    h5 = a * a + b * b - c * c
    h4 = h5 * h5 - 4.0 * (a * b) ** 2
    fields = dict(j=j, h4=h4, h5=h5, g1_2=a, g2=b, g3_2=c)

    if a >= 0.0:
        return RatioInterval(kind="all", lo=0.0, hi=None, **fields)
    if h4 < 0.0:
        return RatioInterval(kind="empty", **fields)

    root = math.sqrt(h4)
    lo, hi = sorted(((-h5 + root) / (2.0 * a * b), (-h5 - root) / (2.0 * a * b)))
    # alpha_2 + beta_2 = (rho + 1/rho) g1 + 2 g2 with mu1 mu2 = 1
    t = -2.0 * b / a
    if t <= 2.0 or hi <= 0.0:
        return RatioInterval(kind="empty", **fields)
    trace_lo, trace_hi = _reciprocal_roots(t)
    lo, hi = max(lo, trace_lo), min(hi, trace_hi)
    if lo >= hi:
        return RatioInterval(kind="empty", **fields)
    return RatioInterval(kind="finite", lo=lo, hi=hi, **fields)


def interval_by_bisection(j: int, tol: float = 1e-13) -> Tuple[float, float]:
    """Roots of chi(j, 2, rho, 1) = 0 on either side of rho = 1."""

    def chi_at(rho: float) -> float:
        return chi(j, 2, rho, 1.0)

    lo = bisect_root(chi_at, 1e-6, 1.0, tol=tol)
    hi = bisect_root(chi_at, 1.0, 1e6, tol=tol * 1e3)
    return lo, hi


def _check_h_x(x: float, upper: float) -> None:
    if not 0.0 < x < upper:
        raise DomainError(f"x must lie in (0, {upper:.6g}), got {x}")


def h3(x: float) -> float:
    _check_h_x(x, math.pi)
    bracket = (
        math.log(math.cos(x / 2.0) / math.sin(x / 2.0))
        - x / (2.0 * math.sin(x))
        - math.pi / 2.0
    )
    return bracket / (2.0 * x)


def bound_functions_h(x: float) -> Tuple[float, float, float]:
    """(h1, h2, h3) at x in (0, pi/2); monotonicity helpers for g1(j,2) and g2 - g3."""
    _check_h_x(x, math.pi / 2.0)
    log_cot = math.log(math.cos(x) / math.sin(x))
    h1 = (log_cot - x * math.cos(x) / (2.0 * math.sin(x)) - math.pi / 2.0) / (2.0 * x)
    h2 = log_cot - x / (2.0 * math.sin(x)) - math.pi / 2.0
    return h1, h2, h3(x)
