# ringstab/core/equilibrium.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Equilibrium equations of the (1+n)-body ring.

A configuration is a relative equilibrium iff M_n mu = 0, where
M_n[i, k] = F(theta_k - theta_i) (k != i). For the regular n-gon M_n is an
antisymmetric circulant whose eigenvalue l is i*f1(n, l); its rank fixes
which mass vectors are admissible.
"""
import math
from typing import Optional, Tuple

import numpy as np

from ..models.reports import MassFamily
from ..models.ring import RingConfiguration
from ..utils.logger import get_logger
from .errors import AmbiguousRankError, ConsistencyError, DomainError
from .oracle import bisect_root
from .special_functions import eval_F

logger = get_logger("equilibrium")

RANK_TOL_FACTOR = 1e-8
RANK_MARGIN = 10.0
NULL_VECTOR_TOL = 1e-10


def _check_n_l(n: int, l: int) -> None:
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if not 1 <= l <= n:
        raise DomainError(f"l must lie in [1, {n}], got {l}")


def _half_turns(multiple: int, k: np.ndarray, n: int) -> np.ndarray:
    """multiple*k*pi/n with the integer part reduced mod 2n first."""
    return np.pi * ((multiple * k) % (2 * n)) / n


def build_M(config: RingConfiguration) -> np.ndarray:
    """M[i, k] = F(theta_k - theta_i) off the diagonal, 0 on it; antisymmetric."""
    theta = config.theta
    diff = theta[None, :] - theta[:, None]
    np.fill_diagonal(diff, np.pi)
    m = eval_F(diff)
    np.fill_diagonal(m, 0.0)
    return m


def residual(config: RingConfiguration) -> np.ndarray:
    """Component i = sum_{k != i} mu_k F(theta_k - theta_i); zero at an equilibrium."""
    return build_M(config) @ config.mu


def f2(n: int, l: int) -> float:
    _check_n_l(n, l)
    k = np.arange(1, n)
    c = np.cos(_half_turns(1, k, n))
    s = np.sin(_half_turns(1, k, n))
    return float(0.25 * np.sum(c / (s * s) * np.sin(_half_turns(2 * (l - 1), k, n))))


def f1(n: int, l: int) -> float:
    """Eigenvalue l of the regular M_n is i*f1(n, l)."""
    _check_n_l(n, l)
    k = np.arange(1, n)
    cosine_part = 0.5 * np.sum(
        np.cos(_half_turns(2 * l, k, n)) - np.cos(_half_turns(4 - 2 * l, k, n))
    )
    return float(cosine_part) + f2(n, l)


def f1_table(n: int) -> np.ndarray:
    return np.array([f1(n, l) for l in range(1, n + 1)])


def f2_second_difference(n: int, l: int) -> Tuple[float, float]:
    """
    f2(n,l) + f2(n,l+2) - 2 f2(n,l+1), evaluated directly and through the
    closed form -sum_k cos(k pi/n) sin(2lk pi/n).
    """
    _check_n_l(n, l + 2)
    direct = f2(n, l) + f2(n, l + 2) - 2.0 * f2(n, l + 1)
    k = np.arange(1, n)
    closed = -float(np.sum(np.cos(_half_turns(1, k, n)) * np.sin(_half_turns(2 * l, k, n))))
    return direct, closed


def default_rank_tol(n: int) -> float:
    return RANK_TOL_FACTOR * n


def m_rank(n: int, zero_tol: Optional[float] = None, margin: float = RANK_MARGIN) -> int:
    """Number of l with |f1(n, l)| > zero_tol; n-1 for odd n, n-2 for even n."""
    if zero_tol is None:
        zero_tol = default_rank_tol(n)
    values = f1_table(n)
    for l, value in enumerate(values, start=1):
        if zero_tol / margin < abs(value) < zero_tol * margin:
            raise AmbiguousRankError(n, l, float(value), zero_tol)
    rank = int(np.sum(np.abs(values) > zero_tol))
    logger.debug("rank(M_%d) = %d (zero_tol=%g)", n, rank, zero_tol)
    return rank


def hermitian_embedding(m: np.ndarray) -> np.ndarray:
    """Real symmetric form [[0, -M], [M, 0]] of i*M; every eigenvalue appears twice."""
    zero = np.zeros_like(m)
    return np.block([[zero, -m], [m, zero]])


def mass_family(
    n: int, zero_tol: Optional[float] = None, margin: float = RANK_MARGIN
) -> MassFamily:
    rank = m_rank(n, zero_tol, margin)
    nullity = n - rank
    if nullity == 1:
        pattern = [0] * n
        description = "all vertices carry the same mass"
    elif nullity == 2 and n % 2 == 0:
        pattern = [i % 2 for i in range(n)]
        description = "two masses alternate around the polygon"
    else:
        raise ConsistencyError(f"unexpected nullity {nullity} of M_{n}")

    family = MassFamily(
        n=n,
        parity="odd" if n % 2 else "even",
        parameter_count=nullity,
        pattern=pattern,
        description=description,
    )

    m = build_M(RingConfiguration.regular(n))
    scale = max(float(np.max(np.abs(m))), 1.0)
    for basis_vector in family.basis():
        drift = float(np.max(np.abs(m @ basis_vector)))
        if drift > NULL_VECTOR_TOL * n * scale:
            raise ConsistencyError(f"mass pattern is not in the null space of M_{n} ({drift:.3e})")
    return family


def _check_proof_x(x: float) -> None:
    if not 0.0 < x < math.pi / 2:
        raise DomainError(f"x must lie in (0, pi/2), got {x}")


def proof_aux_f3_f4(x: float) -> Tuple[float, float]:
    """
    f3(x) = -pi/(4x) + ln(cot x)/(2x) - cot(x)/2, the trapezoidal lower bound
    of f1(n, 2) at x = pi/(2n); f4(x) = ln(cot x) - 2x/sin x - pi/2.
    """
    _check_proof_x(x)
    log_cot = math.log(math.cos(x) / math.sin(x))
    f3 = -math.pi / (4.0 * x) + log_cot / (2.0 * x) - math.cos(x) / (2.0 * math.sin(x))
    f4 = log_cot - 2.0 * x / math.sin(x) - math.pi / 2.0
    return f3, f4


def f1_lower_bound(n: int) -> float:
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    return proof_aux_f3_f4(math.pi / (2.0 * n))[0]


def f4_crossing(n_max: int = 1000) -> Tuple[int, int, float]:
    """
    Integers (n, n+1) between which f4(pi/2n) turns positive, plus the
    continuous crossing point in n located by bisection.
    """

    def f4_at(n_real: float) -> float:
        return proof_aux_f3_f4(math.pi / (2.0 * n_real))[1]

    previous = 3
    for n in range(4, n_max + 1):
        if f4_at(n) > 0.0:
            root = bisect_root(f4_at, float(previous), float(n), tol=1e-10)
            return previous, n, root
        previous = n
    raise ConsistencyError(f"f4(pi/2n) stays negative up to n={n_max}")
