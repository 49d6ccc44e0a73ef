# ringstab/core/oracle.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Brute-force verifiers that share no code with the analytic paths: a cyclic
Jacobi eigensolver, central finite differences and bisection.
"""
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import ConvergenceError, NoSignChangeError, NonSymmetricError
from ..utils.logger import get_logger

logger = get_logger("oracle")

DEFAULT_SWEEP_TOL = 1e-13
DEFAULT_MAX_SWEEPS = 50
DEFAULT_HESSIAN_STEP = 1e-4
SYMMETRY_TOL = 1e-12

ScalarFn = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class DenseSymmetric:
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NonSymmetricError(f"expected a square matrix, got shape {a.shape}")
        scale = float(np.max(np.abs(a))) if a.size else 0.0
        asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
        if asym > SYMMETRY_TOL * max(scale, 1e-300):
            raise NonSymmetricError(f"matrix is not symmetric (max |A - A^T| = {asym:.3e})")
        object.__setattr__(self, "entries", 0.5 * (a + a.T))

    @property
    def order(self) -> int:
        return int(self.entries.shape[0])


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 1.0 / (2.0 * theta)
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    a[p, q] = 0.0
    a[q, p] = 0.0


def jacobi_eigenvalues(
    matrix: Union[DenseSymmetric, np.ndarray],
    sweep_tol: float = DEFAULT_SWEEP_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> np.ndarray:
    """Cyclic Jacobi rotations on a private copy; eigenvalues ascending."""
    if sweep_tol <= 0:
        raise ValueError(f"sweep_tol must be positive, got {sweep_tol}")
    if not isinstance(matrix, DenseSymmetric):
        matrix = DenseSymmetric(np.asarray(matrix, dtype=float))
    a = matrix.entries.copy()
    m = matrix.order
    norm = float(np.linalg.norm(a))
    if m <= 1 or norm == 0.0:
        return np.sort(np.diag(a).copy())
    target = sweep_tol * norm

    for sweep in range(max_sweeps):
        off = _off_norm(a)
        if off <= target:
            logger.debug("jacobi converged after %d sweeps (m=%d)", sweep, m)
            return np.sort(np.diag(a).copy())
        for p in range(m - 1):
            for q in range(p + 1, m):
                if a[p, q] != 0.0:
                    _rotate(a, p, q)

    off = _off_norm(a)
    if off <= target:
        return np.sort(np.diag(a).copy())
    raise ConvergenceError(
        f"jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e}, target {target:.3e})"
    )


def numeric_gradient(scalar_fn: ScalarFn, point: Sequence[float], h: float = 1e-6) -> np.ndarray:
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    x0 = np.asarray(point, dtype=float)
    grad = np.zeros_like(x0)
    for i in range(x0.size):
        x = x0.copy()
        x[i] = x0[i] + h
        f_plus = scalar_fn(x)
        x[i] = x0[i] - h
        f_minus = scalar_fn(x)
        grad[i] = (f_plus - f_minus) / (2.0 * h)
    return grad


def numeric_hessian(
    scalar_fn: ScalarFn, point: Sequence[float], h: float = DEFAULT_HESSIAN_STEP
) -> DenseSymmetric:
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    x0 = np.asarray(point, dtype=float)
    m = x0.size
    f0 = scalar_fn(x0)
    hess = np.zeros((m, m))

    def at(*shifts):
        x = x0.copy()
        for index, sign in shifts:
            x[index] += sign * h
        return scalar_fn(x)

    for i in range(m):
        hess[i, i] = (at((i, 1)) - 2.0 * f0 + at((i, -1))) / (h * h)
        for k in range(i + 1, m):
            value = (
                at((i, 1), (k, 1))
                - at((i, 1), (k, -1))
                - at((i, -1), (k, 1))
                + at((i, -1), (k, -1))
            ) / (4.0 * h * h)
            hess[i, k] = value
            hess[k, i] = value
    return DenseSymmetric(0.5 * (hess + hess.T))


def bisect_root(
    fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 400
) -> float:
    """Root of fn bracketed by (lo, hi), narrowed to width <= tol."""
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise NoSignChangeError(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}"
        )
    for _ in range(max_iter):
        if abs(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
