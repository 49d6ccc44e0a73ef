# ringstab/core/special_functions.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Scalar kernels of the ring problem.

F(phi) is the angular force kernel of the equilibrium equations and
f(phi) = F'(phi) is the kernel of the Hessian of Hall's potential. Both are
2*pi-periodic and singular at multiples of 2*pi.

All functions accept a float or a numpy array and return the same shape.
"""
import math
from typing import Union

import numpy as np

from .errors import DomainError, SingularAngleError

ArrayLike = Union[float, np.ndarray]

# Cutoff on |sin(phi/2)|; legitimate angles 2k*pi/n, (2k-1)*pi/j stay far above it.
SINGULAR_TOL = 1e-9


def _half_sine(phi: ArrayLike) -> np.ndarray:
    s = np.sin(np.asarray(phi, dtype=float) / 2.0)
    if np.any(np.abs(s) < SINGULAR_TOL):
        raise SingularAngleError(
            f"angle is a multiple of 2*pi within |sin(phi/2)| < {SINGULAR_TOL:g}"
        )
    return s


def _unwrap(value: np.ndarray, phi: ArrayLike) -> ArrayLike:
    if np.ndim(phi) == 0:
        return float(value)
    return value


def eval_F(phi: ArrayLike) -> ArrayLike:
    """F(phi) = sin(phi) * (1 - 1 / (8 |sin(phi/2)|^3)); odd and 2*pi-periodic."""
    s = _half_sine(phi)
    abs_cube = np.abs(s) * s * s
    value = np.sin(np.asarray(phi, dtype=float)) * (1.0 - 1.0 / (8.0 * abs_cube))
    return _unwrap(value, phi)


def eval_f(phi: ArrayLike) -> ArrayLike:
    """f(phi) = F'(phi) = (2/sin^2(phi/2) - 1) / (8 |sin(phi/2)|) + cos(phi); even, >= -7/8."""
    s = _half_sine(phi)
    s2 = s * s
    value = (2.0 / s2 - 1.0) / (8.0 * np.abs(s)) + np.cos(np.asarray(phi, dtype=float))
    return _unwrap(value, phi)


def eval_f_second(phi: float, step: float) -> float:
    """
    Central second difference of f. Only used to check the convexity of f on
    (0, 2*pi); it is not a production derivative.
    """
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    if not (2.0 * step <= phi <= 2.0 * math.pi - 2.0 * step):
        raise DomainError(
            f"phi={phi} must lie in (0, 2*pi) at least 2*step={2 * step:g} from the endpoints"
        )
    values = eval_f(np.array([phi - step, phi, phi + step]))
    return float((values[0] - 2.0 * values[1] + values[2]) / (step * step))
