# ringstab/core/circulant.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Circulant and 2x2 block-circulant matrices given by their first rows.

Eigenvalues come from direct DFT sums
    alpha_l = sum_k A[1,k] * exp(-2*pi*i*(l-1)*(k-1)/j)
and the block matrix S = [[A, C], [C^T, B]] is reduced to one quadratic
    lambda^2 - (alpha_l + beta_l) lambda + alpha_l beta_l - |gamma_l|^2 = 0
per Fourier index l.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import ConfigurationError, ConsistencyError

SYMMETRY_TOL = 1e-12
IMAG_RESIDUE_TOL = 1e-9


@dataclass(frozen=True)
class CirculantSpec:
    first_row: Tuple[float, ...]

    def __post_init__(self):
        row = tuple(float(v) for v in self.first_row)
        if not row:
            raise ConfigurationError("circulant order must be at least 1")
        object.__setattr__(self, "first_row", row)

    @classmethod
    def from_row(cls, row: Sequence[float]) -> "CirculantSpec":
        return cls(tuple(np.asarray(row, dtype=float).tolist()))

    @property
    def order(self) -> int:
        return len(self.first_row)

    @property
    def row(self) -> np.ndarray:
        return np.asarray(self.first_row, dtype=float)

    @property
    def norm1(self) -> float:
        return float(np.sum(np.abs(self.row)))

    def is_symmetric(self) -> bool:
        # symmetric circulant <=> row[k] == row[j-k] for k >= 1
        row = self.row
        mirrored = np.concatenate((row[:1], row[:0:-1]))
        scale = max(1.0, float(np.max(np.abs(row))))
        return bool(np.all(np.abs(row - mirrored) <= SYMMETRY_TOL * scale))

    def transpose(self) -> "CirculantSpec":
        row = self.row
        j = self.order
        return CirculantSpec.from_row(row[(-np.arange(j)) % j])


@dataclass(frozen=True)
class BlockCirculantSpec:
    a: CirculantSpec
    b: CirculantSpec
    c: CirculantSpec

    def __post_init__(self):
        if not (self.a.order == self.b.order == self.c.order):
            raise ConfigurationError(
                f"block orders differ: A={self.a.order}, B={self.b.order}, C={self.c.order}"
            )
        if not (self.a.is_symmetric() and self.b.is_symmetric()):
            raise ConfigurationError("blocks A and B must be symmetric circulants")

    @property
    def order(self) -> int:
        return self.a.order


@dataclass(frozen=True)
class BlockSpectrum:
    alpha: np.ndarray
    beta: np.ndarray
    gamma_sq: np.ndarray
    lambda_pairs: np.ndarray  # shape (j, 2), each row ascending

    @property
    def order(self) -> int:
        return int(self.alpha.shape[0])

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.sort(self.lambda_pairs.ravel())

    def residuals(self) -> np.ndarray:
        """Quadratic residual of every root, shape (j, 2)."""
        lam = self.lambda_pairs
        s = (self.alpha + self.beta)[:, None]
        p = (self.alpha * self.beta - self.gamma_sq)[:, None]
        return lam * lam - s * lam + p


def fourier_basis(j: int) -> np.ndarray:
    """Columns are the common eigenvectors xi^(l) of every j x j circulant."""
    k = np.arange(j)
    exponent = np.outer(k, k) % j
    return np.exp(-2j * np.pi * exponent / j) / np.sqrt(j)


def _phase_table(j: int) -> np.ndarray:
    # exponent reduced mod j before the angle so equal phases are bit-identical
    k = np.arange(j)
    exponent = np.outer(k, k) % j
    angles = 2.0 * np.pi * np.arange(j) / j
    return np.cos(angles)[exponent] - 1j * np.sin(angles)[exponent]


def circulant_eigenvalues(spec: CirculantSpec) -> np.ndarray:
    """All j DFT sums of the first row, index l-1 -> alpha_l."""
    phases = _phase_table(spec.order)
    return (phases * spec.row[None, :]).sum(axis=1)


def real_eigenvalues(spec: CirculantSpec) -> np.ndarray:
    """Eigenvalues of a symmetric circulant with the imaginary residue dropped."""
    values = circulant_eigenvalues(spec)
    residue = float(np.max(np.abs(values.imag)))
    if residue > IMAG_RESIDUE_TOL * max(spec.norm1, 1.0):
        raise ConsistencyError(
            f"imaginary residue {residue:.3e} on a circulant declared symmetric"
        )
    return values.real.copy()


def solve_block_quadratic(
    alpha: np.ndarray, beta: np.ndarray, gamma_sq: np.ndarray
) -> np.ndarray:
    """
    Roots of lambda^2 - (alpha+beta) lambda + (alpha*beta - gamma_sq) = 0 for
    every index, shape (j, 2), ascending per row.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    gamma_sq = np.asarray(gamma_sq, dtype=float)
    s = alpha + beta
    p = alpha * beta - gamma_sq
    # (alpha-beta)^2 + 4|gamma|^2 >= 0 for a symmetric S
    root = np.sqrt((alpha - beta) ** 2 + 4.0 * gamma_sq)
    big = 0.5 * (s + np.copysign(root, s))
    safe = np.where(big == 0.0, 1.0, big)
    small = np.where(big == 0.0, 0.0, p / safe)
    pairs = np.stack((small, big), axis=1)
    return np.sort(pairs, axis=1)


def block_eigenvalues(spec: BlockCirculantSpec) -> BlockSpectrum:
    alpha = real_eigenvalues(spec.a)
    beta = real_eigenvalues(spec.b)
    gamma = circulant_eigenvalues(spec.c)
    gamma_bar = circulant_eigenvalues(spec.c.transpose())
    drift = float(np.max(np.abs(gamma_bar - np.conj(gamma))))
    if drift > IMAG_RESIDUE_TOL * max(spec.c.norm1, 1.0):
        raise ConsistencyError(f"C^T eigenvalues deviate from conj(gamma) by {drift:.3e}")
    gamma_sq = (gamma * np.conj(gamma)).real
    return BlockSpectrum(
        alpha=alpha,
        beta=beta,
        gamma_sq=gamma_sq,
        lambda_pairs=solve_block_quadratic(alpha, beta, gamma_sq),
    )


def materialize_dense(spec: Union[CirculantSpec, BlockCirculantSpec]) -> np.ndarray:
    if isinstance(spec, BlockCirculantSpec):
        a = materialize_dense(spec.a)
        b = materialize_dense(spec.b)
        c = materialize_dense(spec.c)
        return np.block([[a, c], [c.T, b]])
    j = spec.order
    k = np.arange(j)
    return spec.row[(k[None, :] - k[:, None]) % j]
