# ringstab/models/ring.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ConfigurationError, SingularAngleError
from ..core.special_functions import SINGULAR_TOL

REGULAR_TOL = 1e-12


@dataclass(frozen=True)
class RingConfiguration:
    """Angular positions on the unit circle plus infinitesimal mass weights."""

    angles: Tuple[float, ...]
    masses: Tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        masses = tuple(float(m) for m in self.masses)
        if len(angles) < 2:
            raise ConfigurationError(f"a ring needs at least 2 bodies, got {len(angles)}")
        if len(masses) != len(angles):
            raise ConfigurationError(
                f"{len(angles)} angles but {len(masses)} masses"
            )
        if any(not math.isfinite(m) or m <= 0.0 for m in masses):
            raise ConfigurationError("all masses must be finite and positive")
        if any(not math.isfinite(a) for a in angles):
            raise ConfigurationError("all angles must be finite")
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "masses", masses)

        theta = np.asarray(angles)
        half = np.abs(np.sin((theta[None, :] - theta[:, None]) / 2.0))
        np.fill_diagonal(half, 1.0)
        if np.any(half < SINGULAR_TOL):
            i, k = np.argwhere(half < SINGULAR_TOL)[0]
            raise SingularAngleError(f"bodies {i + 1} and {k + 1} coincide mod 2*pi")

    @classmethod
    def regular(cls, n: int, masses: Optional[Sequence[float]] = None) -> "RingConfiguration":
        """Regular n-gon, theta_i = 2(i-1)pi/n; equal unit masses unless given."""
        if n < 2:
            raise ConfigurationError(f"n must be at least 2, got {n}")
        angles = tuple(2.0 * i * math.pi / n for i in range(n))
        if masses is None:
            masses = (1.0,) * n
        return cls(angles=angles, masses=tuple(masses))

    @classmethod
    def alternating(cls, j: int, mu1: float, mu2: float) -> "RingConfiguration":
        """Regular 2j-gon with masses mu1, mu2, mu1, mu2, ..."""
        return cls.regular(2 * j, masses=(mu1, mu2) * j)

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def theta(self) -> np.ndarray:
        return np.asarray(self.angles, dtype=float)

    @property
    def mu(self) -> np.ndarray:
        return np.asarray(self.masses, dtype=float)

    def with_angles(self, angles: Sequence[float]) -> "RingConfiguration":
        return RingConfiguration(angles=tuple(angles), masses=self.masses)

    def chords(self) -> np.ndarray:
        """r[k, i] = 2 sin(|theta_k - theta_i| / 2); zero diagonal."""
        diff = self.theta[None, :] - self.theta[:, None]
        return 2.0 * np.abs(np.sin(diff / 2.0))

    def is_regular(self) -> bool:
        expected = 2.0 * np.pi * np.arange(self.n) / self.n
        drift = np.angle(np.exp(1j * (self.theta - self.theta[0] - expected)))
        return bool(np.all(np.abs(drift) <= REGULAR_TOL * max(1, self.n)))

    def alternating_masses(self) -> Optional[Tuple[float, float]]:
        """(mu1, mu2) when n is even and masses alternate, else None."""
        if self.n % 2:
            return None
        mu = self.mu
        odd, even = mu[0::2], mu[1::2]
        if np.all(odd == odd[0]) and np.all(even == even[0]):
            return float(odd[0]), float(even[0])
        return None
