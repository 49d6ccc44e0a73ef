# ringstab/core/errors.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3


class RingStabilityError(RuntimeError):
    pass


class DomainError(RingStabilityError, ValueError):
    pass


class SingularAngleError(DomainError):
    pass


class ConfigurationError(RingStabilityError, ValueError):
    pass


class InvalidRatioError(ConfigurationError):
    pass


class AmbiguousRankError(RingStabilityError):
    def __init__(self, n: int, l: int, value: float, zero_tol: float):
        super().__init__(
            f"|f1({n},{l})| = {abs(value):.3e} lies inside the ambiguity band "
            f"({zero_tol / 10:.3e}, {zero_tol * 10:.3e})"
        )
        self.n = n
        self.l = l
        self.value = value
        self.zero_tol = zero_tol


class ConsistencyError(RingStabilityError):
    pass


class NonSymmetricError(RingStabilityError, ValueError):
    pass


class ConvergenceError(RingStabilityError):
    pass


class NoSignChangeError(RingStabilityError, ValueError):
    pass
