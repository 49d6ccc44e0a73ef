# ringstab/models/reports.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import math
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel

Verdict = Literal["stable", "unstable", "degenerate"]


class MassFamily(BaseModel):
    n: int
    parity: Literal["odd", "even"]
    parameter_count: int
    pattern: List[int]  # parameter index carried by each vertex
    description: str

    def basis(self) -> List[np.ndarray]:
        """Indicator vector of every mass parameter."""
        pattern = np.asarray(self.pattern)
        return [(pattern == p).astype(float) for p in range(self.parameter_count)]

    def masses(self, *params: float) -> List[float]:
        if len(params) != self.parameter_count:
            raise ValueError(
                f"family for n={self.n} takes {self.parameter_count} parameter(s), got {len(params)}"
            )
        return [float(params[p]) for p in self.pattern]


class StabilityReport(BaseModel):
    n: int
    ratio: float
    mu1: float
    mu2: float
    verdict: Verdict
    eigenvalues: List[float]
    zero_mode_count: int
    zero_tol: float
    failed_conditions: List[int] = []
    method: Literal["circulant", "block"]


class RatioInterval(BaseModel):
    j: int
    kind: Literal["finite", "all", "empty"]
    lo: Optional[float] = None
    hi: Optional[float] = None  # None with kind "all" means unbounded
    h4: float
    h5: float
    g1_2: float
    g2: float
    g3_2: float

    def contains(self, ratio: float) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "all":
            return ratio > 0.0
        return self.lo < ratio < self.hi


def fmt(value: Optional[float]) -> Optional[str]:
    """Decimal string with 15 significant digits."""
    if value is None:
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(float(value), ".15g")


class OutputRecord(BaseModel):
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    version: str


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str
