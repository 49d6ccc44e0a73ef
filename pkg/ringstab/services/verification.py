# ringstab/services/verification.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Invariant suite behind `ringstab verify`.

Every check is a plain function registered under a name; it receives a
VerifyContext, raises ConsistencyError on a violated invariant and returns a
short detail string otherwise. Results come back in registration order no
matter how many workers ran them.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from ..core import equilibrium, stability
from ..core.circulant import (
    CirculantSpec,
    block_eigenvalues,
    materialize_dense,
    real_eigenvalues,
)
from ..core.errors import ConsistencyError, RingStabilityError
from ..core.oracle import bisect_root, jacobi_eigenvalues, numeric_gradient, numeric_hessian
from ..core.special_functions import eval_F, eval_f, eval_f_second
from ..models.reports import CheckResult
from ..models.ring import RingConfiguration
from ..utils.logger import get_logger

logger = get_logger("verification")

# Published endpoints of the alternating-mass stability intervals.
REFERENCE_INTERVALS = {
    4: (0.39601454048825, 2.525159805412902),
    5: (0.16709497914366, 5.984620274797297),
    6: (0.061964963348688, 16.13815204525851),
}
ORACLE_RATIOS = (0.1, 0.5, 1.0, 2.0, 10.0)


@dataclass(frozen=True)
class VerifyContext:
    sweep_tol: float = 1e-13
    max_sweeps: int = 50
    hessian_step: float = 1e-4
    gradient_step: float = 1e-6
    rank_tol_factor: float = 1e-8
    rank_margin: float = 10.0
    seed: int = 20260101

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def jacobi(self, matrix: np.ndarray) -> np.ndarray:
        return jacobi_eigenvalues(matrix, sweep_tol=self.sweep_tol, max_sweeps=self.max_sweeps)


Check = Callable[[VerifyContext], str]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConsistencyError(message)


class CheckRegistry:
    def __init__(self, logger: logging.Logger = None):
        self._checks: Dict[str, Check] = {}
        self._logger = logger or get_logger("verification")

    def register(self, name: str) -> Callable[[Check], Check]:
        def decorator(fn: Check) -> Check:
            if name in self._checks:
                raise ValueError(f"check already registered: {name}")
            self._checks[name] = fn
            return fn

        return decorator

    def names(self) -> List[str]:
        return list(self._checks)

    def _run_one(self, name: str, ctx: VerifyContext) -> CheckResult:
        try:
            detail = self._checks[name](ctx)
            self._logger.debug("check %s passed: %s", name, detail)
            return CheckResult(name=name, passed=True, detail=detail)
        except RingStabilityError as e:
            self._logger.error("check %s failed: %s", name, e)
            return CheckResult(name=name, passed=False, detail=str(e))
        except Exception as e:
            self._logger.exception("check %s crashed: %s", name, e)
            return CheckResult(name=name, passed=False, detail=f"{type(e).__name__}: {e}")

    def run(
        self,
        ctx: Optional[VerifyContext] = None,
        *,
        workers: int = 1,
        only: Optional[Iterable[str]] = None,
    ) -> List[CheckResult]:
        ctx = ctx or VerifyContext()
        selected = self.names() if only is None else list(only)
        unknown = [name for name in selected if name not in self._checks]
        if unknown:
            raise ValueError(f"unknown check(s): {', '.join(unknown)}")

        if workers <= 1 or len(selected) <= 1:
            results = [self._run_one(name, ctx) for name in selected]
        else:
            by_name: Dict[str, CheckResult] = {}
            with ThreadPoolExecutor(max_workers=min(workers, len(selected))) as executor:
                future_map = {executor.submit(self._run_one, name, ctx): name for name in selected}
                for future in as_completed(future_map):
                    by_name[future_map[future]] = future.result()
            results = [by_name[name] for name in selected]

        failed = sum(1 for r in results if not r.passed)
        self._logger.info("verify: %d checks, %d failed", len(results), failed)
        return results


registry = CheckRegistry(logger)
check = registry.register


def _grid(points: int = 1000) -> np.ndarray:
    return np.linspace(0.05, 2.0 * math.pi - 0.05, points)


def _perturbed_ring(rng: np.random.Generator, n: int) -> RingConfiguration:
    base = 2.0 * math.pi * np.arange(n) / n
    angles = base + rng.uniform(-0.2, 0.2, size=n) * (2.0 * math.pi / n)
    masses = rng.uniform(0.5, 2.0, size=n)
    return RingConfiguration(angles=tuple(angles), masses=tuple(masses))


# special functions


@check("kernel_symmetry")
def check_kernel_symmetry(ctx: VerifyContext) -> str:
    phi = _grid()
    F, f = eval_F(phi), eval_f(phi)
    _require(np.allclose(eval_F(-phi), -F, rtol=0.0, atol=1e-12), "F is not odd")
    _require(np.allclose(eval_F(phi + 2.0 * math.pi), F, rtol=1e-12, atol=1e-12), "F is not 2*pi-periodic")
    _require(np.allclose(eval_f(-phi), f, rtol=0.0, atol=1e-12), "f is not even")
    _require(
        np.allclose(eval_f(math.pi - phi), eval_f(phi - math.pi), rtol=1e-12, atol=1e-12),
        "f(pi - phi) != f(phi - pi)",
    )
    _require(float(np.min(f)) >= -0.875 - 1e-12, f"min f = {np.min(f):.15g} below -7/8")
    return f"{phi.size} grid points"


@check("kernel_derivative")
def check_kernel_derivative(ctx: VerifyContext) -> str:
    phi = _grid()
    h = ctx.gradient_step
    central = (eval_F(phi + h) - eval_F(phi - h)) / (2.0 * h)
    f = eval_f(phi)
    _require(np.allclose(central, f, rtol=1e-6, atol=1e-6), "F' != f on the grid")
    return f"max |F' - f| = {np.max(np.abs(central - f)):.3e}"


@check("kernel_convexity")
def check_kernel_convexity(ctx: VerifyContext) -> str:
    values = [eval_f_second(float(p), 1e-4) for p in _grid(400)]
    _require(min(values) > 0.0, f"f'' not positive (min {min(values):.3e})")
    return f"min f'' = {min(values):.6g}"


@check("kernel_anchors")
def check_kernel_anchors(ctx: VerifyContext) -> str:
    _require(abs(eval_f(math.pi) + 0.875) <= 1e-12, "f(pi) != -7/8")
    _require(abs(eval_F(math.pi / 2) - (1.0 - math.sqrt(2.0) / 4.0)) <= 1e-12, "F(pi/2) != 1 - sqrt(2)/4")
    _require(abs(eval_f(math.pi / 2) - 3.0 * math.sqrt(2.0) / 8.0) <= 1e-12, "f(pi/2) != 3 sqrt(2)/8")
    return "f(pi), F(pi/2), f(pi/2)"


# circulant spectra


@check("circulant_vs_jacobi")
def check_circulant_vs_jacobi(ctx: VerifyContext) -> str:
    rng = ctx.rng()
    worst = 0.0
    for j in range(2, 13):
        half = rng.normal(size=j // 2 + 1)
        row = np.array([half[min(k, j - k)] for k in range(j)])
        spec = CirculantSpec.from_row(row)
        analytic = np.sort(real_eigenvalues(spec))
        dense = ctx.jacobi(materialize_dense(spec))
        worst = max(worst, float(np.max(np.abs(analytic - dense))))
    _require(worst <= 1e-10, f"circulant spectra deviate from Jacobi by {worst:.3e}")
    return f"max deviation {worst:.3e}"


@check("block_vs_dense")
def check_block_vs_dense(ctx: VerifyContext) -> str:
    worst = 0.0
    for n in range(4, 41, 2):
        j = n // 2
        for ratio in ORACLE_RATIOS:
            mu1, mu2 = stability.masses_for_ratio(ratio)
            hess = stability.hessian(RingConfiguration.alternating(j, mu1, mu2))
            dense = ctx.jacobi(hess.dense)
            reduced = block_eigenvalues(hess.block).eigenvalues
            analytic = np.asarray(stability.classify(n, ratio).eigenvalues)
            worst = max(
                worst,
                float(np.max(np.abs(analytic - dense))),
                float(np.max(np.abs(reduced - dense))),
            )
    _require(worst <= 1e-9, f"block spectra deviate from Jacobi by {worst:.3e}")
    return f"max deviation {worst:.3e}"


# equilibrium


@check("rank_law")
def check_rank_law(ctx: VerifyContext) -> str:
    for n in range(3, 42):
        rank = equilibrium.m_rank(n, ctx.rank_tol_factor * n, ctx.rank_margin)
        expected = n - 1 if n % 2 else n - 2
        _require(rank == expected, f"rank(M_{n}) = {rank}, expected {expected}")
        equilibrium.mass_family(n, ctx.rank_tol_factor * n, ctx.rank_margin)

    for n in (5, 8, 11, 16, 21):
        m = equilibrium.build_M(RingConfiguration.regular(n))
        values = ctx.jacobi(equilibrium.hermitian_embedding(m))
        nonzero = int(np.sum(np.abs(values) > ctx.rank_tol_factor * n))
        _require(nonzero == 2 * equilibrium.m_rank(n), f"Jacobi rank of M_{n} disagrees")
    return "3 <= n <= 41"


@check("regular_residual")
def check_regular_residual(ctx: VerifyContext) -> str:
    rng = ctx.rng()
    worst = 0.0
    for n in range(3, 25):
        family = equilibrium.mass_family(n)
        params = rng.uniform(0.2, 5.0, size=family.parameter_count)
        config = RingConfiguration.regular(n, family.masses(*params))
        worst = max(worst, float(np.max(np.abs(equilibrium.residual(config)))))
        grad = stability.hall_gradient(config)
        _require(float(np.max(np.abs(grad))) <= 1e-11 * n * float(np.max(params)) ** 2, f"gradient not zero at n={n}")
    _require(worst <= 1e-11 * 24 * 5.0, f"residual {worst:.3e} at a regular equilibrium")
    return f"max residual {worst:.3e}"


@check("f1_bounds")
def check_f1_bounds(ctx: VerifyContext) -> str:
    for n in range(3, 201):
        _require(equilibrium.f1(n, 2) > equilibrium.f1_lower_bound(n), f"f1({n},2) below its lower bound")
    for n in range(5, 201):
        _require(equilibrium.f1(n, (n + 1) // 2) > 0.0, f"f1({n},{(n + 1) // 2}) not positive")
    n_lo, n_hi, root = equilibrium.f4_crossing()
    f4_lo = equilibrium.proof_aux_f3_f4(math.pi / (2 * n_lo))[1]
    f4_hi = equilibrium.proof_aux_f3_f4(math.pi / (2 * n_hi))[1]
    _require(f4_lo < 0.0 < f4_hi, "f4 bracket has no sign change")
    return f"f4 crosses zero between n={n_lo} and n={n_hi} (n* = {root:.6f})"


@check("f2_concavity")
def check_f2_concavity(ctx: VerifyContext) -> str:
    for n in range(7, 101):
        for l in range(1, (n - 2) // 2 + 1):
            direct, closed = equilibrium.f2_second_difference(n, l)
            _require(abs(direct - closed) <= 1e-9 * max(1.0, abs(closed)), f"closed form mismatch at ({n},{l})")
            _require(direct < 0.0, f"f2 not concave at ({n},{l})")
    return "7 <= n <= 100"


# Hall's potential and Hessian


@check("gradient_vs_fd")
def check_gradient_vs_fd(ctx: VerifyContext) -> str:
    rng = ctx.rng()
    worst = 0.0
    for _ in range(20):
        config = _perturbed_ring(rng, int(rng.integers(3, 13)))
        analytic = stability.hall_gradient(config)
        numeric = numeric_gradient(
            lambda x: stability.hall_potential(config.with_angles(x)), config.angles, ctx.gradient_step
        )
        scale = max(1.0, float(np.max(np.abs(analytic))))
        worst = max(worst, float(np.max(np.abs(analytic - numeric))) / scale)
        residual = equilibrium.residual(config)
        _require(
            np.allclose(residual, stability.RESIDUAL_SIGN * analytic / config.mu, rtol=1e-9, atol=1e-9 * scale),
            "residual is not -(1/mu) dV/dtheta",
        )
        _require(abs(float(np.sum(analytic))) <= 1e-10 * scale * config.n, "gradient not rotation invariant")
    _require(worst <= 1e-6, f"gradient deviates from finite differences by {worst:.3e}")
    return f"max relative deviation {worst:.3e}"


@check("hessian_vs_fd")
def check_hessian_vs_fd(ctx: VerifyContext) -> str:
    rng = ctx.rng()
    configs = [RingConfiguration.alternating(5, 2.0, 1.0)] + [_perturbed_ring(rng, n) for n in (3, 5, 6, 8)]
    worst = 0.0
    for config in configs:
        hess = stability.hessian(config)
        numeric = numeric_hessian(
            lambda x: stability.hall_potential(config.with_angles(x)), config.angles, ctx.hessian_step
        ).entries
        worst = max(worst, float(np.max(np.abs(hess.dense - numeric))) / hess.scale)
    _require(worst <= 1e-5, f"hessian deviates from finite differences by {worst:.3e}")
    return f"max relative deviation {worst:.3e}"


@check("hessian_structure")
def check_hessian_structure(ctx: VerifyContext) -> str:
    rng = ctx.rng()
    configs = [RingConfiguration.alternating(j, *stability.masses_for_ratio(r)) for j in (2, 4, 7) for r in ORACLE_RATIOS]
    configs += [_perturbed_ring(rng, n) for n in (3, 4, 9, 12)]
    for config in configs:
        hess = stability.hessian(config)
        dense, scale = hess.dense, hess.scale
        _require(np.allclose(dense, dense.T, rtol=0.0, atol=1e-12 * scale), "hessian not symmetric")
        _require(float(np.max(np.abs(dense.sum(axis=1)))) <= 1e-11 * scale * config.n, "row sums not zero")
        theta, mu = config.theta, config.mu
        off = -np.outer(mu, mu) * eval_f(theta[None, :] - theta[:, None] + np.eye(config.n) * math.pi)
        mask = ~np.eye(config.n, dtype=bool)
        _require(np.allclose(dense[mask], off[mask], rtol=1e-10, atol=1e-12 * scale), "off-diagonal != -mu mu f")
        ones = dense @ np.ones(config.n)
        _require(float(np.linalg.norm(ones)) <= 1e-10 * float(np.linalg.norm(dense)), "H . 1 != 0")
    return f"{len(configs)} configurations"


# stability theory


@check("g_sums")
def check_g_sums(ctx: VerifyContext) -> str:
    _require(stability.g1(6, 2) < 0.0 < stability.g1(7, 2), "g1(6,2) < 0 < g1(7,2) fails")
    _require(abs(stability.g2(1) + 0.875) <= 1e-12, "g2(1) != -7/8")
    _require(abs(stability.g2(2) - 0.75 * math.sqrt(2.0)) <= 1e-12, "g2(2) != 3 sqrt(2)/4")
    _require(abs(stability.g3(2, 2)) <= 1e-12, "g3(2,2) != 0")
    for j in range(2, 201):
        g2, g3 = stability.g2(j), stability.g3(j, 2)
        _require(g2 > 0.0 and g2 - abs(g3) > 0.0, f"g2 +- g3 not positive at j={j}")
        _require(abs(stability.g2_rewritten(j) - g2) <= 1e-9 * g2, f"rewritten g2 mismatch at j={j}")
        _require(stability.g1(j, 1) == 0.0, f"g1({j},1) != 0")
    for j in range(3, 61):
        for l in range(2, (j + 1) // 2):
            _require(stability.g1(j, l) < stability.g1(j, l + 1), f"g1({j},l) not increasing at l={l}")
            c1_now, _ = stability.g1_parts(j, l)
            c1_next, _ = stability.g1_parts(j, l + 1)
            step = stability.c1_increment(j, l)
            _require(abs(step - (c1_next - c1_now)) <= 1e-9 * max(1.0, abs(step)), f"c1 increment mismatch ({j},{l})")
    return "2 <= j <= 200"


@check("chi_sign")
def check_chi_sign(ctx: VerifyContext) -> str:
    ratios = np.geomspace(0.01, 100.0, 25)
    _require(all(stability.chi(3, 2, r, 1.0) < 0.0 for r in ratios), "chi(3,2) not negative")
    _require(stability.chi(7, 2, 1.0, 1.0) > 0.0, "chi(7,2) not positive at unit masses")
    for j in range(2, 31):
        _require(abs(stability.chi(j, 1, 1.3, 0.7)) <= 1e-9 * stability.g2(j) ** 2, f"chi({j},1) != 0")
        for mu1, mu2 in ((1.0, 1.0), (3.0, 1.0), (1.0, 0.2)):
            values = [stability.chi(j, l, mu1, mu2) for l in range(2, (j + 1) // 2 + 1)]
            _require(all(a <= b + 1e-9 * abs(b) for a, b in zip(values, values[1:])), f"chi({j},l) not monotone")
    return "2 <= j <= 30"


@check("intervals")
def check_intervals(ctx: VerifyContext) -> str:
    for j, (lo_ref, hi_ref) in REFERENCE_INTERVALS.items():
        interval = stability.stability_interval(j)
        _require(interval.kind == "finite", f"j={j} interval is {interval.kind}")
        _require(abs(interval.lo - lo_ref) <= 1e-9 and abs(interval.hi - hi_ref) <= 1e-9, f"j={j} endpoints off")
        _require(abs(interval.lo * interval.hi - 1.0) <= 1e-10, f"j={j} lo*hi != 1")
        lo, hi = stability.interval_by_bisection(j)
        _require(abs(lo - interval.lo) <= 1e-10 and abs(hi - interval.hi) <= 1e-10 * hi, f"bisection disagrees at j={j}")
        root = bisect_root(lambda r: stability.chi(j, 2, r, 1.0), 0.01, 1.0, tol=1e-12)
        _require(abs(root - lo_ref) <= 1e-9, f"chi({j},2) root off")
        for edge in (interval.lo, interval.hi):
            report = stability.classify(2 * j, edge, zero_tol=1e-7)
            _require(report.verdict == "degenerate", f"j={j} ratio {edge} is {report.verdict}")
    for j in (2, 3):
        _require(stability.stability_interval(j).kind == "empty", f"j={j} interval not empty")
    for j in range(7, 21):
        _require(stability.stability_interval(j).kind == "all", f"j={j} interval not the full ray")
    return "j = 2..20"


@check("equal_mass_criterion")
def check_equal_mass_criterion(ctx: VerifyContext) -> str:
    for n in range(3, 61):
        verdict = stability.classify(n).verdict
        expected = "stable" if n >= 7 else "unstable"
        _require(verdict == expected, f"n={n} classified {verdict}")
    hess = stability.hessian(RingConfiguration.regular(9))
    dense = ctx.jacobi(hess.dense)
    analytic = np.sort(stability.equal_mass_spectrum(9))
    _require(float(np.max(np.abs(dense - analytic))) <= 1e-10, "n=9 spectrum disagrees with Jacobi")
    return "3 <= n <= 60"


@check("even_theorem")
def check_even_theorem(ctx: VerifyContext) -> str:
    def verdicts(n, ratios):
        return {stability.classify(n, float(r)).verdict for r in ratios}

    for j, (lo, hi) in REFERENCE_INTERVALS.items():
        inside = np.geomspace(lo + 1e-3, hi - 1e-3, 20)
        outside = np.concatenate((np.geomspace(0.01, lo - 1e-3, 10), np.geomspace(hi + 1e-3, 100.0, 10)))
        _require(verdicts(2 * j, inside) == {"stable"}, f"j={j} not stable inside its interval")
        _require(verdicts(2 * j, outside) == {"unstable"}, f"j={j} not unstable outside its interval")
    sampled = np.geomspace(0.01, 100.0, 21)
    for j in (2, 3):
        _require(verdicts(2 * j, sampled) == {"unstable"}, f"j={j} has a stable ratio")
    for j in range(7, 21):
        _require(verdicts(2 * j, (0.01, 0.1, 1.0, 10.0, 100.0)) == {"stable"}, f"j={j} has an unstable ratio")
    return "j = 2..20"


@check("ratio_symmetry")
def check_ratio_symmetry(ctx: VerifyContext) -> str:
    for j in range(2, 21):
        for ratio in (0.01, 0.1, 0.3, 2.0, 7.5, 100.0):
            a = stability.classify(2 * j, ratio)
            b = stability.classify(2 * j, 1.0 / ratio)
            _require(a.verdict == b.verdict, f"verdict changes under ratio inversion at n={2 * j}")
            scale = max(1.0, max(abs(v) for v in a.eigenvalues))
            deviation = max(abs(x - y) for x, y in zip(a.eigenvalues, b.eigenvalues))
            _require(deviation <= 1e-10 * scale, f"spectrum changes under ratio inversion at n={2 * j}")
            if a.verdict == "stable":
                _require(a.zero_mode_count == 1, f"stable n={2 * j} with {a.zero_mode_count} zero modes")
    return "4 <= n <= 40"


@check("bound_functions")
def check_bound_functions(ctx: VerifyContext) -> str:
    xs = np.linspace(0.01, math.pi / 2 - 0.01, 300)
    values = [stability.bound_functions_h(float(x)) for x in xs]
    h2 = [v[1] for v in values]
    _require(all(a > b for a, b in zip(h2, h2[1:])), "h2 not decreasing")
    _require(all(v[0] > v[1] / (2.0 * x) for v, x in zip(values, xs)), "h1 bound violated")
    h3 = [stability.h3(float(x)) for x in np.linspace(0.01, math.pi / 6, 300)]
    _require(all(a > b for a, b in zip(h3, h3[1:])), "h3 not decreasing on (0, pi/6]")
    return "grids on (0, pi/2) and (0, pi/6]"


def run_verification(
    ctx: Optional[VerifyContext] = None,
    *,
    workers: int = 1,
    only: Optional[Iterable[str]] = None,
) -> List[CheckResult]:
    return registry.run(ctx, workers=workers, only=only)
