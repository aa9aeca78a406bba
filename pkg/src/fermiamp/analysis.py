"""Negativity-versus-acceleration curves and what can be read off them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .entanglement import negativity_stack
from .reduction import trace_stack
from .states import FAMILIES, GAMMA_MAX, PURE_FAMILIES, StateParams, density_stack

DEFAULT_GRID_N = 2001
DEFAULT_REFINE_TOL = 1e-8
EPS_AMP = 1e-9
NEGATIVITY_MAX = 0.5 + 1e-10
# forward differences smaller than this are rounding noise, not slope
DIFF_TOL = 1e-13
SCAN_N = 64
ALPHA_SCAN_MIN = 0.01

_INV_PHI = (math.sqrt(5) - 1) / 2


def negativities(family: str, params: StateParams, gammas) -> np.ndarray:
    """Negativity of ``family`` at each gamma (trace route)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown state family {family!r}; expected one of {FAMILIES}")
    return negativity_stack(trace_stack(density_stack(family, params, gammas)))


def negativity_at(family: str, params: StateParams) -> Callable[[float], float]:
    def f(gamma: float) -> float:
        return float(negativities(family, params, [gamma])[0])
    return f


@dataclass(frozen=True, eq=False)
class Curve:
    family: str
    params: StateParams
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.grid[0] != 0.0 or self.grid[-1] != GAMMA_MAX:
            raise ValueError("curve grid must run from 0 to pi/4 inclusive")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("curve grid must be strictly increasing")
        if np.any(self.values < 0) or np.any(self.values > NEGATIVITY_MAX):
            raise ValueError("negativity outside [0, 1/2]")


@dataclass(frozen=True)
class VariationPoint:
    gamma_star: float
    kind: str
    value: float


@dataclass(frozen=True)
class AmplificationReport:
    amplified: bool
    min_point: VariationPoint | None
    gain: float
    variation_count: int


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of :func:`amplification_threshold`.

    ``status`` is ``"threshold"`` when a boundary was bracketed,
    ``"never_amplified"`` or ``"always_amplified"`` when the predicate is
    constant over the scan, and ``"non_monotone"`` when it flips more than once
    (``bracket`` then holds the first offending pair of scan points).
    """

    q_r: float
    status: str
    alpha_star: float | None
    tol: float
    bracket: tuple[float, float] | None = None
    scan: tuple[bool, ...] = field(default=(), repr=False)


def negativity_curve(family: str, params: StateParams, grid_n: int = DEFAULT_GRID_N) -> Curve:
    if grid_n < 3:
        raise ValueError(f"grid_n must be at least 3, got {grid_n}")
    params.require(family)
    grid = np.linspace(0.0, GAMMA_MAX, grid_n)
    grid[-1] = GAMMA_MAX
    values = negativities(family, params, grid)
    return Curve(family, params, grid, values)


def golden_section_min(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Minimiser of a unimodal ``f`` on ``[lo, hi]``, to a bracket of width ``tol``."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def _turning_brackets(grid: np.ndarray, values: np.ndarray):
    d = np.diff(values)
    nz = np.flatnonzero(np.abs(d) > DIFF_TOL)
    for j, k in zip(nz[:-1], nz[1:]):
        if d[j] < 0 < d[k]:
            yield "local_min", grid[j], grid[k + 1]
        elif d[j] > 0 > d[k]:
            yield "local_max", grid[j], grid[k + 1]


def variation_points(curve: Curve, refine_tol: float = DEFAULT_REFINE_TOL) -> list[VariationPoint]:
    """Interior extrema of the curve, each refined on the true negativity."""
    if refine_tol <= 0:
        raise ValueError("refine_tol must be positive")
    f = negativity_at(curve.family, curve.params)
    points = []
    for kind, lo, hi in _turning_brackets(curve.grid, curve.values):
        if kind == "local_min":
            g = golden_section_min(f, lo, hi, refine_tol)
        else:
            g = golden_section_min(lambda x: -f(x), lo, hi, refine_tol)
        points.append(VariationPoint(float(g), kind, f(g)))
    return sorted(points, key=lambda v: v.gamma_star)


def amplification_report(curve: Curve, refine_tol: float = DEFAULT_REFINE_TOL) -> AmplificationReport:
    points = variation_points(curve, refine_tol)
    minima = [v for v in points if v.kind == "local_min"]
    end = float(curve.values[-1])
    if not minima:
        return AmplificationReport(False, None, 0.0, len(points))
    deepest = min(minima, key=lambda v: v.value)
    amplified = any(end > v.value + EPS_AMP for v in minima)
    gain = end - deepest.value if amplified else 0.0
    return AmplificationReport(amplified, deepest, gain, len(points))


def is_amplified(family: str, q_r: float, alpha: float, grid_n: int = DEFAULT_GRID_N) -> bool:
    curve = negativity_curve(family, StateParams(q_r=q_r, alpha=alpha), grid_n)
    return amplification_report(curve).amplified


def amplification_threshold(
    q_r: float,
    family: str = "phi_plus",
    tol_alpha: float = 1e-4,
    grid_n: int = DEFAULT_GRID_N,
    scan_n: int = SCAN_N,
) -> ThresholdResult:
    """Smallest alpha at which the curve of ``family`` shows amplification.

    The predicate is first evaluated on ``scan_n`` points in
    ``[0.01, pi/4]`` and must switch from False to True at most once; the
    switching interval is then bisected down to ``tol_alpha``.
    """
    if family not in PURE_FAMILIES:
        raise ValueError(f"threshold search needs a pure family, got {family!r}")
    if tol_alpha <= 0:
        raise ValueError("tol_alpha must be positive")
    alphas = np.linspace(ALPHA_SCAN_MIN, math.pi / 4, scan_n)
    flags = tuple(is_amplified(family, q_r, a, grid_n) for a in alphas)

    flips = [i for i in range(1, scan_n) if flags[i] != flags[i - 1]]
    if not flips:
        status = "always_amplified" if flags[0] else "never_amplified"
        return ThresholdResult(q_r, status, None, tol_alpha, scan=flags)
    if len(flips) > 1 or flags[0]:
        i = flips[0] if flags[0] else flips[1]
        bracket = (float(alphas[i - 1]), float(alphas[i]))
        return ThresholdResult(q_r, "non_monotone", None, tol_alpha, bracket, flags)

    lo, hi = float(alphas[flips[0] - 1]), float(alphas[flips[0]])
    while hi - lo > tol_alpha:
        mid = 0.5 * (lo + hi)
        if is_amplified(family, q_r, mid, grid_n):
            hi = mid
        else:
            lo = mid
    return ThresholdResult(q_r, "threshold", 0.5 * (lo + hi), tol_alpha, (lo, hi), flags)


def gamma_of_acceleration(a: float, omega: float, c: float = 1.0) -> float:
    """Acceleration parameter for proper acceleration ``a`` and mode frequency ``omega``.

    ``cos(gamma) = (exp(-2 pi omega c / a) + 1) ** -0.5``, evaluated as
    ``atan(exp(-pi omega c / a))`` which underflows cleanly to 0 for small ``a``.
    """
    if not (a > 0 and omega > 0 and c > 0):
        raise ValueError("acceleration, frequency and c must all be positive")
    return math.atan(math.exp(-math.pi * omega * c / a))
