"""Exit criteria, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line; the lines are collected
again in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

import oracles
from conftest import ACCEPTANCE_LINES, NEGATIVITY_RANGE
from fermiamp import analysis, reduction, states
from fermiamp.analysis import amplification_threshold, negativity_curve, variation_points
from fermiamp.states import StateParams

S = 1 / math.sqrt(2)
GRID_N = 2001


def verdict(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_oracle_matches_closed_form():
    rng = np.random.default_rng(1)
    worst = {}
    for kind in reduction.CLOSED_FORM_KINDS:
        worst[kind] = 0.0
        for _ in range(1000):
            g, q_r, u = rng.uniform(0, math.pi / 4), rng.uniform(0, 1), rng.uniform()
            kw = {"alpha": u * math.pi / 2} if kind.startswith("phi") else {"fidelity": u}
            p = StateParams(gamma=g, q_r=q_r, **kw)
            oracle = reduction.trace_out_region_II(states.joint_density(kind, p))
            gap = reduction.compare_reduced(oracle, reduction.closed_form_reduced(kind, p))
            worst[kind] = max(worst[kind], gap)
    detail = ", ".join(f"{k} {v:.2e}" for k, v in worst.items()) + " (tol 1e-12, 1000 draws each)"
    verdict(1, max(worst.values()) <= 1e-12, detail)


def test_criterion_2_inertial_limit_is_half_sin_two_alpha():
    alphas = np.linspace(0, math.pi / 2, 50)
    q_rs = np.linspace(S, 1.0, 5)
    worst, worst_at = 0.0, None
    per_q_r = {}
    for q_r in q_rs:
        per_q_r[q_r] = 0.0
        for family in states.PURE_FAMILIES:
            for alpha in alphas:
                n = analysis.negativities(family, StateParams(q_r=q_r, alpha=alpha), [0.0])[0]
                dev = abs(n - 0.5 * math.sin(2 * alpha))
                per_q_r[q_r] = max(per_q_r[q_r], dev)
                if dev > worst:
                    worst, worst_at = dev, (family, round(float(alpha), 4), round(float(q_r), 4))
    detail = (f"max |N(0) - sin(2a)/2| = {worst:.3g} at {worst_at}; per q_R: "
              + ", ".join(f"{q:.4f}: {d:.2e}" for q, d in per_q_r.items()) + " (tol 1e-10)")
    verdict(2, worst <= 1e-10, detail)


def test_criterion_3_threshold_reproduction():
    start = time.perf_counter()
    res = amplification_threshold(S)
    elapsed = time.perf_counter() - start
    ok = res.status == "threshold" and abs(res.alpha_star - 0.5236) <= 5e-3 and elapsed <= 30
    detail = f"status {res.status}, alpha* = {res.alpha_star} (target 0.5236 +- 5e-3), {elapsed:.1f} s (limit 30 s)"
    verdict(3, ok, detail)


def test_criterion_4_amplification_exists():
    results = []
    for alpha in (0.600, 0.653, 0.785):
        curve = negativity_curve("phi_plus", StateParams(alpha=alpha, q_r=S), GRID_N)
        minima = [p for p in variation_points(curve) if p.kind == "local_min"]
        ok = bool(minima) and curve.values[-1] > min(p.value for p in minima)
        gain = curve.values[-1] - min(p.value for p in minima) if minima else float("nan")
        results.append((alpha, ok, gain))
    detail = ", ".join(f"alpha {a}: gain {g:.3e}" for a, _, g in results)
    verdict(4, all(ok for _, ok, _ in results), detail)


def test_criterion_5_phi_star_maximal_at_infinite_acceleration():
    curve = negativity_curve("phi_star", StateParams(alpha=0.653, q_r=S), GRID_N)
    i = int(np.argmax(curve.values))
    ok = i == len(curve.values) - 1
    verdict(5, ok, f"argmax at gamma = {curve.grid[i]:.6f}, N(pi/4) = {curve.values[-1]:.6f}, "
                   f"N(0) = {curve.values[0]:.6f}")


def test_criterion_6_phi_plus_phi_minus_equivalent():
    worst = 0.0
    pairs = [(a, q) for a in np.linspace(0.05, math.pi / 2 - 0.05, 5) for q in (0.609, S, 0.85, 1.0)]
    assert len(pairs) == 20
    for alpha, q_r in pairs:
        p = StateParams(alpha=alpha, q_r=q_r)
        plus = negativity_curve("phi_plus", p, GRID_N).values
        minus = negativity_curve("phi_minus", p, GRID_N).values
        worst = max(worst, float(np.max(np.abs(plus - minus))))
    verdict(6, worst <= 1e-10, f"max |N+ - N-| = {worst:.2e} over 20 pairs x {GRID_N} points (tol 1e-10)")


DOUBLE_CASES = [
    ("werner", 0.50, S), ("werner", 0.49, S), ("werner", 0.47, 0.609), ("werner", 0.46, 0.609),
    ("werner_like", 0.60, S), ("werner_like", 0.61, S), ("werner_like", 0.62, S), ("werner_like", 0.63, S),
]


def test_criterion_7_double_variation_points():
    counts = []
    for family, fidelity, q_r in DOUBLE_CASES:
        pts = variation_points(negativity_curve(family, StateParams(fidelity=fidelity, q_r=q_r), GRID_N))
        counts.append(len(pts))
    detail = ", ".join(f"{f} F={F} qR={q:.3f}: {c}" for (f, F, q), c in zip(DOUBLE_CASES, counts))
    verdict(7, all(c == 2 for c in counts), detail)


def test_criterion_8_single_mode_sanity():
    curve = negativity_curve("phi_plus", StateParams(alpha=math.pi / 4, q_r=1.0), GRID_N)
    rise = float(np.max(np.diff(curve.values)))
    end = float(curve.values[-1])
    # exact value at infinite acceleration from the sympy oracle is 1/4
    ok = rise <= 0 and end > 0 and abs(end - 0.25) <= 1e-12
    verdict(8, ok, f"largest step {rise:.2e} (must be <= 0), N(pi/4) = {end:.15f} (exact 1/4)")


def test_criterion_9_werner_separability_boundary():
    # at rest with q_R = 1 the lifted Werner state is the two-qubit Werner state
    low = np.linspace(0, 1 / 3, 34)
    high = np.linspace(1 / 3 + 1e-6, 1, 67)
    n_low = [analysis.negativities("werner", StateParams(fidelity=F, q_r=1.0), [0.0])[0] for F in low]
    n_high = [analysis.negativities("werner", StateParams(fidelity=F, q_r=1.0), [0.0])[0] for F in high]
    ref = [oracles.two_qubit_werner_negativity(F) for F in high]
    ok = max(n_low) == 0 and min(n_high) > 0 and np.max(np.abs(np.array(n_high) - ref)) <= 1e-12
    verdict(9, ok, f"max N for F <= 1/3: {max(n_low):.2e}; min N for F > 1/3 + 1e-6: {min(n_high):.2e}")


def test_criterion_10_global_bound():
    lo, hi = np.inf, -np.inf
    for family in states.FAMILIES:
        for u in np.linspace(0, 1, 11):
            for q_r in (0.0, 0.609, S, 0.9, 1.0):
                kw = {"alpha": u * math.pi / 2} if family in states.PURE_FAMILIES else {"fidelity": u}
                v = negativity_curve(family, StateParams(q_r=q_r, **kw), 401).values
                lo, hi = min(lo, v.min()), max(hi, v.max())
    lo, hi = min(lo, NEGATIVITY_RANGE["min"]), max(hi, NEGATIVITY_RANGE["max"])
    ok = lo >= 0 and hi <= 0.5 + 1e-10
    verdict(10, ok, f"{NEGATIVITY_RANGE['count']} values seen, range [{lo:.3g}, {hi:.15g}]")
