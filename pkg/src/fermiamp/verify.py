"""Self-checks behind ``fermiamp verify``.

Each check returns ``(passed, detail)``. Random draws use a fixed seed so two
runs print identical summaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analysis, entanglement, fock_basis, reduction, states
from .states import StateParams

SEED = 20111006
N_RANDOM = 200


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str


def inertial_negativity(family: str, alpha: float, q_r: float) -> float:
    """Negativity at zero acceleration, from the 2x2 block the partial transpose couples.

    At gamma = 0 the Unruh excitation sits in region I with weight ``q_r`` and in
    region II with weight ``q_l``; the region-II part decoheres into a single
    diagonal entry ``x`` next to the Bell coherence ``c``.
    """
    q_l = states.q_left(q_r)
    ca, sa = math.cos(alpha), math.sin(alpha)
    x = (ca * q_l) ** 2 if family == "phi_star" else (sa * q_l) ** 2
    c = ca * sa * q_r
    return 0.5 * (math.sqrt(x * x + 4 * c * c) - x)


def _random_params(rng, family):
    g = rng.uniform(0, math.pi / 4)
    q_r = rng.uniform(0, 1)
    if family in states.PURE_FAMILIES:
        return StateParams(gamma=g, q_r=q_r, alpha=rng.uniform(0, math.pi / 2))
    return StateParams(gamma=g, q_r=q_r, fidelity=rng.uniform(0, 1))


def check_index_bijection():
    bad = [i for i in range(32) if fock_basis.index_of(fock_basis.label_of(i)) != i]
    bad += [i for i in range(16) if fock_basis.index_of(fock_basis.label_of(i, joint=False)) != i]
    return not bad, f"{len(bad)} indices fail the round trip"


def check_outer_rank_one(rng):
    worst = 0.0
    for _ in range(N_RANDOM // 4):
        v = rng.normal(size=32)
        rho = fock_basis.outer(v / np.linalg.norm(v)).entries
        w = np.linalg.eigvalsh(rho)
        worst = max(worst, abs(np.trace(rho) - 1), abs(w[-1] - 1), np.max(np.abs(w[:-1])))
    return worst <= 1e-10, f"worst deviation {worst:.3g}"


def check_mix_preserves_trace(rng):
    worst = 0.0
    for _ in range(N_RANDOM // 4):
        p = rng.uniform()
        a = states.joint_density("phi_plus", _random_params(rng, "phi_plus"))
        b = states.joint_density("werner", _random_params(rng, "werner"))
        m = fock_basis.mix([(p, a), (1 - p, b)]).entries
        worst = max(worst, abs(np.trace(m) - 1), np.max(np.abs(m - m.T)))
    return worst <= 1e-14, f"worst trace/symmetry drift {worst:.3g}"


def check_unruh_orthonormal():
    worst = 0.0
    for g in np.linspace(0, math.pi / 4, 41):
        for q_r in np.linspace(0, 1, 21):
            vac = states.unruh_vacuum(g).amplitudes
            plus = states.unruh_one_particle("plus", g, q_r).amplitudes
            minus = states.unruh_one_particle("minus", g, q_r).amplitudes
            gram = np.array([vac, plus, minus]) @ np.array([vac, plus, minus]).T
            worst = max(worst, np.max(np.abs(gram - np.eye(3))))
    return worst <= 1e-12, f"max Gram deviation {worst:.3g}"


def check_mixed_states_valid(rng):
    worst = 0.0
    for family in states.MIXED_FAMILIES:
        for _ in range(N_RANDOM // 4):
            rho = states.joint_density(family, _random_params(rng, family)).entries
            worst = max(worst, abs(np.trace(rho) - 1), -np.linalg.eigvalsh(rho)[0])
    return worst <= 1e-10, f"worst trace error / negative eigenvalue {worst:.3g}"


def check_single_mode_support():
    allowed = {0b1000, 0b1011}
    ok = all(
        set(np.flatnonzero(states.unruh_one_particle("plus", g, 1.0).amplitudes)) <= allowed
        for g in np.linspace(0, math.pi / 4, 21)
    )
    return ok, "q_R = 1 excitation confined to |1000>, |1011>"


def check_trace_preserves_state(rng):
    worst = 0.0
    for family in states.FAMILIES:
        for _ in range(N_RANDOM // 10):
            red = reduction.trace_out_region_II(states.joint_density(family, _random_params(rng, family)))
            worst = max(worst, abs(np.trace(red.matrix) - 1), -np.linalg.eigvalsh(red.matrix)[0])
    return worst <= 1e-10, f"worst trace drift / negative eigenvalue {worst:.3g}"


def check_trace_linear(rng):
    worst = 0.0
    for _ in range(N_RANDOM // 10):
        p = rng.uniform()
        a = states.joint_density("phi_star", _random_params(rng, "phi_star"))
        b = states.joint_density("werner_like", _random_params(rng, "werner_like"))
        lhs = reduction.trace_out_region_II(fock_basis.mix([(p, a), (1 - p, b)])).matrix
        rhs = p * reduction.trace_stack(a.entries) + (1 - p) * reduction.trace_stack(b.entries)
        worst = max(worst, np.max(np.abs(lhs - rhs)))
    return worst <= 1e-13, f"max entry gap {worst:.3g}"


def check_oracle_vs_closed_form(rng):
    worst = 0.0
    for kind in reduction.CLOSED_FORM_KINDS:
        for _ in range(N_RANDOM):
            params = _random_params(rng, kind)
            oracle = reduction.trace_out_region_II(states.joint_density(kind, params))
            worst = max(worst, reduction.compare_reduced(oracle, reduction.closed_form_reduced(kind, params)))
    return worst <= 1e-12, f"max entry gap {worst:.3g}"


def check_inertial_rank(rng):
    worst = 0.0
    for family in states.PURE_FAMILIES:
        for _ in range(N_RANDOM // 10):
            params = _random_params(rng, family).with_gamma(0.0)
            red = reduction.trace_out_region_II(states.joint_density(family, params))
            worst = max(worst, np.linalg.eigvalsh(red.matrix)[-3])
    return worst <= 1e-10, f"largest third eigenvalue {worst:.3g}"


def _swap_p_m(rho):
    perm = [4 * a + 2 * m + p for a in (0, 1) for p in (0, 1) for m in (0, 1)]
    return rho[np.ix_(perm, perm)]


def check_swap_invariance(rng):
    worst = 0.0
    for family in states.FAMILIES:
        for _ in range(N_RANDOM // 10):
            red = reduction.trace_out_region_II(states.joint_density(family, _random_params(rng, family))).matrix
            worst = max(worst, abs(entanglement.negativity(red) - entanglement.negativity(_swap_p_m(red))))
    return worst <= 1e-12, f"max negativity change {worst:.3g}"


def check_negativity_bounds(rng):
    lo, hi = math.inf, -math.inf
    for family in states.FAMILIES:
        for _ in range(N_RANDOM // 4):
            red = reduction.trace_out_region_II(states.joint_density(family, _random_params(rng, family)))
            n = entanglement.negativity(red)
            lo, hi = min(lo, n), max(hi, n)
    return lo >= 0 and hi <= analysis.NEGATIVITY_MAX, f"range [{lo:.6g}, {hi:.6g}]"


def check_diagonal_separable(rng):
    worst = 0.0
    for _ in range(N_RANDOM // 4):
        d = rng.uniform(size=8)
        worst = max(worst, entanglement.negativity(np.diag(d / d.sum())))
    return worst == 0.0, f"max negativity of a diagonal state {worst:.3g}"


def check_spectrum_trace(rng):
    worst = 0.0
    for family in states.FAMILIES:
        for _ in range(N_RANDOM // 10):
            red = reduction.trace_out_region_II(states.joint_density(family, _random_params(rng, family)))
            spec = entanglement.eigenvalues_symmetric(entanglement.partial_transpose_alice(red))
            worst = max(worst, abs(sum(spec.eigenvalues) - 1))
    return worst <= 1e-10, f"max |sum(eigenvalues) - 1| {worst:.3g}"


def check_plus_minus_equivalence():
    grid = np.linspace(0, math.pi / 4, 201)
    worst = 0.0
    for alpha in np.linspace(0, math.pi / 2, 7):
        for q_r in np.linspace(0, 1, 5):
            p = StateParams(q_r=q_r, alpha=alpha)
            gap = analysis.negativities("phi_plus", p, grid) - analysis.negativities("phi_minus", p, grid)
            worst = max(worst, np.max(np.abs(gap)))
    return worst <= 1e-10, f"max |N+ - N-| {worst:.3g}"


def check_inertial_limit():
    worst = 0.0
    for family in states.PURE_FAMILIES:
        for alpha in np.linspace(0, math.pi / 2, 13):
            for q_r in np.linspace(1 / math.sqrt(2), 1, 5):
                n = analysis.negativities(family, StateParams(q_r=q_r, alpha=alpha), [0.0])[0]
                worst = max(worst, abs(n - inertial_negativity(family, alpha, q_r)))
    for fidelity in np.linspace(0, 1, 21):
        n = analysis.negativities("werner", StateParams(q_r=1.0, fidelity=fidelity), [0.0])[0]
        worst = max(worst, abs(n - max(0.0, (3 * fidelity - 1) / 4)))
    return worst <= 1e-10, f"max deviation from the two-qubit value {worst:.3g}"


_REFERENCE_CURVES = (
    ("phi_plus", StateParams(q_r=1 / math.sqrt(2), alpha=math.pi / 4)),
    ("werner", StateParams(q_r=1 / math.sqrt(2), fidelity=0.5)),
    ("werner_like", StateParams(q_r=1 / math.sqrt(2), fidelity=0.63)),
)


def check_refinement_consistency():
    worst = 0.0
    for family, params in _REFERENCE_CURVES:
        coarse = analysis.variation_points(analysis.negativity_curve(family, params, 1001))
        fine = analysis.variation_points(analysis.negativity_curve(family, params, 2001))
        if len(coarse) != len(fine):
            return False, f"{family}: {len(coarse)} vs {len(fine)} variation points"
        for a, b in zip(coarse, fine):
            worst = max(worst, abs(a.gamma_star - b.gamma_star))
    limit = 10 * analysis.DEFAULT_REFINE_TOL
    return worst <= limit, f"max gamma_star shift {worst:.3g}"


def check_extremum_property():
    failures = 0
    for family, params in _REFERENCE_CURVES:
        f = analysis.negativity_at(family, params)
        for v in analysis.variation_points(analysis.negativity_curve(family, params)):
            sides = (f(v.gamma_star - 1e-6), f(v.gamma_star + 1e-6))
            if v.kind == "local_min" and not all(s >= v.value for s in sides):
                failures += 1
            if v.kind == "local_max" and not all(s <= v.value for s in sides):
                failures += 1
    return failures == 0, f"{failures} points fail the +-1e-6 test"


def run_all() -> list[CheckResult]:
    rng = np.random.default_rng(SEED)
    suite = [
        ("fock_basis", "index_bijection", check_index_bijection),
        ("fock_basis", "outer_rank_one", lambda: check_outer_rank_one(rng)),
        ("fock_basis", "mix_preserves_trace", lambda: check_mix_preserves_trace(rng)),
        ("states", "unruh_orthonormal", check_unruh_orthonormal),
        ("states", "mixed_states_valid", lambda: check_mixed_states_valid(rng)),
        ("states", "single_mode_support", check_single_mode_support),
        ("reduction", "trace_preserves_state", lambda: check_trace_preserves_state(rng)),
        ("reduction", "trace_linear", lambda: check_trace_linear(rng)),
        ("reduction", "oracle_vs_closed_form", lambda: check_oracle_vs_closed_form(rng)),
        ("reduction", "inertial_rank", lambda: check_inertial_rank(rng)),
        ("entanglement", "swap_invariance", lambda: check_swap_invariance(rng)),
        ("entanglement", "negativity_bounds", lambda: check_negativity_bounds(rng)),
        ("entanglement", "diagonal_separable", lambda: check_diagonal_separable(rng)),
        ("entanglement", "spectrum_trace", lambda: check_spectrum_trace(rng)),
        ("analysis", "plus_minus_equivalence", check_plus_minus_equivalence),
        ("analysis", "inertial_limit", check_inertial_limit),
        ("analysis", "refinement_consistency", check_refinement_consistency),
        ("analysis", "extremum_property", check_extremum_property),
    ]
    results = []
    for module, name, fn in suite:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(module, name, bool(passed), detail))
    return results
