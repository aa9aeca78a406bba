"""Unruh-mode kets and the joint Alice-Bob states built from them.

Mode kets are 16-dim vectors over ``|pqmn>``; joint states prepend Alice's
qubit. Amplitudes are real throughout. The private ``_*_rows`` helpers take an
array of gammas and return one row per gamma so that sweeps stay vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock_basis import DensityMatrix, PureState, outer

FAMILIES = ("phi_plus", "phi_minus", "phi_star", "werner", "werner_like")
PURE_FAMILIES = ("phi_plus", "phi_minus", "phi_star")
MIXED_FAMILIES = ("werner", "werner_like")

GAMMA_MAX = math.pi / 4
_RANGE_SLACK = 1e-9

# mode indices inside the 16-dim |pqmn> space
_I0000, _I0011, _I1100, _I1111 = 0b0000, 0b0011, 0b1100, 0b1111
_I1000, _I1011, _I1101, _I0001 = 0b1000, 0b1011, 0b1101, 0b0001
_I0100, _I0111, _I1110, _I0010 = 0b0100, 0b0111, 0b1110, 0b0010


def _check_range(name, value, lo, hi):
    if not (lo - _RANGE_SLACK <= value <= hi + _RANGE_SLACK) or math.isnan(value):
        raise ValueError(f"{name}={value!r} outside [{lo}, {hi}]")
    return min(max(float(value), lo), hi)


def q_left(q_r: float) -> float:
    """Non-negative left-mode weight paired with ``q_r``."""
    return math.sqrt(max(0.0, 1.0 - q_r * q_r))


@dataclass(frozen=True)
class StateParams:
    """Parameters of one state; ``alpha`` for pure families, ``fidelity`` for mixed ones."""

    gamma: float = 0.0
    q_r: float = 1.0
    alpha: float | None = None
    fidelity: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", _check_range("gamma", self.gamma, 0.0, GAMMA_MAX))
        object.__setattr__(self, "q_r", _check_range("q_r", self.q_r, 0.0, 1.0))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", _check_range("alpha", self.alpha, 0.0, math.pi / 2))
        if self.fidelity is not None:
            object.__setattr__(self, "fidelity", _check_range("fidelity", self.fidelity, 0.0, 1.0))

    @property
    def q_l(self) -> float:
        return q_left(self.q_r)

    def with_gamma(self, gamma: float) -> "StateParams":
        return StateParams(gamma=gamma, q_r=self.q_r, alpha=self.alpha, fidelity=self.fidelity)

    def require(self, family: str) -> float:
        """Return the family's mixing parameter, raising if it is missing."""
        if family in PURE_FAMILIES:
            if self.alpha is None:
                raise ValueError(f"{family} needs alpha")
            return self.alpha
        if family in MIXED_FAMILIES:
            if self.fidelity is None:
                raise ValueError(f"{family} needs fidelity")
            return self.fidelity
        raise ValueError(f"unknown state family {family!r}; expected one of {FAMILIES}")


def _gamma_array(gamma) -> np.ndarray:
    g = np.atleast_1d(np.asarray(gamma, dtype=float))
    if np.any(np.isnan(g)) or np.any(g < -_RANGE_SLACK) or np.any(g > GAMMA_MAX + _RANGE_SLACK):
        raise ValueError(f"gamma must lie in [0, pi/4], got {gamma!r}")
    return np.clip(g, 0.0, GAMMA_MAX)


def _vacuum_rows(g: np.ndarray) -> np.ndarray:
    c, s = np.cos(g), np.sin(g)
    out = np.zeros((g.size, 16))
    out[:, _I0000] = c * c
    out[:, _I0011] = -s * c
    out[:, _I1100] = s * c
    out[:, _I1111] = -s * s
    return out


def _one_particle_rows(sign: str, g: np.ndarray, q_r: float) -> np.ndarray:
    q_l = q_left(q_r)
    c, s = np.cos(g), np.sin(g)
    out = np.zeros((g.size, 16))
    if sign == "plus":
        out[:, _I1000] = q_r * c
        out[:, _I1011] = -q_r * s
        out[:, _I1101] = q_l * s
        out[:, _I0001] = q_l * c
    elif sign == "minus":
        out[:, _I0100] = q_l * c
        out[:, _I0111] = -q_l * s
        out[:, _I1110] = q_r * s
        out[:, _I0010] = q_r * c
    else:
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    return out


def _with_alice(bit: int, rows: np.ndarray) -> np.ndarray:
    out = np.zeros((rows.shape[0], 32))
    out[:, 16 * bit:16 * bit + 16] = rows
    return out


def unruh_vacuum(gamma: float) -> PureState:
    g = _gamma_array(_check_range("gamma", gamma, 0.0, GAMMA_MAX))
    return PureState(_vacuum_rows(g)[0])


def unruh_one_particle(sign: str, gamma: float, q_r: float) -> PureState:
    params = StateParams(gamma=gamma, q_r=q_r)
    return PureState(_one_particle_rows(sign, _gamma_array(params.gamma), params.q_r)[0])


def pure_rows(family: str, alpha: float, gammas, q_r: float) -> np.ndarray:
    """Joint 32-dim amplitudes of a pure family, one row per gamma."""
    g = _gamma_array(gammas)
    ca, sa = math.cos(alpha), math.sin(alpha)
    vac = _vacuum_rows(g)
    if family == "phi_plus":
        return ca * _with_alice(0, vac) + sa * _with_alice(1, _one_particle_rows("plus", g, q_r))
    if family == "phi_minus":
        return ca * _with_alice(0, vac) + sa * _with_alice(1, _one_particle_rows("minus", g, q_r))
    if family == "phi_star":
        return ca * _with_alice(0, _one_particle_rows("plus", g, q_r)) + sa * _with_alice(1, vac)
    raise ValueError(f"{family!r} is not a pure state family")


def _projectors(rows: np.ndarray) -> np.ndarray:
    return np.einsum("ki,kj->kij", rows, rows)


def density_stack(family: str, params: StateParams, gammas) -> np.ndarray:
    """Joint 32x32 density matrices of ``family`` for every gamma in ``gammas``.

    ``params.gamma`` is ignored; the stack has shape ``(len(gammas), 32, 32)``.
    """
    weight = params.require(family)
    q_r = params.q_r
    if family in PURE_FAMILIES:
        return _projectors(pure_rows(family, weight, gammas, q_r))
    g = _gamma_array(gammas)
    bell = _projectors(pure_rows("phi_plus", math.pi / 4, g, q_r))
    vac = _vacuum_rows(g)
    one = _one_particle_rows("plus", g, q_r)
    if family == "werner":
        # inertial identity lifted branch by branch into Unruh modes
        noise = sum(_projectors(_with_alice(a, v)) for a in (0, 1) for v in (vac, one)) / 4
    else:
        noise = (_projectors(_with_alice(0, one)) + _projectors(_with_alice(1, vac))) / 2
    return weight * bell + (1.0 - weight) * noise


def phi_plus(alpha: float, gamma: float, q_r: float) -> PureState:
    p = StateParams(gamma=gamma, q_r=q_r, alpha=alpha)
    return PureState(pure_rows("phi_plus", p.alpha, p.gamma, p.q_r)[0])


def phi_minus(alpha: float, gamma: float, q_r: float) -> PureState:
    p = StateParams(gamma=gamma, q_r=q_r, alpha=alpha)
    return PureState(pure_rows("phi_minus", p.alpha, p.gamma, p.q_r)[0])


def phi_star(alpha: float, gamma: float, q_r: float) -> PureState:
    p = StateParams(gamma=gamma, q_r=q_r, alpha=alpha)
    return PureState(pure_rows("phi_star", p.alpha, p.gamma, p.q_r)[0])


def werner(fidelity: float, gamma: float, q_r: float) -> DensityMatrix:
    """``F |Phi+(pi/4)><Phi+(pi/4)| + (1-F)/4 * I`` with Bob's half lifted to Unruh modes."""
    p = StateParams(gamma=gamma, q_r=q_r, fidelity=fidelity)
    return DensityMatrix(density_stack("werner", p, p.gamma)[0])


def werner_like(fidelity: float, gamma: float, q_r: float) -> DensityMatrix:
    """Bell state mixed with the two anti-correlated products ``|01>`` and ``|10>``."""
    p = StateParams(gamma=gamma, q_r=q_r, fidelity=fidelity)
    return DensityMatrix(density_stack("werner_like", p, p.gamma)[0])


def joint_density(family: str, params: StateParams) -> DensityMatrix:
    """Joint 32-dim density matrix of any family at ``params.gamma``."""
    if family in PURE_FAMILIES:
        builder = {"phi_plus": phi_plus, "phi_minus": phi_minus, "phi_star": phi_star}[family]
        return outer(builder(params.require(family), params.gamma, params.q_r))
    return DensityMatrix(density_stack(family, params, params.gamma)[0])
