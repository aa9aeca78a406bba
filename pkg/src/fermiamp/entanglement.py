"""Negativity of the Alice | Bob-region-I split."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .reduction import ReducedState

ZERO_TOL = 1e-10
RESIDUAL_TOL = 1e-10
TRACE_NORM_TOL = 1e-9
_SYMMETRY_TOL = 1e-12


class NumericalCheckError(ArithmeticError):
    """An internal consistency check on an eigendecomposition failed."""


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    residual: float


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, ReducedState):
        return rho.matrix
    return np.asarray(rho, dtype=float)


def partial_transpose_alice(rho) -> np.ndarray:
    """Transpose Alice's qubit; works on a single 8x8 matrix or a stack of them."""
    m = _as_matrix(rho)
    if m.shape[-2:] != (8, 8):
        raise ValueError(f"expected 8x8 matrices, got {m.shape}")
    lead = m.shape[:-2]
    t = m.reshape(lead + (2, 4, 2, 4))
    return np.swapaxes(t, -4, -2).reshape(lead + (8, 8))


def _eigh_checked(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    asym = np.max(np.abs(m - np.swapaxes(m, -1, -2))) if m.size else 0.0
    if asym > _SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    w, v = np.linalg.eigh(m)
    resid = np.linalg.norm(m @ v - v * w[..., None, :], axis=-2)
    return w, resid.max(axis=-1)


def eigenvalues_symmetric(m) -> Spectrum:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    w, resid = _eigh_checked(m)
    if resid > RESIDUAL_TOL:
        raise NumericalCheckError(f"eigen-residual {resid:.3g} above {RESIDUAL_TOL}")
    return Spectrum(tuple(float(x) for x in w), float(resid))


def negativity_stack(rhos: np.ndarray) -> np.ndarray:
    """Negativity of every 8x8 matrix in a ``(k, 8, 8)`` stack."""
    rhos = np.asarray(rhos, dtype=float)
    pt = partial_transpose_alice(rhos)
    w, resid = _eigh_checked(pt)
    if np.any(resid > RESIDUAL_TOL):
        raise NumericalCheckError(f"eigen-residual {resid.max():.3g} above {RESIDUAL_TOL}")
    neg = 0.0 - np.where(w < -ZERO_TOL, w, 0.0).sum(axis=-1)
    trace_norm = (np.abs(w).sum(axis=-1) - w.sum(axis=-1)) / 2
    if np.any(np.abs(neg - trace_norm) > TRACE_NORM_TOL):
        raise NumericalCheckError("negativity disagrees with the trace-norm identity")
    return neg


def negativity(rho: ReducedState | np.ndarray) -> float:
    m = _as_matrix(rho)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 reduced state, got {m.shape}")
    return float(negativity_stack(m[None])[0])
