"""Occupation-number basis and small dense state containers.

Joint labels are five bits ``(a, p, q, m, n)``: Alice's inertial qubit followed
by Bob's four Rindler modes in the order region-I particle, region-II
antiparticle, region-I antiparticle, region-II particle. The first bit is the
most significant one, so ``|1,1000>`` sits at index 24.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

NORM_TOL = 1e-12
INPUT_NORM_TOL = 1e-9
SYMMETRY_TOL = 1e-14
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class BasisLabel(NamedTuple):
    """Five occupation bits; ``a`` may be omitted (``None``) for mode-only labels."""

    a: int | None
    p: int
    q: int
    m: int
    n: int


def index_of(label: BasisLabel) -> int:
    bits = tuple(label) if label.a is not None else tuple(label)[1:]
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"occupation bits must be 0 or 1, got {label}")
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    return idx


def label_of(index: int, joint: bool = True) -> BasisLabel:
    """Inverse of :func:`index_of`; ``joint=False`` decodes a 16-dim mode index."""
    size = 32 if joint else 16
    if not 0 <= index < size:
        raise ValueError(f"index {index} outside 0..{size - 1}")
    p, q, m, n = (index >> 3) & 1, (index >> 2) & 1, (index >> 1) & 1, index & 1
    a = (index >> 4) & 1 if joint else None
    return BasisLabel(a, p, q, m, n)


def ket(*bits: int) -> np.ndarray:
    """Basis vector for a bit string, e.g. ``ket(1, 1, 0, 0, 0)`` is ``|1,1000>``."""
    vec = np.zeros(2 ** len(bits))
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    vec[idx] = 1.0
    return vec


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 1 or amps.size not in (16, 32):
            raise ValueError(f"pure states live in 16 or 32 dims, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __getitem__(self, label: BasisLabel) -> float:
        return float(self.amplitudes[index_of(label)])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Real symmetric unit-trace matrix of dimension 8 or 32.

    Positivity is checked unless ``check_psd=False``; partial transposes are
    not density matrices and should not be stored here.
    """

    entries: np.ndarray
    check_psd: bool = True

    def __post_init__(self):
        rho = _frozen(self.entries)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (8, 32):
            raise ValueError(f"expected an 8x8 or 32x32 matrix, got shape {rho.shape}")
        asym = np.max(np.abs(rho - rho.T))
        if asym > SYMMETRY_TOL:
            raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
        tr = np.trace(rho)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, expected 1")
        if self.check_psd:
            lam_min = np.linalg.eigvalsh(rho)[0]
            if lam_min < -PSD_TOL:
                raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {lam_min:.3g})")
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def outer(psi: PureState | np.ndarray) -> DensityMatrix:
    vec = psi.amplitudes if isinstance(psi, PureState) else np.asarray(psi, dtype=float)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > INPUT_NORM_TOL:
        raise ValueError(f"cannot form a projector from an unnormalized vector (norm={norm!r})")
    rho = np.outer(vec, vec)
    # exact symmetry; np.outer already is, this guards against future changes
    rho = 0.5 * (rho + rho.T)
    return DensityMatrix(rho)


def mix(terms: Iterable[tuple[float, DensityMatrix]]) -> DensityMatrix:
    """Convex combination of density matrices of equal dimension."""
    terms = list(terms)
    if not terms:
        raise ValueError("mix() needs at least one term")
    weights = np.array([w for w, _ in terms], dtype=float)
    if np.any(weights < 0):
        raise ValueError("mixture weights must be non-negative")
    if abs(weights.sum() - 1.0) > TRACE_TOL:
        raise ValueError(f"mixture weights sum to {weights.sum()!r}, expected 1")
    dims = {rho.dim for _, rho in terms}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch in mixture: {sorted(dims)}")
    total = np.zeros_like(terms[0][1].entries)
    for w, rho in terms:
        total = total + w * rho.entries
    return DensityMatrix(total)
