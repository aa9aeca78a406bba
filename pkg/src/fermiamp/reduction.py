"""Alice + Bob-region-I reduced states.

Two independent routes produce the same 8x8 matrix over ``|a p m>`` (index
``4a + 2p + m``):

* :func:`trace_out_region_II` reorders the joint state into physical fermionic
  order (region-I modes before region-II modes) and traces out ``q`` and ``n``.
* :func:`closed_form_reduced` writes the entries down term by term.

Moving the region-II antiparticle ``q`` past the region-I antiparticle ``m``
costs a factor ``(-1)**(q*m)``; without it the |011><110| coherence of the
pure families comes out with the wrong sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fock_basis import DensityMatrix
from .states import StateParams

REDUCED_BASIS = ("000", "001", "010", "011", "100", "101", "110", "111")
CLOSED_FORM_KINDS = ("phi_plus", "phi_star", "werner", "werner_like")


def _physical_order_signs() -> np.ndarray:
    signs = np.ones(32)
    for idx in range(32):
        q, m = (idx >> 2) & 1, (idx >> 1) & 1
        if q and m:
            signs[idx] = -1.0
    return signs


PHYSICAL_ORDER_SIGNS = _physical_order_signs()


@dataclass(frozen=True, eq=False)
class ReducedState:
    rho: DensityMatrix
    provenance: str
    corrections: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.rho.dim != 8:
            raise ValueError(f"reduced states are 8x8, got {self.rho.dim}")
        if self.provenance not in ("oracle", "closed_form"):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def matrix(self) -> np.ndarray:
        return self.rho.entries


def trace_stack(rho32: np.ndarray) -> np.ndarray:
    """Partial trace over region II for a ``(..., 32, 32)`` stack."""
    rho32 = np.asarray(rho32, dtype=float)
    lead = rho32.shape[:-2]
    signed = rho32 * np.multiply.outer(PHYSICAL_ORDER_SIGNS, PHYSICAL_ORDER_SIGNS)
    t = signed.reshape(lead + (2,) * 10)
    # bra/ket bits: a p q m n | b r q s n
    reduced = np.einsum("...apqmnbrqsn->...apmbrs", t)
    return reduced.reshape(lead + (8, 8))


def trace_out_region_II(rho32: DensityMatrix) -> ReducedState:
    if not isinstance(rho32, DensityMatrix):
        rho32 = DensityMatrix(rho32)
    if rho32.dim != 32:
        raise ValueError(f"expected a 32x32 joint state, got {rho32.dim}x{rho32.dim}")
    reduced = trace_stack(rho32.entries)
    return ReducedState(DensityMatrix(0.5 * (reduced + reduced.T)), "oracle")


def _sym(entries: dict[tuple[str, str], float]) -> np.ndarray:
    rho = np.zeros((8, 8))
    for (bra, ket), value in entries.items():
        i, j = int(bra, 2), int(ket, 2)
        rho[i, j] += value
        if i != j:
            rho[j, i] += value
    return rho


def _phi_plus(al, g, qr, ql, corrected):
    ca, sa, s2a = math.cos(al), math.sin(al), math.sin(2 * al)
    c, s, c2g, s2g = math.cos(g), math.sin(g), math.cos(2 * g), math.sin(2 * g)
    q110 = qr if corrected else ql
    return _sym({
        ("000", "000"): ca**2 * c**4,
        ("000", "110"): qr / 2 * s2a * c**3,
        ("100", "100"): ql**2 * sa**2 * c**2,
        ("110", "110"): 0.5 * (1 - (1 - 2 * q110**2) * c2g) * sa**2,
        ("001", "100"): -ql / 2 * s2a * c**2 * s,
        ("100", "111"): -qr * ql / 2 * sa**2 * s2g,
        ("001", "001"): 0.25 * ca**2 * s2g**2,
        ("010", "010"): 0.25 * ca**2 * s2g**2,
        ("001", "111"): qr / 2 * s2a * c * s**2,
        ("111", "111"): qr**2 * sa**2 * s**2,
        ("011", "110"): ql / 2 * s2a * s**3,
        ("011", "011"): ca**2 * s**4,
    })


def _phi_star(al, g, qr, ql, corrected):
    ca, sa, s2a = math.cos(al), math.sin(al), math.sin(2 * al)
    c, s, c2g, s2g = math.cos(g), math.sin(g), math.cos(2 * g), math.sin(2 * g)
    q010 = qr if corrected else ql
    w011 = ca**2 if corrected else sa**2
    return _sym({
        ("000", "000"): ql**2 * ca**2 * c**2,
        ("010", "010"): 0.5 * (1 - (1 - 2 * q010**2) * c2g) * ca**2,
        ("010", "100"): qr / 2 * c**3 * s2a,
        ("100", "100"): c**4 * sa**2,
        ("000", "011"): -qr * ql / 2 * w011 * s2g,
        ("000", "101"): -ql / 2 * s2a * c**2 * s,
        ("011", "011"): qr**2 * ca**2 * s**2,
        ("011", "101"): qr / 2 * s2a * c * s**2,
        ("101", "101"): 0.25 * sa**2 * s2g**2,
        ("110", "110"): 0.25 * sa**2 * s2g**2,
        ("010", "111"): ql / 2 * s**3 * s2a,
        ("111", "111"): sa**2 * s**4,
    })


def _werner(F, g, qr, ql):
    c, s, c2g, s2g = math.cos(g), math.sin(g), math.cos(2 * g), math.sin(2 * g)
    d = 1 - 2 * qr**2
    return _sym({
        ("000", "110"): 0.5 * F * qr * c**3,
        ("100", "100"): c**2 / 8 * (3 - 2 * qr**2 + F * d + (1 - F) * c2g),
        ("000", "000"): c**2 / 8 * (3 - 2 * qr**2 - F * d + (1 + F) * c2g),
        ("001", "100"): -F * ql / 2 * c**2 * s,
        ("001", "111"): F * qr / 2 * c * s**2,
        ("011", "110"): F * ql / 2 * s**3,
        ("111", "111"): 0.25 * s**2 * ((1 + F) * qr**2 + (1 - F) * s**2),
        ("011", "011"): 0.25 * s**2 * ((1 - F) * qr**2 + (1 + F) * s**2),
        ("000", "011"): -(1 - F) * ql * qr * s2g / 8,
        ("100", "111"): -(1 + F) * ql * qr * s2g / 8,
        ("101", "101"): (1 - F) * s2g**2 / 16,
        ("001", "001"): (1 + F) * s2g**2 / 16,
        ("110", "110"): (2 * (1 + F) - 2 * (1 + F) * d * c2g + (1 - F) * s2g**2) / 16,
        ("010", "010"): (2 * (1 - F) - 2 * (1 - F) * d * c2g + (1 + F) * s2g**2) / 16,
    })


def _werner_like(F, g, qr, ql):
    c, s, c2g, s2g = math.cos(g), math.sin(g), math.cos(2 * g), math.sin(2 * g)
    return _sym({
        ("000", "110"): 0.5 * F * qr * c**3,
        ("100", "100"): 0.5 * c**2 * (F * ql**2 + (1 - F) * c**2),
        ("000", "000"): 0.5 * c**2 * ((1 - F) * ql**2 + F * c**2),
        ("110", "110"): (1 + 3 * F - 4 * F * (1 - 2 * qr**2) * c2g - (1 - F) * math.cos(4 * g)) / 16,
        ("001", "100"): -0.5 * F * ql * c**2 * s,
        ("001", "111"): 0.5 * F * qr * c * s**2,
        ("011", "110"): 0.5 * F * ql * s**3,
        ("011", "011"): 0.5 * s**2 * ((1 - F) * qr**2 + F * s**2),
        ("111", "111"): 0.5 * (F * qr**2 * s**2 + (1 - F) * s**4),
        ("000", "011"): -0.25 * (1 - F) * qr * ql * s2g,
        ("100", "111"): -0.25 * F * qr * ql * s2g,
        ("101", "101"): (1 - F) * s2g**2 / 8,
        ("001", "001"): F * s2g**2 / 8,
        ("010", "010"): (2 * (1 - F) * (1 - (1 - 2 * qr**2) * c2g) + F * s2g**2) / 8,
    })


CORRECTIONS = {
    "phi_plus": (
        "|110><110|: weight 1/2(1-(1-2 q_R^2) cos 2gamma) sin^2 alpha (printed with q_L)",
    ),
    "phi_star": (
        "|010><010|: weight 1/2(1-(1-2 q_R^2) cos 2gamma) cos^2 alpha (printed with q_L)",
        "|000><011|: weight -q_R q_L/2 cos^2 alpha sin 2gamma (printed with sin^2 alpha)",
    ),
    "werner": (),
    "werner_like": (),
}


def _closed_form(kind: str, params: StateParams, corrected: bool) -> np.ndarray:
    if kind not in CLOSED_FORM_KINDS:
        raise ValueError(f"no closed form for {kind!r}; expected one of {CLOSED_FORM_KINDS}")
    weight = params.require(kind)
    g, qr, ql = params.gamma, params.q_r, params.q_l
    if kind == "phi_plus":
        return _phi_plus(weight, g, qr, ql, corrected)
    if kind == "phi_star":
        return _phi_star(weight, g, qr, ql, corrected)
    if kind == "werner":
        return _werner(weight, g, qr, ql)
    return _werner_like(weight, g, qr, ql)


def closed_form_reduced(kind: str, params: StateParams) -> ReducedState:
    """Term-by-term reduced matrix for one of the four tabulated families.

    Entries that differ from the published tables are listed in
    ``result.corrections``.
    """
    rho = _closed_form(kind, params, corrected=True)
    return ReducedState(DensityMatrix(rho), "closed_form", CORRECTIONS[kind])


def printed_reduced(kind: str, params: StateParams) -> np.ndarray:
    """The tabulated matrix exactly as published, misprints included.

    Not guaranteed to have unit trace, hence a bare array.
    """
    return _closed_form(kind, params, corrected=False)


def compare_reduced(a: ReducedState | np.ndarray, b: ReducedState | np.ndarray) -> float:
    """Largest absolute entrywise difference."""
    ma = a.matrix if isinstance(a, ReducedState) else np.asarray(a)
    mb = b.matrix if isinstance(b, ReducedState) else np.asarray(b)
    if ma.shape != mb.shape:
        raise ValueError(f"shape mismatch: {ma.shape} vs {mb.shape}")
    return float(np.max(np.abs(ma - mb)))


def format_matrix(state: ReducedState) -> str:
    lines = [
        "# basis |apm>: " + " ".join(REDUCED_BASIS),
        f"# provenance: {state.provenance}",
    ]
    for note in state.corrections:
        lines.append(f"# corrected: {note}")
    for row in state.matrix:
        lines.append(" ".join(f"{x:.15g}" for x in row))
    return "\n".join(lines) + "\n"
