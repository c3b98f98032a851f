"""Closed-form entanglement measures."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import (
    DensityMatrix,
    PureState,
    QubitCut,
    as_cut,
    as_density,
    partial_transpose,
    realign,
    trace_norm,
)
from .states import MixedFamilySpec

KINDS = ("concurrence", "tangle", "negativity", "realignment")

_SIGMA_YY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])


@dataclass(frozen=True)
class MeasureValue:
    kind: str
    value: float
    cut: QubitCut

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if not self.value >= 0:
            raise ValueError(f"{self.kind} must be nonnegative, got {self.value!r}")

    def __float__(self):
        return float(self.value)


def reduced_side_a(state: PureState, cut) -> np.ndarray:
    """rho_A of a pure state as a plain matrix, computed from the amplitude tensor."""
    a, b = as_cut(cut).validate(state.n_qubits)
    psi = state.amplitudes.reshape((2,) * state.n_qubits).transpose(list(a) + list(b))
    psi = psi.reshape(2 ** len(a), -1)
    return psi @ psi.conj().T


def _pure_tangle_value(state: PureState, cut) -> float:
    rho_a = reduced_side_a(state, cut)
    if rho_a.shape[0] == 2:
        det = (rho_a[0, 0] * rho_a[1, 1]).real - abs(rho_a[0, 1]) ** 2
        return float(min(max(4.0 * det, 0.0), 1.0))
    # generalized concurrence squared, 2 (1 - tr rho_A^2)
    purity = float(np.real(np.vdot(rho_a, rho_a)))
    return max(2.0 * (1.0 - purity), 0.0)


def pure_concurrence(state: PureState, cut) -> MeasureValue:
    """2 sqrt(det rho_A) for a one-qubit side A, sqrt(2(1 - tr rho_A^2)) otherwise."""
    cut = as_cut(cut)
    return MeasureValue("concurrence", float(np.sqrt(_pure_tangle_value(state, cut))), cut)


def pure_tangle(state: PureState, cut) -> MeasureValue:
    cut = as_cut(cut)
    return MeasureValue("tangle", _pure_tangle_value(state, cut), cut)


def spin_flip_singular_values(rho) -> np.ndarray:
    """Descending lambda_i: square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).

    Taken as singular values of V^T (sy x sy) V with rho = V V^dagger, which avoids
    the square root of roundoff-level eigenvalues of the non-Hermitian product.
    """
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    mu, vecs = np.linalg.eigh(m)
    v = vecs * np.sqrt(np.clip(mu, 0.0, None))
    lam = np.linalg.svd(v.T @ _SIGMA_YY @ v, compute_uv=False)
    out = np.zeros(4)
    out[: lam.size] = np.sort(lam)[::-1][:4]
    return out


def wootters_concurrence(rho: DensityMatrix | PureState) -> MeasureValue:
    rho = as_density(rho)
    if rho.n_qubits != 2:
        raise ValueError(f"Wootters concurrence needs 2 qubits, got {rho.n_qubits}")
    lam = spin_flip_singular_values(rho)
    c = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    return MeasureValue("concurrence", float(min(c, 1.0)), QubitCut({0}))


def negativity(rho: DensityMatrix | PureState, cut) -> MeasureValue:
    """||rho^{T_A}||_1 - 1 (no factor 1/2), clamped at zero."""
    cut = as_cut(cut)
    rho = as_density(rho)
    a, _ = cut.validate(rho.n_qubits)
    pt = partial_transpose(rho, a)
    value = np.abs(np.linalg.eigvalsh(pt)).sum() - 1.0
    return MeasureValue("negativity", float(max(value, 0.0)), cut)


def realignment_measure(rho: DensityMatrix | PureState, cut) -> MeasureValue:
    cut = as_cut(cut)
    value = trace_norm(realign(as_density(rho), cut)) - 1.0
    return MeasureValue("realignment", float(max(value, 0.0)), cut)


def mixed_family_tangle(spec: MixedFamilySpec) -> MeasureValue:
    """Tangle of p|W><W| + (1-p)|0><0| across the focus cut: 4 p^2 |a|^2 sum |b_j|^2."""
    value = 4.0 * spec.p**2 * abs(spec.w.a) ** 2 * spec.w.b_norm2()
    return MeasureValue("tangle", float(value), QubitCut({0}))


def measure(state, cut, kind: str) -> MeasureValue:
    """Dispatch by name; concurrence/tangle of a mixed input are defined only for two qubits."""
    cut = as_cut(cut)
    if kind == "negativity":
        return negativity(state, cut)
    if kind == "realignment":
        return realignment_measure(state, cut)
    if kind not in ("concurrence", "tangle"):
        raise ValueError(f"unknown measure kind {kind!r}")
    if isinstance(state, PureState):
        return pure_concurrence(state, cut) if kind == "concurrence" else pure_tangle(state, cut)
    rho = as_density(state)
    if rho.n_qubits != 2:
        raise ValueError(f"closed-form {kind} of a mixed state needs 2 qubits; use the convex roof")
    cut.validate(2)
    c = wootters_concurrence(rho).value
    return MeasureValue(kind, c if kind == "concurrence" else c * c, cut)
