"""Dense n-qubit states and the linear algebra they need.

Qubit 0 is the leftmost tensor factor: the basis label ``|q_0 q_1 ... q_{n-1}>``
maps to the integer ``sum(q_k * 2**(n-1-k))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# Centralized numerical tolerances.
HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-10
PSD_FLOOR = -1e-9
RECONSTRUCTION_TOL = 1e-9
MAX_QUBITS = 12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


def _n_qubits_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over ``n_qubits`` qubits."""

    amplitudes: np.ndarray
    n_qubits: int = field(init=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        n = _n_qubits_for(amps.size)
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm2!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))
        object.__setattr__(self, "n_qubits", n)

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector())


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on ``n_qubits`` qubits."""

    matrix: np.ndarray
    n_qubits: int = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        n = _n_qubits_for(m.shape[0])
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        # symmetrize away sub-tolerance asymmetry before the spectral check
        m = 0.5 * (m + m.conj().T)
        lam_min = np.linalg.eigvalsh(m)[0]
        if lam_min < PSD_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {lam_min!r} < {PSD_FLOOR}")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "n_qubits", n)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def as_density(state: PureState | DensityMatrix) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return state.density()
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def _check_qubits(qubits: Iterable[int], n: int, what: str) -> tuple[int, ...]:
    qs = tuple(sorted({int(q) for q in qubits}))
    for q in qs:
        if not 0 <= q < n:
            raise ValueError(f"{what}: qubit index {q} out of range for {n} qubits")
    return qs


@dataclass(frozen=True)
class QubitCut:
    """Bipartition of the qubits; ``side_a`` is explicit, side B is its complement."""

    side_a: frozenset

    def __init__(self, side_a: Iterable[int] | int):
        if isinstance(side_a, (int, np.integer)):
            side_a = (int(side_a),)
        qs = frozenset(int(q) for q in side_a)
        if not qs:
            raise ValueError("cut side A must be nonempty")
        if min(qs) < 0:
            raise ValueError("cut contains a negative qubit index")
        object.__setattr__(self, "side_a", qs)

    def validate(self, n_qubits: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Return sorted (side_a, side_b) for an ``n_qubits`` system."""
        a = _check_qubits(self.side_a, n_qubits, "cut")
        if len(a) >= n_qubits:
            raise ValueError("cut side A must be a proper subset of the qubits")
        b = tuple(q for q in range(n_qubits) if q not in self.side_a)
        return a, b

    def __str__(self):
        return "{" + ",".join(str(q) for q in sorted(self.side_a)) + "}"


def as_cut(cut) -> QubitCut:
    return cut if isinstance(cut, QubitCut) else QubitCut(cut)


@dataclass(frozen=True)
class Partition:
    """A focus qubit plus named, disjoint blocks covering all other qubits."""

    focus: int
    blocks: tuple  # tuple of (name, tuple of qubit indices)

    def __init__(self, focus: int, blocks: Sequence):
        norm_blocks = []
        for item in blocks:
            if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
                name, qubits = item
            else:
                name, qubits = None, item
            norm_blocks.append([name, tuple(sorted(int(q) for q in qubits))])
        for i, nb in enumerate(norm_blocks):
            if nb[0] is None:
                nb[0] = _default_block_name(i)
        object.__setattr__(self, "focus", int(focus))
        object.__setattr__(self, "blocks", tuple((nm, qs) for nm, qs in norm_blocks))
        self._check()

    def _check(self):
        names = [nm for nm, _ in self.blocks]
        if len(set(names)) != len(names):
            raise ValueError(f"block names are not distinct: {names}")
        if not self.blocks:
            raise ValueError("partition needs at least one block")
        seen = {self.focus}
        for nm, qs in self.blocks:
            if not qs:
                raise ValueError(f"block {nm} is empty")
            overlap = seen.intersection(qs)
            if overlap or len(set(qs)) != len(qs):
                raise ValueError(f"block {nm} overlaps other blocks or the focus: {sorted(overlap)}")
            seen.update(qs)
        expected = set(range(len(seen)))
        if seen != expected:
            raise ValueError(f"partition does not cover qubits 0..{len(seen) - 1} exactly")

    @property
    def n_qubits(self) -> int:
        return 1 + sum(len(qs) for _, qs in self.blocks)

    def validate(self, n_qubits: int) -> None:
        if self.n_qubits != n_qubits:
            raise ValueError(
                f"partition covers {self.n_qubits} qubits but the state has {n_qubits}"
            )

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"0|1,2|3,4"``: focus first, then ``|``-separated blocks."""
        parts = [p.strip() for p in text.strip().split("|")]
        if len(parts) < 2:
            raise ValueError(f"partition {text!r} needs a focus and at least one block")
        try:
            focus = int(parts[0])
            blocks = [tuple(int(q) for q in p.split(",")) for p in parts[1:]]
        except ValueError as exc:
            raise ValueError(f"malformed partition {text!r}") from exc
        return cls(focus, blocks)

    def __str__(self):
        return "|".join([str(self.focus)] + [",".join(map(str, qs)) for _, qs in self.blocks])


def _default_block_name(i: int) -> str:
    letters = "BCDEFGHIJKLMNOPQRSTUVWXYZ"
    return letters[i] if i < len(letters) else f"X{i}"


def _permute_to_front(tensor: np.ndarray, n: int, front: Sequence[int], back: Sequence[int]):
    """Move axes of a (2,)*2n operator tensor so rows/cols read (front, back)."""
    order = list(front) + list(back)
    return tensor.transpose(order + [n + q for q in order])


def partial_trace(state: PureState | DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on ``keep``; kept qubits stay in ascending order."""
    if isinstance(state, PureState):
        n = state.n_qubits
        kept = _check_qubits(keep, n, "partial_trace")
        if not kept:
            raise ValueError("partial_trace: keep set is empty")
        traced = [q for q in range(n) if q not in kept]
        psi = state.amplitudes.reshape((2,) * n).transpose(list(kept) + traced)
        psi = psi.reshape(2 ** len(kept), -1)
        return DensityMatrix(psi @ psi.conj().T)
    rho = as_density(state)
    n = rho.n_qubits
    kept = _check_qubits(keep, n, "partial_trace")
    if not kept:
        raise ValueError("partial_trace: keep set is empty")
    traced = [q for q in range(n) if q not in kept]
    dk, dt = 2 ** len(kept), 2 ** len(traced)
    t = _permute_to_front(rho.matrix.reshape((2,) * (2 * n)), n, kept, traced)
    t = t.reshape(dk, dt, dk, dt)
    return DensityMatrix(np.einsum("iaja->ij", t))


def partial_transpose(state: PureState | DensityMatrix | np.ndarray, on: Iterable[int]) -> np.ndarray:
    """Transpose the tensor factors listed in ``on``; returns a plain matrix.

    Also accepts a bare square array, so the operation can be applied twice.
    """
    if isinstance(state, np.ndarray):
        mat = state
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"partial_transpose needs a square matrix, got {mat.shape}")
        n = _n_qubits_for(mat.shape[0])
    else:
        mat = as_density(state).matrix
        n = _n_qubits_for(mat.shape[0])
    qs = _check_qubits(on, n, "partial_transpose")
    axes = list(range(2 * n))
    for q in qs:
        axes[q], axes[n + q] = n + q, q
    t = mat.reshape((2,) * (2 * n)).transpose(axes)
    return np.ascontiguousarray(t.reshape(mat.shape))


def realign(state: PureState | DensityMatrix, cut) -> np.ndarray:
    """Realigned matrix R[(i,j),(k,l)] = rho[(i,k),(j,l)], shape (d_a**2, d_b**2)."""
    rho = as_density(state)
    n = rho.n_qubits
    a, b = as_cut(cut).validate(n)
    da, db = 2 ** len(a), 2 ** len(b)
    t = _permute_to_front(rho.matrix.reshape((2,) * (2 * n)), n, a, b)
    t = t.reshape(da, db, da, db).transpose(0, 2, 1, 3)
    return np.ascontiguousarray(t.reshape(da * da, db * db))


def trace_norm(m) -> float:
    m = np.asarray(m)
    return float(np.linalg.svd(m, compute_uv=False).sum())


def eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order with matching orthonormal eigenvectors."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"eigh needs a square matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
        raise ValueError("eigh: matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w[::-1].copy(), v[:, ::-1].copy()
