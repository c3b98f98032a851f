"""State families: W-class states, the W/vacuum mixture and its reductions, random states."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .qstate import MAX_QUBITS, NORM_TOL, DensityMatrix, Partition, PureState

# Bit generator used for every seeded draw; changing it changes all reports.
RNG_NAME = "numpy.PCG64"


class DegenerateSpecError(ValueError):
    """The requested reduction has no weight on the single-excitation sector."""


def rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def _amps(values) -> np.ndarray:
    return np.atleast_1d(np.asarray(values, dtype=np.complex128)).reshape(-1)


def _excitation_index(n_qubits: int, k: int) -> int:
    return 1 << (n_qubits - 1 - k)


@dataclass(frozen=True)
class WClassSpec:
    """Amplitude ``a`` on the focus excitation and ``b[j]`` on excitation of qubit j+1."""

    a: complex
    b: np.ndarray

    def __post_init__(self):
        b = _amps(self.b)
        if b.size < 1:
            raise ValueError("W-class spec needs at least one b amplitude")
        a = complex(self.a)
        total = abs(a) ** 2 + float(np.sum(np.abs(b) ** 2))
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"W-class amplitudes are not normalized: sum |.|^2 = {total!r}")
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.b.size

    @property
    def n_qubits(self) -> int:
        return self.b.size + 1

    def b_norm2(self) -> float:
        return float(np.sum(np.abs(self.b) ** 2))


@dataclass(frozen=True)
class MixedFamilySpec:
    w: WClassSpec
    p: float

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"mixing probability p={p!r} outside [0, 1]")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class PartitionedWSpec:
    """Single-excitation state split into a focus qubit and named blocks."""

    a_tilde: complex
    blocks: tuple  # tuple of (name, amplitude vector)

    def __init__(self, a_tilde: complex, blocks: Sequence):
        norm_blocks = []
        for name, amps in blocks:
            v = _amps(amps)
            if v.size < 1:
                raise ValueError(f"block {name!r} has no qubits")
            v.flags.writeable = False
            norm_blocks.append((str(name), v))
        names = [nm for nm, _ in norm_blocks]
        if not names:
            raise ValueError("partitioned W spec needs at least one block")
        if len(set(names)) != len(names):
            raise ValueError(f"block names are not distinct: {names}")
        total = abs(complex(a_tilde)) ** 2 + sum(float(np.sum(np.abs(v) ** 2)) for _, v in norm_blocks)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"partitioned W amplitudes are not normalized: {total!r}")
        object.__setattr__(self, "a_tilde", complex(a_tilde))
        object.__setattr__(self, "blocks", tuple(norm_blocks))

    @property
    def n_qubits(self) -> int:
        return 1 + sum(v.size for _, v in self.blocks)

    def block(self, name: str) -> np.ndarray:
        for nm, v in self.blocks:
            if nm == name:
                return v
        raise KeyError(f"no block named {name!r}")

    def partition(self) -> Partition:
        start = 1
        out = []
        for nm, v in self.blocks:
            out.append((nm, tuple(range(start, start + v.size))))
            start += v.size
        return Partition(0, out)


@dataclass(frozen=True)
class Ensemble:
    """Weighted pure states; ``members`` is a tuple of (weight, PureState)."""

    members: tuple = field()

    def __init__(self, members):
        members = tuple((float(w), s) for w, s in members)
        if not members:
            raise ValueError("ensemble is empty")
        weights = np.array([w for w, _ in members])
        if np.any(weights <= 0):
            raise ValueError("ensemble weights must be positive")
        if abs(weights.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"ensemble weights sum to {weights.sum()!r}")
        n = {s.n_qubits for _, s in members}
        if len(n) != 1:
            raise ValueError(f"ensemble members disagree on qubit count: {sorted(n)}")
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.members])

    @property
    def n_qubits(self) -> int:
        return self.members[0][1].n_qubits

    def mixture(self) -> np.ndarray:
        return sum(w * s.projector() for w, s in self.members)


def w_class(spec: WClassSpec) -> PureState:
    n = spec.n_qubits
    psi = np.zeros(2**n, dtype=np.complex128)
    psi[_excitation_index(n, 0)] = spec.a
    for j, bj in enumerate(spec.b, start=1):
        psi[_excitation_index(n, j)] = bj
    return PureState(psi)


def vacuum(n_qubits: int) -> PureState:
    psi = np.zeros(2**n_qubits, dtype=np.complex128)
    psi[0] = 1.0
    return PureState(psi)


def ghz(n_qubits: int) -> PureState:
    psi = np.zeros(2**n_qubits, dtype=np.complex128)
    psi[0] = psi[-1] = np.sqrt(0.5)
    return PureState(psi)


def product_state(single_qubit_states: Sequence) -> PureState:
    psi = np.ones(1, dtype=np.complex128)
    for s in single_qubit_states:
        psi = np.kron(psi, np.asarray(s, dtype=np.complex128))
    return PureState.normalized(psi)


def mixed_family(spec: MixedFamilySpec) -> DensityMatrix:
    """p |W><W| + (1 - p) |0...0><0...0|."""
    w = w_class(spec.w)
    rho = spec.p * w.projector()
    rho[0, 0] += 1.0 - spec.p
    return DensityMatrix(rho)


def trial_ensemble(spec: MixedFamilySpec, r: float = 1.0) -> Ensemble:
    """Three-member decomposition sqrt(q)|W> + sqrt(1-q) w^k |0>, with r*q = p.

    ``r < 1`` adds the vacuum with weight 1 - r; ``r = 1`` is the optimal choice.
    """
    p = spec.p
    if not (0.0 < r <= 1.0) or p > r + 1e-15:
        raise ValueError(f"need p <= r <= 1, got p={p!r}, r={r!r}")
    q = min(p / r, 1.0)
    w = w_class(spec.w).amplitudes
    zero = vacuum(spec.w.n_qubits).amplitudes
    members = []
    for k in range(3):
        omega_k = np.exp(2j * np.pi * k / 3)
        members.append((r / 3, PureState.normalized(np.sqrt(q) * w + np.sqrt(1 - q) * omega_k * zero)))
    if r < 1.0:
        members.append((1.0 - r, vacuum(spec.w.n_qubits)))
    return Ensemble(members)


def w_partitioned(spec: PartitionedWSpec) -> tuple[PureState, Partition]:
    partition = spec.partition()
    b = np.concatenate([v for _, v in spec.blocks])
    return w_class(WClassSpec(spec.a_tilde, b)), partition


def reduced_block_analytic(spec: PartitionedWSpec, block: str) -> MixedFamilySpec:
    """Closed form of the reduced state on the focus qubit plus one block.

    Tracing out the other blocks leaves p |W'><W'| + (1 - p)|0...0><0...0| with
    p = |a~|^2 + sum |b~_j|^2 and W' the renormalized focus/block amplitudes.
    """
    v = spec.block(block)
    p = abs(spec.a_tilde) ** 2 + float(np.sum(np.abs(v) ** 2))
    if p <= 0.0:
        raise DegenerateSpecError(f"focus and block {block!r} carry no amplitude")
    s = np.sqrt(p)
    a, b = spec.a_tilde / s, v / s
    # renormalize to absorb rounding in p
    scale = np.sqrt(abs(a) ** 2 + np.sum(np.abs(b) ** 2))
    return MixedFamilySpec(WClassSpec(a / scale, b / scale), min(p, 1.0))


def _check_size(n: int):
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count {n} outside 1..{MAX_QUBITS}")


def _complex_normal(gen: np.random.Generator, shape) -> np.ndarray:
    return gen.standard_normal(shape) + 1j * gen.standard_normal(shape)


def random_pure(n: int, seed) -> PureState:
    _check_size(n)
    return PureState.normalized(_complex_normal(rng(seed), 2**n))


def random_mixed(n: int, rank: int, seed) -> DensityMatrix:
    """Induced-measure state G G^dagger / tr with G a d x rank Ginibre matrix."""
    _check_size(n)
    d = 2**n
    if not 1 <= rank <= d:
        raise ValueError(f"rank {rank} outside 1..{d}")
    g = _complex_normal(rng(seed), (d, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar unitary from the QR decomposition of a Ginibre matrix."""
    q, r = np.linalg.qr(_complex_normal(rng(seed), (d, d)))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_isometry(m: int, r: int, seed) -> np.ndarray:
    """First r columns of exp(K), K a random anti-Hermitian m x m matrix."""
    gen = rng(seed)
    x = _complex_normal(gen, (m, m))
    k = np.pi * (x - x.conj().T) / 2
    return expm(k)[:, :r]


def random_w_class(n: int, seed, real: bool = False) -> WClassSpec:
    gen = rng(seed)
    v = gen.standard_normal(n + 1) if real else _complex_normal(gen, n + 1)
    v = v / np.linalg.norm(v)
    return WClassSpec(v[0], v[1:])


def random_partitioned_w(block_sizes: Sequence[int], seed) -> PartitionedWSpec:
    gen = rng(seed)
    v = _complex_normal(gen, 1 + sum(block_sizes))
    v = v / np.linalg.norm(v)
    blocks, start = [], 1
    for i, size in enumerate(block_sizes):
        blocks.append(("BCDEFGHIJKLMNOPQRSTUVWXYZ"[i], v[start:start + size]))
        start += size
    return PartitionedWSpec(v[0], blocks)
