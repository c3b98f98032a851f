"""Convex-roof tangle: ensemble search on the unitary group plus CKW certificates.

Every decomposition of a rank-r state rho = sum_k mu_k |v_k><v_k| into m pure
states is reached by an m x r isometry U through the unnormalized members
``psi_j = sum_k U[j, k] sqrt(mu_k) |v_k>``.  The roof is searched by Riemannian
conjugate gradient on U, with updates ``U <- exp(-s H) U`` that keep U exactly
isometric.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .measures import _pure_tangle_value, wootters_concurrence
from .qstate import (
    DensityMatrix,
    PureState,
    QubitCut,
    as_cut,
    as_density,
    partial_trace,
)
from .states import Ensemble, random_isometry

log = logging.getLogger(__name__)

RANK_CUTOFF = 1e-10
WEIGHT_CUTOFF = 1e-12
ISOMETRY_TOL = 1e-9
SANDWICH_SLACK = 1e-9


@dataclass(frozen=True)
class RoofConfig:
    """Search settings; ``ensemble_size=None`` means min(r^2, r + 2) for rank r."""

    ensemble_size: int | None = None
    restarts: int = 32
    max_iterations: int = 500
    step_tolerance: float = 1e-10
    certificate_tolerance: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not (self.step_tolerance > 0 and self.certificate_tolerance > 0):
            raise ValueError("tolerances must be positive")

    def size_for_rank(self, r: int) -> int:
        m = min(r * r, r + 2) if self.ensemble_size is None else self.ensemble_size
        if m < r:
            raise ValueError(f"ensemble_size {m} is smaller than the state rank {r}")
        return m


@dataclass(frozen=True)
class RoofResult:
    upper: float
    witness: Ensemble
    restarts_run: int
    mixer: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class RoofBracket:
    lower: float
    upper: float
    witness: Ensemble | None
    certified: bool
    gap: float
    anomaly: bool = False  # upper fell below the lower bound by more than SANDWICH_SLACK

    @classmethod
    def build(cls, lower, upper, witness, tolerance) -> "RoofBracket":
        gap = upper - lower
        anomaly = gap < -SANDWICH_SLACK
        if anomaly:
            log.warning("roof upper bound %.17g is below the CKW lower bound %.17g", upper, lower)
        return cls(float(lower), float(upper), witness, bool(gap < tolerance), float(gap), anomaly)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


def spectral_ensemble(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues above the rank cutoff (descending) and their eigenvectors as columns."""
    mu, vecs = np.linalg.eigh(rho.matrix)
    keep = mu > RANK_CUTOFF
    mu, vecs = mu[keep][::-1], vecs[:, keep][:, ::-1]
    return mu, vecs


def ensemble_average_tangle(e: Ensemble, cut) -> float:
    cut = as_cut(cut)
    return float(sum(w * _pure_tangle_value(s, cut) for w, s in e.members))


def _members_from_mixer(mu, vecs, mixer):
    psi = mixer @ (vecs * np.sqrt(mu)).T  # row j is the unnormalized member j
    weights = np.einsum("ij,ij->i", psi.conj(), psi).real
    return psi, weights


def decomposition_from_mixer(rho: DensityMatrix | PureState, mixer) -> Ensemble:
    rho = as_density(rho)
    mu, vecs = spectral_ensemble(rho)
    mixer = np.atleast_2d(np.asarray(mixer, dtype=np.complex128))
    if mixer.shape[1] != mu.size:
        raise ValueError(f"mixer has {mixer.shape[1]} columns, state rank is {mu.size}")
    if np.abs(mixer.conj().T @ mixer - np.eye(mu.size)).max() > ISOMETRY_TOL:
        raise ValueError("mixer columns are not orthonormal")
    return _ensemble(mu, vecs, mixer)


def _ensemble(mu, vecs, mixer) -> Ensemble:
    psi, weights = _members_from_mixer(mu, vecs, mixer)
    keep = weights > WEIGHT_CUTOFF
    psi, weights = psi[keep], weights[keep]
    members = [(w / weights.sum(), PureState(v / np.sqrt(w))) for w, v in zip(weights, psi)]
    return Ensemble(members)


class _RoofObjective:
    """Average tangle across a cut as a function of the mixer U (m x r)."""

    def __init__(self, mu, vecs, a, b, n):
        r = mu.size
        cols = (vecs * np.sqrt(mu)).T.reshape((r,) + (2,) * n)
        cols = cols.transpose([0] + [1 + q for q in a] + [1 + q for q in b])
        self.m_blocks = np.ascontiguousarray(cols.reshape(r, 2 ** len(a), -1))
        self.da = 2 ** len(a)

    def _sigma(self, u):
        x = np.einsum("jk,kab->jab", u, self.m_blocks)
        return x, x @ x.conj().transpose(0, 2, 1)

    def value(self, u) -> float:
        _, sig = self._sigma(u)
        return self._terms(sig)[0].sum()

    def _terms(self, sig):
        t = np.einsum("jaa->j", sig).real
        safe = np.where(t > 1e-300, t, 1.0)
        if self.da == 2:
            det = (sig[:, 0, 0] * sig[:, 1, 1]).real - np.abs(sig[:, 0, 1]) ** 2
            f = np.where(t > 1e-300, 4.0 * det / safe, 0.0)
            return f, t, safe, det
        pur = np.einsum("jab,jab->j", sig, sig.conj()).real
        f = np.where(t > 1e-300, 2.0 * (t - pur / safe), 0.0)
        return f, t, safe, pur

    def value_and_grad(self, u):
        x, sig = self._sigma(u)
        f, t, safe, aux = self._terms(sig)
        if self.da == 2:
            adj = np.empty_like(sig)
            adj[:, 0, 0] = sig[:, 1, 1]
            adj[:, 1, 1] = sig[:, 0, 0]
            adj[:, 0, 1] = -sig[:, 0, 1]
            adj[:, 1, 0] = -sig[:, 1, 0]
            g = 4.0 * (adj / safe[:, None, None]
                       - (aux / safe**2)[:, None, None] * np.eye(2))
        else:
            g = 2.0 * ((1.0 + aux / safe**2)[:, None, None] * np.eye(self.da)
                       - 2.0 * sig / safe[:, None, None])
        g[t <= 1e-300] = 0.0
        gamma = np.einsum("kac,jac->jk", self.m_blocks.conj(), g @ x)
        return f.sum(), gamma


def _inner(x, y) -> float:
    return float(np.real(np.vdot(x, y)))


def _descend(obj: _RoofObjective, u: np.ndarray, cfg: RoofConfig) -> tuple[float, np.ndarray]:
    """Riemannian Polak-Ribiere CG from ``u`` until the per-step gain drops below tolerance."""
    f, gamma = obj.value_and_grad(u)
    grad = gamma @ u.conj().T - u @ gamma.conj().T
    direction = grad.copy()
    step = None
    quiet = 0
    for _ in range(cfg.max_iterations):
        gnorm2 = _inner(grad, grad)
        if gnorm2 < 1e-28:
            break
        slope = -_inner(grad, direction)
        if slope >= 0:
            direction, slope = grad.copy(), -gnorm2
        kappa, basis = np.linalg.eigh(1j * direction)
        coeffs = basis.conj().T @ u
        kmax = max(np.abs(kappa).max(), 1e-300)

        def trial(s):
            return basis @ (np.exp(1j * s * kappa)[:, None] * coeffs)

        s = min(step * 2.0 if step else 0.1 / kmax, np.pi / (2 * kmax))
        u_new = trial(s)
        f_new = obj.value(u_new)
        for _ in range(40):
            if f_new <= f + 1e-4 * s * slope:
                break
            # quadratic interpolation, kept inside [0.1 s, 0.5 s]
            denom = 2.0 * (f_new - f - slope * s)
            s_q = -slope * s * s / denom if denom > 0 else 0.5 * s
            s = min(max(s_q, 0.1 * s), 0.5 * s)
            u_new = trial(s)
            f_new = obj.value(u_new)
        else:
            break
        gain = f - f_new
        step = s
        u = u_new
        f_next, gamma = obj.value_and_grad(u)
        f = f_next
        new_grad = gamma @ u.conj().T - u @ gamma.conj().T
        beta = max(0.0, _inner(new_grad, new_grad - grad) / gnorm2)
        direction = new_grad + beta * direction
        grad = new_grad
        quiet = quiet + 1 if gain < cfg.step_tolerance else 0
        if quiet >= 3:
            break
    return f, u


def optimize_roof(rho: DensityMatrix | PureState, cut, cfg: RoofConfig | None = None,
                  target: float | None = None) -> RoofResult:
    """Lowest ensemble-average tangle found over seeded restarts.

    Restart i searches m_i = min(m, r + i) members, so early restarts favour small
    witnesses. When ``target`` (a proven lower bound) is given, restarts stop once
    the best value is within the certificate tolerance of it.
    """
    cfg = cfg or RoofConfig()
    cut = as_cut(cut)
    rho_dm = as_density(rho)
    a, b = cut.validate(rho_dm.n_qubits)
    mu, vecs = spectral_ensemble(rho_dm)
    r = mu.size
    m_max = cfg.size_for_rank(r)
    if r == 1:
        witness = _ensemble(mu, vecs, np.ones((1, 1), dtype=np.complex128))
        return RoofResult(ensemble_average_tangle(witness, cut), witness, 0, np.ones((1, 1)))
    obj = _RoofObjective(mu, vecs, a, b, rho_dm.n_qubits)
    best_f, best_u, runs = np.inf, None, 0
    for i in range(cfg.restarts):
        m = min(m_max, r + i)
        u0 = random_isometry(m, r, np.random.SeedSequence([cfg.seed, i]))
        f, u = _descend(obj, u0, cfg)
        runs += 1
        # gains below the step tolerance do not displace an earlier, smaller witness
        if f < best_f - cfg.step_tolerance or best_u is None:
            best_f, best_u = f, u
        if target is not None and best_f - target < cfg.certificate_tolerance:
            break
    witness = _ensemble(mu, vecs, best_u)
    return RoofResult(ensemble_average_tangle(witness, cut), witness, runs, best_u)


def ckw_lower_bound(rho: DensityMatrix | PureState, focus: int) -> float:
    """Sum over the other qubits j of the squared Wootters concurrence of rho_{focus, j}."""
    n = rho.n_qubits
    if n < 2:
        raise ValueError("CKW bound needs at least two qubits")
    if not 0 <= focus < n:
        raise ValueError(f"focus {focus} out of range for {n} qubits")
    total = 0.0
    for j in range(n):
        if j != focus:
            total += wootters_concurrence(partial_trace(rho, {focus, j})).value ** 2
    return total


def certified_tangle(rho: DensityMatrix | PureState, focus: int,
                     cfg: RoofConfig | None = None) -> RoofBracket:
    """Bracket the focus-vs-rest tangle between the CKW sum and a searched ensemble."""
    cfg = cfg or RoofConfig()
    rho_dm = as_density(rho)
    cut = QubitCut({focus})
    cut.validate(rho_dm.n_qubits)
    mu, vecs = spectral_ensemble(rho_dm)
    if mu.size == 1:
        witness = _ensemble(mu, vecs, np.ones((1, 1), dtype=np.complex128))
        value = ensemble_average_tangle(witness, cut)
        return RoofBracket.build(value, value, witness, cfg.certificate_tolerance)
    lower = ckw_lower_bound(rho_dm, focus)
    result = optimize_roof(rho_dm, cut, cfg, target=lower)
    return RoofBracket.build(lower, result.upper, result.witness, cfg.certificate_tolerance)


def effective_members(e: Ensemble, threshold: float = 1e-6) -> int:
    return int(np.sum(e.weights > threshold))


def with_seed(cfg: RoofConfig, seed: int) -> RoofConfig:
    return replace(cfg, seed=seed)
