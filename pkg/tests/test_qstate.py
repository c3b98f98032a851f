import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst

from tanglekit.qstate import (
    DensityMatrix,
    Partition,
    PureState,
    QubitCut,
    eigh,
    partial_trace,
    partial_transpose,
    realign,
    trace_norm,
)
from tanglekit.states import random_mixed, random_pure, random_unitary, w_class, WClassSpec

from conftest import brute_partial_trace

BELL = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2))
seeds = hst.integers(0, 2**32 - 1)


def test_bell_marginal_is_maximally_mixed():
    np.testing.assert_allclose(partial_trace(BELL, [0]).matrix, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(partial_trace(BELL.density(), [1]).matrix, np.eye(2) / 2, atol=1e-15)


def test_five_qubit_w_focus_marginal():
    amp = 1 / np.sqrt(5)
    w5 = w_class(WClassSpec(amp, [amp] * 4))
    rho_a = partial_trace(w5.density(), [0]).matrix
    np.testing.assert_allclose(rho_a, np.diag([4 / 5, 1 / 5]), atol=1e-15)
    assert np.linalg.det(rho_a).real == pytest.approx(4 / 25, abs=1e-15)


@pytest.mark.parametrize("keep", [[0], [1], [2], [0, 2], [1, 2], [0, 1]])
def test_partial_trace_matches_index_loop(keep):
    psi = random_pure(3, 7)
    expected = brute_partial_trace(psi.projector(), 3, keep)
    np.testing.assert_allclose(partial_trace(psi.density(), keep).matrix, expected, atol=1e-14)
    np.testing.assert_allclose(partial_trace(psi, keep).matrix, expected, atol=1e-14)
    rho = random_mixed(3, 5, 11)
    np.testing.assert_allclose(partial_trace(rho, keep).matrix,
                               brute_partial_trace(rho.matrix, 3, keep), atol=1e-14)


def test_partial_trace_errors():
    rho = random_mixed(2, 2, 0)
    with pytest.raises(ValueError):
        partial_trace(rho, [])
    with pytest.raises(ValueError):
        partial_trace(rho, [2])
    with pytest.raises(ValueError):
        partial_trace(rho, [-1])


@settings(max_examples=40, deadline=None)
@given(seed=seeds, n=hst.integers(2, 5), data=hst.data())
def test_schmidt_symmetry(seed, n, data):
    psi = random_pure(n, seed)
    k = data.draw(hst.integers(1, n - 1))
    side_a = list(range(k))
    ra = partial_trace(psi, side_a)
    rb = partial_trace(psi, range(k, n))
    ea = np.sort(np.linalg.eigvalsh(ra.matrix))[::-1]
    eb = np.sort(np.linalg.eigvalsh(rb.matrix))[::-1]
    m = min(ea.size, eb.size)
    np.testing.assert_allclose(ea[:m], eb[:m], atol=1e-9)
    assert np.all(np.abs(ea[m:]) < 1e-9) and np.all(np.abs(eb[m:]) < 1e-9)
    assert np.trace(ra.matrix).real == pytest.approx(1, abs=1e-12)


def test_partial_transpose_product_state():
    ra, rb = random_mixed(1, 2, 1).matrix, random_mixed(1, 2, 2).matrix
    rho = DensityMatrix(np.kron(ra, rb))
    pt = partial_transpose(rho, [0])
    np.testing.assert_allclose(pt, np.kron(ra.T, rb), atol=1e-15)
    assert np.linalg.eigvalsh(pt).min() > -1e-12


def test_partial_transpose_bell_spectrum():
    ev = np.sort(np.linalg.eigvalsh(partial_transpose(BELL, [0])))
    np.testing.assert_allclose(ev, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_partial_transpose_involution_and_trace():
    rho = random_mixed(3, 4, 5)
    once = partial_transpose(rho, [0, 2])
    twice = partial_transpose(once, [0, 2])
    assert np.array_equal(twice, rho.matrix)
    assert np.allclose(once, once.conj().T, atol=1e-15)
    assert np.trace(once).real == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        partial_transpose(rho, [3])


def test_realign_index_map():
    rho = random_mixed(3, 8, 9)
    side_a = [1]
    r = realign(rho, QubitCut(side_a))
    assert r.shape == (4, 16)
    m = rho.matrix.reshape((2,) * 6)
    # rows/cols of rho indexed (a, b) with a = qubit 1, b = qubits (0, 2)
    for i in range(2):
        for j in range(2):
            for k in range(4):
                for l in range(4):
                    k0, k2 = divmod(k, 2)
                    l0, l2 = divmod(l, 2)
                    assert r[2 * i + j, 4 * k + l] == m[k0, i, k2, l0, j, l2]


def test_realign_product_and_bell():
    ra, rb = random_mixed(1, 2, 3).matrix, random_mixed(2, 3, 4).matrix
    r = realign(DensityMatrix(np.kron(ra, rb)), {0})
    assert np.linalg.matrix_rank(r, tol=1e-12) == 1
    expected = np.linalg.norm(ra) * np.linalg.norm(rb)
    assert trace_norm(r) == pytest.approx(expected, abs=1e-12)
    assert expected <= 1
    assert trace_norm(realign(BELL, {0})) == pytest.approx(2.0, abs=1e-14)


def test_realign_pure_state_schmidt_oracle():
    psi = random_pure(3, 21)
    # Schmidt coefficients from the SVD of the 2 x 4 amplitude matrix
    s = np.linalg.svd(psi.amplitudes.reshape(2, 4), compute_uv=False)
    assert trace_norm(realign(psi, {0})) == pytest.approx(s.sum() ** 2, abs=1e-12)


def test_trace_norm_examples():
    assert trace_norm(np.eye(4)) == pytest.approx(4.0)
    assert trace_norm(np.diag([0.5, 0.5, 0.5, -0.5])) == pytest.approx(2.0)
    g = np.random.default_rng(3)
    m = g.standard_normal((3, 5)) + 1j * g.standard_normal((3, 5))
    oracle = np.sqrt(np.clip(np.linalg.eigvalsh(m @ m.conj().T), 0, None)).sum()
    assert trace_norm(m) == pytest.approx(oracle, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_trace_norm_unitary_invariance(seed):
    g = np.random.default_rng(seed)
    m = g.standard_normal((4, 6)) + 1j * g.standard_normal((4, 6))
    u, v = random_unitary(4, g), random_unitary(6, g)
    assert abs(trace_norm(u @ m @ v) - trace_norm(m)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_realign_product_separability(seed):
    ra, rb = random_mixed(1, 1 + seed % 2, seed).matrix, random_mixed(2, 1 + seed % 4, seed + 1).matrix
    assert trace_norm(realign(DensityMatrix(np.kron(ra, rb)), {0})) <= 1 + 1e-12


def test_eigh_examples():
    w, _ = eigh(np.diag([0.3, 0.7]))
    np.testing.assert_allclose(w, [0.7, 0.3])
    w, _ = eigh(np.array([[0, 1], [1, 0]]))
    np.testing.assert_allclose(w, [1, -1], atol=1e-15)
    g = np.random.default_rng(1)
    x = g.standard_normal((6, 6)) + 1j * g.standard_normal((6, 6))
    h = x + x.conj().T
    w, v = eigh(h)
    assert np.all(np.diff(w) <= 0)
    assert np.linalg.norm(h - v @ np.diag(w) @ v.conj().T) < 1e-9
    assert np.abs(v.conj().T @ v - np.eye(6)).max() < 1e-9
    with pytest.raises(ValueError):
        eigh(x)


def test_state_validation():
    with pytest.raises(ValueError):
        PureState([1, 1])
    with pytest.raises(ValueError):
        PureState([1, 0, 0])
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.6, 0.6]))
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.1, -0.1]))
    rho = DensityMatrix(np.eye(4) / 4)
    assert rho.n_qubits == 2
    assert not rho.matrix.flags.writeable


def test_cut_and_partition_validation():
    with pytest.raises(ValueError):
        QubitCut([])
    with pytest.raises(ValueError):
        QubitCut([0, 1]).validate(2)
    with pytest.raises(ValueError):
        QubitCut([4]).validate(3)
    p = Partition.parse("0|1,2|3,4")
    assert p.focus == 0 and [qs for _, qs in p.blocks] == [(1, 2), (3, 4)]
    assert [nm for nm, _ in p.blocks] == ["B", "C"]
    assert str(p) == "0|1,2|3,4"
    for bad in ("0", "0|1|1", "0|0,1", "0|2", "x|1", "0|1,|2"):
        with pytest.raises(ValueError):
            Partition.parse(bad)
    with pytest.raises(ValueError):
        p.validate(4)
