import itertools

import numpy as np
import pytest

ACCEPTANCE_LINES = []


def brute_partial_trace(rho: np.ndarray, n: int, keep) -> np.ndarray:
    """O(4^n) index loop over basis labels; independent of any reshaping tricks."""
    keep = sorted(keep)
    traced = [q for q in range(n) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def index(bits):
        return sum(b << (n - 1 - q) for q, b in enumerate(bits))

    for ki in itertools.product((0, 1), repeat=len(keep)):
        for kj in itertools.product((0, 1), repeat=len(keep)):
            total = 0j
            for t in itertools.product((0, 1), repeat=len(traced)):
                bi, bj = [0] * n, [0] * n
                for q, v in zip(keep, ki):
                    bi[q] = v
                for q, v in zip(keep, kj):
                    bj[q] = v
                for q, v in zip(traced, t):
                    bi[q] = bj[q] = v
                total += rho[index(bi), index(bj)]
            r = sum(v << (len(keep) - 1 - i) for i, v in enumerate(ki))
            c = sum(v << (len(keep) - 1 - i) for i, v in enumerate(kj))
            out[r, c] = total
    return out


def textbook_wootters(rho: np.ndarray) -> float:
    """sqrt of eigenvalues of rho (sy sy) rho* (sy sy), largest minus the rest."""
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    ev = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0, None)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def local_unitary(n: int, gen: np.random.Generator) -> np.ndarray:
    from tanglekit.states import random_unitary

    u = np.ones((1, 1))
    for _ in range(n):
        u = np.kron(u, random_unitary(2, gen))
    return u


@pytest.fixture
def gen():
    return np.random.default_rng(20261018)


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
