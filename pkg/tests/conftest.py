import numpy as np
import pytest

from framelab import DualPair, canonical_dual, example_frame, harmonic_frame, random_dual_pair

ACCEPTANCE_LINES = []


def random_corpus(count, seed=0, max_n=6):
    """Random dual pairs with n in 2..max_n and N in n..2n."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(2, max_n + 1))
        N = int(rng.integers(n, 2 * n + 1))
        out.append(random_dual_pair(N, n, seed=1000 * seed + k))
    return out


def random_unitary(n, rng):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


@pytest.fixture
def example_pair():
    F = example_frame()
    return DualPair(F, canonical_dual(F))


@pytest.fixture
def harmonic32():
    H = harmonic_frame(3, 2)
    return DualPair(H, H)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
