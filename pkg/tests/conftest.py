import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2.0


def random_unitary(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(m)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_prob_vector(rng, n):
    v = rng.dirichlet(np.ones(n))
    return np.sort(v)[::-1]


def random_strict_triple(rng, min_gap=1e-6):
    while True:
        v = random_prob_vector(rng, 3)
        if v[0] - v[1] > min_gap and v[1] - v[2] > min_gap:
            return v
