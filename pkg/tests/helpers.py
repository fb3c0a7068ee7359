import numpy as np

from qcoeff.protocols import outcome
from qcoeff.state_algebra import from_matrix

SQRT_HALF = 1 / np.sqrt(2)
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0 + 0j, -1.0])


def random_matrix(rng, m, n):
    return rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))


def random_state(rng, d1, d2):
    return from_matrix(random_matrix(rng, d1, d2), normalize=True)


def random_outcome(rng, d1, d2):
    return outcome(random_matrix(rng, d1, d2), normalize=True)


def random_unitary(rng, d):
    q, r = np.linalg.qr(random_matrix(rng, d, d))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def naive_matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            for k in range(a.shape[1]):
                out[i, j] += a[i, k] * b[k, j]
    return out


def projector(columns):
    return columns @ columns.conj().T
