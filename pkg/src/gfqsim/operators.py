"""Dense operator matrices with labeled tensor-product bases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OperatorMatrix:
    """Complex square matrix together with its basis labels."""

    matrix: np.ndarray
    basis: tuple

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator matrix must be square")
        if m.shape[0] != len(self.basis):
            raise ValueError("basis labels do not match matrix dimension")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, rtol: float = 1e-12) -> bool:
        m = self.matrix
        scale = np.linalg.norm(m)
        return np.linalg.norm(m - m.conj().T) <= rtol * max(scale, 1e-300)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def tensor(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    labels = tuple(f"{la}|{lb}" for la in a.basis for lb in b.basis)
    return OperatorMatrix(np.kron(a.matrix, b.matrix), labels)


def identity(labels) -> OperatorMatrix:
    return OperatorMatrix(np.eye(len(labels), dtype=complex), tuple(labels))


# qubit operators in the {|0>, |1>} ordering with sigma_z|1> = +|1>
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)   # |1><0|
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
QUBIT_LABELS = ("0", "1")


def annihilation(n_fock: int) -> np.ndarray:
    a = np.zeros((n_fock, n_fock), dtype=complex)
    for m in range(1, n_fock):
        a[m - 1, m] = np.sqrt(m)
    return a


def fock_labels(n_fock: int) -> tuple:
    return tuple(str(m) for m in range(n_fock))
