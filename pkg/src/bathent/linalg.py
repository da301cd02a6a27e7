"""Dense complex linear algebra and two-qubit primitives.

Everything in here operates on plain ``numpy.ndarray`` values of dtype
``complex128``.  The two-qubit Hilbert space is ordered so that the basis
index of ``|i> (x) |j>`` is ``2*i + j``, i.e. the first subsystem varies
slowly; this matches ``kron(first, second)``.
"""

from __future__ import annotations

import numpy as np

# Absolute tolerances; every matrix in scope has norm O(1).
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-10

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

_PAULIS = (SIGMA1, SIGMA2, SIGMA3)
for _s in _PAULIS:
    _s.setflags(write=False)
IDENTITY2.setflags(write=False)


def pauli(i: int) -> np.ndarray:
    """Return the Pauli matrix ``sigma_i`` for ``i`` in 1..3."""
    if i not in (1, 2, 3):
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {i!r}")
    return _PAULIS[i - 1]


def kron(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor acting on subsystem 1.

    ``kron(A, B)[i*n + k, j*n + l] == A[i, j] * B[k, l]`` for ``B`` of size
    ``n``.
    """
    return np.kron(np.asarray(lhs, dtype=complex), np.asarray(rhs, dtype=complex))


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-entry distance of ``m`` from its own conjugate transpose."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def partial_transpose_second(rho: np.ndarray) -> np.ndarray:
    """Transpose the second tensor factor of a 4x4 matrix.

    The operation transposes each 2x2 block in the second-subsystem
    indices.  It is linear, trace-preserving, Hermiticity-preserving and an
    involution.

    Parameters
    ----------
    rho : ndarray
        4x4 complex matrix in the ``|i> (x) |j>`` basis described above.

    Returns
    -------
    ndarray
        The partially transposed 4x4 matrix.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def hermitian_eigenvalues(
    m: np.ndarray, *, check: bool = True, tol: float = TOL_HERM
) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Parameters
    ----------
    m : ndarray
        Square complex matrix, Hermitian within ``tol``.
    check : bool
        Validate Hermiticity before solving.  Disable only for inputs that
        are Hermitian by construction.
    tol : float
        Max-entry tolerance on ``m - m^dagger``.

    Returns
    -------
    ndarray
        Real eigenvalues sorted in ascending order.

    Raises
    ------
    ValueError
        If ``m`` is not square or not Hermitian within ``tol``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if check:
        defect = hermiticity_defect(m)
        if defect > tol:
            raise ValueError(
                f"matrix is not Hermitian within {tol:g} (defect {defect:.3e})"
            )
    return np.linalg.eigvalsh(m)


def is_psd(m: np.ndarray, tol: float = TOL_PSD) -> bool:
    """True iff the Hermitian matrix ``m`` has min eigenvalue >= -tol."""
    return bool(hermitian_eigenvalues(m)[0] >= -tol)


class DensityMatrix:
    """A validated 4x4 two-qubit density matrix.

    Construction checks Hermiticity, unit trace and positive
    semidefiniteness; evolution outputs are re-validated by the caller with
    a relaxed tolerance rather than silently corrected.
    """

    def __init__(
        self,
        matrix: np.ndarray,
        *,
        tol: float = TOL_HERM,
        require_psd: bool = True,
    ):
        m = np.array(matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        defect = hermiticity_defect(m)
        if defect > tol:
            raise ValueError(f"not Hermitian: defect {defect:.3e} > {tol:g}")
        trace_err = abs(m.trace() - 1.0)
        if trace_err > tol:
            raise ValueError(f"trace differs from 1 by {trace_err:.3e} > {tol:g}")
        if require_psd:
            lam_min = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
            if lam_min < -tol:
                raise ValueError(
                    f"not positive semidefinite: min eigenvalue {lam_min:.3e}"
                )
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def pure(cls, state: np.ndarray) -> "DensityMatrix":
        """Projector onto a normalized 4-component state vector."""
        v = np.asarray(state, dtype=complex).reshape(4)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state vector norm {norm} is not 1")
        return cls(np.outer(v, v.conj()))

    @classmethod
    def product_from_bloch(cls, r1, r2) -> "DensityMatrix":
        """Product state from two Bloch vectors (each of length <= 1)."""
        rho = kron(_bloch_to_qubit(r1), _bloch_to_qubit(r2))
        return cls(rho)

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix":
        return cls(np.eye(4, dtype=complex) / 4)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __array__(self, dtype=None, copy=None):
        if dtype is not None:
            return self.matrix.astype(dtype)
        return self.matrix

    def __repr__(self):
        return f"DensityMatrix(trace={self.matrix.trace().real:.6f}, purity={self.purity():.6f})"


def _bloch_to_qubit(r) -> np.ndarray:
    r = np.asarray(r, dtype=float).reshape(3)
    if np.linalg.norm(r) > 1 + 1e-10:
        raise ValueError(f"Bloch vector norm {np.linalg.norm(r)} exceeds 1")
    return 0.5 * (
        IDENTITY2 + r[0] * SIGMA1 + r[1] * SIGMA2 + r[2] * SIGMA3
    )


def as_density_matrix(rho, *, tol: float = TOL_HERM, require_psd: bool = True) -> DensityMatrix:
    """Coerce an array or DensityMatrix into a validated DensityMatrix."""
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(rho, tol=tol, require_psd=require_psd)
