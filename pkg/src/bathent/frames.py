"""Product-state frames, probe vectors and their derived data.

An initial product state is encoded by a pair of single-qubit unitaries
``(U, V)`` rotating the computational basis: the state is
``U|0><0|U^dagger (x) V|0><0|V^dagger``.  Each unitary induces a real
rotation on the Pauli basis, ``U^dagger sigma_i U = sum_j calU[i, j]
sigma_j``, and the entanglement-creation criteria depend on the frame only
through these rotations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DensityMatrix, kron, pauli

# Matrix element vector <0| sigma_i |1> in the computational basis; the
# 6-component version appends its conjugate.
W3 = np.array([1.0, -1.0j, 0.0])
W6 = np.concatenate([W3, W3.conj()])
W3.setflags(write=False)
W6.setflags(write=False)


def su2_zrot(theta: float) -> np.ndarray:
    """exp(-i theta sigma_3 / 2)."""
    return np.array(
        [[np.exp(-0.5j * theta), 0.0], [0.0, np.exp(0.5j * theta)]], dtype=complex
    )


def su2_yrot(theta: float) -> np.ndarray:
    """exp(-i theta sigma_2 / 2)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def su2_from_zyz(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """SU(2) element whose induced Pauli rotation is Rz(alpha) Ry(beta) Rz(gamma)."""
    return su2_zrot(alpha) @ su2_yrot(beta) @ su2_zrot(gamma)


def rotation_zrot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_yrot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rotation_from_zyz(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return rotation_zrot(alpha) @ rotation_yrot(beta) @ rotation_zrot(gamma)


def rotation_from_unitary(u: np.ndarray, *, tol: float = 1e-10) -> np.ndarray:
    """Pauli-basis rotation induced by a 2x2 unitary.

    Returns the real orthogonal matrix ``R`` with ``u^dagger sigma_i u =
    sum_j R[i, j] sigma_j``; ``det(R) = +1`` for every unitary ``u``.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > tol:
        raise ValueError("matrix is not unitary")
    r = np.empty((3, 3), dtype=complex)
    for i in range(3):
        rotated = u.conj().T @ pauli(i + 1) @ u
        for j in range(3):
            r[i, j] = np.trace(rotated @ pauli(j + 1)) / 2.0
    if np.max(np.abs(r.imag)) > tol:
        raise ValueError("induced rotation has complex entries")
    return r.real


@dataclass(frozen=True)
class ProbeVector:
    """Amplitudes of the probe state in the product basis of a frame.

    The probe enters the creation test through the expectation value of the
    partially transposed state; for a valid test at time zero the amplitude
    on the initial product state must vanish (``psi11 = 0``) and both
    ``psi12`` and ``psi21`` must be nonzero, since otherwise the probe is a
    product vector and sees no entanglement.
    """

    psi11: complex
    psi12: complex
    psi21: complex
    psi22: complex = 0.0

    def __post_init__(self):
        norm2 = sum(abs(p) ** 2 for p in self.amplitudes)
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"probe is not normalized: |psi|^2 = {norm2!r}")

    @classmethod
    def creation(cls, psi12: complex, psi21: complex, psi22: complex = 0.0):
        """A probe admissible for a creation test (``psi11 = 0``)."""
        if psi12 == 0 or psi21 == 0:
            raise ValueError(
                "creation probes need both psi12 and psi21 nonzero; a probe "
                "with either zero is a product vector and detects nothing"
            )
        return cls(0.0, psi12, psi21, psi22)

    @classmethod
    def bell(cls) -> "ProbeVector":
        """The symmetric probe ``(|01> + |10>) / sqrt(2)``."""
        s = 1.0 / np.sqrt(2.0)
        return cls.creation(s, s)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.psi11, self.psi12, self.psi21, self.psi22], dtype=complex)


@dataclass(frozen=True)
class InitialStateFrame:
    """Pair of single-qubit rotations fixing the initial product basis.

    ``u2`` and ``v2`` are the 2x2 unitaries; ``cal_u`` and ``cal_v`` the
    induced 3x3 rotations (validated against them on construction).
    """

    u2: np.ndarray
    v2: np.ndarray
    cal_u: np.ndarray = field(default=None)
    cal_v: np.ndarray = field(default=None)

    def __post_init__(self):
        u2 = np.asarray(self.u2, dtype=complex)
        v2 = np.asarray(self.v2, dtype=complex)
        cal_u = rotation_from_unitary(u2) if self.cal_u is None else np.asarray(self.cal_u, float)
        cal_v = rotation_from_unitary(v2) if self.cal_v is None else np.asarray(self.cal_v, float)
        for name, u, r in (("u", u2, cal_u), ("v", v2, cal_v)):
            if np.max(np.abs(r @ r.T - np.eye(3))) > 1e-10:
                raise ValueError(f"cal_{name} is not orthogonal")
            if abs(np.linalg.det(r) - 1.0) > 1e-10:
                raise ValueError(f"cal_{name} must have determinant +1")
            expected = rotation_from_unitary(u)
            if np.max(np.abs(expected - r)) > 1e-10:
                raise ValueError(f"cal_{name} is inconsistent with the 2x2 unitary")
        for name, m in (("u2", u2), ("v2", v2), ("cal_u", cal_u), ("cal_v", cal_v)):
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @classmethod
    def identity(cls) -> "InitialStateFrame":
        eye = np.eye(2, dtype=complex)
        return cls(eye, eye)

    @classmethod
    def from_unitaries(cls, u: np.ndarray, v: np.ndarray) -> "InitialStateFrame":
        return cls(u, v)

    @classmethod
    def from_angles(cls, zyz_u, zyz_v) -> "InitialStateFrame":
        """Build from two Z-Y-Z angle triples ``(alpha, beta, gamma)``."""
        return cls(su2_from_zyz(*zyz_u), su2_from_zyz(*zyz_v))

    @property
    def u_vector(self) -> np.ndarray:
        """``cal_u @ w`` with ``w = (1, -i, 0)``; decomposes as ``m - i n``
        with ``m``, ``n`` orthonormal real 3-vectors."""
        return self.cal_u @ W3

    @property
    def v_vector(self) -> np.ndarray:
        """``cal_v @ conj(w)``."""
        return self.cal_v @ W3.conj()

    def initial_state(self) -> DensityMatrix:
        """The product state ``U|0><0|U^dagger (x) V|0><0|V^dagger``."""
        vec = kron(self.u2, self.v2)[:, 0]
        return DensityMatrix.pure(vec)

    def probe_state_vector(self, probe: ProbeVector) -> np.ndarray:
        """Computational-basis 4-vector of the probe for this frame.

        The probe addresses the partially transposed state.  Transposition
        acts in the fixed computational basis, which conjugates the
        second-factor amplitudes; the second rotation therefore enters as
        ``conj(V)``.  With this encoding the time-zero expectation value
        vanishes identically whenever ``psi11 = 0``.
        """
        return kron(self.u2, self.v2.conj()) @ probe.amplitudes


@dataclass(frozen=True)
class CreationTest:
    """A frame with the derived vectors entering the creation criteria.

    ``u = cal_u @ w`` and ``v = cal_v @ conj(w)`` carry all the initial
    state dependence of the criteria; ``w6`` is the constant
    ``(1, -i, 0, 1, i, 0)``.
    """

    frame: InitialStateFrame
    probe: ProbeVector | None = None

    @property
    def w6(self) -> np.ndarray:
        return W6

    @property
    def u(self) -> np.ndarray:
        return self.frame.u_vector

    @property
    def v(self) -> np.ndarray:
        return self.frame.v_vector


def canonical_state() -> DensityMatrix:
    """Both qubits in the +1 eigenstate of ``sigma_3``."""
    return InitialStateFrame.identity().initial_state()


def canonical_probe_vector() -> np.ndarray:
    """The probe ``(|01> + |10>)/sqrt(2)`` in the computational basis."""
    return InitialStateFrame.identity().probe_state_vector(ProbeVector.bell())
