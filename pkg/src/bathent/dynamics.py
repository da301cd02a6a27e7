"""Markovian generator assembly and time evolution for two qubits.

The generator acts as ``d rho/dt = -i[H, rho] + L[rho]`` where the
dissipator ``L`` is parameterized by a 6x6 coefficient matrix over the six
fixed operators ``sigma_a (x) 1`` (a = 1..3) and ``1 (x) sigma_a``
(a = 4..6).  Complete positivity of the flow is equivalent to that
coefficient matrix being positive semidefinite.

Time evolution uses exact exponentiation of the 16x16 matrix form of the
generator under column-stacking vectorization, ``vec(X rho Y) =
(Y^T (x) X) vec(rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import expm

from .linalg import (
    IDENTITY2,
    TOL_HERM,
    TOL_PSD,
    DensityMatrix,
    as_density_matrix,
    hermiticity_defect,
    hermitian_eigenvalues,
    kron,
    pauli,
)

# The six Lindblad operators, in fixed order: first-qubit Paulis then
# second-qubit Paulis.  All are Hermitian and traceless.
LINDBLAD_OPS: tuple[np.ndarray, ...] = tuple(
    [kron(pauli(a), IDENTITY2) for a in (1, 2, 3)]
    + [kron(IDENTITY2, pauli(a)) for a in (1, 2, 3)]
)
for _f in LINDBLAD_OPS:
    _f.setflags(write=False)

# Signature of transposition on the Pauli basis: sigma_i^T = LAMBDA[i] sigma_i.
_LAMBDA = np.array([1.0, -1.0, 1.0])
# Sign matrix entering the partially transposed generator.
S3 = np.diag([-1.0, 1.0, -1.0])
S6 = np.diag([1.0, 1.0, 1.0, -1.0, 1.0, -1.0])
S3.setflags(write=False)
S6.setflags(write=False)


def _as_block(name: str, m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"{name} must be 3x3, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class KossakowskiMatrix:
    """Block coefficient matrix ``[[A, B], [B^dagger, C]]`` of the dissipator.

    ``A`` and ``C`` act on the first and second qubit alone; ``B`` encodes
    the bath-induced correlation between them.  The checked constructor
    gates complete positivity (assembled 6x6 PSD); use :meth:`unchecked`
    for deliberately non-CP coefficient matrices such as the partially
    transposed one.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    cp_checked: bool = field(default=True)

    def __post_init__(self):
        a = _as_block("A", self.A)
        b = _as_block("B", self.B)
        c = _as_block("C", self.C)
        for name, m in (("A", a), ("B", b), ("C", c)):
            m.setflags(write=False)
            object.__setattr__(self, name, m)
        for name, m in (("A", a), ("C", c)):
            defect = hermiticity_defect(m)
            if defect > TOL_HERM:
                raise ValueError(f"{name} is not Hermitian (defect {defect:.3e})")
        if self.cp_checked:
            lam_min = float(hermitian_eigenvalues(self.matrix, check=False)[0])
            if lam_min < -TOL_PSD:
                raise ValueError(
                    "coefficient matrix is not positive semidefinite "
                    f"(min eigenvalue {lam_min:.3e}); the generated dynamics "
                    "would not be completely positive"
                )

    @classmethod
    def unchecked(cls, A, B, C) -> "KossakowskiMatrix":
        """Assemble without the positivity gate (Hermiticity still required)."""
        return cls(A, B, C, cp_checked=False)

    @classmethod
    def zero(cls) -> "KossakowskiMatrix":
        z = np.zeros((3, 3), dtype=complex)
        return cls(z, z, z)

    @property
    def matrix(self) -> np.ndarray:
        """The assembled 6x6 coefficient matrix."""
        return np.block([[self.A, self.B], [self.B.conj().T, self.C]])

    def is_cp(self, tol: float = TOL_PSD) -> bool:
        return bool(hermitian_eigenvalues(self.matrix, check=False)[0] >= -tol)

    def min_eigenvalue(self) -> float:
        return float(hermitian_eigenvalues(self.matrix, check=False)[0])


def example_bath(a: float, b: float, *, check_cp: bool = True) -> KossakowskiMatrix:
    """The two-parameter bath family used throughout the command-line tools.

    ``A = C = [[1, -i a, 0], [i a, 1, 0], [0, 0, 0]]`` and
    ``B = diag(b, -b, 0)``.  The assembled coefficient matrix is positive
    semidefinite exactly on the disk ``a^2 + b^2 <= 1``.
    """
    blockAC = np.array([[1, -1j * a, 0], [1j * a, 1, 0], [0, 0, 0]], dtype=complex)
    blockB = np.diag([b, -b, 0.0]).astype(complex)
    return KossakowskiMatrix(blockAC, blockB, blockAC, cp_checked=check_cp)


@dataclass(frozen=True)
class HamiltonianSpec:
    """Real coefficients of the effective Hamiltonian.

    ``h1`` and ``h2`` are the single-qubit coefficient triples and ``h12``
    the 3x3 coefficient matrix of the two-qubit coupling
    ``sum_ij h12[i, j] sigma_i (x) sigma_j``.
    """

    h1: np.ndarray
    h2: np.ndarray
    h12: np.ndarray

    def __post_init__(self):
        h1 = np.asarray(self.h1, dtype=float).reshape(3)
        h2 = np.asarray(self.h2, dtype=float).reshape(3)
        h12 = np.asarray(self.h12, dtype=float).reshape(3, 3)
        for name, m in (("h1", h1), ("h2", h2), ("h12", h12)):
            if not np.all(np.isfinite(m)):
                raise ValueError(f"{name} contains non-finite entries")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @classmethod
    def zero(cls) -> "HamiltonianSpec":
        return cls(np.zeros(3), np.zeros(3), np.zeros((3, 3)))

    @classmethod
    def single_qubit(cls, h1=(0, 0, 0), h2=(0, 0, 0)) -> "HamiltonianSpec":
        return cls(np.asarray(h1, float), np.asarray(h2, float), np.zeros((3, 3)))


def build_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """Assemble the 4x4 Hermitian Hamiltonian from its Pauli coefficients."""
    h = np.zeros((4, 4), dtype=complex)
    for i in range(3):
        h += spec.h1[i] * LINDBLAD_OPS[i]
        h += spec.h2[i] * LINDBLAD_OPS[3 + i]
    for i in range(3):
        for j in range(3):
            if spec.h12[i, j] != 0.0:
                h += spec.h12[i, j] * kron(pauli(i + 1), pauli(j + 1))
    return h


def pauli_coefficients(h: np.ndarray, *, tol: float = TOL_HERM) -> HamiltonianSpec:
    """Project a 4x4 Hermitian matrix onto the two-qubit Pauli basis.

    The identity component is discarded (it never contributes to a
    commutator).  Raises if the recovered coefficients are not real within
    ``tol``.
    """
    h = np.asarray(h, dtype=complex)
    paulis = [IDENTITY2, pauli(1), pauli(2), pauli(3)]
    coeff = np.empty((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(4):
            coeff[mu, nu] = np.trace(kron(paulis[mu], paulis[nu]) @ h) / 4.0
    if np.max(np.abs(coeff.imag)) > tol:
        raise ValueError("matrix is not Hermitian: Pauli coefficients are complex")
    c = coeff.real
    return HamiltonianSpec(c[1:, 0], c[0, 1:], c[1:, 1:])


def dissipator(D: KossakowskiMatrix, rho: np.ndarray) -> np.ndarray:
    """Apply the dissipator with coefficient matrix ``D`` to ``rho``.

    Returns ``sum_ab D[a, b] (F_a rho F_b - {F_b F_a, rho} / 2)`` over the
    six fixed operators.  The output is Hermitian and traceless for
    Hermitian input.
    """
    return _apply_dissipator(D.matrix, np.asarray(rho, dtype=complex))


def _apply_dissipator(dmat: np.ndarray, rho: np.ndarray) -> np.ndarray:
    f = np.stack(LINDBLAD_OPS)
    sandwich = np.einsum("ab,aij,jk,bkl->il", dmat, f, rho, f, optimize=True)
    gram = np.einsum("ab,bij,ajk->ik", dmat, f, f, optimize=True)
    return sandwich - 0.5 * (gram @ rho + rho @ gram)


def dissipator_blockform(A, B, C, rho: np.ndarray) -> np.ndarray:
    """Dissipator evaluated from its block decomposition.

    Independent of :func:`dissipator`: the four sums over the blocks are
    spelled out term by term, for cross-validation.  ``A`` and ``C`` drive
    each qubit alone; the ``B`` terms are the only ones that correlate
    them.
    """
    A = _as_block("A", A)
    B = _as_block("B", B)
    C = _as_block("C", C)
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for i in range(3):
        si1 = kron(pauli(i + 1), IDENTITY2)
        one_si = kron(IDENTITY2, pauli(i + 1))
        for j in range(3):
            sj1 = kron(pauli(j + 1), IDENTITY2)
            one_sj = kron(IDENTITY2, pauli(j + 1))
            sisj = kron(pauli(i + 1), pauli(j + 1))
            out += A[i, j] * (
                si1 @ rho @ sj1 - 0.5 * (sj1 @ si1 @ rho + rho @ sj1 @ si1)
            )
            out += C[i, j] * (
                one_si @ rho @ one_sj
                - 0.5 * (one_sj @ one_si @ rho + rho @ one_sj @ one_si)
            )
            out += B[i, j] * (si1 @ rho @ one_sj - 0.5 * (sisj @ rho + rho @ sisj))
            out += B[i, j].conjugate() * (
                one_sj @ rho @ si1 - 0.5 * (sisj @ rho + rho @ sisj)
            )
    return out


def _generator_matrix(h: np.ndarray, dmat: np.ndarray) -> np.ndarray:
    """16x16 matrix of ``rho -> -i[h, rho] + L[rho]`` (column stacking)."""
    eye4 = np.eye(4, dtype=complex)
    m = -1j * (np.kron(eye4, h) - np.kron(h.T, eye4))
    for a in range(6):
        fa = LINDBLAD_OPS[a]
        for b in range(6):
            coeff = dmat[a, b]
            if coeff == 0.0:
                continue
            fb = LINDBLAD_OPS[b]
            fbfa = fb @ fa
            m += coeff * (
                np.kron(fb.T, fa)
                - 0.5 * np.kron(eye4, fbfa)
                - 0.5 * np.kron(fbfa.T, eye4)
            )
    return m


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization of a 4x4 matrix."""
    return np.asarray(rho, dtype=complex).reshape(16, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(4, 4, order="F")


@dataclass(eq=False)
class LindbladGenerator:
    """Immutable bundle of Hamiltonian and dissipative data.

    Attributes
    ----------
    hamiltonian : ndarray
        The assembled 4x4 Hermitian Hamiltonian.
    kossakowski : KossakowskiMatrix
        Coefficient matrix of the dissipator.
    hamiltonian_spec : HamiltonianSpec
        Pauli coefficients of ``hamiltonian``; recovered by projection when
        the generator is built from a raw matrix.
    """

    hamiltonian: np.ndarray
    kossakowski: KossakowskiMatrix
    hamiltonian_spec: HamiltonianSpec = None

    def __post_init__(self):
        h = np.asarray(self.hamiltonian, dtype=complex)
        if h.shape != (4, 4):
            raise ValueError(f"Hamiltonian must be 4x4, got {h.shape}")
        defect = hermiticity_defect(h)
        if defect > TOL_HERM:
            raise ValueError(f"Hamiltonian is not Hermitian (defect {defect:.3e})")
        h.setflags(write=False)
        self.hamiltonian = h
        if self.hamiltonian_spec is None:
            self.hamiltonian_spec = pauli_coefficients(h)

    @classmethod
    def from_spec(
        cls, spec: HamiltonianSpec, kossakowski: KossakowskiMatrix
    ) -> "LindbladGenerator":
        return cls(build_hamiltonian(spec), kossakowski, spec)

    @property
    def lindblad_ops(self) -> tuple[np.ndarray, ...]:
        return LINDBLAD_OPS

    @cached_property
    def superoperator_matrix(self) -> np.ndarray:
        return _generator_matrix(self.hamiltonian, self.kossakowski.matrix)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """One application of the generator, ``-i[H, rho] + L[rho]``."""
        rho = np.asarray(rho, dtype=complex)
        h = self.hamiltonian
        return -1j * (h @ rho - rho @ h) + dissipator(self.kossakowski, rho)


def superoperator(gen: LindbladGenerator) -> np.ndarray:
    """The 16x16 matrix ``M`` with ``vec(d rho/dt) = M vec(rho)``."""
    return gen.superoperator_matrix


def propagator(gen: LindbladGenerator, t: float) -> np.ndarray:
    """``exp(t M)`` as a 16x16 matrix, by scaling-and-squaring."""
    if t < 0:
        raise ValueError(f"evolution time must be nonnegative, got {t}")
    return expm(t * gen.superoperator_matrix)


def evolve(gen: LindbladGenerator, rho0, t: float) -> DensityMatrix:
    """Evolve a density matrix for time ``t >= 0``.

    The result is re-Hermitized as ``(rho + rho^dagger) / 2`` and validated
    with a tolerance ten times looser than the construction gates.
    Positivity is only enforced when the generator's coefficient matrix
    passed the complete-positivity gate; otherwise negative eigenvalues are
    meaningful output.
    """
    rho0 = as_density_matrix(rho0)
    out = unvec(propagator(gen, t) @ vec(rho0.matrix))
    out = (out + out.conj().T) / 2
    return DensityMatrix(
        out, tol=10 * TOL_HERM, require_psd=gen.kossakowski.cp_checked
    )


def choi_from_propagator(prop: np.ndarray) -> np.ndarray:
    """Choi matrix of the map whose 16x16 matrix form is ``prop``."""
    choi = np.zeros((16, 16), dtype=complex)
    for i in range(4):
        for j in range(4):
            unit = np.zeros((4, 4), dtype=complex)
            unit[i, j] = 1.0
            choi += np.kron(unit, unvec(prop @ vec(unit)))
    return choi


def choi_matrix(gen: LindbladGenerator, t: float) -> np.ndarray:
    """Choi matrix of the map ``rho -> rho(t)``, PSD iff the map is CP."""
    return choi_from_propagator(propagator(gen, t))


def pt_kossakowski(
    A, B, C, h12: np.ndarray | None = None
) -> KossakowskiMatrix:
    """Coefficient matrix driving the partially transposed state.

    Returns ``[[A, Re(B) + i h12], [Re(B)^T - i h12^T, C^T]]`` where
    ``h12`` is the two-qubit Hamiltonian coefficient matrix.  Hermitian by
    construction but in general not positive semidefinite; when it is PSD
    the partially transposed state evolves completely positively and no
    entanglement can ever be created.
    """
    A = _as_block("A", A)
    B = _as_block("B", B)
    C = _as_block("C", C)
    if h12 is None:
        h12 = np.zeros((3, 3))
    h12 = np.asarray(h12, dtype=float).reshape(3, 3)
    upper = B.real + 1j * h12
    return KossakowskiMatrix.unchecked(A, upper, C.T)


@dataclass(frozen=True)
class PTGenerator:
    """Generator of the partially transposed master equation.

    ``h_tilde`` is the effective Hamiltonian (the imaginary part of the
    bath correlation block moves into it), ``d_tilde`` the transformed
    coefficient matrix and ``s_conjugated`` its conjugation by
    ``diag(1_3, S)`` with ``S = diag(-1, 1, -1)``, which is the matrix that
    actually multiplies the Lindblad operators.  ``s_conjugated`` and
    ``d_tilde`` share their spectrum.
    """

    h_tilde: np.ndarray
    d_tilde: KossakowskiMatrix
    s_conjugated: np.ndarray

    @property
    def S(self) -> np.ndarray:
        return S3


def build_pt_generator(gen: LindbladGenerator) -> PTGenerator:
    """Transform a generator into the one driving the partially transposed state.

    Under transposition of the second factor the single-qubit Hamiltonian
    terms pick up the sign matrix ``S``, the two-qubit Hamiltonian coupling
    moves into the dissipative block, and the imaginary part of the
    correlation block ``B`` becomes a two-qubit Hamiltonian coupling.
    """
    spec = gen.hamiltonian_spec
    D = gen.kossakowski
    h12_tilde = np.imag(D.B @ S3)
    h_tilde_spec = HamiltonianSpec(spec.h1, S3 @ spec.h2, h12_tilde)
    h_tilde = build_hamiltonian(h_tilde_spec)
    d_tilde = pt_kossakowski(D.A, D.B, D.C, spec.h12)
    s_conjugated = S6 @ d_tilde.matrix @ S6
    return PTGenerator(h_tilde, d_tilde, s_conjugated)


def pt_propagator(ptgen: PTGenerator, t: float) -> np.ndarray:
    """16x16 matrix form of the partially transposed flow at time ``t``."""
    if t < 0:
        raise ValueError(f"evolution time must be nonnegative, got {t}")
    m = _generator_matrix(ptgen.h_tilde, ptgen.s_conjugated)
    return expm(t * m)


def evolve_pt(ptgen: PTGenerator, rho_tilde0: np.ndarray, t: float) -> np.ndarray:
    """Evolve a partially transposed state for time ``t >= 0``.

    The flow is trace- and Hermiticity-preserving but in general not
    positive; negative eigenvalues of the output signal entanglement of the
    un-transposed state.  Output is re-Hermitized, never projected back to
    the positive cone.
    """
    rho_tilde0 = np.asarray(rho_tilde0, dtype=complex)
    out = unvec(pt_propagator(ptgen, t) @ vec(rho_tilde0))
    return (out + out.conj().T) / 2
