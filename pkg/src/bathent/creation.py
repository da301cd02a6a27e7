"""Entanglement detection and creation criteria.

A two-qubit state is entangled iff its partial transpose has a negative
eigenvalue (the criterion is two-sided at this dimension).  Whether a given
generator can ever entangle an initial product state is decided here in
three consistent ways:

* numerically, as the initial slope of the probe expectation value
  ``E(t) = <psi| pt(rho(t)) |psi>``;
* as a quadratic form of the transformed coefficient matrix over the frame
  vectors ``u``, ``v`` and the probe amplitudes;
* probe-independently, through the inequality
  ``<u|A|u> <v|C^T|v> < |<u|Re(B)|v>|^2`` and its equivalent 2x2
  eigenvalue problem, which also produces the optimal probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dynamics import KossakowskiMatrix, LindbladGenerator, pt_kossakowski
from .frames import (
    W3,
    InitialStateFrame,
    ProbeVector,
    rotation_from_zyz,
)
from .linalg import (
    TOL_PSD,
    as_density_matrix,
    hermitian_eigenvalues,
    is_psd,
    partial_transpose_second,
)

# "Negative" means below -STRICT_MARGIN in every criterion; boundary cases
# are indeterminate at first order and never reported as creation.
STRICT_MARGIN = 1e-12

# Structural flags (exact zero / symmetry of input blocks) use this.
STRUCT_TOL = 1e-12


# ---------------------------------------------------------------------------
# State diagnostics
# ---------------------------------------------------------------------------

def ppt_min_eigenvalue(rho) -> float:
    """Minimum eigenvalue of the partial transpose of ``rho``.

    The state is entangled iff the result is below ``-TOL_PSD``; at this
    dimension the converse also holds, so a nonnegative result certifies
    separability.
    """
    rho = as_density_matrix(rho, require_psd=False)
    return float(hermitian_eigenvalues(partial_transpose_second(rho.matrix))[0])


def negativity(rho) -> float:
    """Sum of the absolute values of the negative eigenvalues of ``pt(rho)``."""
    rho = as_density_matrix(rho, require_psd=False)
    lams = hermitian_eigenvalues(partial_transpose_second(rho.matrix))
    return float(np.sum(np.maximum(0.0, -lams)))


def probe_expectation(rho_tilde: np.ndarray, psi) -> float:
    """``<psi| rho_tilde |psi>`` for a Hermitian (not necessarily positive) input."""
    psi_vec = psi.amplitudes if isinstance(psi, ProbeVector) else np.asarray(psi, complex)
    rho_tilde = np.asarray(rho_tilde, dtype=complex)
    return float(np.vdot(psi_vec, rho_tilde @ psi_vec).real)


# ---------------------------------------------------------------------------
# Witness derivative, three ways
# ---------------------------------------------------------------------------

def witness_derivative_numeric(gen: LindbladGenerator, rho0, psi) -> float:
    """Initial slope of ``E(t)`` computed exactly from the generator.

    Parameters
    ----------
    gen : LindbladGenerator
    rho0 : DensityMatrix or ndarray
        Initial product state.
    psi : ProbeVector or ndarray
        Probe in the computational basis (use
        :meth:`InitialStateFrame.probe_state_vector` for rotated frames).

    Raises
    ------
    ValueError
        If ``E(0)`` is not zero within 1e-12; the slope is only a creation
        witness on that surface.
    """
    rho0 = as_density_matrix(rho0)
    psi_vec = psi.amplitudes if isinstance(psi, ProbeVector) else np.asarray(psi, complex)
    e0 = float(np.vdot(psi_vec, partial_transpose_second(rho0.matrix) @ psi_vec).real)
    if abs(e0) > 1e-12:
        raise ValueError(f"E(0) = {e0!r} does not vanish; probe and state are incompatible")
    deriv = partial_transpose_second(gen.apply(rho0.matrix))
    return float(np.vdot(psi_vec, deriv @ psi_vec).real)


def build_R() -> np.ndarray:
    """The constant 6x6 matrix whose trace against the coefficient matrix
    gives the witness slope for the canonical configuration.

    Block form ``[[P, Q], [Q, P]]`` with ``P = [[1, i, 0], [-i, 1, 0],
    [0, 0, 0]] / 2`` (a projector) and ``Q = diag(-1, 1, 0) / 2``.  Its
    spectrum contains the negative value ``(1 - sqrt(2)) / 2`` with
    multiplicity two.
    """
    p = 0.5 * np.array([[1, 1j, 0], [-1j, 1, 0], [0, 0, 0]], dtype=complex)
    q = np.diag([-0.5, 0.5, 0.0]).astype(complex)
    return np.block([[p, q], [q, p]])


_R = build_R()
_R.setflags(write=False)


def witness_derivative_trace(D: KossakowskiMatrix) -> float:
    """Witness slope for the canonical configuration, as ``Tr[D R]``.

    Canonical configuration: both qubits prepared in the +1 eigenstate of
    ``sigma_3``, probe ``(|01> + |10>)/sqrt(2)``.  Agrees with
    :func:`witness_derivative_numeric` for that state and probe.
    """
    return float(np.trace(D.matrix @ _R).real)


def witness_derivative_general(d_tilde, frame: InitialStateFrame, psi: ProbeVector) -> float:
    """Witness slope as a quadratic form of the transformed coefficient matrix.

    Evaluates ``q^dagger d_tilde q`` with ``q = (psi21 u, -psi12 v)`` built
    from the frame vectors.  Requires ``psi11 = 0``; ``psi22`` never
    enters.  Equals :func:`witness_derivative_numeric` for the state and
    probe encoded by ``(frame, psi)`` when the generator has no two-qubit
    Hamiltonian coupling.
    """
    if abs(psi.psi11) > 1e-12:
        raise ValueError("the witness slope is only defined for probes with psi11 = 0")
    d = d_tilde.matrix if isinstance(d_tilde, KossakowskiMatrix) else np.asarray(d_tilde, complex)
    q = np.concatenate([psi.psi21 * frame.u_vector, -psi.psi12 * frame.v_vector])
    return float(np.vdot(q, d @ q).real)


# ---------------------------------------------------------------------------
# Probe-independent criterion and optimal probe
# ---------------------------------------------------------------------------

def _condition_value(a_mat, reb, ct, u, v) -> float:
    """``<u|A|u><v|C^T|v> - |<u|Re(B)|v>|^2``; creation iff < -margin."""
    a = float(np.vdot(u, a_mat @ u).real)
    c = float(np.vdot(v, ct @ v).real)
    r = complex(np.vdot(u, reb @ v))
    return a * c - (r.real * r.real + r.imag * r.imag)


def _condition_terms(A, B, C, frame):
    u = frame.u_vector
    v = frame.v_vector
    a = float(np.vdot(u, np.asarray(A, complex) @ u).real)
    c = float(np.vdot(v, np.asarray(C, complex).T @ v).real)
    r = complex(np.vdot(u, np.asarray(B, complex).real @ v))
    return a, c, r


def creation_condition(A, B, C, frame: InitialStateFrame, *, margin: float = STRICT_MARGIN) -> bool:
    """Probe-independent creation test for one initial product frame.

    True iff ``<u|A|u><v|C^T|v| < |<u|Re(B)|v>|^2`` holds with margin, in
    which case some probe makes the witness slope negative and the frame's
    product state gets entangled.
    """
    a, c, r = _condition_terms(A, B, C, frame)
    return (r.real * r.real + r.imag * r.imag) - a * c > margin


@dataclass(frozen=True)
class ProbeOptimum:
    """Result of minimizing the witness slope over normalized probes."""

    creates: bool
    probe: ProbeVector
    value: float


def probe_optimum(A, B, C, frame: InitialStateFrame, *, margin: float = STRICT_MARGIN) -> ProbeOptimum:
    """Minimize the witness slope over normalized ``(psi12, psi21)``.

    The slope is a Hermitian quadratic form in ``(psi21, psi12)``; the
    minimum is its smallest eigenvalue and the optimal probe the matching
    eigenvector.  ``creates`` agrees with :func:`creation_condition`, which
    tests the sign of the form's determinant instead.
    """
    a, c, r = _condition_terms(A, B, C, frame)
    beta = -r
    half_gap = 0.5 * (a - c)
    radius = math.hypot(half_gap, abs(beta))
    lam_min = 0.5 * (a + c) - radius
    if abs(beta) == 0.0:
        vec = np.array([1.0, 0.0], complex) if a <= c else np.array([0.0, 1.0], complex)
    else:
        vec = np.array([beta, lam_min - a], dtype=complex)
        vec /= np.linalg.norm(vec)
    probe = ProbeVector(0.0, vec[1], vec[0])
    return ProbeOptimum(creates=lam_min < -margin, probe=probe, value=float(lam_min))


# ---------------------------------------------------------------------------
# Structural no-creation certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExemptionReport:
    """Structural properties of the coefficient matrix that rule out creation.

    Each flag alone implies the transformed coefficient matrix is PSD and
    hence that the partially transposed state evolves completely
    positively: no entanglement is ever created, from any product state.
    ``pt_flow_completely_positive`` is the direct certificate computed from
    the transformed matrix itself.
    """

    no_cross_coupling: bool
    imaginary_cross_coupling: bool
    real_coupling_symmetric_block: bool
    symmetric_diagonal_blocks: bool
    pt_flow_completely_positive: bool

    @property
    def no_creation(self) -> bool:
        return (
            self.no_cross_coupling
            or self.imaginary_cross_coupling
            or self.real_coupling_symmetric_block
            or self.symmetric_diagonal_blocks
            or self.pt_flow_completely_positive
        )

    def flags(self) -> dict[str, bool]:
        return {
            "no_cross_coupling": self.no_cross_coupling,
            "imaginary_cross_coupling": self.imaginary_cross_coupling,
            "real_coupling_symmetric_block": self.real_coupling_symmetric_block,
            "symmetric_diagonal_blocks": self.symmetric_diagonal_blocks,
            "pt_flow_completely_positive": self.pt_flow_completely_positive,
        }


def exemption_report(D: KossakowskiMatrix) -> ExemptionReport:
    """Flag the structural cases in which the bath can never entangle.

    Cases: (1) ``B = 0`` (no dynamical correlation at all); (2)
    ``Re(B) = 0``; (3) ``Im(B) = 0`` together with ``C^T = C`` or
    ``A^T = A``; (4) ``A^T = A`` and ``C^T = C``.  The direct PSD
    certificate of the transformed matrix is evaluated independently.
    """
    A, B, C = D.A, D.B, D.C
    b_zero = float(np.max(np.abs(B))) <= STRUCT_TOL
    re_b_zero = float(np.max(np.abs(B.real))) <= STRUCT_TOL
    im_b_zero = float(np.max(np.abs(B.imag))) <= STRUCT_TOL
    a_sym = float(np.max(np.abs(A - A.T))) <= STRUCT_TOL
    c_sym = float(np.max(np.abs(C - C.T))) <= STRUCT_TOL
    return ExemptionReport(
        no_cross_coupling=b_zero,
        imaginary_cross_coupling=re_b_zero,
        real_coupling_symmetric_block=im_b_zero and (c_sym or a_sym),
        symmetric_diagonal_blocks=a_sym and c_sym,
        pt_flow_completely_positive=is_psd(pt_kossakowski(A, B, C).matrix, TOL_PSD),
    )


# ---------------------------------------------------------------------------
# Frame search
# ---------------------------------------------------------------------------
#
# The condition value is invariant under phase changes of u and v, so the
# third Euler angle of each rotation is redundant and the search runs over
# (alpha, beta) per side.  The coarse stage walks a fixed low-discrepancy
# permutation of the product grid, preceded by the four combinations of the
# identity and the beta = pi flip, which already settle the example bath
# everywhere off the region boundaries.

_N_ALPHA = 12
_N_BETA = 6
_ALPHAS = np.linspace(0.0, 2.0 * np.pi, _N_ALPHA, endpoint=False)
_BETAS = np.linspace(0.0, np.pi, _N_BETA)

_COARSE_ANGLES = [(a, b) for a in _ALPHAS for b in _BETAS]
_COARSE_US = np.array([rotation_from_zyz(a, b, 0.0) @ W3 for a, b in _COARSE_ANGLES])
_COARSE_VS = np.array([rotation_from_zyz(a, b, 0.0) @ W3.conj() for a, b in _COARSE_ANGLES])

_IDENTITY_IDX = 0            # (alpha, beta) = (0, 0)
_FLIP_IDX = _N_BETA - 1      # (alpha, beta) = (0, pi)
_PRIORITY_PAIRS = [
    (_IDENTITY_IDX, _IDENTITY_IDX),
    (_FLIP_IDX, _FLIP_IDX),
    (_IDENTITY_IDX, _FLIP_IDX),
    (_FLIP_IDX, _IDENTITY_IDX),
]


def _pair_order(equal_frames: bool) -> tuple[np.ndarray, np.ndarray]:
    n = len(_COARSE_ANGLES)
    if equal_frames:
        stride = 29  # coprime with 72
        diag = [(k * stride) % n for k in range(n)]
        pairs = [(_IDENTITY_IDX, _IDENTITY_IDX), (_FLIP_IDX, _FLIP_IDX)]
        pairs += [(i, i) for i in diag]
    else:
        total = n * n
        stride = 2141  # prime, coprime with 72^2
        pairs = list(_PRIORITY_PAIRS)
        pairs += [divmod((k * stride) % total, n) for k in range(total)]
    order = np.array(pairs, dtype=np.int64)
    return order[:, 0].copy(), order[:, 1].copy()


_ORDER_U, _ORDER_V = _pair_order(equal_frames=False)
_ORDER_U_EQ, _ORDER_V_EQ = _pair_order(equal_frames=True)


@dataclass(frozen=True)
class FrameSearchResult:
    """Outcome of a budgeted search for an entangling frame.

    ``frame is None`` does not prove non-creation unless ``pt_psd`` is set,
    in which case no frame can exist.
    """

    frame: InitialStateFrame | None
    angles: tuple | None
    budget_used: int
    best_value: float | None
    pt_psd: bool

    @property
    def found(self) -> bool:
        return self.frame is not None


def search_entangling_frame(
    A,
    B,
    C,
    budget: int = 1000,
    *,
    equal_frames: bool = False,
    exhaustive: bool = False,
    margin: float = STRICT_MARGIN,
) -> FrameSearchResult:
    """Search product frames for one satisfying the creation condition.

    A coarse deterministic grid over the two rotations is walked first
    (capped at 4/5 of the budget), then the best candidate is polished by
    Nelder-Mead refinement with the remaining evaluations (at most 200
    iterations).  By default the search exits on the first frame whose
    condition value is below ``-margin``; with ``exhaustive=True`` it
    spends the whole budget and returns the deepest frame found, which
    maximizes the witness margin instead of the first hit.

    Parameters
    ----------
    A, B, C : ndarray
        Coefficient blocks of the bath.
    budget : int
        Maximum number of condition evaluations (>= 1).
    equal_frames : bool
        Restrict to frames with the same rotation on both qubits.
    exhaustive : bool
        Optimize the condition value instead of stopping at the first hit.
    margin : float
        Strictness margin on the condition value.

    Returns
    -------
    FrameSearchResult
        When the transformed coefficient matrix is PSD the search is
        skipped entirely and the PSD certificate reported.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    C = np.asarray(C, dtype=complex)
    if is_psd(pt_kossakowski(A, B, C).matrix, TOL_PSD):
        return FrameSearchResult(None, None, 0, None, pt_psd=True)

    reb = B.real.astype(complex)
    ct = C.T.copy()
    order_u, order_v = (_ORDER_U_EQ, _ORDER_V_EQ) if equal_frames else (_ORDER_U, _ORDER_V)
    coarse_cap = min(len(order_u), max(1, (budget * 4) // 5))

    hit, best, best_value, used = kernels.scan_pairs(
        A, reb, ct, _COARSE_US, _COARSE_VS,
        order_u[:coarse_cap], order_v[:coarse_cap],
        np.inf if exhaustive else margin,
    )
    if hit >= 0:
        angles = _pair_angles(order_u[hit], order_v[hit])
        return FrameSearchResult(
            InitialStateFrame.from_angles(*angles), angles, used, best_value, False
        )
    best_angles = _pair_angles(order_u[best], order_v[best]) if best >= 0 else None

    # Local refinement from the best coarse candidate.
    remaining = budget - used
    if remaining > 0 and best_angles is not None:
        (au, bu, _), (av, bv, _) = best_angles
        x0 = np.array([au, bu] if equal_frames else [au, bu, av, bv])
        evals = 0

        def objective(x):
            nonlocal evals
            evals += 1
            if equal_frames:
                ua, ub = x
                va, vb = x
            else:
                ua, ub, va, vb = x
            u = rotation_from_zyz(ua, ub, 0.0) @ W3
            v = rotation_from_zyz(va, vb, 0.0) @ W3.conj()
            return _condition_value(A, reb, ct, u, v)

        from scipy.optimize import minimize

        res = minimize(
            objective, x0, method="Nelder-Mead",
            options={"maxiter": 200, "maxfev": remaining, "xatol": 1e-10, "fatol": 1e-14},
        )
        used += evals
        if res.fun < best_value:
            best_value = float(res.fun)
            x = [float(xi) for xi in res.x]
            if equal_frames:
                best_angles = ((x[0], x[1], 0.0), (x[0], x[1], 0.0))
            else:
                best_angles = ((x[0], x[1], 0.0), (x[2], x[3], 0.0))
    if best_angles is not None and best_value < -margin:
        return FrameSearchResult(
            InitialStateFrame.from_angles(*best_angles), best_angles, used, best_value, False
        )
    return FrameSearchResult(None, None, used, best_value, False)


def _pair_angles(iu: int, iv: int):
    au, bu = _COARSE_ANGLES[int(iu)]
    av, bv = _COARSE_ANGLES[int(iv)]
    return (float(au), float(bu), 0.0), (float(av), float(bv), 0.0)


# ---------------------------------------------------------------------------
# Collective-fluorescence special case
# ---------------------------------------------------------------------------

def fluorescence_bath(A) -> KossakowskiMatrix:
    """Bath with all three blocks equal to the Hermitian matrix ``A``."""
    A = np.asarray(A, dtype=complex)
    return KossakowskiMatrix(A, A, A)


def imag_witness_value(A, frame: InitialStateFrame) -> float:
    """``|<u| Im(A) |u>|^2`` for the frame's ``u`` vector.

    For equal-block baths with both qubits prepared in the same basis, a
    positive value at the entangling frame accompanies creation; a real
    (symmetric) ``A`` forces it to zero for every frame and creation is
    impossible.
    """
    u = frame.u_vector
    val = complex(np.vdot(u, np.asarray(A, complex).imag @ u))
    return float(abs(val) ** 2)
