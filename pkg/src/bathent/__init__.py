"""Two non-interacting qubits in a common bath.

Simulates the Markovian dissipative dynamics generated by a 6x6
coefficient matrix over single-qubit Pauli couplings and decides, both
dynamically and in closed form, whether the purely noisy action of the
bath can entangle the qubits.
"""

from .creation import (
    ExemptionReport,
    FrameSearchResult,
    ProbeOptimum,
    STRICT_MARGIN,
    build_R,
    creation_condition,
    exemption_report,
    fluorescence_bath,
    imag_witness_value,
    negativity,
    ppt_min_eigenvalue,
    probe_expectation,
    probe_optimum,
    search_entangling_frame,
    witness_derivative_general,
    witness_derivative_numeric,
    witness_derivative_trace,
)
from .dynamics import (
    HamiltonianSpec,
    KossakowskiMatrix,
    LINDBLAD_OPS,
    LindbladGenerator,
    PTGenerator,
    build_hamiltonian,
    build_pt_generator,
    choi_from_propagator,
    choi_matrix,
    dissipator,
    dissipator_blockform,
    evolve,
    evolve_pt,
    example_bath,
    propagator,
    pt_kossakowski,
    pt_propagator,
    superoperator,
)
from .frames import (
    CreationTest,
    InitialStateFrame,
    ProbeVector,
    canonical_probe_vector,
    canonical_state,
)
from .linalg import (
    DensityMatrix,
    TOL_HERM,
    TOL_PSD,
    TOL_TRACE,
    hermitian_eigenvalues,
    is_psd,
    kron,
    partial_transpose_second,
    pauli,
)

__version__ = "0.1.0"
