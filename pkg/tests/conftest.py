"""Shared helpers: random inputs and the classical integrator oracle."""

import numpy as np
import pytest

from bathent.dynamics import HamiltonianSpec, KossakowskiMatrix, LindbladGenerator
from bathent.frames import InitialStateFrame, ProbeVector


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_psd_kossakowski(rng, scale=2.0) -> KossakowskiMatrix:
    """Wishart-distributed coefficient matrix normalized to trace ``scale``."""
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    m = g @ g.conj().T
    m *= scale / np.trace(m).real
    return KossakowskiMatrix(m[:3, :3], m[:3, 3:], m[3:, 3:])


def random_generator(rng, *, d_scale=2.0, h_scale=1.0, with_h12=False) -> LindbladGenerator:
    h12 = h_scale * rng.normal(size=(3, 3)) if with_h12 else np.zeros((3, 3))
    spec = HamiltonianSpec(
        h_scale * rng.normal(size=3), h_scale * rng.normal(size=3), h12
    )
    return LindbladGenerator.from_spec(spec, random_psd_kossakowski(rng, d_scale))


def random_unitary(rng, n=2) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_frame(rng) -> InitialStateFrame:
    return InitialStateFrame.from_unitaries(random_unitary(rng), random_unitary(rng))


def random_probe(rng) -> ProbeVector:
    amps = rng.normal(size=2) + 1j * rng.normal(size=2)
    amps /= np.linalg.norm(amps)
    return ProbeVector.creation(amps[0], amps[1])


def random_density_matrix(rng, n=4) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_hermitian(rng, n) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def random_product_state(rng) -> np.ndarray:
    """Pure product density matrix from two random unitaries."""
    u, v = random_unitary(rng), random_unitary(rng)
    vec = np.kron(u[:, 0], v[:, 0])
    return np.outer(vec, vec.conj())


def rk4_evolve(gen: LindbladGenerator, rho0, t: float, step: float = 1e-3) -> np.ndarray:
    """Classical 4th-order fixed-step integration of the master equation.

    Independent of the matrix-exponential path: works directly on the 4x4
    state using the generator's action.
    """
    rho = np.array(rho0, dtype=complex)
    n_steps = int(round(t / step))
    assert abs(n_steps * step - t) < 1e-9, "t must be a multiple of the step"
    f = gen.apply
    for _ in range(n_steps):
        k1 = f(rho)
        k2 = f(rho + 0.5 * step * k1)
        k3 = f(rho + 0.5 * step * k2)
        k4 = f(rho + step * k3)
        rho = rho + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return rho
