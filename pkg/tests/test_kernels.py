"""Backend equivalence for the frame-search inner loop."""

import numpy as np
import pytest

from bathent.kernels import _pure, backend

try:
    from bathent.kernels import _fast
except ImportError:
    _fast = None

needs_compiled = pytest.mark.skipif(_fast is None, reason="compiled kernels not built")


def _random_inputs(rng, n_u=40, n_v=40, n_pairs=600):
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a_mat = g @ g.conj().T
    reb = rng.normal(size=(3, 3)).astype(complex)
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    ct = g @ g.conj().T
    us = rng.normal(size=(n_u, 3)) + 1j * rng.normal(size=(n_u, 3))
    vs = rng.normal(size=(n_v, 3)) + 1j * rng.normal(size=(n_v, 3))
    order_u = rng.integers(0, n_u, size=n_pairs)
    order_v = rng.integers(0, n_v, size=n_pairs)
    return a_mat, reb, ct, us, vs, order_u, order_v


def test_pure_exhaustive_matches_bruteforce(rng):
    a_mat, reb, ct, us, vs, ou, ov = _random_inputs(rng, n_pairs=200)
    hit, best, best_value, used = _pure.scan_pairs(a_mat, reb, ct, us, vs, ou, ov, np.inf)
    values = []
    for iu, iv in zip(ou, ov):
        u, v = us[iu], vs[iv]
        a = np.vdot(u, a_mat @ u).real
        c = np.vdot(v, ct @ v).real
        r = np.vdot(u, reb @ v)
        values.append(a * c - abs(r) ** 2)
    assert hit == -1
    assert used == len(values)
    assert best == int(np.argmin(values))
    assert abs(best_value - min(values)) < 1e-12


def test_pure_early_exit_semantics(rng):
    a_mat, reb, ct, us, vs, ou, ov = _random_inputs(rng)

    def value(k):
        u, v = us[ou[k]], vs[ov[k]]
        return np.vdot(u, a_mat @ u).real * np.vdot(v, ct @ v).real - abs(np.vdot(u, reb @ v)) ** 2

    values = [value(k) for k in range(len(ou))]
    # threshold at the lower quartile guarantees a hit partway in
    threshold = float(np.percentile(values, 25))
    margin = -threshold
    hit, best, best_value, used = _pure.scan_pairs(a_mat, reb, ct, us, vs, ou, ov, margin)
    expected_hit = next(k for k, v in enumerate(values) if v < threshold)
    assert hit == expected_hit
    assert used == hit + 1
    assert best == int(np.argmin(values[: hit + 1]))
    assert abs(best_value - min(values[: hit + 1])) < 1e-12


@needs_compiled
def test_backends_agree(rng):
    for margin in (np.inf, 1e-12, 0.5):
        a_mat, reb, ct, us, vs, ou, ov = _random_inputs(rng)
        got_pure = _pure.scan_pairs(a_mat, reb, ct, us, vs, ou, ov, margin)
        got_fast = _fast.scan_pairs(a_mat, reb, ct, us, vs, ou, ov, margin)
        assert got_pure[0] == got_fast[0]
        assert got_pure[1] == got_fast[1]
        assert got_pure[3] == got_fast[3]
        assert abs(got_pure[2] - got_fast[2]) < 1e-12


@needs_compiled
def test_compiled_accepts_readonly_views(rng):
    a_mat, reb, ct, us, vs, ou, ov = _random_inputs(rng)
    for arr in (a_mat, reb, ct, us, vs):
        arr.setflags(write=False)
    _fast.scan_pairs(a_mat, reb, ct, us, vs, ou, ov, np.inf)


def test_backend_reports_name():
    assert backend() in ("pure", "compiled")
