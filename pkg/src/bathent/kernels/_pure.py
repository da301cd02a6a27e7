"""Numpy implementation of the frame-search inner loop.

Semantics are identical to the compiled version in ``_fast.pyx``: walk the
candidate pairs in the given order, return on the first pair whose
creation-condition value drops below ``-margin``, and track the running
minimum either way.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 512


def _quad_forms(mat: np.ndarray, xs: np.ndarray) -> np.ndarray:
    # Re <x| mat |x> per candidate row.
    return np.einsum("ki,ki->k", xs.conj(), xs @ mat.T).real


def scan_pairs(a_mat, reb, ct, us, vs, order_u, order_v, margin):
    """Evaluate the creation-condition value over candidate frame pairs.

    Parameters
    ----------
    a_mat, reb, ct : ndarray
        3x3 complex blocks: first-qubit block, real part of the coupling
        block, transposed second-qubit block.
    us, vs : ndarray
        Candidate ``u`` and ``v`` vectors, one per row.
    order_u, order_v : ndarray
        Parallel int arrays indexing ``us``/``vs``; pair ``k`` is
        ``(us[order_u[k]], vs[order_v[k]])``.
    margin : float
        Strictness margin; a value below ``-margin`` counts as a hit.

    Returns
    -------
    (hit, best, best_value, evaluated)
        ``hit`` is the index into the order arrays of the first pair with
        value below ``-margin`` (or -1), ``best`` the index of the smallest
        value seen, ``evaluated`` the number of pairs examined.
    """
    a_mat = np.asarray(a_mat, dtype=complex)
    reb = np.asarray(reb, dtype=complex)
    ct = np.asarray(ct, dtype=complex)
    us = np.asarray(us, dtype=complex)
    vs = np.asarray(vs, dtype=complex)
    order_u = np.asarray(order_u, dtype=np.int64)
    order_v = np.asarray(order_v, dtype=np.int64)

    au = _quad_forms(a_mat, us)
    cv = _quad_forms(ct, vs)
    reb_vs = vs @ reb.T

    total = order_u.shape[0]
    best = -1
    best_value = np.inf
    for start in range(0, total, _CHUNK):
        ou = order_u[start : start + _CHUNK]
        ov = order_v[start : start + _CHUNK]
        r = np.einsum("ki,ki->k", us[ou].conj(), reb_vs[ov])
        values = au[ou] * cv[ov] - (r.real * r.real + r.imag * r.imag)
        hits = np.nonzero(values < -margin)[0]
        # Only pairs up to (and including) the first hit count as examined.
        upto = values if not hits.size else values[: int(hits[0]) + 1]
        k = int(np.argmin(upto))
        if float(upto[k]) < best_value:
            best_value = float(upto[k])
            best = start + k
        if hits.size:
            hit = start + int(hits[0])
            return hit, best, best_value, hit + 1
    return -1, best, best_value, total
