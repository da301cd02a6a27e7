#!/usr/bin/env python3
"""Benchmark the frame-search inner loop: compiled extension vs numpy.

Two workloads:

* ``exhaustive`` - full coarse-grid sweep per bath (no early exit), the
  pattern of ``search_entangling_frame(..., exhaustive=True)``;
* ``first-hit`` - early-exit walk at the default strictness margin, the
  pattern of the parameter-disk scan.

Run after ``pip install -e .``; if the compiled extension is missing only
the numpy backend is timed.
"""

import time

import numpy as np

from bathent.creation import _ORDER_U, _ORDER_V, _COARSE_US, _COARSE_VS
from bathent.kernels import _pure

try:
    from bathent.kernels import _fast
except ImportError:
    _fast = None


def make_baths(count, seed=2):
    rng = np.random.default_rng(seed)
    baths = []
    for _ in range(count):
        g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        m = g @ g.conj().T
        m *= 2.0 / np.trace(m).real
        baths.append((m[:3, :3], m[:3, 3:].real.astype(complex), m[3:, 3:].T.copy()))
    return baths


def run(backend, baths, margin):
    start = time.perf_counter()
    evaluated = 0
    for a_mat, reb, ct in baths:
        *_, used = backend.scan_pairs(
            a_mat, reb, ct, _COARSE_US, _COARSE_VS, _ORDER_U, _ORDER_V, margin
        )
        evaluated += used
    elapsed = time.perf_counter() - start
    return elapsed, evaluated


def main():
    baths = make_baths(200)
    backends = [("pure", _pure)]
    if _fast is not None:
        backends.append(("compiled", _fast))
    else:
        print("compiled extension not built; timing the numpy backend only")

    print(f"{len(baths)} baths, {len(_ORDER_U)} candidate pairs each")
    print(f"{'workload':<12} {'backend':<10} {'time':>9} {'pairs':>10} {'ns/pair':>9}")
    results = {}
    for label, margin in (("exhaustive", np.inf), ("first-hit", 1e-12)):
        for name, backend in backends:
            elapsed, evaluated = run(backend, baths, margin)
            results[(label, name)] = elapsed
            print(
                f"{label:<12} {name:<10} {elapsed:8.3f}s {evaluated:>10} "
                f"{1e9 * elapsed / max(1, evaluated):>8.1f}"
            )
    if _fast is not None:
        for label in ("exhaustive", "first-hit"):
            speedup = results[(label, "pure")] / results[(label, "compiled")]
            print(f"{label}: compiled is {speedup:.1f}x faster")


if __name__ == "__main__":
    main()
