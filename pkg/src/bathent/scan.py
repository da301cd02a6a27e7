"""Parameter-disk scan of the example bath.

Classifies every grid point of ``[-1, 1]^2`` by complete positivity,
positivity of the transformed coefficient matrix, the canonical witness
slope, and a budgeted frame search.  Records are emitted in row-major
``(a, b)`` order and the whole scan is deterministic for a fixed
resolution and budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .creation import (
    STRICT_MARGIN,
    search_entangling_frame,
    witness_derivative_trace,
)
from .dynamics import example_bath, pt_kossakowski
from .linalg import TOL_PSD, is_psd

SCAN_FIELDS = (
    "a",
    "b",
    "cp_valid",
    "dtilde_psd",
    "canonical_derivative",
    "creates_canonical",
    "creates_any_frame",
    "search_budget_used",
)


@dataclass(frozen=True)
class ScanRecord:
    """Classification of one ``(a, b)`` grid point.

    Invariants: ``creates_canonical`` implies ``creates_any_frame``, and
    ``dtilde_psd`` excludes ``creates_any_frame``.
    """

    a: float
    b: float
    cp_valid: bool
    dtilde_psd: bool
    canonical_derivative: float
    creates_canonical: bool
    creates_any_frame: bool
    search_budget_used: int


def scan_point(a: float, b: float, budget: int = 1000, *, margin: float = STRICT_MARGIN) -> ScanRecord:
    """Classify a single parameter point of the example bath."""
    D = example_bath(a, b, check_cp=False)
    cp_valid = D.is_cp(TOL_PSD)
    dtilde_psd = is_psd(pt_kossakowski(D.A, D.B, D.C).matrix, TOL_PSD)
    deriv = witness_derivative_trace(D)
    creates_canonical = cp_valid and not dtilde_psd and deriv < -margin
    creates_any = False
    used = 0
    if cp_valid and not dtilde_psd:
        result = search_entangling_frame(D.A, D.B, D.C, budget=budget, margin=margin)
        used = result.budget_used
        creates_any = creates_canonical or result.found
    return ScanRecord(
        a=a,
        b=b,
        cp_valid=cp_valid,
        dtilde_psd=dtilde_psd,
        canonical_derivative=deriv,
        creates_canonical=creates_canonical,
        creates_any_frame=creates_any,
        search_budget_used=used,
    )


def grid_values(resolution: int) -> np.ndarray:
    if resolution < 3:
        raise ValueError(f"resolution must be >= 3, got {resolution}")
    return np.linspace(-1.0, 1.0, resolution)


def scan_disk(resolution: int = 201, budget: int = 1000, *, margin: float = STRICT_MARGIN) -> list[ScanRecord]:
    """Scan the full grid; ``a`` varies slowest."""
    values = grid_values(resolution)
    return [scan_point(float(a), float(b), budget, margin=margin) for a in values for b in values]


def record_category(rec: ScanRecord) -> int:
    """Region class for plotting.

    0: outside the CP disk; 1: transformed matrix PSD (no creation
    possible); 2: canonical-frame creation; 3: creation only via a searched
    frame; 4: no frame found within budget (inconclusive).
    """
    if not rec.cp_valid:
        return 0
    if rec.dtilde_psd:
        return 1
    if rec.creates_canonical:
        return 2
    if rec.creates_any_frame:
        return 3
    return 4


def format_value(value) -> str:
    """CSV cell formatting: shortest round-trip decimals for floats."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_scan_csv(records: list[ScanRecord], fh) -> None:
    fh.write(",".join(SCAN_FIELDS) + "\n")
    for rec in records:
        fh.write(",".join(format_value(getattr(rec, f)) for f in SCAN_FIELDS) + "\n")
