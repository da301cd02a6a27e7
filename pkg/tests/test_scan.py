import csv
import io

import numpy as np

from bathent.scan import (
    SCAN_FIELDS,
    format_value,
    record_category,
    scan_disk,
    scan_point,
    write_scan_csv,
)


def test_scan_point_categories():
    assert record_category(scan_point(0.9, 0.3)) == 2   # canonical creation
    assert record_category(scan_point(0.9, -0.3)) == 3  # searched frame only
    assert record_category(scan_point(0.5, 0.4)) == 1   # transformed matrix PSD
    assert record_category(scan_point(0.9, 0.9)) == 0   # outside the CP disk


def test_scan_point_canonical_derivative():
    rec = scan_point(0.25, 0.5)
    assert abs(rec.canonical_derivative - 2 * (1 - 0.25 - 0.5)) < 1e-12


def test_scan_invariants_small_grid():
    records = scan_disk(resolution=21, budget=400)
    assert len(records) == 21 * 21
    eps = 1e-9
    for rec in records:
        assert rec.creates_canonical <= rec.creates_any_frame
        assert not (rec.dtilde_psd and rec.creates_any_frame)
        if abs(rec.a + rec.b) <= 1 - eps and abs(rec.a - rec.b) <= 1 - eps:
            assert rec.dtilde_psd and not rec.creates_any_frame
        if rec.cp_valid and rec.a + rec.b > 1 + eps:
            assert rec.creates_canonical
        if rec.cp_valid and abs(rec.a - rec.b) > 1 + eps:
            assert rec.creates_any_frame


def test_scan_rows_ordered_row_major():
    records = scan_disk(resolution=5, budget=50)
    values = np.linspace(-1, 1, 5)
    expected = [(a, b) for a in values for b in values]
    assert [(r.a, r.b) for r in records] == expected


def test_csv_format_and_roundtrip():
    records = scan_disk(resolution=5, budget=50)
    buf = io.StringIO()
    write_scan_csv(records, buf)
    buf.seek(0)
    rows = list(csv.DictReader(buf))
    assert list(rows[0].keys()) == list(SCAN_FIELDS)
    for rec, row in zip(records, rows):
        # shortest round-trip decimals: parsing reproduces the exact double
        assert float(row["a"]) == rec.a
        assert float(row["canonical_derivative"]) == rec.canonical_derivative
        assert row["cp_valid"] == ("true" if rec.cp_valid else "false")
        assert int(row["search_budget_used"]) == rec.search_budget_used


def test_scan_deterministic():
    one = io.StringIO()
    two = io.StringIO()
    write_scan_csv(scan_disk(resolution=9, budget=100), one)
    write_scan_csv(scan_disk(resolution=9, budget=100), two)
    assert one.getvalue() == two.getvalue()


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(False) == "false"
    assert format_value(0.1) == "0.1"
    assert format_value(np.float64(0.1)) == "0.1"
    assert float(format_value(1 / 3)) == 1 / 3
    assert format_value(7) == "7"
