"""Self-contained SVG rendering of the scan classification.

Plain SVG 1.1 rectangles plus region outlines and a legend; no plotting
dependency.
"""

from __future__ import annotations

from .scan import ScanRecord, record_category

CATEGORY_COLORS = {
    0: "#d9d9d9",  # outside the CP disk
    1: "#4575b4",  # transformed matrix PSD: no creation possible
    2: "#d73027",  # canonical-frame creation
    3: "#fc8d59",  # creation only via searched frame
    4: "#ffffbf",  # no frame found within budget
}

CATEGORY_LABELS = {
    0: "outside CP disk (a^2 + b^2 > 1)",
    1: "no creation (PT flow completely positive)",
    2: "creation at canonical frame (a + b > 1)",
    3: "creation via searched frame",
    4: "no frame found within budget",
}


def write_region_svg(records: list[ScanRecord], resolution: int, fh, size: int = 800) -> None:
    """Render one colored cell per scan record plus outlines and legend."""
    n = resolution
    if len(records) != n * n:
        raise ValueError(f"expected {n * n} records for resolution {n}, got {len(records)}")
    side = size - 220.0  # leaves room for title, axis label and legend
    x0, y0 = (size - side) / 2, 40.0
    cell = side / n
    present = sorted({record_category(r) for r in records})

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<text x="{size / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">Entanglement creation regions of the example bath</text>',
    ]
    # Cells; records are in row-major (a, b) order, a slowest.
    for idx, rec in enumerate(records):
        i, j = divmod(idx, n)
        x = x0 + i * cell
        y = y0 + (n - 1 - j) * cell
        color = CATEGORY_COLORS[record_category(rec)]
        out.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{cell:.2f}" height="{cell:.2f}" '
            f'fill="{color}"/>'
        )

    cx, cy, r = x0 + side / 2, y0 + side / 2, side / 2
    out.append(
        f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="none" '
        f'stroke="black" stroke-width="1.5"/>'
    )
    corners = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    pts = " ".join(
        f"{x0 + (a + 1) / 2 * side:.1f},{y0 + (1 - b) / 2 * side:.1f}" for a, b in corners
    )
    out.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')

    # Axis labels.
    out.append(
        f'<text x="{cx:.1f}" y="{y0 + side + 28:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">a</text>'
    )
    out.append(
        f'<text x="{x0 - 24:.1f}" y="{cy:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">b</text>'
    )

    # Legend inside the lower-left corner of the canvas.
    ly = y0 + side + 40
    for row, cat in enumerate(present):
        y = ly + row * 18
        if y > size - 6:
            break
        out.append(
            f'<rect x="{x0:.1f}" y="{y - 11:.1f}" width="12" height="12" '
            f'fill="{CATEGORY_COLORS[cat]}" stroke="black" stroke-width="0.5"/>'
        )
        out.append(
            f'<text x="{x0 + 18:.1f}" y="{y:.1f}" font-family="sans-serif" '
            f'font-size="12">{CATEGORY_LABELS[cat]}</text>'
        )
    out.append("</svg>")
    fh.write("\n".join(out) + "\n")
