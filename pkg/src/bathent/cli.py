"""Command-line interface.

Subcommands: ``evolve`` (time evolution to CSV), ``check`` (creation
analysis of one generator), ``scan`` (parameter-disk classification to CSV
plus an SVG map) and ``fluorescence`` (the equal-blocks special case).

Exit codes: 0 success, 2 parse/usage error, 3 complete-positivity violation
without ``--allow-non-cp``, 4 output I/O error.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

import numpy as np

from . import kernels
from .config import ConfigError, GeneratorConfig, load_config
from .creation import (
    exemption_report,
    fluorescence_bath,
    imag_witness_value,
    negativity,
    ppt_min_eigenvalue,
    search_entangling_frame,
    witness_derivative_trace,
)
from .dynamics import (
    HamiltonianSpec,
    KossakowskiMatrix,
    LindbladGenerator,
    evolve,
    example_bath,
    pt_kossakowski,
)
from .linalg import (
    TOL_HERM,
    TOL_PSD,
    DensityMatrix,
    hermiticity_defect,
    hermitian_eigenvalues,
    is_psd,
)
from .scan import format_value, scan_disk, write_scan_csv
from .svgmap import write_region_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CP = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


class CPViolationError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bathent",
        description="Two qubits in a common bath: dissipative dynamics and "
        "entanglement-creation analysis.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=TOL_PSD,
                        help="tolerance for validation checks (default 1e-10)")
    common.add_argument("--allow-non-cp", action="store_true",
                        help="accept coefficient matrices that are not PSD")
    common.add_argument("--output", help="output path (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", parents=[common],
                              help="evolve a state and tabulate diagnostics")
    _add_generator_args(p_evolve)
    p_evolve.add_argument("--rho0", default="bloch: 0 0 1; 0 0 1",
                          help="initial state: 'bloch: x y z; x y z' or "
                          "'entries: 32 numbers (re im interleaved, row-major)'")
    p_evolve.add_argument("--times", default="lin:0:1:11",
                          help="time grid: comma list '0,0.5,1' or 'lin:start:stop:count'")

    p_check = sub.add_parser("check", parents=[common],
                             help="creation analysis of one generator")
    _add_generator_args(p_check)
    p_check.add_argument("--budget", type=int, default=1000,
                         help="frame-search evaluation budget (default 1000)")

    p_scan = sub.add_parser("scan", parents=[common],
                            help="classify the example-bath parameter disk")
    p_scan.add_argument("--resolution", type=int, default=201,
                        help="grid points per axis (default 201)")
    p_scan.add_argument("--budget", type=int, default=1000,
                        help="frame-search budget per grid point (default 1000)")
    p_scan.add_argument("--svg", help="SVG map path (default: CSV path with .svg suffix)")

    p_fluo = sub.add_parser("fluorescence", parents=[common],
                            help="equal-blocks bath: creation iff the block has "
                            "an imaginary part")
    p_fluo.add_argument("--config", required=True,
                        help="generator file; the kossakowski.A block is used "
                        "for all three blocks")
    p_fluo.add_argument("--budget", type=int, default=1000)
    return parser


def _add_generator_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--config", help="generator description file")
    group.add_argument("--example-bath", nargs=2, type=float, metavar=("A", "B"),
                       help="use the two-parameter example bath (H = 0)")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "evolve":
            return _cmd_evolve(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "scan":
            return _cmd_scan(args)
        if args.command == "fluorescence":
            return _cmd_fluorescence(args)
        raise AssertionError(args.command)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CPViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

@contextmanager
def _open_output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _build_generator(args) -> tuple[LindbladGenerator, str]:
    if args.example_bath is not None:
        a, b = args.example_bath
        if a * a + b * b > 1.0 + 1e-12 and not args.allow_non_cp:
            raise CPViolationError(
                f"example bath is completely positive only on a^2 + b^2 <= 1 "
                f"(got a={a}, b={b}); pass --allow-non-cp to proceed"
            )
        D = example_bath(a, b, check_cp=not args.allow_non_cp)
        return (
            LindbladGenerator.from_spec(HamiltonianSpec.zero(), D),
            f"example(a={a}, b={b})",
        )
    cfg = load_config(args.config)
    D = _kossakowski_from_config(cfg, args)
    return LindbladGenerator.from_spec(cfg.hamiltonian, D), args.config


def _kossakowski_from_config(cfg: GeneratorConfig, args) -> KossakowskiMatrix:
    try:
        D = KossakowskiMatrix(cfg.A, cfg.B, cfg.C, cp_checked=not args.allow_non_cp)
    except ValueError as exc:
        if "positive semidefinite" in str(exc):
            raise CPViolationError(f"{exc}; pass --allow-non-cp to proceed") from exc
        raise UsageError(str(exc)) from exc
    return D


def _parse_times(spec: str) -> list[float]:
    spec = spec.strip()
    if spec.startswith("lin:"):
        parts = spec[4:].split(":")
        if len(parts) != 3:
            raise UsageError(f"bad time grid {spec!r}: expected lin:start:stop:count")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad time grid {spec!r}: {exc}") from None
        if count < 1:
            raise UsageError("time grid needs at least one point")
        return [float(t) for t in np.linspace(start, stop, count)]
    try:
        times = [float(tok) for tok in spec.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad time value in {spec!r}: {exc}") from None
    if not times:
        raise UsageError("empty time grid")
    if any(t < 0 for t in times):
        raise UsageError("times must be nonnegative")
    return times


def _parse_rho0(spec: str, tol: float) -> DensityMatrix:
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    values_text = rest.replace(";", " ; ").replace(",", " ")
    if kind == "bloch":
        halves = [h.split() for h in values_text.split(";")]
        if len(halves) != 2 or any(len(h) != 3 for h in halves):
            raise UsageError(
                f"bad bloch spec {rest!r}: expected two semicolon-separated 3-vectors"
            )
        try:
            r1 = [float(x) for x in halves[0]]
            r2 = [float(x) for x in halves[1]]
        except ValueError as exc:
            raise UsageError(f"bad bloch value: {exc}") from None
        try:
            return DensityMatrix.product_from_bloch(r1, r2)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if kind == "entries":
        try:
            nums = [float(x) for x in values_text.split()]
        except ValueError as exc:
            raise UsageError(f"bad entry value: {exc}") from None
        if len(nums) != 32:
            raise UsageError(f"entries spec needs 32 numbers, got {len(nums)}")
        flat = np.array(nums[0::2]) + 1j * np.array(nums[1::2])
        try:
            return DensityMatrix(flat.reshape(4, 4), tol=tol)
        except ValueError as exc:
            raise UsageError(f"initial state invalid: {exc}") from None
    raise UsageError(f"unknown rho0 spec kind {kind!r}: use 'bloch:' or 'entries:'")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_evolve(args) -> int:
    gen, _ = _build_generator(args)
    rho0 = _parse_rho0(args.rho0, args.tol)
    times = _parse_times(args.times)
    header = ["t"]
    for i in range(4):
        for j in range(4):
            header += [f"rho{i}{j}_re", f"rho{i}{j}_im"]
    header += ["trace", "purity", "ppt_min_eigenvalue", "negativity"]
    with _open_output(args.output) as fh:
        fh.write(",".join(header) + "\n")
        for t in times:
            rho = evolve(gen, rho0, t)
            m = rho.matrix
            cells = [format_value(float(t))]
            for i in range(4):
                for j in range(4):
                    cells += [format_value(float(m[i, j].real)),
                              format_value(float(m[i, j].imag))]
            cells += [
                format_value(float(m.trace().real)),
                format_value(rho.purity()),
                format_value(ppt_min_eigenvalue(rho)),
                format_value(negativity(rho)),
            ]
            fh.write(",".join(cells) + "\n")
    return EXIT_OK


def _cmd_check(args) -> int:
    gen, label = _build_generator(args)
    D = gen.kossakowski
    dtilde = pt_kossakowski(D.A, D.B, D.C, gen.hamiltonian_spec.h12)
    dtilde_spectrum = hermitian_eigenvalues(dtilde.matrix, check=False)
    report = exemption_report(D)
    deriv = witness_derivative_trace(D)
    cp_valid = D.is_cp(args.tol)
    creates_canonical = cp_valid and not report.pt_flow_completely_positive and deriv < -1e-12

    search = None
    if not report.pt_flow_completely_positive:
        search = search_entangling_frame(D.A, D.B, D.C, budget=args.budget)

    lines = [
        f"generator: {label}",
        f"kernel_backend: {kernels.backend()}",
        f"cp_valid: {format_value(cp_valid)}",
        f"cp_min_eigenvalue: {format_value(D.min_eigenvalue())}",
        "dtilde_spectrum: " + " ".join(format_value(float(x)) for x in dtilde_spectrum),
    ]
    for name, flag in report.flags().items():
        lines.append(f"exemption {name}: {format_value(flag)}")
    lines += [
        f"canonical_derivative: {format_value(deriv)}",
        f"creates_canonical: {format_value(creates_canonical)}",
    ]
    if search is not None:
        lines.append(f"search_found: {format_value(search.found)}")
        lines.append(f"search_budget_used: {search.budget_used}")
        if search.found:
            (au, bu, gu), (av, bv, gv) = search.angles
            lines.append(f"frame_angles_u: {format_value(au)} {format_value(bu)} {format_value(gu)}")
            lines.append(f"frame_angles_v: {format_value(av)} {format_value(bv)} {format_value(gv)}")

    if report.pt_flow_completely_positive:
        verdict = "D-tilde PSD; no creation possible"
    elif creates_canonical:
        verdict = f"creation at canonical frame; dE/dt(0) = {format_value(deriv)}"
    elif search is not None and search.found:
        verdict = "creation via searched frame"
    else:
        verdict = "no creation found within budget (inconclusive)"
    lines.append(f"verdict: {verdict}")

    with _open_output(args.output) as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_scan(args) -> int:
    if args.resolution < 3:
        raise UsageError(f"resolution must be >= 3, got {args.resolution}")
    if args.budget < 1:
        raise UsageError(f"budget must be >= 1, got {args.budget}")
    records = scan_disk(args.resolution, args.budget)
    csv_path = args.output if args.output else "scan.csv"
    svg_path = args.svg
    if svg_path is None:
        svg_path = csv_path[:-4] + ".svg" if csv_path.endswith(".csv") else csv_path + ".svg"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        write_scan_csv(records, fh)
    with open(svg_path, "w", encoding="utf-8") as fh:
        write_region_svg(records, args.resolution, fh)
    n_create = sum(1 for r in records if r.creates_any_frame)
    print(
        f"scanned {len(records)} points at resolution {args.resolution} "
        f"(kernels: {kernels.backend()}); {n_create} creating points; "
        f"wrote {csv_path} and {svg_path}"
    )
    return EXIT_OK


def _cmd_fluorescence(args) -> int:
    cfg = load_config(args.config)
    a_block = cfg.A
    defect = hermiticity_defect(a_block)
    if defect > TOL_HERM:
        raise UsageError(
            f"fluorescence block must be Hermitian (defect {defect:.3e})"
        )
    try:
        D = fluorescence_bath(a_block)
    except ValueError as exc:
        raise CPViolationError(str(exc)) from exc

    imag_norm = float(np.max(np.abs(a_block.imag)))
    dtilde_psd = is_psd(pt_kossakowski(D.A, D.B, D.C).matrix, args.tol)
    lines = [
        f"generator: fluorescence({args.config})",
        f"imag_part_max: {format_value(imag_norm)}",
        f"dtilde_psd: {format_value(dtilde_psd)}",
    ]
    if imag_norm <= 1e-12:
        lines.append(
            "verdict: no creation; the partially transposed state evolves "
            "completely positively"
        )
    else:
        result = search_entangling_frame(
            D.A, D.B, D.C, budget=args.budget, equal_frames=True
        )
        lines.append(f"search_found: {format_value(result.found)}")
        lines.append(f"search_budget_used: {result.budget_used}")
        if result.found:
            (au, bu, gu), _ = result.angles
            lines.append(
                f"frame_angles: {format_value(au)} {format_value(bu)} {format_value(gu)}"
            )
            lines.append(
                "imag_witness_value: "
                + format_value(imag_witness_value(a_block, result.frame))
            )
            lines.append("verdict: creation frame found (shared rotation)")
        else:
            lines.append("verdict: no creation found within budget (inconclusive)")

    with _open_output(args.output) as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
