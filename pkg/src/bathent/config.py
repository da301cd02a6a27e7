"""Parser for generator description files.

The format is flat structured text: section headers in brackets, ``#``
comments, and matrices as three rows of three whitespace-separated
numbers.  All sections are optional and default to zero::

    [hamiltonian]
    h1 = 0 0 0.5
    h2 = 0 0 0.5

    [hamiltonian.h12]
    0 0 0
    0 0 0
    0 0 0

    [kossakowski.A.re]
    1 0 0
    0 1 0
    0 0 0

    [kossakowski.A.im]
    0 -0.8 0
    0.8 0 0
    0 0 0

The remaining blocks are ``kossakowski.B.re/.im`` and
``kossakowski.C.re/.im``.  Parse failures carry the 1-based line and
column of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .dynamics import HamiltonianSpec

_MATRIX_SECTIONS = (
    "hamiltonian.h12",
    "kossakowski.A.re",
    "kossakowski.A.im",
    "kossakowski.B.re",
    "kossakowski.B.im",
    "kossakowski.C.re",
    "kossakowski.C.im",
)
_VECTOR_KEYS = ("h1", "h2")
_TOKEN = re.compile(r"\S+")


class ConfigError(Exception):
    """Parse failure with source location."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GeneratorConfig:
    """Parsed generator description: Hamiltonian coefficients and bath blocks."""

    hamiltonian: HamiltonianSpec
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray


def parse_config(text: str) -> GeneratorConfig:
    """Parse a generator description; see the module docstring for the format."""
    vectors = {k: np.zeros(3) for k in _VECTOR_KEYS}
    matrices = {name: np.zeros((3, 3)) for name in _MATRIX_SECTIONS}
    filled_rows = {name: 0 for name in _MATRIX_SECTIONS}

    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError("unterminated section header", lineno, _col(raw, stripped))
            name = stripped[1:-1].strip()
            if name != "hamiltonian" and name not in _MATRIX_SECTIONS:
                raise ConfigError(f"unknown section [{name}]", lineno, _col(raw, stripped))
            if name in _MATRIX_SECTIONS and filled_rows[name] not in (0, 3):
                raise ConfigError(f"section [{name}] appeared before completing", lineno)
            section = name
            continue
        if section is None:
            raise ConfigError("data before any section header", lineno, _col(raw, stripped))
        if section == "hamiltonian":
            if "=" not in line:
                raise ConfigError("expected 'h1 = x y z' or 'h2 = x y z'", lineno, _col(raw, stripped))
            key, _, rest = line.partition("=")
            key = key.strip()
            if key not in _VECTOR_KEYS:
                raise ConfigError(f"unknown key {key!r} in [hamiltonian]", lineno, _col(raw, key or stripped))
            vectors[key] = np.array(_parse_row(rest, raw, lineno, expect=3))
        else:
            row = filled_rows[section]
            if row >= 3:
                raise ConfigError(f"section [{section}] has more than 3 rows", lineno, _col(raw, stripped))
            matrices[section][row] = _parse_row(line, raw, lineno, expect=3)
            filled_rows[section] = row + 1

    for name, rows in filled_rows.items():
        if rows not in (0, 3):
            raise ConfigError(f"section [{name}] has {rows} of 3 rows", len(text.splitlines()) or 1)

    spec = HamiltonianSpec(vectors["h1"], vectors["h2"], matrices["hamiltonian.h12"])
    blocks = {}
    for block in "ABC":
        blocks[block] = (
            matrices[f"kossakowski.{block}.re"] + 1j * matrices[f"kossakowski.{block}.im"]
        )
    return GeneratorConfig(spec, blocks["A"], blocks["B"], blocks["C"])


def load_config(path) -> GeneratorConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _parse_row(fragment: str, raw: str, lineno: int, expect: int) -> list[float]:
    values = []
    for match in _TOKEN.finditer(fragment):
        token = match.group()
        try:
            values.append(float(token))
        except ValueError:
            col = raw.index(token, raw.find(fragment) if fragment in raw else 0) + 1
            raise ConfigError(f"not a number: {token!r}", lineno, col) from None
    if len(values) != expect:
        raise ConfigError(
            f"expected {expect} numbers, got {len(values)}", lineno, _col(raw, fragment.strip() or raw)
        )
    return values


def _col(raw: str, token: str) -> int:
    idx = raw.find(token)
    return idx + 1 if idx >= 0 else 1
