"""DCTC v1 container I/O and the raster writers shared by the command line tools.

A container holds one luminance plane of quantized DCT coefficients in block
layout: entry (r, c) of the coefficient grid is mode (r % 8, c % 8) of the 8x8
block (r // 8, c // 8). Serialization is canonical JSON (sorted keys, compact
separators, trailing newline) so identical containers are identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

FORMAT_VERSION = 1
COEFF_MIN = -1024
COEFF_MAX = 1023


class ContainerError(ValueError):
    """A container file or value violates the format contract."""


@dataclass(frozen=True)
class DctContainer:
    """Quantized luminance DCT plane with its quantization table."""

    height: int
    width: int
    quant: np.ndarray    # (8, 8) int64, natural (row-major frequency) order
    coeffs: np.ndarray   # (height, width) int64, block layout

    def __post_init__(self):
        object.__setattr__(self, "quant", np.asarray(self.quant, dtype=np.int64))
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=np.int64))
        validate(self)


def validate(c: DctContainer) -> None:
    """Raise ContainerError naming the first offending field."""
    for name, value in (("height", c.height), ("width", c.width)):
        if not isinstance(value, (int, np.integer)):
            raise ContainerError(f"{name} must be an integer, got {type(value).__name__}")
        if value <= 0 or value % 8 != 0:
            raise ContainerError(f"{name} must be a positive multiple of 8, got {value}")
    if c.quant.shape != (8, 8):
        raise ContainerError(f"quant must be 8x8, got shape {c.quant.shape}")
    if np.any(c.quant < 1):
        u, v = np.argwhere(c.quant < 1)[0]
        raise ContainerError(f"quant[{u}][{v}] = {c.quant[u, v]} is below 1")
    if c.coeffs.shape != (c.height, c.width):
        raise ContainerError(
            f"coeffs shape {c.coeffs.shape} does not match height x width "
            f"({c.height}, {c.width})"
        )
    bad = (c.coeffs < COEFF_MIN) | (c.coeffs > COEFF_MAX)
    if np.any(bad):
        r, col = np.argwhere(bad)[0]
        raise ContainerError(
            f"coeffs[{r}][{col}] = {c.coeffs[r, col]} outside [{COEFF_MIN}, {COEFF_MAX}]"
        )


def _canonical_bytes(c: DctContainer) -> bytes:
    doc = {
        "dctc_version": FORMAT_VERSION,
        "height": int(c.height),
        "width": int(c.width),
        "quant": [int(q) for q in c.quant.ravel()],
        "coeffs": c.coeffs.tolist(),
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")


def write_container(c: DctContainer, path) -> None:
    validate(c)
    with open(path, "wb") as f:
        f.write(_canonical_bytes(c))


def read_container(path) -> DctContainer:
    """Load and validate a container, reporting the offending field on failure."""
    with open(path, "rb") as f:
        raw = f.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ContainerError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ContainerError("top level must be a JSON object")
    for key in ("dctc_version", "height", "width", "quant", "coeffs"):
        if key not in doc:
            raise ContainerError(f"missing field {key}")
    if doc["dctc_version"] != FORMAT_VERSION:
        raise ContainerError(f"dctc_version must be {FORMAT_VERSION}, got {doc['dctc_version']!r}")
    for name in ("height", "width"):
        if not isinstance(doc[name], int) or isinstance(doc[name], bool):
            raise ContainerError(f"{name} must be an integer, got {doc[name]!r}")
    quant = doc["quant"]
    if not isinstance(quant, list) or len(quant) != 64:
        raise ContainerError("quant must be a list of 64 entries in row-major order")
    for i, q in enumerate(quant):
        if not isinstance(q, int) or isinstance(q, bool):
            raise ContainerError(f"quant[{i}] must be an integer, got {q!r}")
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != doc["height"]:
        raise ContainerError(f"coeffs must be a list of {doc['height']} rows")
    for r, row in enumerate(coeffs):
        if not isinstance(row, list) or len(row) != doc["width"]:
            raise ContainerError(f"coeffs[{r}] must be a list of {doc['width']} entries")
        for col, value in enumerate(row):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ContainerError(f"coeffs[{r}][{col}] must be an integer, got {value!r}")
    return DctContainer(
        height=doc["height"],
        width=doc["width"],
        quant=np.array(quant, dtype=np.int64).reshape(8, 8),
        coeffs=np.array(coeffs, dtype=np.int64),
    )


def write_grid(grid, path, format: str = "tsv") -> None:
    """Write a 2-d float grid as full-precision TSV or as a rescaled binary PGM.

    TSV keeps every value at full double precision (repr round-trip). PGM maps
    the grid minimum to 0 and maximum to 255 with rounding; a constant grid
    maps to all zeros. Non-finite entries are rejected with their position.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2 or grid.size == 0:
        raise ContainerError(f"grid must be a nonempty 2-d array, got shape {grid.shape}")
    bad = ~np.isfinite(grid)
    if np.any(bad):
        r, c = np.argwhere(bad)[0]
        word = "NaN" if np.isnan(grid[r, c]) else "non-finite"
        raise ContainerError(f"grid[{r}][{c}] is {word}")
    if format == "tsv":
        lines = "\n".join("\t".join(repr(float(v)) for v in row) for row in grid)
        with open(path, "w", encoding="ascii") as f:
            f.write(lines + "\n")
    elif format == "pgm":
        lo, hi = float(grid.min()), float(grid.max())
        if hi > lo:
            scaled = np.rint((grid - lo) * (255.0 / (hi - lo)))
        else:
            scaled = np.zeros_like(grid)
        data = scaled.astype(np.uint8)
        header = f"P5\n{grid.shape[1]} {grid.shape[0]}\n255\n".encode("ascii")
        with open(path, "wb") as f:
            f.write(header + data.tobytes())
    else:
        raise ContainerError(f"unknown grid format {format!r}")


def read_grid_tsv(path) -> np.ndarray:
    """Parse a TSV grid written by write_grid back into a float array."""
    rows = []
    with open(path, "r", encoding="ascii") as f:
        for lineno, line in enumerate(f):
            line = line.rstrip("\n")
            if line == "":
                continue
            try:
                rows.append([float(x) for x in line.split("\t")])
            except ValueError as e:
                raise ContainerError(f"line {lineno + 1}: {e}") from e
    if not rows:
        raise ContainerError("grid file is empty")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ContainerError(f"line {i + 1} has {len(row)} columns, expected {width}")
    return np.array(rows, dtype=np.float64)


def write_csv(rows, path, header) -> None:
    """Write analysis rows as a comma-separated file with a header line."""
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in row))
    with open(path, "w", encoding="ascii") as f:
        f.write("\n".join(out) + "\n")
