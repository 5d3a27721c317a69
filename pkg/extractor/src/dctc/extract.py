"""Extraction and verification of DCTC containers from baseline JPEG files.

The container written here is the canonical DCTC v1 JSON document (sorted
keys, compact separators, trailing newline), so repeated extractions of the
same file are byte-identical and any DCTC reader can consume them.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .jpegdec import JpegError, decode_luminance

FORMAT_VERSION = 1


class ExtractorError(ValueError):
    """A container does not match what the JPEG stream contains."""


@dataclass(frozen=True)
class ExtractionRecord:
    """What was pulled out of a file: provenance plus a coefficient digest."""

    source: str
    height: int
    width: int
    quant_table_id: int
    checksum: str

    def describe(self) -> str:
        return (f"{self.source}: luminance {self.height}x{self.width}, "
                f"quant table {self.quant_table_id}, "
                f"coefficients sha256:{self.checksum[:16]}")


def _checksum(coeffs: np.ndarray) -> str:
    return hashlib.sha256(coeffs.astype("<i8").tobytes()).hexdigest()


def _container_bytes(height: int, width: int, quant: np.ndarray,
                     coeffs: np.ndarray) -> bytes:
    doc = {
        "dctc_version": FORMAT_VERSION,
        "height": int(height),
        "width": int(width),
        "quant": [int(q) for q in quant.ravel()],
        "coeffs": coeffs.tolist(),
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")


def _decode_file(jpeg_path) -> tuple[np.ndarray, np.ndarray, int]:
    with open(jpeg_path, "rb") as f:
        data = f.read()
    coeffs, quant, tq = decode_luminance(data)
    if np.any(quant < 1):
        raise JpegError("quantization table contains zero entries")
    return coeffs, quant, tq


def extract(jpeg_path, out_path) -> ExtractionRecord:
    """Decode the luminance coefficients of a baseline JPEG into a container."""
    coeffs, quant, tq = _decode_file(jpeg_path)
    with open(out_path, "wb") as f:
        f.write(_container_bytes(coeffs.shape[0], coeffs.shape[1], quant, coeffs))
    return ExtractionRecord(
        source=str(jpeg_path),
        height=coeffs.shape[0],
        width=coeffs.shape[1],
        quant_table_id=tq,
        checksum=_checksum(coeffs),
    )


def verify(jpeg_path, container_path) -> ExtractionRecord:
    """Re-decode the JPEG and compare against a stored container.

    Raises ExtractorError naming the first disagreement (dimensions, a
    quantization entry, or a coefficient position). Returns the extraction
    record when everything matches.
    """
    coeffs, quant, tq = _decode_file(jpeg_path)
    with open(container_path, "rb") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise ExtractorError(f"container is not valid JSON: {e}") from e
    for key in ("dctc_version", "height", "width", "quant", "coeffs"):
        if key not in doc:
            raise ExtractorError(f"container is missing field {key}")
    if doc["dctc_version"] != FORMAT_VERSION:
        raise ExtractorError(f"container version {doc['dctc_version']!r} not supported")
    if (doc["height"], doc["width"]) != coeffs.shape:
        raise ExtractorError(
            f"dimensions differ: container says {doc['height']}x{doc['width']}, "
            f"stream decodes to {coeffs.shape[0]}x{coeffs.shape[1]}"
        )
    stored_quant = np.asarray(doc["quant"], dtype=np.int64)
    if stored_quant.shape != (64,):
        raise ExtractorError("container quant must hold 64 entries")
    gap = stored_quant != quant.ravel()
    if np.any(gap):
        i = int(np.argmax(gap))
        raise ExtractorError(
            f"quant[{i}] differs: container {stored_quant[i]}, stream {quant.ravel()[i]}"
        )
    stored = np.asarray(doc["coeffs"], dtype=np.int64)
    if stored.shape != coeffs.shape:
        raise ExtractorError(
            f"coefficient grid shape {stored.shape} does not match "
            f"{coeffs.shape[0]}x{coeffs.shape[1]}"
        )
    diff = stored != coeffs
    if np.any(diff):
        r, c = map(int, np.argwhere(diff)[0])
        raise ExtractorError(
            f"coeffs[{r}][{c}] differs: container {stored[r, c]}, "
            f"stream {coeffs[r, c]}"
        )
    return ExtractionRecord(
        source=str(jpeg_path),
        height=coeffs.shape[0],
        width=coeffs.shape[1],
        quant_table_id=tq,
        checksum=_checksum(coeffs),
    )
