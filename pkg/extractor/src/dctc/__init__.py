"""Quantized-coefficient extraction from baseline JPEG files."""

from .extract import ExtractionRecord, ExtractorError, extract, verify
from .jpegdec import JpegError, decode_luminance

__version__ = "0.1.0"

__all__ = [
    "ExtractionRecord",
    "ExtractorError",
    "JpegError",
    "decode_luminance",
    "extract",
    "verify",
]
