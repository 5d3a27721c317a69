"""Baseline JPEG entropy decoder.

Decodes just enough of a sequential baseline file (SOF0, Huffman coding) to
recover the quantized DCT coefficients of the luminance component, without
ever running the inverse transform. Interleaved multi-component scans,
subsampling, 8- and 16-bit quantization tables and restart intervals are
supported; progressive, arithmetic-coded and multi-scan files are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class JpegError(ValueError):
    """The file is not a baseline JPEG this decoder accepts."""


# Zigzag index -> natural (row-major) index.
ZIGZAG = (
    0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6, 7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
)

_SOF_UNSUPPORTED = {
    0xC1: "extended sequential", 0xC2: "progressive", 0xC3: "lossless",
    0xC5: "differential sequential", 0xC6: "differential progressive",
    0xC7: "differential lossless", 0xC9: "arithmetic sequential",
    0xCA: "arithmetic progressive", 0xCB: "arithmetic lossless",
    0xCD: "differential arithmetic sequential",
    0xCE: "differential arithmetic progressive",
    0xCF: "differential arithmetic lossless",
}


@dataclass
class _Component:
    cid: int
    h: int
    v: int
    tq: int
    td: int = 0
    ta: int = 0
    blocks: np.ndarray = field(default=None, repr=False)  # (rows, cols, 64) zigzag
    predictor: int = 0


class _BitReader:
    """MSB-first bit stream with 0xFF00 byte unstuffing."""

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos
        self.acc = 0
        self.nbits = 0

    def _next_byte(self) -> int:
        data = self.data
        if self.pos >= len(data):
            raise JpegError("entropy stream truncated")
        b = data[self.pos]
        if b != 0xFF:
            self.pos += 1
            return b
        if self.pos + 1 >= len(data):
            raise JpegError("entropy stream truncated")
        nxt = data[self.pos + 1]
        if nxt == 0x00:
            self.pos += 2
            return 0xFF
        raise JpegError(f"unexpected marker 0x{nxt:02x} inside entropy data")

    def read_bit(self) -> int:
        if self.nbits == 0:
            self.acc = self._next_byte()
            self.nbits = 8
        self.nbits -= 1
        return (self.acc >> self.nbits) & 1

    def receive(self, n: int) -> int:
        v = 0
        for _ in range(n):
            v = (v << 1) | self.read_bit()
        return v

    def consume_restart(self, expected: int) -> None:
        self.nbits = 0
        data = self.data
        if self.pos + 1 >= len(data) or data[self.pos] != 0xFF:
            raise JpegError("expected a restart marker")
        m = data[self.pos + 1]
        if m != 0xD0 + expected:
            raise JpegError(f"restart marker out of sequence (got 0x{m:02x})")
        self.pos += 2


def _build_huffman(bits, values):
    table = {}
    code = 0
    k = 0
    for size in range(1, 17):
        for _ in range(bits[size - 1]):
            table[(size, code)] = values[k]
            k += 1
            code += 1
        code <<= 1
    return table


def _decode_symbol(reader: _BitReader, table) -> int:
    code = 0
    for size in range(1, 17):
        code = (code << 1) | reader.read_bit()
        v = table.get((size, code))
        if v is not None:
            return v
    raise JpegError("invalid Huffman code")


def _extend(v: int, t: int) -> int:
    return v if v >= (1 << (t - 1)) else v - ((1 << t) - 1)


def _decode_block(reader, comp, dc_table, ac_table, out):
    t = _decode_symbol(reader, dc_table)
    if t > 11:
        raise JpegError(f"DC category {t} out of range")
    diff = _extend(reader.receive(t), t) if t else 0
    comp.predictor += diff
    out[0] = comp.predictor
    k = 1
    while k < 64:
        rs = _decode_symbol(reader, ac_table)
        r, s = rs >> 4, rs & 0x0F
        if s == 0:
            if r == 15:
                k += 16
                continue
            break  # end of block
        k += r
        if k > 63:
            raise JpegError("AC run past end of block")
        out[k] = _extend(reader.receive(s), s)
        k += 1


def _u16(data: bytes, pos: int) -> int:
    if pos + 2 > len(data):
        raise JpegError("file truncated inside a segment header")
    return (data[pos] << 8) | data[pos + 1]


def _parse_dqt(data, pos, length, quant):
    end = pos + length - 2
    while pos < end:
        pq, tq = data[pos] >> 4, data[pos] & 0x0F
        pos += 1
        if pq not in (0, 1):
            raise JpegError(f"quantization table precision {pq} invalid")
        if tq > 3:
            raise JpegError(f"quantization table id {tq} invalid")
        n = 64 * (2 if pq else 1)
        if pos + n > end:
            raise JpegError("quantization table truncated")
        if pq:
            zz = [(data[pos + 2 * i] << 8) | data[pos + 2 * i + 1] for i in range(64)]
        else:
            zz = [data[pos + i] for i in range(64)]
        pos += n
        natural = np.zeros(64, dtype=np.int64)
        natural[list(ZIGZAG)] = zz
        quant[tq] = natural.reshape(8, 8)
    return pos


def _parse_dht(data, pos, length, huff):
    end = pos + length - 2
    while pos < end:
        tc, th = data[pos] >> 4, data[pos] & 0x0F
        pos += 1
        if tc > 1 or th > 3:
            raise JpegError(f"Huffman table class {tc} id {th} invalid")
        if pos + 16 > end:
            raise JpegError("Huffman table truncated")
        bits = list(data[pos:pos + 16])
        pos += 16
        count = sum(bits)
        if pos + count > end:
            raise JpegError("Huffman table truncated")
        huff[(tc, th)] = _build_huffman(bits, list(data[pos:pos + count]))
        pos += count
    return pos


def _parse_sof0(data, pos, length):
    precision = data[pos]
    if precision != 8:
        raise JpegError(f"sample precision {precision} not supported")
    height = _u16(data, pos + 1)
    width = _u16(data, pos + 3)
    ncomp = data[pos + 5]
    if height == 0:
        raise JpegError("frame height deferred to DNL is not supported")
    if ncomp == 0 or ncomp > 4:
        raise JpegError(f"component count {ncomp} invalid")
    if 6 + 3 * ncomp != length - 2:
        raise JpegError("frame header length inconsistent")
    comps = []
    p = pos + 6
    for _ in range(ncomp):
        cid, hv, tq = data[p], data[p + 1], data[p + 2]
        h, v = hv >> 4, hv & 0x0F
        if not (1 <= h <= 4 and 1 <= v <= 4):
            raise JpegError(f"sampling factors {h}x{v} invalid")
        comps.append(_Component(cid=cid, h=h, v=v, tq=tq))
        p += 3
    return height, width, comps


def _decode_scan(data, pos, height, width, comps, huff, quant, interval):
    length = _u16(data, pos)
    ns = data[pos + 2]
    if ns != len(comps):
        raise JpegError(
            f"scan covers {ns} of {len(comps)} components; "
            f"only a single full scan is supported"
        )
    p = pos + 3
    order = []
    for _ in range(ns):
        cs, tables = data[p], data[p + 1]
        matches = [c for c in comps if c.cid == cs]
        if not matches:
            raise JpegError(f"scan references unknown component {cs}")
        comp = matches[0]
        comp.td, comp.ta = tables >> 4, tables & 0x0F
        order.append(comp)
        p += 2
    ss, se, a = data[p], data[p + 1], data[p + 2]
    if (ss, se, a) != (0, 63, 0):
        raise JpegError("spectral selection or successive approximation found; "
                        "only baseline scans are supported")
    for comp in order:
        if (0, comp.td) not in huff or (1, comp.ta) not in huff:
            raise JpegError(f"component {comp.cid} references undefined Huffman tables")
        if comp.tq not in quant:
            raise JpegError(f"component {comp.cid} references undefined "
                            f"quantization table {comp.tq}")

    hmax = max(c.h for c in comps)
    vmax = max(c.v for c in comps)
    if ns == 1:
        # A single-component scan is never interleaved: one block per MCU,
        # raster order over the component's own grid.
        comp = order[0]
        cw = -(-width * comp.h // hmax)
        ch = -(-height * comp.v // vmax)
        cols = -(-cw // 8)
        rows = -(-ch // 8)
        comp.blocks = np.zeros((rows, cols, 64), dtype=np.int32)
        units = [(comp, r, c) for r in range(rows) for c in range(cols)]
        per_mcu = 1
    else:
        mcus_x = -(-width // (8 * hmax))
        mcus_y = -(-height // (8 * vmax))
        for comp in comps:
            comp.blocks = np.zeros((mcus_y * comp.v, mcus_x * comp.h, 64), dtype=np.int32)
        units = []
        for my in range(mcus_y):
            for mx in range(mcus_x):
                for comp in order:
                    for dv in range(comp.v):
                        for dh in range(comp.h):
                            units.append((comp, my * comp.v + dv, mx * comp.h + dh))
        per_mcu = sum(c.h * c.v for c in order)

    reader = _BitReader(data, pos + length)
    n_mcus = len(units) // per_mcu
    rst = 0
    for m in range(n_mcus):
        if interval and m > 0 and m % interval == 0:
            reader.consume_restart(rst % 8)
            rst += 1
            for comp in order:
                comp.predictor = 0
        for comp, r, c in units[m * per_mcu:(m + 1) * per_mcu]:
            _decode_block(reader, comp, huff[(0, comp.td)], huff[(1, comp.ta)],
                          comp.blocks[r, c])
    return reader.pos


def decode_luminance(data: bytes):
    """Decode the first frame component of a baseline JPEG byte string.

    Returns (coeffs, quant, quant_table_id): the de-zigzagged coefficient
    plane in block layout, the natural-order quantization table it was coded
    with, and that table's id. The frame dimensions must be multiples of 8.
    """
    if len(data) < 4 or data[0] != 0xFF or data[1] != 0xD8:
        raise JpegError("not a JPEG file (missing SOI marker)")
    pos = 2
    quant: dict[int, np.ndarray] = {}
    huff: dict[tuple[int, int], dict] = {}
    frame = None
    interval = 0
    scan_done = False
    while True:
        if pos + 1 >= len(data):
            raise JpegError("file truncated before EOI")
        if data[pos] != 0xFF:
            raise JpegError(f"expected a marker at byte {pos}")
        while pos < len(data) and data[pos] == 0xFF:
            pos += 1
        if pos >= len(data):
            raise JpegError("file truncated before EOI")
        marker = data[pos]
        pos += 1
        if marker == 0xD9:  # EOI
            break
        if marker == 0x01 or 0xD0 <= marker <= 0xD7:
            continue  # standalone markers carry no segment
        length = _u16(data, pos)
        if length < 2 or pos + length > len(data):
            raise JpegError(f"segment 0x{marker:02x} truncated")
        body = pos + 2
        if marker == 0xDB:
            _parse_dqt(data, body, length, quant)
        elif marker == 0xC4:
            _parse_dht(data, body, length, huff)
        elif marker == 0xC0:
            if frame is not None:
                raise JpegError("multiple frames are not supported")
            frame = _parse_sof0(data, body, length)
        elif marker in _SOF_UNSUPPORTED:
            raise JpegError(f"{_SOF_UNSUPPORTED[marker]} JPEG is not supported; "
                            f"only baseline (SOF0) files are accepted")
        elif marker == 0xCC:
            raise JpegError("arithmetic conditioning tables are not supported")
        elif marker == 0xDD:
            if length != 4:
                raise JpegError("restart interval segment malformed")
            interval = _u16(data, body)
            pos = body + 2
            continue
        elif marker == 0xDA:
            if frame is None:
                raise JpegError("scan before frame header")
            if scan_done:
                raise JpegError("multiple scans are not supported")
            height, width, comps = frame
            pos = _decode_scan(data, pos, height, width, comps, huff, quant, interval)
            scan_done = True
            continue
        elif marker == 0xDC:
            raise JpegError("DNL segments are not supported")
        elif 0xE0 <= marker <= 0xEF or marker == 0xFE:
            pass  # application data and comments
        else:
            raise JpegError(f"unsupported marker 0x{marker:02x}")
        pos += length
    if frame is None or not scan_done:
        raise JpegError("no image data found")
    height, width, comps = frame
    if height % 8 or width % 8:
        raise JpegError(f"image dimensions {height}x{width} are not multiples of 8")
    luma = comps[0]
    rows, cols = height // 8, width // 8
    zz = luma.blocks[:rows, :cols]
    natural = np.zeros((rows, cols, 64), dtype=np.int64)
    natural[:, :, list(ZIGZAG)] = zz
    coeffs = natural.reshape(rows, cols, 8, 8).transpose(0, 2, 1, 3).reshape(height, width)
    if coeffs.min() < -1024 or coeffs.max() > 1023:
        raise JpegError("decoded coefficients leave the representable range; "
                        "stream is corrupt")
    return coeffs, quant[luma.tq], luma.tq
