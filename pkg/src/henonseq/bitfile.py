"""On-disk bit sequence formats.

``binary``
    16-byte header then the packed payload.  Header layout (little
    endian): magic ``b"HNSQ"``, version u8 (=1), format tag u8 (=1,
    packed MSB-first), reserved u16 (=0), bit count u64.  Payload is
    ceil(count / 8) bytes, padding bits zero.
``ascii``
    One '0' or '1' character per bit, nothing else; readable as-is by
    the NIST STS ASCII input mode.
``csv``
    Header line ``index,bit`` then one ``i,b`` row per bit, i from 1.
"""
from __future__ import annotations

import struct

from .bits import BitSequence
from .errors import BitFileError

MAGIC = b"HNSQ"
VERSION = 1
TAG_PACKED_MSB = 1
HEADER = struct.Struct("<4sBBHQ")
FORMATS = ("binary", "ascii", "csv")
CSV_HEADER = "index,bit"


def dumps(seq: BitSequence, fmt: str = "binary") -> bytes:
    if fmt == "binary":
        return HEADER.pack(MAGIC, VERSION, TAG_PACKED_MSB, 0, len(seq)) + seq.data
    if fmt == "ascii":
        return str(seq).encode("ascii")
    if fmt == "csv":
        rows = [CSV_HEADER] + [f"{i},{b}" for i, b in enumerate(seq, start=1)]
        return ("\n".join(rows) + "\n").encode("ascii")
    raise ValueError(f"unknown bit file format {fmt!r}")


def detect(raw: bytes) -> str:
    if raw.startswith(MAGIC):
        return "binary"
    if raw.lstrip().startswith(CSV_HEADER.encode()):
        return "csv"
    return "ascii"


def loads(raw: bytes, fmt: str | None = None) -> BitSequence:
    fmt = fmt or detect(raw)
    if fmt == "binary":
        return _load_binary(raw)
    if fmt == "ascii":
        try:
            return BitSequence.from_string(raw.decode("ascii"))
        except (UnicodeDecodeError, ValueError):
            raise BitFileError("ascii bit file may only contain '0', '1' and whitespace") from None
    if fmt == "csv":
        return _load_csv(raw)
    raise ValueError(f"unknown bit file format {fmt!r}")


def _load_binary(raw: bytes) -> BitSequence:
    if len(raw) < HEADER.size:
        raise BitFileError(f"truncated header: {len(raw)} of {HEADER.size} bytes")
    magic, version, tag, _, count = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise BitFileError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise BitFileError(f"unsupported bit file version {version}")
    if tag != TAG_PACKED_MSB:
        raise BitFileError(f"unsupported format tag {tag}")
    payload = raw[HEADER.size :]
    need = (count + 7) // 8
    if len(payload) < need:
        raise BitFileError(f"truncated payload: {len(payload)} of {need} bytes for {count} bits")
    if len(payload) > need:
        raise BitFileError(f"{len(payload) - need} trailing bytes after payload")
    return BitSequence(payload, count)


def _load_csv(raw: bytes) -> BitSequence:
    lines = raw.decode("ascii", errors="replace").split()
    if not lines or lines[0] != CSV_HEADER:
        raise BitFileError(f"csv bit file must start with {CSV_HEADER!r}")
    bits = []
    for expected, line in enumerate(lines[1:], start=1):
        try:
            i, b = line.split(",")
            i, b = int(i), int(b)
        except ValueError:
            raise BitFileError(f"malformed csv row {line!r}") from None
        if i != expected or b not in (0, 1):
            raise BitFileError(f"bad csv row {line!r} at position {expected}")
        bits.append(b)
    return BitSequence.from_bits(bits)


def read(path, fmt: str | None = None) -> BitSequence:
    with open(path, "rb") as fh:
        return loads(fh.read(), fmt)


def write(path, seq: BitSequence, fmt: str = "binary") -> None:
    with open(path, "wb") as fh:
        fh.write(dumps(seq, fmt))
