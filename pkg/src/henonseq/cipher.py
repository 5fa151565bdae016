"""Vernam stream cipher keyed by a generator configuration.

No authentication, nonces or key management: identical configurations
produce identical keystreams, so a key must never encrypt two messages.
"""
from __future__ import annotations

from typing import BinaryIO

import numpy as np

from .bitgen import GeneratorConfig, HenonBitStream

CHUNK = 1 << 16


def xor_keystream(data: bytes, key: bytes) -> bytes:
    if len(data) != len(key):
        raise ValueError("keystream length must equal data length")
    return (np.frombuffer(data, np.uint8) ^ np.frombuffer(key, np.uint8)).tobytes()


def vernam(data: bytes, cfg: GeneratorConfig) -> bytes:
    """XOR ``data`` with the MSB-first packed keystream; its own inverse."""
    if not data:
        return b""
    return xor_keystream(data, HenonBitStream(cfg).read_bytes(len(data)))


def vernam_stream(src: BinaryIO, dst: BinaryIO, cfg: GeneratorConfig, chunk: int = CHUNK) -> int:
    """Chunked :func:`vernam` between binary file objects; returns bytes written."""
    stream = None
    total = 0
    while True:
        block = src.read(chunk)
        if not block:
            break
        if stream is None:
            stream = HenonBitStream(cfg)
        key = stream.read_bytes(len(block))
        dst.write(xor_keystream(block, key))
        total += len(block)
    return total
