"""Bit-string helpers shared by the coding, crypto, and protocol layers.

A bit-string is a one-dimensional numpy uint8 array of 0/1 values. When
packed into bytes the first bit of the string is the most significant bit
of the first byte.
"""
from __future__ import annotations

import numpy as np

from .errors import ParameterError


def as_bits(values) -> np.ndarray:
    """Coerce a sequence of 0/1 values to a canonical bit array."""
    arr = np.asarray(values, dtype=np.uint8)
    if arr.ndim != 1:
        raise ParameterError("bit-string must be one-dimensional")
    if arr.size and arr.max(initial=0) > 1:
        raise ParameterError("bit-string values must be 0 or 1")
    return arr


def bits_from_bytes(data: bytes, bit_count: int | None = None) -> np.ndarray:
    """Unpack bytes into bits, optionally truncated to bit_count."""
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if bit_count is not None:
        if bit_count > bits.size:
            raise ParameterError(f"requested {bit_count} bits from {bits.size} available")
        bits = bits[:bit_count]
    return bits


def bytes_from_bits(bits) -> bytes:
    """Pack bits into bytes, zero-padding the final byte."""
    return np.packbits(as_bits(bits)).tobytes()


def bits_from_hex(text: str) -> np.ndarray:
    """Parse a hex string into bits, 4 bits per hex character."""
    out = np.empty(4 * len(text), dtype=np.uint8)
    for k, ch in enumerate(text):
        try:
            value = int(ch, 16)
        except ValueError:
            raise ParameterError(f"invalid hex character {ch!r}") from None
        out[4 * k : 4 * k + 4] = [(value >> 3) & 1, (value >> 2) & 1, (value >> 1) & 1, value & 1]
    return out


def hex_from_bits(bits) -> str:
    """Render bits as lowercase hex; length must be a multiple of 4."""
    arr = as_bits(bits)
    if arr.size % 4:
        raise ParameterError("bit count must be a multiple of 4 for hex rendering")
    nibbles = arr.reshape(-1, 4)
    values = nibbles[:, 0] * 8 + nibbles[:, 1] * 4 + nibbles[:, 2] * 2 + nibbles[:, 3]
    return "".join("0123456789abcdef"[v] for v in values)


def bit_text(bits) -> str:
    """Render bits as a '0'/'1' string for logs and traces."""
    return "".join("01"[b] for b in as_bits(bits))


def random_bits(rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw count uniform bits from rng."""
    return rng.integers(0, 2, size=count, dtype=np.uint8)
