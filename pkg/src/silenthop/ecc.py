"""Repetition code for a channel that only ever flips bits 0 -> 1.

Each message bit is repeated n times. Because a transmitted 1 can never be
erased, a received codeword decodes to 1 only when all n bits are 1; any
other pattern must have started as the all-zeros codeword, so up to n-1
flipped positions per codeword are corrected for free.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import as_bits
from .errors import ParameterError


@dataclass(frozen=True)
class EccConfig:
    """Repetition-code parameters; codeword_length doubles as the minimum asymmetric distance."""

    codeword_length: int

    def __post_init__(self):
        if self.codeword_length < 1:
            raise ParameterError("codeword_length must be >= 1")

    @property
    def correctable_errors(self) -> int:
        return self.codeword_length - 1


def encode(message, config: EccConfig) -> np.ndarray:
    """Expand each message bit into codeword_length copies."""
    bits = as_bits(message)
    if bits.size == 0:
        raise ParameterError("cannot encode an empty message")
    return np.repeat(bits, config.codeword_length)


def decode(received, config: EccConfig) -> np.ndarray:
    """Per codeword: output 1 iff every received bit is 1, else 0."""
    bits = as_bits(received)
    n = config.codeword_length
    if bits.size == 0 or bits.size % n:
        raise ParameterError(f"received length {bits.size} is not a positive multiple of {n}")
    return bits.reshape(-1, n).min(axis=1)


def asymmetric_distance(x, y) -> int:
    """Count positions where x holds 0 and y holds 1 (0->1 crossovers only)."""
    xb = as_bits(x)
    yb = as_bits(y)
    if xb.size != yb.size:
        raise ParameterError(f"length mismatch: {xb.size} vs {yb.size}")
    return int(np.count_nonzero((xb == 0) & (yb == 1)))
