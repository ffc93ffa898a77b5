"""Hash-chain secret evolution, keystream cipher, and hop-frequency derivation.

Both endpoints walk the same SHA-256 chain from a pre-shared 32-byte seed.
The per-message secret drives three derivations with distinct preimage
shapes (32, 41, and 40 bytes), so the roles can never collide:

  chain advance   next = SHA256(secret)
  keystream       block j = SHA256(secret || 0x01 || j as 8-byte big-endian)
  hop frequency   f_i = SHA256(secret || i as 8-byte big-endian)[:8] mod F

All operations are pure; values are immutable after construction.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .bits import as_bits, bits_from_bytes
from .errors import ParameterError

SECRET_SIZE = 32

_KEYSTREAM_TAG = b"\x01"


@dataclass(frozen=True)
class SecretChain:
    """A position on the shared hash chain: secret = chain-hash^index(seed)."""

    seed: bytes
    index: int
    secret: bytes

    @classmethod
    def from_seed(cls, seed: bytes) -> "SecretChain":
        if len(seed) != SECRET_SIZE:
            raise ParameterError(f"chain seed must be {SECRET_SIZE} bytes, got {len(seed)}")
        return cls(seed=bytes(seed), index=0, secret=bytes(seed))


def advance_secret(chain: SecretChain) -> SecretChain:
    """Step the chain once: a fresh shared secret for the next message."""
    return SecretChain(
        seed=chain.seed,
        index=chain.index + 1,
        secret=hashlib.sha256(chain.secret).digest(),
    )


def derive_frequency(secret: bytes, slot_index: int, frequency_count: int) -> int:
    """Map (secret, slot) to a hop frequency in [0, frequency_count)."""
    if frequency_count < 1:
        raise ParameterError("frequency_count must be >= 1")
    if slot_index < 0:
        raise ParameterError("slot_index must be non-negative")
    if len(secret) != SECRET_SIZE:
        raise ParameterError(f"secret must be {SECRET_SIZE} bytes")
    digest = hashlib.sha256(secret + slot_index.to_bytes(8, "big")).digest()
    return int.from_bytes(digest[:8], "big") % frequency_count


def hop_sequence(secret: bytes, slot_count: int, frequency_count: int) -> np.ndarray:
    """Hop frequencies for slots 0..slot_count-1; element i equals derive_frequency(secret, i, F)."""
    if frequency_count < 1:
        raise ParameterError("frequency_count must be >= 1")
    if slot_count < 0:
        raise ParameterError("slot_count must be non-negative")
    if len(secret) != SECRET_SIZE:
        raise ParameterError(f"secret must be {SECRET_SIZE} bytes")
    out = np.empty(slot_count, dtype=np.int64)
    sha256 = hashlib.sha256
    for i in range(slot_count):
        digest = sha256(secret + i.to_bytes(8, "big")).digest()
        out[i] = int.from_bytes(digest[:8], "big") % frequency_count
    return out


def _keystream(secret: bytes, bit_count: int) -> np.ndarray:
    blocks = []
    for j in range((bit_count + 255) // 256):
        blocks.append(hashlib.sha256(secret + _KEYSTREAM_TAG + j.to_bytes(8, "big")).digest())
    return bits_from_bytes(b"".join(blocks), bit_count)


def keystream_encrypt(message, secret: bytes) -> np.ndarray:
    """XOR a bit-string with the secret's keystream; length-preserving involution."""
    if len(secret) != SECRET_SIZE:
        raise ParameterError(f"secret must be {SECRET_SIZE} bytes")
    bits = as_bits(message)
    if bits.size == 0:
        return bits.copy()
    return bits ^ _keystream(secret, bits.size)


def keystream_decrypt(ciphertext, secret: bytes) -> np.ndarray:
    """Inverse of keystream_encrypt (the XOR keystream is its own inverse)."""
    return keystream_encrypt(ciphertext, secret)
