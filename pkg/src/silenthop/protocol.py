"""Transmitter and receiver state machines for the silent-slot exchange.

One message exchange: both sides advance the shared chain once, the sender
encrypts and repetition-encodes the message, then spends one slot per encoded
bit, transmitting the encrypted message on the hop frequency for a 1 and
keeping radio silence for a 0. The receiver first tries to receive each slot
directly; failing that it logs the slot's energy as a bit, and after the last
slot decodes, decrypts, and accepts only a dictionary member.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import as_bits, bits_from_hex, bytes_from_bits
from .channel import ChannelConfig, SlotBatch, resolve_slots
from .crypto import SecretChain, advance_secret, hop_sequence, keystream_decrypt, keystream_encrypt
from .ecc import EccConfig, asymmetric_distance, decode, encode
from .errors import ParameterError


def _key(bits: np.ndarray) -> tuple:
    return (int(bits.size), bytes_from_bits(bits))


class Dictionary:
    """The finite shared set of valid messages; membership is the integrity check."""

    def __init__(self, messages):
        keys = set()
        length = None
        for message in messages:
            bits = as_bits(message)
            if bits.size == 0:
                raise ParameterError("dictionary messages must be non-empty")
            if length is None:
                length = bits.size
            elif bits.size != length:
                raise ParameterError("dictionary messages must share one length")
            keys.add(_key(bits))
        if length is None:
            raise ParameterError("dictionary must contain at least one message")
        self._keys = frozenset(keys)
        self._length = length

    @classmethod
    def from_file(cls, path) -> "Dictionary":
        """Load one lowercase-hex message per line; '#' lines and blanks ignored."""
        messages = []
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if line != line.lower():
                    raise ParameterError(f"{path}:{lineno}: messages must be lowercase hex")
                messages.append(bits_from_hex(line))
        return cls(messages)

    @property
    def message_length(self) -> int:
        return self._length

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, message) -> bool:
        bits = as_bits(message)
        return bits.size == self._length and _key(bits) in self._keys


@dataclass(frozen=True)
class TransmitPlan:
    """The sender's slot schedule for one message, plus the intermediate bit-strings."""

    chain: SecretChain
    encrypted: np.ndarray
    encoded: np.ndarray
    frequencies: np.ndarray
    tx_active: np.ndarray

    def __len__(self) -> int:
        return self.frequencies.size

    def __iter__(self):
        """Yield (slot_index, frequency, tx_active) per slot, in slot order."""
        for i in range(len(self)):
            yield i, int(self.frequencies[i]), bool(self.tx_active[i])


@dataclass
class ExchangeResult:
    """Outcome of one full message transmission attempt."""

    delivered: bool
    via_direct_reception: bool
    slots_used: int
    bit_errors_pre_decode: int
    recovered: np.ndarray | None
    sensed: np.ndarray | None = None


def transmit_plan(message, chain: SecretChain, ecc: EccConfig, frequency_count: int) -> TransmitPlan:
    """Advance the chain, encrypt and encode the message, schedule the slots."""
    bits = as_bits(message)
    advanced = advance_secret(chain)
    encrypted = keystream_encrypt(bits, advanced.secret)
    encoded = encode(encrypted, ecc)
    frequencies = hop_sequence(advanced.secret, encoded.size, frequency_count)
    return TransmitPlan(
        chain=advanced,
        encrypted=encrypted,
        encoded=encoded,
        frequencies=frequencies,
        tx_active=encoded.astype(bool),
    )


def _as_arrays(slot_outcomes):
    """Normalise a SlotBatch or a sequence of SlotOutcome into sensing arrays."""
    if isinstance(slot_outcomes, SlotBatch):
        payloads = [None] * len(slot_outcomes)
        if slot_outcomes.payload is not None:
            for i in np.flatnonzero(slot_outcomes.direct_reception):
                payloads[int(i)] = slot_outcomes.payload
        return slot_outcomes.rss, slot_outcomes.direct_reception, payloads
    outcomes = list(slot_outcomes)
    rss = np.array([o.rss for o in outcomes], dtype=float)
    direct = np.array([o.direct_reception for o in outcomes], dtype=bool)
    payloads = [o.payload for o in outcomes]
    return rss, direct, payloads


def receive_message(
    slot_outcomes,
    chain: SecretChain,
    ecc: EccConfig,
    dictionary: Dictionary,
    tau: float,
    expected_encoded=None,
) -> ExchangeResult:
    """Run the receiver over resolved slots and attempt message recovery.

    Direct reception is attempted on every slot that carries a decodable
    transmission; the first one whose decrypted payload passes the dictionary
    check ends the exchange early. Otherwise each slot contributes one sensed
    energy bit, and the full bit-string is decoded and decrypted at the end.

    expected_encoded, when given, is the true transmitted encoded bit-string
    and is used only for the bit_errors_pre_decode diagnostic.
    """
    advanced = advance_secret(chain)
    rss, direct, payloads = _as_arrays(slot_outcomes)
    sensed = (rss >= tau).astype(np.uint8)
    expected = as_bits(expected_encoded) if expected_encoded is not None else None
    if expected is not None and expected.size != sensed.size:
        raise ParameterError("expected_encoded length must match the slot count")

    for i in np.flatnonzero(direct):
        payload = payloads[int(i)]
        if payload is None:
            continue
        candidate = keystream_decrypt(payload, advanced.secret)
        if candidate in dictionary:
            used = int(i) + 1
            prefix = sensed[: used - 1]
            errors = asymmetric_distance(expected[: used - 1], prefix) if expected is not None else 0
            return ExchangeResult(
                delivered=True,
                via_direct_reception=True,
                slots_used=used,
                bit_errors_pre_decode=errors,
                recovered=candidate,
                sensed=prefix,
            )

    decoded = decode(sensed, ecc)
    recovered = keystream_decrypt(decoded, advanced.secret)
    delivered = recovered in dictionary
    if expected is not None:
        errors = asymmetric_distance(expected, sensed)
    elif delivered:
        # reconstruct the true encoded string from the accepted message
        errors = asymmetric_distance(encode(keystream_encrypt(recovered, advanced.secret), ecc), sensed)
    else:
        errors = 0
    return ExchangeResult(
        delivered=delivered,
        via_direct_reception=False,
        slots_used=sensed.size,
        bit_errors_pre_decode=errors,
        recovered=recovered if delivered else None,
        sensed=sensed,
    )


def run_exchange(
    message,
    seed: bytes,
    channel_config: ChannelConfig,
    ecc_config: EccConfig,
    dictionary: Dictionary,
    rng: np.random.Generator,
) -> ExchangeResult:
    """Send one message end to end over the jammed channel and receive it."""
    bits = as_bits(message)
    if bits not in dictionary:
        raise ParameterError("message must be a dictionary member")
    plan = transmit_plan(bits, SecretChain.from_seed(seed), ecc_config, channel_config.frequency_count)
    batch = resolve_slots(channel_config, plan.frequencies, plan.tx_active, rng)
    batch.payload = plan.encrypted
    return receive_message(
        batch,
        SecretChain.from_seed(seed),
        ecc_config,
        dictionary,
        channel_config.tau,
        expected_encoded=plan.encoded,
    )


__all__ = [
    "Dictionary",
    "TransmitPlan",
    "ExchangeResult",
    "transmit_plan",
    "receive_message",
    "run_exchange",
]
