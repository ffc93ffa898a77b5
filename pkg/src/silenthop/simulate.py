"""Monte Carlo campaign harness, exhaustive small-instance oracle, and slot tracing.

Experiments sweep the jammed-frequency count for each codeword/message length
pair, running independent end-to-end exchanges with fresh random messages.
Every trial gets its own deterministic random stream derived by hashing
(master_seed, grid point id, trial index), so campaigns are reproducible
bit-for-bit regardless of execution order.
"""
from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, fields

import numpy as np

from .analysis import message_delivery_prob, message_delivery_prob_exact
from .bits import as_bits, bit_text, random_bits
from .channel import ChannelConfig, resolve_slot, resolve_slots
from .crypto import SecretChain
from .ecc import EccConfig, decode, encode
from .errors import InfeasibleOracleError, ParameterError
from .protocol import Dictionary, receive_message, run_exchange, transmit_plan

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

ORACLE_MAX_ZERO_SLOTS = 20

CSV_COLUMNS = ("F", "A", "p_a", "n", "L_m", "trials", "delivery_rate",
               "q05", "q50", "q95", "theory", "theory_exact", "seed")


def split_seed(master_seed: int, *parts) -> int:
    """Derive a 64-bit sub-stream seed by hashing master_seed and labels."""
    if not 0 <= int(master_seed) < 2**64:
        raise ParameterError("master_seed must fit in 64 unsigned bits")
    digest = hashlib.sha256(int(master_seed).to_bytes(8, "big"))
    for part in parts:
        digest.update(str(part).encode("utf-8"))
        digest.update(b"\x1f")
    return int.from_bytes(digest.digest()[:8], "big")


def split_rng(master_seed: int, *parts) -> np.random.Generator:
    """A PCG64 generator on the sub-stream named by the label parts."""
    return np.random.default_rng(split_seed(master_seed, *parts))


@dataclass
class ExperimentConfig:
    """One sweep campaign: the grid, the trial budget, and the output target."""

    frequency_count: int
    jammed_counts: list
    codeword_lengths: list
    message_lengths: list
    trials: int = 10_000
    batches: int = 100
    master_seed: int = 0
    energy_mode: str = "binary"
    output_path: str = "sweep.csv"

    def __post_init__(self):
        if self.frequency_count < 1:
            raise ParameterError("frequency_count must be >= 1")
        for name in ("jammed_counts", "codeword_lengths", "message_lengths"):
            values = list(getattr(self, name))
            if not values:
                raise ParameterError(f"{name} must be non-empty")
            setattr(self, name, [int(v) for v in values])
        for a in self.jammed_counts:
            if not 0 <= a <= self.frequency_count:
                raise ParameterError(f"jammed count {a} outside [0, {self.frequency_count}]")
        for n in self.codeword_lengths:
            if n < 1:
                raise ParameterError("codeword lengths must be >= 1")
        for lm in self.message_lengths:
            if lm < 1:
                raise ParameterError("message lengths must be >= 1")
        if self.trials < 1 or self.batches < 1 or self.trials % self.batches:
            raise ParameterError("trials must be a positive multiple of batches")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ParameterError("master_seed must fit in 64 unsigned bits")
        if self.energy_mode not in ("binary", "analog"):
            raise ParameterError(f"unknown energy_mode {self.energy_mode!r}")

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        """Parse a TOML config whose keys mirror the dataclass fields."""
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        missing = {"frequency_count", "jammed_counts", "codeword_lengths", "message_lengths"} - set(data)
        if missing:
            raise ParameterError(f"missing config keys: {sorted(missing)}")
        return cls(**data)


@dataclass
class SweepPoint:
    """Per-grid-point statistics with the matching closed-form predictions."""

    frequency_count: int
    jammed_count: int
    jam_prob: float
    codeword_length: int
    message_length: int
    trials: int
    delivery_rate: float
    q05: float
    q50: float
    q95: float
    theory: float
    theory_exact: float
    seed: int


def monte_carlo(config: ExperimentConfig, progress=None) -> list:
    """Run the full sweep; one SweepPoint per (n, L_m, A) grid point.

    Each trial draws a fresh message and chain seed from its own hashed
    sub-stream, runs one exchange, and records delivery. Quantiles are taken
    over per-batch delivery rates (config.batches batches).
    """
    points = []
    for n in config.codeword_lengths:
        ecc = EccConfig(n)
        for lm in config.message_lengths:
            for a in config.jammed_counts:
                channel = ChannelConfig(
                    frequency_count=config.frequency_count,
                    proactive_jammed_count=a,
                    energy_mode=config.energy_mode,
                )
                point_id = f"A={a}:n={n}:lm={lm}"
                delivered = np.empty(config.trials, dtype=bool)
                for k in range(config.trials):
                    rng = split_rng(config.master_seed, point_id, k)
                    message = random_bits(rng, lm)
                    seed = rng.bytes(32)
                    result = run_exchange(message, seed, channel, ecc, Dictionary([message]), rng)
                    delivered[k] = result.delivered
                batch_rates = delivered.reshape(config.batches, -1).mean(axis=1)
                q05, q50, q95 = np.quantile(batch_rates, [0.05, 0.5, 0.95])
                p_a = a / config.frequency_count
                point = SweepPoint(
                    frequency_count=config.frequency_count,
                    jammed_count=a,
                    jam_prob=p_a,
                    codeword_length=n,
                    message_length=lm,
                    trials=config.trials,
                    delivery_rate=float(delivered.mean()),
                    q05=float(q05),
                    q50=float(q50),
                    q95=float(q95),
                    theory=message_delivery_prob(p_a, n, lm),
                    theory_exact=message_delivery_prob_exact(p_a, n, lm),
                    seed=int(config.master_seed),
                )
                points.append(point)
                if progress is not None:
                    progress(point)
    return points


def write_csv(points, path) -> None:
    """Write sweep points in the fixed column order; output is byte-stable."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for p in points:
            writer.writerow([
                p.frequency_count, p.jammed_count, repr(p.jam_prob),
                p.codeword_length, p.message_length, p.trials,
                repr(p.delivery_rate), repr(p.q05), repr(p.q50), repr(p.q95),
                repr(p.theory), repr(p.theory_exact), p.seed,
            ])


def read_csv(path) -> list:
    """Read sweep points written by write_csv."""
    points = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != list(CSV_COLUMNS):
            raise ParameterError(f"unexpected CSV columns: {reader.fieldnames}")
        for row in reader:
            points.append(SweepPoint(
                frequency_count=int(row["F"]),
                jammed_count=int(row["A"]),
                jam_prob=float(row["p_a"]),
                codeword_length=int(row["n"]),
                message_length=int(row["L_m"]),
                trials=int(row["trials"]),
                delivery_rate=float(row["delivery_rate"]),
                q05=float(row["q05"]),
                q50=float(row["q50"]),
                q95=float(row["q95"]),
                theory=float(row["theory"]),
                theory_exact=float(row["theory_exact"]),
                seed=int(row["seed"]),
            ))
    return points


def exhaustive_oracle(frequency_count: int, jammed_count: int, n: int,
                      message_length: int, message) -> float:
    """Exact delivery probability of a fixed message by flip-pattern enumeration.

    Every subset of the encoded message's zero slots is taken as the jammed
    set and weighted by (A/F)**|S| * (1 - A/F)**(z - |S|); the weights of the
    subsets whose decode still equals the message are summed. Refuses
    instances with more than ORACLE_MAX_ZERO_SLOTS zero slots.
    """
    if frequency_count < 1:
        raise ParameterError("frequency_count must be >= 1")
    if not 0 <= jammed_count <= frequency_count:
        raise ParameterError("jammed_count must be in [0, frequency_count]")
    bits = as_bits(message)
    if bits.size != message_length:
        raise ParameterError(f"message has {bits.size} bits, message_length says {message_length}")
    EccConfig(n)  # validates n
    zero_bits = int(np.count_nonzero(bits == 0))
    zero_slots = zero_bits * n
    if zero_slots > ORACLE_MAX_ZERO_SLOTS:
        raise InfeasibleOracleError(
            f"{zero_slots} zero slots in the encoded message exceed the "
            f"{ORACLE_MAX_ZERO_SLOTS}-slot enumeration bound (2**{zero_slots} flip patterns)")
    if zero_slots == 0:
        return 1.0
    p = jammed_count / frequency_count
    masks = np.arange(1 << zero_slots, dtype=np.uint64)
    # the message survives unless some zero codeword has all n slots flipped
    survives = np.ones(masks.size, dtype=bool)
    full = np.uint64((1 << n) - 1)
    for g in range(zero_bits):
        survives &= ((masks >> np.uint64(g * n)) & full) != full
    flips = np.bitwise_count(masks).astype(np.int64)
    weights = np.power(p, flips) * np.power(1.0 - p, zero_slots - flips)
    return float(weights[survives].sum())


def fixed_message_delivery_rate(message, n: int, frequency_count: int, jammed_count: int,
                                trials: int, rng: np.random.Generator) -> float:
    """Monte Carlo twin of the oracle: the fixed message goes over the channel uncoded
    by the cipher, with uniform hop frequencies, and is decoded from sensed energy."""
    bits = as_bits(message)
    ecc = EccConfig(n)
    encoded = encode(bits, ecc)
    active = encoded.astype(bool)
    channel = ChannelConfig(frequency_count=frequency_count, proactive_jammed_count=jammed_count)
    delivered = 0
    for _ in range(trials):
        frequencies = rng.integers(0, frequency_count, size=encoded.size)
        batch = resolve_slots(channel, frequencies, active, rng)
        sensed = batch.energy_above_tau.astype(np.uint8)
        if np.array_equal(decode(sensed, ecc), bits):
            delivered += 1
    return delivered / trials


def trace(message, seed: int, channel_config: ChannelConfig, ecc_config: EccConfig) -> dict:
    """One fully logged exchange: per-slot records, bit-strings, and the verdict.

    The chain seed and the channel's random stream are both derived from seed,
    so a repeated call reproduces the log byte for byte.
    """
    bits = as_bits(message)
    chain_seed = hashlib.sha256(b"trace-chain\x1f" + int(seed).to_bytes(8, "big")).digest()
    rng = split_rng(seed, "trace-channel")
    plan = transmit_plan(bits, SecretChain.from_seed(chain_seed), ecc_config, channel_config.frequency_count)
    outcomes = [
        resolve_slot(channel_config, i, freq, active, rng)
        for i, freq, active in plan
    ]
    for outcome in outcomes:
        if outcome.direct_reception:
            outcome.payload = plan.encrypted
    result = receive_message(
        outcomes,
        SecretChain.from_seed(chain_seed),
        ecc_config,
        Dictionary([bits]),
        channel_config.tau,
        expected_encoded=plan.encoded,
    )
    slots = [{
        "slot": o.slot_index,
        "frequency": o.frequency,
        "active": o.tx_active,
        "reactive_jam": o.reactively_jammed,
        "proactive_jam": o.proactively_jammed,
        "sensed": int(o.rss >= channel_config.tau),
    } for o in outcomes]
    return {
        "seed": int(seed),
        "frequency_count": channel_config.frequency_count,
        "jammed_count": channel_config.proactive_jammed_count,
        "codeword_length": ecc_config.codeword_length,
        "message": bit_text(bits),
        "encrypted": bit_text(plan.encrypted),
        "encoded": bit_text(plan.encoded),
        "slots": slots,
        "sensed": bit_text(result.sensed) if result.sensed is not None else "",
        "decoded": bit_text(decode(result.sensed, ecc_config)) if not result.via_direct_reception else None,
        "recovered": bit_text(result.recovered) if result.recovered is not None else None,
        "delivered": result.delivered,
        "via_direct_reception": result.via_direct_reception,
        "slots_used": result.slots_used,
        "bit_errors_pre_decode": result.bit_errors_pre_decode,
    }


def render_trace_text(log: dict) -> str:
    """Fixed-width text rendering of a trace dict."""
    lines = [
        f"slots={len(log['slots'])} freqs={log['frequency_count']} "
        f"jammed={log['jammed_count']} n={log['codeword_length']} seed={log['seed']}",
        f"message   = {log['message']}",
        f"encrypted = {log['encrypted']}",
        f"encoded   = {log['encoded']}",
        "",
        " slot  freq  state            sensed",
    ]
    for s in log["slots"]:
        state = "active" if s["active"] else "silent"
        if s["reactive_jam"]:
            state += "+rjam"
        if s["proactive_jam"]:
            state += "+pjam"
        lines.append(f"{s['slot']:5d} {s['frequency']:5d}  {state:<16s} {s['sensed']:6d}")
    lines.append("")
    lines.append(f"sensed    = {log['sensed']}")
    if log["decoded"] is not None:
        lines.append(f"decoded   = {log['decoded']}")
    lines.append(f"recovered = {log['recovered'] if log['recovered'] is not None else '<error>'}")
    how = "direct reception" if log["via_direct_reception"] else "energy sensing"
    verdict = "delivered" if log["delivered"] else "NOT delivered"
    lines.append(
        f"verdict: {verdict} via {how} in {log['slots_used']} slots, "
        f"{log['bit_errors_pre_decode']} pre-decode bit errors")
    return "\n".join(lines) + "\n"
