"""Per-slot radio model: hopping spectrum, proactive and reactive jamming, energy sensing.

The adversary senses every transmission and jams it (success probability
configurable, 1.0 by default), and in addition jams a fresh uniformly random
subset of proactive_jammed_count of the frequency_count channels each slot.
A silent slot therefore reads as energy with probability A/F; an active slot
always reads as energy, either from the transmission or from the jammer.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

BINARY = "binary"
ANALOG = "analog"


@dataclass(frozen=True)
class ChannelConfig:
    """Channel and adversary parameters for one experiment.

    Binary mode abstracts received signal strength to 0/1 energy units; analog
    mode draws an exponential noise floor and adds signal/jamming power, then
    compares against the threshold tau. one_to_zero_prob forces an otherwise
    energetic slot below tau (signal cancellation), 0 by default.
    """

    frequency_count: int
    proactive_jammed_count: int = 0
    reactive_success_prob: float = 1.0
    one_to_zero_prob: float = 0.0
    energy_mode: str = BINARY
    noise_floor_power: float = 0.1
    signal_power: float = 100.0
    jam_power: float = 100.0
    tau: float = 1.0

    def __post_init__(self):
        if self.frequency_count < 1:
            raise ParameterError("frequency_count must be >= 1")
        if not 0 <= self.proactive_jammed_count <= self.frequency_count:
            raise ParameterError("proactive_jammed_count must be in [0, frequency_count]")
        for name in ("reactive_success_prob", "one_to_zero_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ParameterError(f"{name} must be in [0, 1]")
        if self.energy_mode not in (BINARY, ANALOG):
            raise ParameterError(f"unknown energy_mode {self.energy_mode!r}")
        if self.energy_mode == ANALOG:
            if not self.noise_floor_power < self.tau <= min(self.signal_power, self.jam_power):
                raise ParameterError("analog mode requires noise_floor_power < tau <= min(signal_power, jam_power)")

    @property
    def jam_prob(self) -> float:
        """Probability that a given silent slot's frequency is proactively jammed."""
        return self.proactive_jammed_count / self.frequency_count


@dataclass
class SlotOutcome:
    """What happened on the air during one slot, as seen by the receiver."""

    slot_index: int
    frequency: int
    tx_active: bool
    reactively_jammed: bool
    proactively_jammed: bool
    rss: float
    energy_above_tau: bool
    direct_reception: bool
    payload: np.ndarray | None = None


@dataclass
class SlotBatch:
    """Array-of-slots view over a resolved run; indexable into SlotOutcome."""

    start_index: int
    frequencies: np.ndarray
    tx_active: np.ndarray
    reactively_jammed: np.ndarray
    proactively_jammed: np.ndarray
    rss: np.ndarray
    energy_above_tau: np.ndarray
    direct_reception: np.ndarray
    payload: np.ndarray | None = field(default=None)

    def __len__(self) -> int:
        return self.frequencies.size

    def __getitem__(self, i: int) -> SlotOutcome:
        if not 0 <= i < len(self):
            raise IndexError(i)
        carried = self.payload if (self.direct_reception[i] and self.payload is not None) else None
        return SlotOutcome(
            slot_index=self.start_index + i,
            frequency=int(self.frequencies[i]),
            tx_active=bool(self.tx_active[i]),
            reactively_jammed=bool(self.reactively_jammed[i]),
            proactively_jammed=bool(self.proactively_jammed[i]),
            rss=float(self.rss[i]),
            energy_above_tau=bool(self.energy_above_tau[i]),
            direct_reception=bool(self.direct_reception[i]),
            payload=carried,
        )

    def outcomes(self):
        return [self[i] for i in range(len(self))]


def jam_selection(rng: np.random.Generator, frequency_count: int, jammed_count: int) -> set:
    """Draw the jammer's fresh uniform subset of jammed_count distinct frequencies."""
    if frequency_count < 1:
        raise ParameterError("frequency_count must be >= 1")
    if not 0 <= jammed_count <= frequency_count:
        raise ParameterError("jammed_count must be in [0, frequency_count]")
    if jammed_count == 0:
        return set()
    if jammed_count == frequency_count:
        return set(range(frequency_count))
    return {int(f) for f in rng.choice(frequency_count, size=jammed_count, replace=False)}


def resolve_slot(
    config: ChannelConfig,
    slot_index: int,
    frequency: int,
    tx_active: bool,
    rng: np.random.Generator,
) -> SlotOutcome:
    """Resolve one slot, drawing the jammer's full frequency subset when idle."""
    if not 0 <= frequency < config.frequency_count:
        raise ParameterError(f"frequency {frequency} out of range [0, {config.frequency_count})")
    if tx_active:
        reactive = rng.random() < config.reactive_success_prob
        proactive = False
    else:
        reactive = False
        proactive = frequency in jam_selection(
            rng, config.frequency_count, config.proactive_jammed_count
        )
    energetic = tx_active or proactive
    cancelled = energetic and config.one_to_zero_prob > 0 and rng.random() < config.one_to_zero_prob
    direct = tx_active and not reactive and not cancelled
    if config.energy_mode == BINARY:
        rss = 1.0 if (energetic and not cancelled) else 0.0
    else:
        rss = float(rng.exponential(config.noise_floor_power))
        if not cancelled:
            if tx_active:
                rss += config.signal_power
            if reactive or proactive:
                rss += config.jam_power
        else:
            rss = 0.0
    return SlotOutcome(
        slot_index=slot_index,
        frequency=frequency,
        tx_active=tx_active,
        reactively_jammed=reactive,
        proactively_jammed=proactive,
        rss=rss,
        energy_above_tau=rss >= config.tau,
        direct_reception=direct,
    )


def resolve_slots(
    config: ChannelConfig,
    frequencies,
    tx_active,
    rng: np.random.Generator,
    start_index: int = 0,
) -> SlotBatch:
    """Resolve a run of slots at once.

    Equivalent in distribution to calling resolve_slot per slot: membership of
    the slot's single frequency in a fresh uniform A-of-F subset is Bernoulli
    with rate A/F, independently across slots, so silent-slot jamming is drawn
    directly at that rate instead of materialising each subset.
    """
    freqs = np.ascontiguousarray(frequencies, dtype=np.int64)
    active = np.ascontiguousarray(tx_active, dtype=bool)
    if freqs.shape != active.shape or freqs.ndim != 1:
        raise ParameterError("frequencies and tx_active must be 1-d arrays of equal length")
    if freqs.size and (freqs.min() < 0 or freqs.max() >= config.frequency_count):
        raise ParameterError("frequency out of range")
    slots = freqs.size

    if config.reactive_success_prob >= 1.0:
        reactive = active.copy()
    else:
        reactive = active & (rng.random(slots) < config.reactive_success_prob)

    proactive = np.zeros(slots, dtype=bool)
    silent = ~active
    if config.proactive_jammed_count and silent.any():
        proactive[silent] = rng.random(int(silent.sum())) < config.jam_prob

    energetic = active | proactive
    if config.one_to_zero_prob > 0:
        cancelled = energetic & (rng.random(slots) < config.one_to_zero_prob)
    else:
        cancelled = np.zeros(slots, dtype=bool)
    direct = active & ~reactive & ~cancelled

    if config.energy_mode == BINARY:
        rss = np.where(energetic & ~cancelled, 1.0, 0.0)
    else:
        rss = rng.exponential(config.noise_floor_power, size=slots)
        rss = rss + config.signal_power * (active & ~cancelled)
        rss = rss + config.jam_power * ((reactive | proactive) & ~cancelled)
        rss[cancelled] = 0.0

    return SlotBatch(
        start_index=start_index,
        frequencies=freqs,
        tx_active=active,
        reactively_jammed=reactive,
        proactively_jammed=proactive,
        rss=rss,
        energy_above_tau=rss >= config.tau,
        direct_reception=direct,
    )


def sense_energy(outcome: SlotOutcome, tau: float) -> bool:
    """The receiver's per-slot decision: does measured energy reach the threshold."""
    return outcome.rss >= tau
