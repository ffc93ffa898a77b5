"""Jamming-resilient slotted communication via silent/active signaling.

A transmitter and receiver share a hash-chain secret that drives frequency
hopping and a keystream cipher. Message bits are repetition-encoded; 1-bits
are sent as (jammed) transmissions, 0-bits as radio silence, and the receiver
reconstructs the message from per-slot energy readings. The package bundles
the protocol simulator, the closed-form delivery analysis, and a Monte Carlo
sweep harness with CSV and figure output.
"""

from .analysis import (codeword_delivery_prob, max_jamming_resiliency,
                       message_delivery_lower_bound, message_delivery_prob,
                       message_delivery_prob_exact, required_codeword_length,
                       required_codeword_length_real)
from .channel import ChannelConfig, SlotBatch, SlotOutcome, jam_selection, resolve_slot, resolve_slots, sense_energy
from .crypto import SecretChain, advance_secret, derive_frequency, hop_sequence, keystream_decrypt, keystream_encrypt
from .ecc import EccConfig, asymmetric_distance, decode, encode
from .errors import InfeasibleOracleError, ParameterError
from .protocol import Dictionary, ExchangeResult, TransmitPlan, receive_message, run_exchange, transmit_plan
from .simulate import (ExperimentConfig, SweepPoint, exhaustive_oracle,
                       fixed_message_delivery_rate, monte_carlo, read_csv,
                       split_rng, split_seed, trace, write_csv)

__version__ = "0.1.0"
