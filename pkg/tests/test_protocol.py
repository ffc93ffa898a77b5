"""Transmitter/receiver state-machine tests and full-exchange invariants."""
import hashlib

import numpy as np
import pytest

from silenthop.bits import as_bits, bit_text, random_bits
from silenthop.channel import ChannelConfig, SlotOutcome
from silenthop.crypto import SecretChain, advance_secret, derive_frequency, keystream_encrypt
from silenthop.ecc import EccConfig, encode
from silenthop.errors import ParameterError
from silenthop.protocol import Dictionary, receive_message, run_exchange, transmit_plan

SEED = hashlib.sha256(b"protocol-tests").digest()


def make_outcome(i, freq, active, proactive=False, reactive=None, rss=None):
    reactive = active if reactive is None else reactive
    energetic = (active or proactive)
    rss = (1.0 if energetic else 0.0) if rss is None else rss
    return SlotOutcome(
        slot_index=i, frequency=freq, tx_active=active,
        reactively_jammed=reactive, proactively_jammed=proactive,
        rss=rss, energy_above_tau=rss >= 1.0,
        direct_reception=active and not reactive,
    )


def test_plan_shape_and_frequencies():
    message = random_bits(np.random.default_rng(0), 8)
    plan = transmit_plan(message, SecretChain.from_seed(SEED), EccConfig(8), 5)
    assert len(plan) == 64
    triples = list(plan)
    assert [t[0] for t in triples] == list(range(64))
    secret = advance_secret(SecretChain.from_seed(SEED)).secret
    for i, freq, active in triples:
        assert freq == derive_frequency(secret, i, 5)
        assert active == bool(plan.encoded[i])
    assert np.array_equal(plan.encoded, encode(plan.encrypted, EccConfig(8)))


def test_plan_all_silent_when_ciphertext_is_zero():
    # pick the message that encrypts to all zeros under the advanced secret
    secret = advance_secret(SecretChain.from_seed(SEED)).secret
    message = keystream_encrypt(np.zeros(16, dtype=np.uint8), secret)
    plan = transmit_plan(message, SecretChain.from_seed(SEED), EccConfig(4), 7)
    assert not plan.tx_active.any()
    assert int(plan.encoded.sum()) == 0


def test_plan_active_fraction_near_half():
    rng = np.random.default_rng(1)
    active = 0
    total = 0
    for _ in range(1000):
        message = random_bits(rng, 128)
        plan = transmit_plan(message, SecretChain.from_seed(rng.bytes(32)), EccConfig(16), 124)
        active += int(plan.tx_active.sum())
        total += len(plan)
    assert abs(active / total - 0.5) < 0.02


def test_receive_all_slots_clean():
    message = random_bits(np.random.default_rng(2), 8)
    plan = transmit_plan(message, SecretChain.from_seed(SEED), EccConfig(8), 5)
    outcomes = [make_outcome(i, f, a) for i, f, a in plan]
    result = receive_message(outcomes, SecretChain.from_seed(SEED), EccConfig(8),
                             Dictionary([message]), 1.0, expected_encoded=plan.encoded)
    assert result.delivered
    assert not result.via_direct_reception
    assert result.bit_errors_pre_decode == 0
    assert np.array_equal(result.recovered, message)


def test_receive_corrects_flips_across_distinct_codewords():
    # five silent slots in five different zero codewords are jammed; all corrected
    n = 8
    secret = advance_secret(SecretChain.from_seed(SEED)).secret
    # choose the message whose ciphertext has zeros exactly where we want them
    target_ciphertext = as_bits([0, 1, 0, 0, 1, 0, 0, 1])
    message = keystream_encrypt(target_ciphertext, secret)
    plan = transmit_plan(message, SecretChain.from_seed(SEED), EccConfig(n), 5)
    assert np.array_equal(plan.encrypted, target_ciphertext)
    zero_codewords = np.flatnonzero(plan.encrypted == 0)
    assert zero_codewords.size >= 5
    flip_slots = {int(c) * n + int(c) % n for c in zero_codewords[:5]}
    outcomes = [
        make_outcome(i, f, a, proactive=(i in flip_slots))
        for i, f, a in plan
    ]
    result = receive_message(outcomes, SecretChain.from_seed(SEED), EccConfig(n),
                             Dictionary([message]), 1.0, expected_encoded=plan.encoded)
    assert result.delivered
    assert result.bit_errors_pre_decode == 5
    assert np.array_equal(result.recovered, message)


def test_receive_direct_reception_short_circuits():
    message = random_bits(np.random.default_rng(4), 8)
    plan = transmit_plan(message, SecretChain.from_seed(SEED), EccConfig(8), 5)
    first_active = int(np.flatnonzero(plan.tx_active)[0])
    outcomes = []
    for i, f, a in plan:
        o = make_outcome(i, f, a, reactive=False)
        if o.direct_reception:
            o.payload = plan.encrypted
        outcomes.append(o)
    result = receive_message(outcomes, SecretChain.from_seed(SEED), EccConfig(8),
                             Dictionary([message]), 1.0, expected_encoded=plan.encoded)
    assert result.delivered
    assert result.via_direct_reception
    assert result.slots_used == first_active + 1
    assert np.array_equal(result.recovered, message)


def test_desynchronized_chain_fails_integrity():
    message = random_bits(np.random.default_rng(5), 8)
    plan = transmit_plan(message, SecretChain.from_seed(SEED), EccConfig(8), 5)
    outcomes = [make_outcome(i, f, a) for i, f, a in plan]
    behind = advance_secret(SecretChain.from_seed(SEED))  # one step ahead of the sender
    result = receive_message(outcomes, behind, EccConfig(8), Dictionary([message]), 1.0)
    assert not result.delivered
    assert result.recovered is None


def test_run_exchange_perfect_when_unjammed():
    rng = np.random.default_rng(6)
    config = ChannelConfig(frequency_count=124, proactive_jammed_count=0)
    for _ in range(100):
        message = random_bits(rng, 16)
        result = run_exchange(message, rng.bytes(32), config, EccConfig(4),
                              Dictionary([message]), rng)
        assert result.delivered
        assert not result.via_direct_reception
        assert result.slots_used == 64
        assert result.bit_errors_pre_decode == 0


def test_run_exchange_fails_under_total_jamming():
    rng = np.random.default_rng(7)
    config = ChannelConfig(frequency_count=124, proactive_jammed_count=124)
    message = random_bits(rng, 128)
    result = run_exchange(message, rng.bytes(32), config, EccConfig(8),
                          Dictionary([message]), rng)
    assert not result.delivered  # fails unless the ciphertext had no zero bit


def test_run_exchange_direct_reception_against_proactive_only_jammer():
    rng = np.random.default_rng(8)
    config = ChannelConfig(frequency_count=5, proactive_jammed_count=2, reactive_success_prob=0.0)
    for _ in range(50):
        message = random_bits(rng, 16)
        result = run_exchange(message, rng.bytes(32), config, EccConfig(8),
                              Dictionary([message]), rng)
        assert result.delivered
        assert result.via_direct_reception
        assert result.slots_used < 128


def test_run_exchange_delivery_rate_tracks_theory():
    # F=124, A=62, n=16: per-message delivery probability ~0.9990
    rng = np.random.default_rng(9)
    config = ChannelConfig(frequency_count=124, proactive_jammed_count=62)
    trials = 400
    delivered = 0
    for _ in range(trials):
        message = random_bits(rng, 128)
        delivered += run_exchange(message, rng.bytes(32), config, EccConfig(16),
                                  Dictionary([message]), rng).delivered
    sigma = (0.999 * 0.001 / trials) ** 0.5
    assert abs(delivered / trials - 0.99902) <= 3 * sigma + 1e-9


def test_all_ones_preservation_and_asymmetry():
    rng = np.random.default_rng(10)
    config = ChannelConfig(frequency_count=8, proactive_jammed_count=4)
    ecc = EccConfig(4)
    for _ in range(100):
        message = random_bits(rng, 16)
        seed = rng.bytes(32)
        result = run_exchange(message, seed, config, ecc, Dictionary([message]), rng)
        secret = advance_secret(SecretChain.from_seed(seed)).secret
        encoded = encode(keystream_encrypt(message, secret), ecc)
        assert result.sensed is not None
        assert np.all(result.sensed[encoded == 1] == 1)
        flips = int(np.count_nonzero((encoded == 0) & (result.sensed == 1)))
        assert result.bit_errors_pre_decode == flips


def test_run_exchange_requires_dictionary_membership():
    rng = np.random.default_rng(11)
    message = random_bits(rng, 8)
    other = 1 - message
    with pytest.raises(ParameterError):
        run_exchange(message, rng.bytes(32), ChannelConfig(frequency_count=4),
                     EccConfig(2), Dictionary([other]), rng)


def test_dictionary_membership_and_file_round_trip(tmp_path):
    d = Dictionary([[0, 1, 1, 0], [1, 1, 1, 1]])
    assert [0, 1, 1, 0] in d
    assert [0, 0, 0, 0] not in d
    assert [0, 1] not in d
    assert len(d) == 2
    assert d.message_length == 4

    path = tmp_path / "dictionary.txt"
    path.write_text("# shared message set\n6\nf\n\n0\n", encoding="utf-8")
    loaded = Dictionary.from_file(path)
    assert len(loaded) == 3
    assert [0, 1, 1, 0] in loaded
    assert [1, 1, 1, 1] in loaded
    assert [0, 0, 0, 0] in loaded
    assert [1, 0, 0, 1] not in loaded


def test_dictionary_rejects_bad_input(tmp_path):
    with pytest.raises(ParameterError):
        Dictionary([])
    with pytest.raises(ParameterError):
        Dictionary([[0, 1], [0, 1, 1]])
    bad = tmp_path / "bad.txt"
    bad.write_text("0F\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        Dictionary.from_file(bad)
    nonhex = tmp_path / "nonhex.txt"
    nonhex.write_text("zz\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        Dictionary.from_file(nonhex)
