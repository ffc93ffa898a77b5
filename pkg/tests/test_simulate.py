"""Harness tests: oracle, stream splitting, sweeps, CSV stability, tracing."""
import numpy as np
import pytest

from silenthop.bits import as_bits, random_bits
from silenthop.channel import ChannelConfig
from silenthop.ecc import EccConfig
from silenthop.errors import InfeasibleOracleError, ParameterError
from silenthop.simulate import (CSV_COLUMNS, ExperimentConfig, exhaustive_oracle,
                                fixed_message_delivery_rate, monte_carlo, read_csv,
                                render_trace_text, split_rng, split_seed, trace, write_csv)


def test_oracle_all_ones_message():
    assert exhaustive_oracle(10, 5, 4, 2, [1, 1]) == 1.0


def test_oracle_single_zero_bit():
    # both slots of the zero codeword must be hit: 1 - 0.5**2
    assert exhaustive_oracle(2, 1, 2, 1, [0]) == pytest.approx(0.75, abs=1e-15)


def test_oracle_example_three_zero_bits():
    value = exhaustive_oracle(4, 1, 2, 4, [0, 1, 0, 0])
    assert value == pytest.approx((1 - 0.0625) ** 3, abs=1e-12)


def test_oracle_matches_product_form():
    rng = np.random.default_rng(20)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        message = random_bits(rng, int(rng.integers(1, 7)))
        zeros = int(np.count_nonzero(message == 0))
        if zeros * n > 20:
            continue
        f, a = 8, int(rng.integers(0, 9))
        value = exhaustive_oracle(f, a, n, message.size, message)
        assert value == pytest.approx((1 - (a / f) ** n) ** zeros, abs=1e-12)


def test_oracle_refuses_infeasible():
    with pytest.raises(InfeasibleOracleError, match="enumeration bound"):
        exhaustive_oracle(4, 1, 4, 8, np.zeros(8, dtype=np.uint8))


def test_oracle_validates_inputs():
    with pytest.raises(ParameterError):
        exhaustive_oracle(4, 5, 2, 2, [0, 1])
    with pytest.raises(ParameterError):
        exhaustive_oracle(4, 1, 2, 3, [0, 1])  # message_length mismatch


def test_fixed_message_rate_matches_oracle():
    message = as_bits([0, 1, 0, 0])
    oracle = exhaustive_oracle(4, 1, 2, 4, message)
    rate = fixed_message_delivery_rate(message, 2, 4, 1, 4000, np.random.default_rng(21))
    sigma = (oracle * (1 - oracle) / 4000) ** 0.5
    assert abs(rate - oracle) <= 3 * sigma


def test_split_streams_are_stable_and_distinct():
    assert split_seed(7, "a", 0) == split_seed(7, "a", 0)
    assert split_seed(7, "a", 0) != split_seed(7, "a", 1)
    assert split_seed(7, "a", 0) != split_seed(8, "a", 0)
    a = split_rng(7, "x").random(4)
    b = split_rng(7, "x").random(4)
    assert np.array_equal(a, b)
    with pytest.raises(ParameterError):
        split_seed(2**64)


def _tiny_config(**overrides):
    base = dict(frequency_count=8, jammed_counts=[0, 4, 8], codeword_lengths=[4],
                message_lengths=[16], trials=100, batches=10, master_seed=42,
                output_path="sweep.csv")
    base.update(overrides)
    return ExperimentConfig(**base)


def test_monte_carlo_edge_rates():
    points = monte_carlo(_tiny_config())
    assert len(points) == 3
    assert points[0].jammed_count == 0 and points[0].delivery_rate == 1.0
    assert points[2].jammed_count == 8 and points[2].delivery_rate == 0.0
    for p in points:
        assert p.q05 <= p.q50 <= p.q95
        assert 0.0 <= p.delivery_rate <= 1.0
        assert p.trials == 100


def test_monte_carlo_tracks_theory_exact():
    config = _tiny_config(jammed_counts=[4], trials=2000, batches=100)
    point = monte_carlo(config)[0]
    sigma = (point.theory_exact * (1 - point.theory_exact) / 2000) ** 0.5
    assert abs(point.delivery_rate - point.theory_exact) <= 3 * sigma + 1e-12


def test_monte_carlo_is_deterministic():
    a = monte_carlo(_tiny_config())
    b = monte_carlo(_tiny_config())
    assert a == b
    c = monte_carlo(_tiny_config(master_seed=43))
    assert c != a


def test_quantiles_bracket_the_rate_on_most_points():
    config = _tiny_config(jammed_counts=[0, 2, 4, 6, 7, 8], trials=400, batches=20)
    points = monte_carlo(config)
    bracketed = sum(p.q05 <= p.delivery_rate <= p.q95 for p in points)
    assert bracketed >= 5


def test_csv_round_trip_and_stability(tmp_path):
    points = monte_carlo(_tiny_config())
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    write_csv(points, first)
    write_csv(monte_carlo(_tiny_config()), second)
    assert first.read_bytes() == second.read_bytes()
    header = first.read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)
    loaded = read_csv(first)
    assert loaded == points


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "experiment.toml"
    path.write_text(
        "frequency_count = 8\n"
        "jammed_counts = [0, 4]\n"
        "codeword_lengths = [4]\n"
        "message_lengths = [16]\n"
        "trials = 100\n"
        "batches = 10\n"
        "master_seed = 42\n"
        'energy_mode = "binary"\n'
        'output_path = "out.csv"\n',
        encoding="utf-8",
    )
    config = ExperimentConfig.from_file(path)
    assert config.frequency_count == 8
    assert config.jammed_counts == [0, 4]
    assert config.output_path == "out.csv"


def test_config_validation_fails_before_work(tmp_path):
    with pytest.raises(ParameterError):
        _tiny_config(jammed_counts=[9])  # A > F
    with pytest.raises(ParameterError):
        _tiny_config(trials=101)  # not divisible by batches
    with pytest.raises(ParameterError):
        _tiny_config(jammed_counts=[])
    with pytest.raises(ParameterError):
        _tiny_config(energy_mode="quantum")
    path = tmp_path / "bad.toml"
    path.write_text("frequency_count = 8\nunknown_key = 1\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        ExperimentConfig.from_file(path)


def test_trace_shape_and_jam_marks():
    message = random_bits(np.random.default_rng(22), 8)
    log = trace(message, 7, ChannelConfig(frequency_count=5, proactive_jammed_count=1), EccConfig(8))
    assert len(log["slots"]) == 64
    for s in log["slots"]:
        if s["active"]:
            assert s["reactive_jam"]
            assert s["sensed"] == 1
    assert len(log["encoded"]) == 64


def test_trace_no_proactive_marks_without_jammer():
    message = random_bits(np.random.default_rng(23), 8)
    log = trace(message, 9, ChannelConfig(frequency_count=5, proactive_jammed_count=0), EccConfig(4))
    assert not any(s["proactive_jam"] for s in log["slots"])
    assert log["delivered"]


def test_trace_deterministic_rendering():
    message = random_bits(np.random.default_rng(24), 8)
    config = ChannelConfig(frequency_count=5, proactive_jammed_count=1)
    first = render_trace_text(trace(message, 11, config, EccConfig(8)))
    second = render_trace_text(trace(message, 11, config, EccConfig(8)))
    assert first == second
    assert "verdict:" in first
