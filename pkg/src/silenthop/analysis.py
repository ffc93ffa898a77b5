"""Closed-form delivery probabilities and design bounds for the silent-slot scheme.

With per-slot flip probability p_a and codeword length n, a zero codeword
survives unless all n of its slots are hit, so it is delivered with
probability 1 - p_a**n. A message of L_m bits with (nominally) half its
bits zero is delivered with probability (1 - p_a**n)**(L_m / 2); the exact
variant averages over the binomial number of zero bits instead of fixing it
at L_m/2. Inverting the exponential lower bound gives the largest tolerable
flip probability for a target failure bound epsilon, and, solved for n, the
codeword length required against a given jammer.
"""
from __future__ import annotations

import math

from .errors import ParameterError

# Largest x = p_a**n for which (1-x)**(L/2) >= exp(-x*L), i.e. the positive
# root of ln(1-x) + 2x; beyond it the exponential expression stops being a
# lower bound and the sanity check below would misfire.
LOWER_BOUND_VALID_MAX = 0.7968


def _check_prob(name: str, value: float, *, open_interval: bool = False) -> float:
    value = float(value)
    if open_interval:
        if not 0.0 < value < 1.0:
            raise ParameterError(f"{name} must be strictly between 0 and 1")
    elif not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name} must be in [0, 1]")
    return value


def _check_positive_int(name: str, value: int) -> int:
    if int(value) != value or value < 1:
        raise ParameterError(f"{name} must be a positive integer")
    return int(value)


def _pow(base: float, exponent: float) -> float:
    # exp(e*ln(b)) keeps underflow behaviour consistent across platforms
    if base == 0.0:
        return 0.0
    return math.exp(exponent * math.log(base))


def codeword_delivery_prob(p_a: float, n: int) -> float:
    """Probability one zero codeword survives: 1 - p_a**n."""
    p_a = _check_prob("p_a", p_a)
    n = _check_positive_int("n", n)
    return 1.0 - _pow(p_a, n)


def message_delivery_prob(p_a: float, n: int, message_length: int) -> float:
    """Half-zeros delivery probability (1 - p_a**n)**(message_length / 2)."""
    p_a = _check_prob("p_a", p_a)
    n = _check_positive_int("n", n)
    message_length = _check_positive_int("message_length", message_length)
    q = _pow(p_a, n)
    if q >= 1.0:
        return 0.0
    value = math.exp(0.5 * message_length * math.log1p(-q))
    if q <= LOWER_BOUND_VALID_MAX:
        assert value >= message_delivery_lower_bound(p_a, n, message_length) * (1.0 - 1e-12)
    return value


def message_delivery_lower_bound(p_a: float, n: int, message_length: int) -> float:
    """exp(-p_a**n * message_length); a true lower bound only for p_a**n below ~0.797."""
    p_a = _check_prob("p_a", p_a)
    n = _check_positive_int("n", n)
    message_length = _check_positive_int("message_length", message_length)
    return math.exp(-_pow(p_a, n) * message_length)


def message_delivery_prob_exact(p_a: float, n: int, message_length: int) -> float:
    """Delivery probability averaged over Binomial(message_length, 1/2) zero bits.

    E[(1 - q)**Z] with q = p_a**n collapses to (1 - q/2)**message_length.
    """
    p_a = _check_prob("p_a", p_a)
    n = _check_positive_int("n", n)
    message_length = _check_positive_int("message_length", message_length)
    q = _pow(p_a, n)
    return math.exp(message_length * math.log1p(-0.5 * q))


def max_jamming_resiliency(epsilon: float, message_length: int, n: int) -> float:
    """Largest flip probability still delivering with probability >= 1 - epsilon."""
    epsilon = _check_prob("epsilon", epsilon, open_interval=True)
    message_length = _check_positive_int("message_length", message_length)
    n = _check_positive_int("n", n)
    return _pow(-math.log1p(-epsilon) / message_length, 1.0 / n)


def required_codeword_length_real(p_a: float, epsilon: float, message_length: int) -> float | None:
    """Continuous codeword length meeting the epsilon target; None when p_a = 1."""
    p_a = _check_prob("p_a", p_a)
    epsilon = _check_prob("epsilon", epsilon, open_interval=True)
    message_length = _check_positive_int("message_length", message_length)
    if p_a == 0.0:
        return 1.0
    if p_a == 1.0:
        return None
    return math.log(-math.log1p(-epsilon) / message_length) / math.log(p_a)


def required_codeword_length(p_a: float, epsilon: float, message_length: int) -> int | None:
    """Smallest integer codeword length meeting the epsilon target; None when p_a = 1.

    The ceiling keeps the achieved delivery probability at or above 1 - epsilon.
    """
    real = required_codeword_length_real(p_a, epsilon, message_length)
    if real is None:
        return None
    return max(1, math.ceil(real))
