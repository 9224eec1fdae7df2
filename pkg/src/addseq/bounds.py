"""Closed-form bounds on addition-chain and addition-sequence lengths.

``l(n)`` denotes the length of a shortest addition chain for ``n`` and
``g(n)`` the number of one bits of ``n``.

The classical upper bound attained by left-to-right binary exponentiation
is ``floor(log2 n) + g(n) - 1``.  A variant with ``log2(g(n))`` in place of
``g(n)`` circulates in print; it undercuts ``l(15) = 5`` and is kept only as
:func:`chain_upper_printed` for comparison.  The asymptotic Brauer bound
carries an unspecified O-term and is not computable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import TargetSet
from .errors import InvalidArgument, Undefined

_SLACK = 1e-9
LOWER_OFFSET = 2.13


def _require_positive(n: int) -> int:
    n = int(n)
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    return n


def popcount(n: int) -> int:
    return bin(_require_positive(n)).count("1")


def chain_lower(n: int) -> tuple[float, int]:
    """``log2(n) + log2(g(n)) - 2.13`` and its integer ceiling clamped at 0."""
    n = _require_positive(n)
    real = math.log2(n) + math.log2(popcount(n)) - LOWER_OFFSET
    return real, max(0, math.ceil(real - _SLACK))


def chain_upper_binary(n: int) -> int:
    n = _require_positive(n)
    return n.bit_length() - 1 + popcount(n) - 1


def chain_upper_printed(n: int) -> float:
    """The misprinted ``floor(log2 n) + log2(g(n)) - 1``; not a valid bound."""
    n = _require_positive(n)
    return n.bit_length() - 1 + math.log2(popcount(n)) - 1


def min_depth(n: int) -> int:
    """``ceil(log2 n)``: no element n can be formed in fewer levels."""
    n = _require_positive(n)
    return (n - 1).bit_length()


def sequence_upper_yao(T: TargetSet) -> float:
    """Yao's bound ``log2 N + c * (log2 N / log2 log2 N) * r``, ``c = 2 + 4/sqrt(N)``."""
    N = T.n_r
    if N <= 3:
        raise Undefined(f"log2(log2({N})) is not positive")
    lg = math.log2(N)
    c = 2.0 + 4.0 / math.sqrt(N)
    return lg + c * (lg / math.log2(lg)) * T.r


def sequence_upper(T: TargetSet) -> float:
    """Yao's bound where defined, otherwise the sum of binary-method bounds."""
    try:
        return sequence_upper_yao(T)
    except Undefined:
        return float(sum(chain_upper_binary(t) for t in T))


@dataclass(frozen=True)
class ChainBounds:
    n: int
    g: int
    lower_real: float
    lower_int: int
    upper_int: int


def chain_bounds(n: int) -> ChainBounds:
    real, low = chain_lower(n)
    return ChainBounds(n, popcount(n), real, low, chain_upper_binary(n))
