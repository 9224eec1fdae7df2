import math

import pytest

from addseq import bounds as B
from addseq.core import CostModel, normalize_targets
from addseq.dfs import SearchConfig, solve_exact
from addseq.errors import InvalidArgument, Undefined

UNIT = SearchConfig(cost=CostModel(1, 1))


@pytest.mark.parametrize("n,expected", [(15, 4), (1, 1), (63, 6)])
def test_popcount(n, expected):
    assert B.popcount(n) == expected


def test_popcount_rejects_zero():
    with pytest.raises(InvalidArgument):
        B.popcount(0)


def test_chain_lower_examples():
    real, low = B.chain_lower(15)
    assert real == pytest.approx(3.777, abs=1e-3) and low == 4
    assert B.chain_lower(1) == (pytest.approx(-2.13), 0)
    real, low = B.chain_lower(63)
    assert real == pytest.approx(6.43, abs=1e-2) and low == 7


@pytest.mark.parametrize("n,expected", [(15, 6), (1, 0), (16, 4), (63, 10)])
def test_chain_upper_binary(n, expected):
    assert B.chain_upper_binary(n) == expected


def test_printed_upper_undercuts_l15():
    # l(15) = 5 by exhaustive search, but the misprinted form gives 4
    assert solve_exact(normalize_targets([15]), UNIT).weighted_cost == 5
    assert B.chain_upper_printed(15) == pytest.approx(4.0)


def test_yao_examples():
    assert B.sequence_upper_yao(normalize_targets([3, 7, 11])) == pytest.approx(22.05, abs=0.01)
    assert B.sequence_upper_yao(normalize_targets([4])) == pytest.approx(10.0)
    with pytest.raises(Undefined):
        B.sequence_upper_yao(normalize_targets([2]))
    assert B.sequence_upper(normalize_targets([2])) == B.chain_upper_binary(2)
    assert B.sequence_upper(normalize_targets([2, 3])) == B.chain_upper_binary(2) + B.chain_upper_binary(3)


@pytest.mark.parametrize("n,expected", [(56, 6), (1, 0), (64, 6), (65, 7), (2, 1)])
def test_min_depth(n, expected):
    assert B.min_depth(n) == expected


def test_chain_bounds_record():
    cb = B.chain_bounds(63)
    assert (cb.g, cb.lower_int, cb.upper_int) == (6, 7, 10)
    for n in range(1, 300):
        cb = B.chain_bounds(n)
        assert cb.g >= 1 and cb.lower_int <= cb.upper_int


def test_powers_of_two_attained_by_doubling():
    for k in range(0, 9):
        assert B.chain_upper_binary(2**k) == k
        sol = solve_exact(normalize_targets([2**k]), UNIT)
        assert sol.weighted_cost == k
        assert B.min_depth(2**k) == k


def test_min_depth_below_any_formation_depth():
    for n in range(2, 64):
        sol = solve_exact(normalize_targets([n]), UNIT)
        assert sol.depth[n] >= B.min_depth(n)
        assert math.ceil(math.log2(n)) == B.min_depth(n)
