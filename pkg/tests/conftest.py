import numpy as np
import pytest

from addseq.core import normalize_targets

# (targets, M_WO, S_WO, M_W, S_W): optimal multiplier/squarer splits reported
# without and with the squarer-favouring weighted objective.
TABLE_I = [
    ([1, 49, 54, 59], 7, 3, 5, 5),
    ([1, 5, 51, 63], 6, 3, 4, 5),
    ([1, 55, 59, 63], 6, 4, 5, 5),
    ([1, 22, 39, 50], 6, 3, 5, 4),
    ([1, 51, 56, 58], 7, 3, 5, 5),
    ([1, 27, 50, 58, 61], 7, 4, 5, 6),
    ([1, 37, 39, 51, 55, 57], 8, 3, 7, 4),
    ([1, 11, 33, 49, 53, 55, 63], 8, 4, 7, 5),
    ([1, 37, 44, 52, 56, 59, 63], 9, 4, 7, 6),
    ([1, 6, 15, 17, 29, 42, 44, 48], 8, 3, 7, 4),
    ([1, 7, 12, 17, 28, 42, 44, 52, 56, 59], 10, 4, 7, 7),
    ([1, 6, 12, 15, 17, 24, 36, 47, 59, 61], 8, 4, 7, 5),
]

SET_A = [1, 31, 38, 39, 43, 51, 55, 56]
SET_D = [1, 7, 24, 26, 38, 44, 59]

# Elements listed per depth column for SET_A under caps 6..9; one operation
# per listed element except the input 1.
SET_A_COLUMNS = {
    6: [1, 2, 3, 4, 7, 8, 15, 16, 19, 24, 31, 32, 38, 39, 43, 51, 55, 56],
    7: [1, 2, 3, 6, 7, 12, 13, 19, 24, 31, 38, 43, 39, 51, 55, 56],
    8: [1, 2, 4, 6, 7, 12, 19, 24, 31, 38, 43, 39, 55, 51, 56],
    9: [1, 2, 4, 6, 12, 13, 25, 31, 38, 39, 51, 56, 43, 55],
}


def random_target_sets(seed, count, max_targets, max_value):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        size = int(rng.integers(1, max_targets + 1))
        out.append(normalize_targets(int(v) for v in rng.integers(1, max_value + 1, size=size)))
    return out


@pytest.fixture
def T():
    return normalize_targets


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
