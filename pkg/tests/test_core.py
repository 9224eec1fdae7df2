import itertools

import pytest

from addseq.core import (
    CostModel,
    FormationStep,
    cost_of,
    min_depth_assignment,
    normalize_targets,
    solution_from_steps,
    validate_sequence,
)
from addseq.errors import EmptyTargets, InvalidArgument, InvalidTarget, MissingTarget, NotAChain


def brute_is_chain(elements):
    seen = [elements[0]]
    for e in elements[1:]:
        if not any(a + b == e for a, b in itertools.combinations_with_replacement(seen, 2)):
            return False
        seen.append(e)
    return elements[0] == 1


def test_normalize_examples():
    T = normalize_targets([3, 7, 11])
    assert T.targets == (3, 7, 11) and T.n_r == 11 and T.r == 3
    one = normalize_targets([1])
    assert one.n_r == 1 and one.r == 1
    assert normalize_targets([7, 3, 7]).targets == (3, 7)


@pytest.mark.parametrize("raw,exc", [([], EmptyTargets), ([0, 3], InvalidTarget), ([-2], InvalidTarget)])
def test_normalize_rejects(raw, exc):
    with pytest.raises(exc):
        normalize_targets(raw)


def test_validate_non_optimal_witness():
    sol = validate_sequence((1, 2, 3, 4, 7, 9, 11), normalize_targets([3, 7, 11]))
    assert sol.length == 6
    assert sol.n_mult + sol.n_sqr == 6


def test_validate_doubling():
    sol = validate_sequence((1, 2, 4), normalize_targets([4]))
    assert (sol.n_mult, sol.n_sqr) == (0, 2)
    assert sol.depth[4] == 2


def test_validate_errors():
    with pytest.raises(NotAChain) as err:
        validate_sequence((1, 2, 5), normalize_targets([5]))
    assert err.value.element == 5
    with pytest.raises(MissingTarget) as err:
        validate_sequence((1, 2, 4), normalize_targets([3]))
    assert err.value.target == 3
    with pytest.raises(InvalidArgument):
        validate_sequence((1, 3, 2), normalize_targets([2]))


def test_validate_matches_brute_force_on_all_short_lists():
    # every strictly ascending list from 1 with elements <= 12 and length <= 5
    T = normalize_targets([1])
    for size in range(0, 5):
        for rest in itertools.combinations(range(2, 13), size):
            elems = (1,) + rest
            ok = brute_is_chain(elems)
            try:
                validate_sequence(elems, T)
                got = True
            except NotAChain:
                got = False
            assert got == ok, elems


def test_min_depth_assignment_examples():
    assert min_depth_assignment((1, 2, 4, 8)) == {1: 0, 2: 1, 4: 2, 8: 3}
    assert min_depth_assignment((1, 2, 3, 4))[4] == 2
    d = min_depth_assignment((1, 2, 3, 4, 7, 11))
    assert d[7] == 3 and d[11] == 4


def test_cost_of_examples():
    steps = [FormationStep(2, 1, 1), FormationStep(4, 2, 2)]
    assert cost_of(steps, CostModel(2, 1)) == (0, 2, 2)
    mixed = [FormationStep(k, 1, k - 1) for k in range(3, 8)] + [FormationStep(2 * k, k, k) for k in (1, 2, 3, 4, 5)]
    assert cost_of(mixed, CostModel(2, 1)) == (5, 5, 15)
    split = [FormationStep(k, 1, k - 1) for k in range(3, 10)] + [FormationStep(2 * k, k, k) for k in (1, 2, 3)]
    assert cost_of(split, CostModel(1, 1))[:2] == (7, 3)
    assert cost_of(split, CostModel(2, 1))[2] == 17


def test_solution_from_steps_uses_given_depth():
    T = normalize_targets([4])
    sol = solution_from_steps((1, 2, 3, 4), [FormationStep(2, 1, 1), FormationStep(3, 1, 2), FormationStep(4, 1, 3)], T)
    assert sol.depth[4] == 3
    assert sol.n_mult + sol.n_sqr == len(sol.elements) - 1
    with pytest.raises(NotAChain):
        solution_from_steps((1, 2, 4), [FormationStep(2, 1, 1), FormationStep(4, 1, 3)], T)


def test_cost_model_validation():
    with pytest.raises(InvalidArgument):
        CostModel(-1, 1)
    with pytest.raises(InvalidArgument):
        FormationStep(5, 3, 3)
