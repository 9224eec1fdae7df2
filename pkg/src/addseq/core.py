"""Domain types and ground-truth checks for addition sequences.

An addition sequence for a target set T is an ascending list starting at 1
in which every later element is the sum of two (not necessarily distinct)
earlier elements, and which contains every member of T.  Each element
beyond 1 costs one operation: a squarer when it is formed as i + i,
a multiplier otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import EmptyTargets, InvalidArgument, InvalidTarget, MissingTarget, NotAChain

MAX_TARGET = 1 << 20


@dataclass(frozen=True)
class TargetSet:
    targets: tuple[int, ...]

    def __post_init__(self):
        t = self.targets
        if not t:
            raise EmptyTargets("target set is empty")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise InvalidTarget("targets must be strictly increasing")
        if t[0] < 1:
            raise InvalidTarget(f"target {t[0]} < 1")
        if t[-1] > MAX_TARGET:
            raise InvalidTarget(f"target {t[-1]} exceeds {MAX_TARGET}")

    @property
    def n_r(self) -> int:
        return self.targets[-1]

    @property
    def r(self) -> int:
        return len(self.targets)

    @property
    def K(self) -> range:
        return range(1, self.n_r + 1)

    def __iter__(self):
        return iter(self.targets)

    def __contains__(self, k) -> bool:
        return k in self.targets

    def __len__(self) -> int:
        return len(self.targets)


def normalize_targets(raw: Iterable[int]) -> TargetSet:
    """Sort and deduplicate raw target values."""
    values = [int(v) for v in raw]
    if not values:
        raise EmptyTargets("target list is empty")
    for v in values:
        if v < 1:
            raise InvalidTarget(f"target {v} < 1")
    return TargetSet(tuple(sorted(set(values))))


@dataclass(frozen=True)
class CostModel:
    c_m: int = 2
    c_s: int = 1

    def __post_init__(self):
        for name in ("c_m", "c_s"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise InvalidArgument(f"{name} must be a nonnegative integer, got {v!r}")

    @property
    def cheapest(self) -> int:
        return min(self.c_m, self.c_s)


UNIT_COST = CostModel(1, 1)


@dataclass(frozen=True, order=True)
class FormationStep:
    k: int
    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.i > self.j or self.i + self.j != self.k:
            raise InvalidArgument(f"bad formation {self.k} = {self.i} + {self.j}")

    @property
    def is_squarer(self) -> bool:
        return self.i == self.j


@dataclass(frozen=True)
class SequenceSolution:
    elements: tuple[int, ...]
    steps: tuple[FormationStep, ...]
    n_mult: int
    n_sqr: int
    weighted_cost: int
    depth: Mapping[int, int] = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    @property
    def max_depth(self) -> int:
        return max(self.depth.values())

    def depth_profile(self) -> dict[int, list[int]]:
        """Elements grouped by depth level."""
        out: dict[int, list[int]] = {}
        for e in self.elements:
            out.setdefault(self.depth[e], []).append(e)
        return out


def cost_of(steps: Iterable[FormationStep], cm: CostModel) -> tuple[int, int, int]:
    """Return ``(n_mult, n_sqr, weighted_cost)`` for a collection of steps."""
    n_sqr = n_mult = 0
    for s in steps:
        if s.is_squarer:
            n_sqr += 1
        else:
            n_mult += 1
    return n_mult, n_sqr, cm.c_m * n_mult + cm.c_s * n_sqr


def _check_ascending(elements: Sequence[int]) -> None:
    if not elements or elements[0] != 1:
        raise InvalidArgument("sequence must start at 1")
    for a, b in zip(elements, elements[1:]):
        if b <= a:
            raise InvalidArgument(f"sequence not strictly ascending at {b}")


def solution_from_steps(
    elements: Sequence[int],
    steps: Iterable[FormationStep],
    targets: TargetSet,
    cm: CostModel = CostModel(),
) -> SequenceSolution:
    """Assemble a solution from explicit formations, checking every invariant.

    Depth is the one induced by the given steps.
    """
    elements = tuple(int(e) for e in elements)
    _check_ascending(elements)
    by_k: dict[int, FormationStep] = {}
    for s in steps:
        if s.k in by_k:
            raise InvalidArgument(f"element {s.k} formed twice")
        by_k[s.k] = s
    present = set(elements)
    if set(by_k) != present - {1}:
        extra = sorted(set(by_k) ^ (present - {1}))
        raise NotAChain(extra[0])
    depth = {1: 0}
    for e in elements[1:]:
        s = by_k[e]
        if s.i not in depth or s.j not in depth:
            raise NotAChain(e)
        depth[e] = max(depth[s.i], depth[s.j]) + 1
    for t in targets:
        if t not in present:
            raise MissingTarget(t)
    ordered = tuple(by_k[e] for e in elements[1:])
    n_mult, n_sqr, cost = cost_of(ordered, cm)
    return SequenceSolution(elements, ordered, n_mult, n_sqr, cost, depth)


def validate_sequence(
    elements: Sequence[int], targets: TargetSet, cm: CostModel = CostModel()
) -> SequenceSolution:
    """Check an ascending list is an addition sequence covering ``targets``.

    Each element is attributed the formation with the smallest resulting
    depth; ties prefer a squarer, then the smallest first operand.
    """
    elements = tuple(int(e) for e in elements)
    _check_ascending(elements)
    depth = {1: 0}
    steps = []
    for k in elements[1:]:
        best = None
        for i in depth:
            if 2 * i > k:
                continue
            j = k - i
            if j not in depth:
                continue
            key = (max(depth[i], depth[j]) + 1, 0 if i == j else 1, i)
            if best is None or key < best:
                best = key
        if best is None:
            raise NotAChain(k)
        d, _, i = best
        steps.append(FormationStep(k, i, k - i))
        depth[k] = d
    for t in targets:
        if t not in depth:
            raise MissingTarget(t)
    n_mult, n_sqr, cost = cost_of(steps, cm)
    return SequenceSolution(elements, tuple(steps), n_mult, n_sqr, cost, depth)


def min_depth_assignment(solution: SequenceSolution | Sequence[int]) -> dict[int, int]:
    """Best achievable depth of every element given the element set alone."""
    elements = solution.elements if isinstance(solution, SequenceSolution) else tuple(solution)
    _check_ascending(elements)
    depth = {1: 0}
    for k in elements[1:]:
        best = None
        for i in depth:
            j = k - i
            if 2 * i <= k and j in depth:
                d = max(depth[i], depth[j]) + 1
                if best is None or d < best:
                    best = d
        if best is None:
            raise NotAChain(k)
        depth[k] = best
    return depth
