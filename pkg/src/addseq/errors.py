"""Exception types shared across the package."""


class AddSeqError(Exception):
    """Base class for all package errors."""


class InvalidTarget(AddSeqError, ValueError):
    pass


class EmptyTargets(AddSeqError, ValueError):
    pass


class InvalidArgument(AddSeqError, ValueError):
    pass


class NotAChain(AddSeqError):
    def __init__(self, element: int):
        super().__init__(f"{element} is not the sum of two earlier elements")
        self.element = element


class MissingTarget(AddSeqError):
    def __init__(self, target: int):
        super().__init__(f"target {target} does not appear in the sequence")
        self.target = target


class Undefined(AddSeqError):
    """A closed-form bound is outside its domain of definition."""


class InfeasibleDepth(AddSeqError):
    pass


class DecodeError(AddSeqError):
    def __init__(self, label: str, detail: str = ""):
        super().__init__(f"{label}: {detail}" if detail else label)
        self.label = label


class NumericalFailure(AddSeqError):
    pass


class ResourceExhausted(AddSeqError):
    pass


class Timeout(AddSeqError):
    """Time limit hit; carries the best incumbent found and the remaining gap."""

    def __init__(self, incumbent=None, bound=None, stats=None):
        self.incumbent = incumbent
        self.bound = bound
        self.stats = stats
        obj = None if incumbent is None else incumbent.weighted_cost
        self.gap = None if obj is None or bound is None else obj - bound
        super().__init__(f"time limit exceeded (incumbent={obj}, bound={bound})")
