"""ILP models for minimum-cost addition sequences.

Variables: ``x_k`` (k is in the sequence), ``y_{i,j}`` (k = i + j is
formed from i and j, i <= j) and, for the depth variant, integer ``d_k``
(the level at which k is produced).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from ..bounds import min_depth
from ..core import UNIT_COST, CostModel, TargetSet
from ..errors import InfeasibleDepth, InvalidArgument


class VarKind(enum.IntEnum):
    X = 0
    Y = 1
    D = 2


@dataclass(frozen=True, order=True)
class VarRef:
    kind: VarKind
    k: int = 0
    i: int = 0
    j: int = 0

    @property
    def name(self) -> str:
        if self.kind is VarKind.Y:
            return f"y{self.i}_{self.j}"
        return f"{'x' if self.kind is VarKind.X else 'd'}{self.k}"

    def __repr__(self):
        return self.name


def X(k: int) -> VarRef:
    return VarRef(VarKind.X, k)


def Y(i: int, j: int) -> VarRef:
    return VarRef(VarKind.Y, 0, i, j)


def D(k: int) -> VarRef:
    return VarRef(VarKind.D, k)


def parse_var(name: str) -> VarRef:
    try:
        if name[0] == "y":
            i, j = name[1:].split("_")
            return Y(int(i), int(j))
        if name[0] in "xd":
            k = int(name[1:])
            return X(k) if name[0] == "x" else D(k)
    except (ValueError, IndexError):
        pass
    raise InvalidArgument(f"unrecognised variable name {name!r}")


LE, EQ, GE = "<=", "=", ">="


@dataclass(frozen=True)
class LinearConstraint:
    terms: tuple[tuple[int, VarRef], ...]
    relation: str
    rhs: int
    label: str

    def __post_init__(self):
        if self.relation not in (LE, EQ, GE):
            raise InvalidArgument(f"bad relation {self.relation!r}")
        seen = set()
        for c, v in self.terms:
            if c == 0:
                raise InvalidArgument(f"{self.label}: zero coefficient on {v}")
            if v in seen:
                raise InvalidArgument(f"{self.label}: duplicate variable {v}")
            seen.add(v)

    def activity(self, values) -> float:
        return sum(c * values[v] for c, v in self.terms)

    def satisfied(self, values, tol: float = 1e-6) -> bool:
        a = self.activity(values)
        if self.relation == LE:
            return a <= self.rhs + tol
        if self.relation == GE:
            return a >= self.rhs - tol
        return abs(a - self.rhs) <= tol


@dataclass(frozen=True)
class Domain:
    """``binary``, ``integer`` on [lo, hi], or ``fixed`` at lo == hi."""

    kind: str
    lo: int = 0
    hi: int = 1

    @property
    def bounds(self) -> tuple[int, int]:
        return self.lo, self.hi


BINARY = Domain("binary", 0, 1)


def integer(lo: int, hi: int) -> Domain:
    return Domain("integer", lo, hi)


def fixed(value: int) -> Domain:
    return Domain("fixed", value, value)


@dataclass(frozen=True)
class ModelMeta:
    targets: TargetSet
    cost: CostModel = UNIT_COST
    d_max: Optional[int] = None
    cuts: bool = False


@dataclass(frozen=True)
class CompiledModel:
    """Dense array view of a model: ``A x (sense) b`` with bounds lo <= x <= hi."""

    variables: tuple[VarRef, ...]
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    sense: np.ndarray  # -1 for <=, 0 for =, +1 for >=
    lo: np.ndarray
    hi: np.ndarray
    index: dict = field(compare=False)


@dataclass(frozen=True, eq=False)
class IlpModel:
    objective: tuple[tuple[int, VarRef], ...]
    constraints: tuple[LinearConstraint, ...]
    var_domains: dict
    meta: ModelMeta
    sense: str = "minimize"

    @property
    def variables(self) -> tuple[VarRef, ...]:
        return tuple(self.var_domains)

    def structurally_equal(self, other: "IlpModel") -> bool:
        """Same rows in the same order; term order within a row is ignored."""

        def rows(m):
            return [
                (c.label, c.relation, c.rhs, sorted(c.terms, key=lambda t: t[1]))
                for c in m.constraints
            ]

        return (
            self.sense == other.sense
            and sorted(self.objective, key=lambda t: t[1]) == sorted(other.objective, key=lambda t: t[1])
            and rows(self) == rows(other)
            and list(self.var_domains.items()) == list(other.var_domains.items())
            and self.meta == other.meta
        )

    @cached_property
    def compiled(self) -> CompiledModel:
        variables = self.variables
        index = {v: n for n, v in enumerate(variables)}
        nv, m = len(variables), len(self.constraints)
        c = np.zeros(nv)
        for coef, v in self.objective:
            c[index[v]] = coef
        A = np.zeros((m, nv))
        b = np.zeros(m)
        sense = np.zeros(m, dtype=np.int64)
        code = {LE: -1, EQ: 0, GE: 1}
        for r, con in enumerate(self.constraints):
            for coef, v in con.terms:
                A[r, index[v]] = coef
            b[r] = con.rhs
            sense[r] = code[con.relation]
        lo = np.array([self.var_domains[v].lo for v in variables], dtype=float)
        hi = np.array([self.var_domains[v].hi for v in variables], dtype=float)
        return CompiledModel(variables, c, A, b, sense, lo, hi, index)


def pairs(n_r: int):
    """The index set P: all (i, j) with 1 <= i <= j and i + j <= n_r, lexicographic."""
    for i in range(1, n_r // 2 + 1):
        for j in range(i, n_r - i + 1):
            yield i, j


def pair_count(n_r: int) -> int:
    return sum(n_r - 2 * i + 1 for i in range(1, n_r // 2 + 1))


def _objective(n_r: int, cm: CostModel):
    terms = []
    for i, j in pairs(n_r):
        coef = cm.c_s if i == j else cm.c_m
        if coef:
            terms.append((coef, Y(i, j)))
    return tuple(terms)


def _base(T: TargetSet, with_cuts: bool):
    n_r = T.n_r
    domains = {}
    for k in T.K:
        domains[X(k)] = fixed(1) if (k == 1 or k in T) else BINARY
    for i, j in pairs(n_r):
        domains[Y(i, j)] = BINARY

    by_sum: dict[int, list] = {}
    for i, j in pairs(n_r):
        by_sum.setdefault(i + j, []).append(Y(i, j))

    cons = []
    for k in range(2, n_r + 1):
        terms = [(1, y) for y in by_sum[k]] + [(-1, X(k))]
        cons.append(LinearConstraint(tuple(terms), EQ, 0, f"c_form_{k}"))
    for i, j in pairs(n_r):
        y = Y(i, j)
        cons.append(LinearConstraint(((1, y), (-1, X(i))), LE, 0, f"c_avail_{i}_{j}_L"))
        cons.append(LinearConstraint(((1, y), (-1, X(j))), LE, 0, f"c_avail_{i}_{j}_R"))
    if with_cuts:
        for k in range(2, n_r + 1):
            terms = tuple((1, X(m)) for m in range(math.ceil(k / 2), k))
            cons.append(LinearConstraint(terms, GE, 1, f"cut_{k}"))
    return domains, cons


def build_weighted(T: TargetSet, cm: CostModel, with_cuts: bool = False) -> IlpModel:
    """Minimise ``c_m * N_m + c_s * N_s`` over all addition sequences covering T."""
    domains, cons = _base(T, with_cuts)
    return IlpModel(
        _objective(T.n_r, cm), tuple(cons), domains, ModelMeta(T, cm, None, with_cuts)
    )


def build_basic(T: TargetSet, with_cuts: bool = False) -> IlpModel:
    """Minimise the sequence length (every operation costs 1)."""
    domains, cons = _base(T, with_cuts)
    return IlpModel(
        _objective(T.n_r, UNIT_COST), tuple(cons), domains, ModelMeta(T, UNIT_COST, None, with_cuts)
    )


def build_depth(
    T: TargetSet, cm: CostModel, d_max: int, with_cuts: bool = False
) -> IlpModel:
    """Weighted model plus integer depth levels capped at ``d_max``.

    For a used formation y_{i,j} = 1 of k the big-M rows force
    ``d_i, d_j <= d_k - 1`` with ``M = d_max + 1``.  Unused elements get
    depth 0, used ones at least ``ceil(log2 k)``.
    """
    n_r = T.n_r
    floor_depth = min_depth(n_r)
    if d_max < floor_depth:
        raise InfeasibleDepth(f"d_max={d_max} below minimum depth {floor_depth} for {n_r}")
    domains, cons = _base(T, with_cuts)
    for k in T.K:
        domains[D(k)] = fixed(0) if k == 1 else integer(0, d_max)
    big_m = d_max + 1
    for k, i, j in sorted((i + j, i, j) for i, j in pairs(n_r)):
        y = Y(i, j)
        for side, a in (("L", i), ("R", j)):
            terms = ((1, D(a)), (-1, D(k)), (big_m, y))
            cons.append(LinearConstraint(terms, LE, big_m - 1, f"c_depth_{i}_{j}_{k}_{side}"))
    for k in range(2, n_r + 1):
        cons.append(LinearConstraint(((1, D(k)), (-d_max, X(k))), LE, 0, f"c_dzero_{k}"))
    for k in range(2, n_r + 1):
        cons.append(
            LinearConstraint(((1, D(k)), (-min_depth(k), X(k))), GE, 0, f"c_dmin_{k}")
        )
    return IlpModel(
        _objective(n_r, cm), tuple(cons), domains, ModelMeta(T, cm, d_max, with_cuts)
    )
