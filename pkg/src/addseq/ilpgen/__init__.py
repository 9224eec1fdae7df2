from .decode import decode, encode
from .formats import emit_lp, emit_mps, parse_mps
from .model import (
    D,
    X,
    Y,
    Domain,
    IlpModel,
    LinearConstraint,
    ModelMeta,
    VarKind,
    VarRef,
    build_basic,
    build_depth,
    build_weighted,
    pair_count,
    pairs,
    parse_var,
)

__all__ = [
    "D", "X", "Y", "Domain", "IlpModel", "LinearConstraint", "ModelMeta", "VarKind",
    "VarRef", "build_basic", "build_depth", "build_weighted", "decode", "emit_lp",
    "emit_mps", "encode", "pair_count", "pairs", "parse_mps", "parse_var",
]
