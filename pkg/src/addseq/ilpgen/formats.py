"""Text emitters for LP and MPS model files, plus an MPS reader.

Naming is fixed: ``x{k}``, ``y{i}_{j}``, ``d{k}``; rows carry the
constraint labels given at construction.  Model metadata travels in
comment lines so a file round-trips to an identical model.
"""

from __future__ import annotations

from ..core import CostModel, TargetSet
from ..errors import InvalidArgument
from .model import (
    BINARY,
    EQ,
    GE,
    LE,
    IlpModel,
    LinearConstraint,
    ModelMeta,
    fixed,
    integer,
    parse_var,
)

_WRAP = 78


def _meta_line(meta: ModelMeta) -> str:
    targets = ",".join(str(t) for t in meta.targets)
    dmax = "-" if meta.d_max is None else str(meta.d_max)
    return f"targets={targets} cost={meta.cost.c_m},{meta.cost.c_s} dmax={dmax} cuts={int(meta.cuts)}"


def _parse_meta(text: str) -> ModelMeta:
    fields = dict(part.split("=", 1) for part in text.split())
    targets = TargetSet(tuple(int(t) for t in fields["targets"].split(",")))
    c_m, c_s = (int(v) for v in fields["cost"].split(","))
    dmax = None if fields["dmax"] == "-" else int(fields["dmax"])
    return ModelMeta(targets, CostModel(c_m, c_s), dmax, bool(int(fields["cuts"])))


def _expr(terms) -> list[str]:
    tokens = []
    for n, (c, v) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = v.name if mag == 1 else f"{mag} {v.name}"
        if n == 0:
            tokens.append(body if sign == "+" else f"- {body}")
        else:
            tokens.append(f"{sign} {body}")
    return tokens or ["0"]


def _wrapped(head: str, tokens: list[str]) -> list[str]:
    lines, cur = [], head
    for tok in tokens:
        if len(cur) + 1 + len(tok) > _WRAP and cur.strip():
            lines.append(cur)
            cur = "   " + tok
        else:
            cur = f"{cur} {tok}"
    lines.append(cur)
    return lines


def emit_lp(model: IlpModel) -> str:
    out = ["\\ addition sequence model", "\\ " + _meta_line(model.meta), "Minimize"]
    out += _wrapped(" obj:", _expr(model.objective))
    out.append("Subject To")
    for con in model.constraints:
        out += _wrapped(f" {con.label}:", _expr(con.terms) + [con.relation, str(con.rhs)])
    out.append("Bounds")
    binaries, generals = [], []
    for v, dom in model.var_domains.items():
        if dom.kind == "fixed":
            out.append(f" {v.name} = {dom.lo}")
        elif dom.kind == "integer":
            out.append(f" {dom.lo} <= {v.name} <= {dom.hi}")
            generals.append(v.name)
        else:
            binaries.append(v.name)
    for title, names in (("Binary", binaries), ("General", generals)):
        if names:
            out.append(title)
            out += _wrapped("", names)
    out.append("End")
    return "\n".join(out) + "\n"


_ROW_TYPE = {LE: "L", EQ: "E", GE: "G"}
_REL = {v: k for k, v in _ROW_TYPE.items()}


def emit_mps(model: IlpModel) -> str:
    out = ["* addition sequence model", "* " + _meta_line(model.meta), "NAME          ADDSEQ"]
    out.append("ROWS")
    out.append(" N  COST")
    for con in model.constraints:
        out.append(f" {_ROW_TYPE[con.relation]}  {con.label}")

    columns: dict = {v: [] for v in model.var_domains}
    for c, v in model.objective:
        columns[v].append(("COST", c))
    for con in model.constraints:
        for c, v in con.terms:
            columns[v].append((con.label, c))

    out.append("COLUMNS")
    out.append("    MARKER                 'MARKER'                 'INTORG'")
    for v, entries in columns.items():
        for row, c in entries or [("COST", 0)]:
            out.append(f"    {v.name:<8}  {row:<8}  {c:>12}")
    out.append("    MARKER                 'MARKER'                 'INTEND'")

    out.append("RHS")
    for con in model.constraints:
        if con.rhs:
            out.append(f"    {'RHS':<8}  {con.label:<8}  {con.rhs:>12}")

    out.append("BOUNDS")
    for v, dom in model.var_domains.items():
        if dom.kind == "binary":
            out.append(f" BV {'BND':<8}  {v.name:<8}")
        elif dom.kind == "fixed":
            out.append(f" FX {'BND':<8}  {v.name:<8}  {dom.lo:>12}")
        else:
            if dom.lo:
                out.append(f" LO {'BND':<8}  {v.name:<8}  {dom.lo:>12}")
            out.append(f" UP {'BND':<8}  {v.name:<8}  {dom.hi:>12}")
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def parse_mps(text: str) -> IlpModel:
    """Read a file written by :func:`emit_mps` back into a model."""
    meta = None
    section = None
    row_order: list[str] = []
    row_rel: dict[str, str] = {}
    row_terms: dict[str, list] = {}
    rhs: dict[str, int] = {}
    objective = []
    columns: list = []
    bounds: dict = {}
    in_int = False
    for raw in text.splitlines():
        if not raw.strip():
            continue
        if raw.startswith("*"):
            body = raw[1:].strip()
            if body.startswith("targets="):
                meta = _parse_meta(body)
            continue
        if not raw[0].isspace():
            section = raw.split()[0]
            continue
        f = raw.split()
        if section == "ROWS":
            kind, name = f
            if kind == "N":
                continue
            row_order.append(name)
            row_rel[name] = _REL[kind]
            row_terms[name] = []
        elif section == "COLUMNS":
            if len(f) == 3 and f[1] == "'MARKER'":
                in_int = f[2] == "'INTORG'"
                continue
            if not in_int:
                raise InvalidArgument(f"continuous column {f[0]} not supported")
            v = parse_var(f[0])
            if not columns or columns[-1] != v:
                columns.append(v)
            for row, val in zip(f[1::2], f[2::2]):
                c = int(val)
                if c == 0:
                    continue
                if row == "COST":
                    objective.append((c, v))
                else:
                    row_terms[row].append((c, v))
        elif section == "RHS":
            for row, val in zip(f[1::2], f[2::2]):
                rhs[row] = int(val)
        elif section == "BOUNDS":
            kind, _, name = f[:3]
            v = parse_var(name)
            lo, hi, bkind = bounds.get(v, (0, None, "integer"))
            if kind == "BV":
                bounds[v] = (0, 1, "binary")
            elif kind == "FX":
                bounds[v] = (int(f[3]), int(f[3]), "fixed")
            elif kind == "LO":
                bounds[v] = (int(f[3]), hi, bkind)
            elif kind == "UP":
                bounds[v] = (lo, int(f[3]), bkind)
            else:
                raise InvalidArgument(f"unsupported bound type {kind}")
    if meta is None:
        raise InvalidArgument("missing model metadata comment")

    domains = {}
    for v in columns:
        lo, hi, kind = bounds.get(v, (0, None, "integer"))
        if kind == "binary":
            domains[v] = BINARY
        elif kind == "fixed":
            domains[v] = fixed(lo)
        else:
            if hi is None:
                raise InvalidArgument(f"integer column {v.name} has no upper bound")
            domains[v] = integer(lo, hi)
    cons = tuple(
        LinearConstraint(tuple(row_terms[r]), row_rel[r], rhs.get(r, 0), r) for r in row_order
    )
    return IlpModel(tuple(objective), cons, domains, meta)
