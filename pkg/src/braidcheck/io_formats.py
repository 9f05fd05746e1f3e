"""Text file formats for every presentation type the CLI accepts.

All formats share one shape: a header line naming the type and its
parameters, followed by sparse entry lines ``tag: (indices) scalar``.
Scalars use the common text form ``q(a/b)`` or ``zeta(n)[c0, c1, ...]``.
Blank lines and lines starting with ``#`` are ignored.  Indices are 0-based
and omitted entries are zero.

Headers:

    hopf dim=<d> field=zeta(<n>)       tags mult, comult, unit, counit,
                                       antipode, rmatrix (optional)
    module dim=<m> over=<hopf>         tag action; <hopf> is either a builtin
                                       example like group_algebra(n=2) or a
                                       path relative to the module file
    modular rank=<r> field=zeta(<n>)   tags S, T, label
    group order=<m>                    followed by m rows of m integers
    algebra dim=<d> field=zeta(<n>)    tags mult, unit

Parse errors carry (line, column); validation errors carry the failing
axiom name.
"""

from __future__ import annotations

import re

from .azumaya import AlgebraPresentation, verify_algebra
from .cyclotomic import scalar_from_text, scalar_to_text
from .errors import (
    BraidcheckError,
    NotAGroup,
    ParseError,
    ShapeMismatch,
    ValidationError,
)
from .groups import Group, group_from_table
from .hopf import HopfPresentation, RMatrix, verify_hopf, verify_quasitriangular
from .linalg import Matrix
from .modular import ModularData
from .rep import HModule, verify_module

_HEADER_RE = re.compile(r"^(\w[\w-]*)\s*(.*)$")
_KV_RE = re.compile(r"(\w+)=(\S+)")
_ENTRY_RE = re.compile(r"^(\w+):\s*\(([^)]*)\)\s*(.*)$")


def _lines(text):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield ln, line


def _parse_header(ln, line, expected_keys):
    m = _HEADER_RE.match(line.strip())
    if not m:
        raise ParseError(ln, 1, "malformed header line")
    kind = m.group(1)
    kv = dict(_KV_RE.findall(m.group(2)))
    for k in expected_keys:
        if k not in kv:
            raise ParseError(ln, 1, f"header missing {k}=")
    return kind, kv


def _parse_field(kv, ln):
    field = kv.get("field", "zeta(1)")
    m = re.match(r"^zeta\((\d+)\)$", field)
    if not m:
        raise ParseError(ln, 1, f"bad field {field!r}, expected zeta(<n>)")
    return int(m.group(1))


def _parse_entry(ln, line, arity_by_tag):
    m = _ENTRY_RE.match(line.strip())
    if not m:
        raise ParseError(ln, 1, f"expected 'tag: (indices) scalar', got {line.strip()!r}")
    tag = m.group(1)
    if tag not in arity_by_tag:
        raise ParseError(ln, 1, f"unknown tag {tag!r}")
    parts = [p.strip() for p in m.group(2).split(",")] if m.group(2).strip() else []
    arity = arity_by_tag[tag]
    if arity is not None and len(parts) != arity:
        raise ParseError(ln, 1, f"tag {tag!r} wants {arity} indices, got {len(parts)}")
    try:
        idx = tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(ln, 1, f"non-integer index in {m.group(2)!r}")
    return tag, idx, m.group(3).strip()


def _check_range(ln, idx, bounds):
    for v, b in zip(idx, bounds):
        if not 0 <= v < b:
            raise ParseError(ln, 1, f"index {v} out of range({b})")


# ---------------------------------------------------------------------------
# hopf
# ---------------------------------------------------------------------------


def parse_hopf_text(text, validate=True):
    it = _lines(text)
    try:
        ln, header = next(it)
    except StopIteration:
        raise ParseError(0, 0, "empty file")
    kind, kv = _parse_header(ln, header, ("dim",))
    if kind != "hopf":
        raise ParseError(ln, 1, f"expected 'hopf' header, got {kind!r}")
    d = int(kv["dim"])
    conductor = _parse_field(kv, ln)
    arity = {"mult": 3, "comult": 3, "unit": 1, "counit": 1, "antipode": 2, "rmatrix": 2}
    mult, comult, unit, counit, antipode, rmat = {}, {}, {}, {}, {}, {}
    for ln, line in it:
        tag, idx, stext = _parse_entry(ln, line, arity)
        val = scalar_from_text(stext, ln, 1)
        _check_range(ln, idx, (d,) * len(idx))
        if tag == "mult":
            i, j, k = idx
            mult.setdefault((i, j), {})[k] = val
        elif tag == "comult":
            i, j, k = idx
            comult.setdefault(i, {})[(j, k)] = val
        elif tag == "unit":
            unit[idx[0]] = val
        elif tag == "counit":
            counit[idx[0]] = val
        elif tag == "antipode":
            antipode.setdefault(idx[0], {})[idx[1]] = val
        else:
            rmat[idx] = val
    H = HopfPresentation(d, mult, unit, comult, counit, antipode,
                         conductor=conductor, name=kv.get("name", ""))
    R = RMatrix(rmat) if rmat else None
    if validate:
        rep = verify_hopf(H)
        if not rep.passed:
            raise ValidationError(rep.failing()[0])
        if R is not None:
            qrep = verify_quasitriangular(H, R)
            if not qrep.passed:
                raise ValidationError(qrep.failing()[0])
    return H, R


def hopf_to_text(H, R=None):
    out = [f"hopf dim={H.dim} field=zeta({H.conductor})"]
    for (i, j), col in sorted(H.mult.items()):
        for k, v in sorted(col.items()):
            out.append(f"mult: ({i},{j},{k}) {scalar_to_text(v)}")
    for k, v in sorted(H.unit.items()):
        out.append(f"unit: ({k}) {scalar_to_text(v)}")
    for i, col in sorted(H.comult.items()):
        for (j, k), v in sorted(col.items()):
            out.append(f"comult: ({i},{j},{k}) {scalar_to_text(v)}")
    for i, v in sorted(H.counit.items()):
        out.append(f"counit: ({i}) {scalar_to_text(v)}")
    for i, col in sorted(H.antipode.items()):
        for j, v in sorted(col.items()):
            out.append(f"antipode: ({i},{j}) {scalar_to_text(v)}")
    if R is not None:
        for (i, j), v in sorted(R.entries.items()):
            out.append(f"rmatrix: ({i},{j}) {scalar_to_text(v)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# module
# ---------------------------------------------------------------------------


def parse_module_text(text, resolve_hopf, validate=True):
    """resolve_hopf(name) -> HopfPresentation; injected so the caller decides
    how 'over=' references are looked up (builtin id or sibling file)."""
    it = _lines(text)
    try:
        ln, header = next(it)
    except StopIteration:
        raise ParseError(0, 0, "empty file")
    kind, kv = _parse_header(ln, header, ("dim", "over"))
    if kind != "module":
        raise ParseError(ln, 1, f"expected 'module' header, got {kind!r}")
    m = int(kv["dim"])
    H = resolve_hopf(kv["over"])
    action = {}
    for ln, line in it:
        tag, idx, stext = _parse_entry(ln, line, {"action": 3})
        val = scalar_from_text(stext, ln, 1)
        h, i, j = idx
        _check_range(ln, (h,), (H.dim,))
        _check_range(ln, (i, j), (m, m))
        action.setdefault(h, {}).setdefault(j, {})[i] = val
    X = HModule(H, m, action)
    if validate and not verify_module(X):
        raise ValidationError("module axioms")
    return X


def module_to_text(X, over):
    out = [f"module dim={X.dim} over={over}"]
    for h, cm in sorted(X.action.items()):
        for j, col in sorted(cm.items()):
            for i, v in sorted(col.items()):
                out.append(f"action: ({h},{i},{j}) {scalar_to_text(v)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# modular data
# ---------------------------------------------------------------------------


def parse_modular_text(text):
    it = _lines(text)
    try:
        ln, header = next(it)
    except StopIteration:
        raise ParseError(0, 0, "empty file")
    kind, kv = _parse_header(ln, header, ("rank",))
    if kind != "modular":
        raise ParseError(ln, 1, f"expected 'modular' header, got {kind!r}")
    r = int(kv["rank"])
    _parse_field(kv, ln)
    s = Matrix(r, r)
    t = Matrix(r, r)
    labels = [str(i) for i in range(r)]
    for ln, line in it:
        tag, idx, stext = _parse_entry(ln, line, {"S": 2, "T": 1, "label": 1})
        _check_range(ln, idx, (r,) * len(idx))
        if tag == "label":
            labels[idx[0]] = stext
            continue
        val = scalar_from_text(stext, ln, 1)
        if tag == "S":
            s.data[idx[0]][idx[1]] = val
        else:
            t.data[idx[0]][idx[0]] = val
    try:
        return ModularData(r, tuple(labels), s, t)
    except ShapeMismatch as exc:
        raise ValidationError(str(exc))


def modular_to_text(data):
    out = [f"modular rank={data.rank} field=zeta(1)"]
    for i, lab in enumerate(data.labels):
        if lab != str(i):
            out.append(f"label: ({i}) {lab}")
    for a in range(data.rank):
        for b in range(data.rank):
            v = data.smatrix.data[a][b]
            if v:
                out.append(f"S: ({a},{b}) {scalar_to_text(v)}")
    for a in range(data.rank):
        v = data.tmatrix.data[a][a]
        if v:
            out.append(f"T: ({a}) {scalar_to_text(v)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# group
# ---------------------------------------------------------------------------


def parse_group_text(text):
    it = _lines(text)
    try:
        ln, header = next(it)
    except StopIteration:
        raise ParseError(0, 0, "empty file")
    kind, kv = _parse_header(ln, header, ("order",))
    if kind != "group":
        raise ParseError(ln, 1, f"expected 'group' header, got {kind!r}")
    m = int(kv["order"])
    rows = []
    for ln, line in it:
        try:
            row = [int(p) for p in line.split()]
        except ValueError:
            raise ParseError(ln, 1, f"non-integer table entry in {line.strip()!r}")
        if len(row) != m:
            raise ParseError(ln, 1, f"table row has {len(row)} entries, expected {m}")
        rows.append(row)
    if len(rows) != m:
        raise ParseError(ln if rows else 1, 1, f"table has {len(rows)} rows, expected {m}")
    try:
        return group_from_table(rows)
    except NotAGroup as exc:
        raise ValidationError(str(exc))


def group_to_text(g):
    out = [f"group order={g.order}"]
    for row in g.table:
        out.append(" ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------


def parse_algebra_text(text, validate=True):
    it = _lines(text)
    try:
        ln, header = next(it)
    except StopIteration:
        raise ParseError(0, 0, "empty file")
    kind, kv = _parse_header(ln, header, ("dim",))
    if kind != "algebra":
        raise ParseError(ln, 1, f"expected 'algebra' header, got {kind!r}")
    d = int(kv["dim"])
    conductor = _parse_field(kv, ln)
    mult, unit = {}, {}
    for ln, line in it:
        tag, idx, stext = _parse_entry(ln, line, {"mult": 3, "unit": 1})
        val = scalar_from_text(stext, ln, 1)
        _check_range(ln, idx, (d,) * len(idx))
        if tag == "mult":
            i, j, k = idx
            mult.setdefault((i, j), {})[k] = val
        else:
            unit[idx[0]] = val
    alg = AlgebraPresentation(d, mult, unit, conductor=conductor)
    if validate:
        verify_algebra(alg)
    return alg


def algebra_to_text(alg):
    out = [f"algebra dim={alg.dim} field=zeta({alg.conductor})"]
    for (i, j), col in sorted(alg.mult.items()):
        for k, v in sorted(col.items()):
            out.append(f"mult: ({i},{j},{k}) {scalar_to_text(v)}")
    for k, v in sorted(alg.unit.items()):
        out.append(f"unit: ({k}) {scalar_to_text(v)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def detect_kind(text):
    for ln, line in _lines(text):
        m = _HEADER_RE.match(line.strip())
        if not m:
            raise ParseError(ln, 1, "malformed header line")
        return m.group(1)
    raise ParseError(0, 0, "empty file")
