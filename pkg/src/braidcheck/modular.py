"""Semisimple layer: modular data, transparency, products, doubles.

Modular data is the (S, T) pair of a semisimple braided fusion category with
labels indexed 0..r-1 and the unit at index 0.  Everything here is exact: S
entries are rationals or cyclotomics, transparency is decided by the identity
S_xy = d_x d_y S_00, and non-degeneracy is decided two independent ways (S of
full rank, and transparent labels = {unit}) which are cross-asserted.

The double constructor produces the modular data of the untwisted double of a
finite group from its conjugacy classes and centralizer characters.  Its own
regression fixture is the order-2 group, whose 4x4 S and T matrices are known
in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .cyclotomic import Cyclo, sc_conj, sc_is_zero, sc_rational
from .errors import InternalInconsistency, NotAGroup, ShapeMismatch
from .groups import (
    Group,
    centralizer,
    character_table_cached,
    class_index_map,
    conjugacy_classes,
)
from .hopf import AxiomReport
from .linalg import Matrix, mat_rank

_ZERO = mpq(0)
_ONE = mpq(1)


@dataclass(frozen=True)
class ModularData:
    """Labelled (S, T) data; the unit object is the label at index 0."""

    rank: int
    labels: tuple
    smatrix: Matrix
    tmatrix: Matrix

    def __post_init__(self):
        if len(self.labels) != self.rank:
            raise ShapeMismatch("label count differs from rank")
        if self.smatrix.rows != self.rank or self.smatrix.cols != self.rank:
            raise ShapeMismatch("S matrix shape differs from rank")
        if self.tmatrix.rows != self.rank or self.tmatrix.cols != self.rank:
            raise ShapeMismatch("T matrix shape differs from rank")


def trivial_data() -> ModularData:
    return ModularData(1, ("1",), Matrix.from_rows([[_ONE]]), Matrix.from_rows([[_ONE]]))


def verify_modular_data(data: ModularData) -> AxiomReport:
    """Check the modular-data axioms; Verlinde checks only when S is invertible."""
    rep = AxiomReport()
    r = data.rank
    s, t = data.smatrix, data.tmatrix

    sym = True
    wit = None
    for a in range(r):
        for b in range(a + 1, r):
            if not s.data[a][b] == s.data[b][a]:
                sym, wit = False, (a, b)
                break
        if not sym:
            break
    rep.record("s_symmetric", sym, wit)

    col0 = next((a for a in range(r) if sc_is_zero(s.data[a][0])), None)
    rep.record("s_column0_nonzero", col0 is None, col0)

    diag = next(
        ((a, b) for a in range(r) for b in range(r) if a != b and not sc_is_zero(t.data[a][b])),
        None,
    )
    rep.record("t_diagonal", diag is None, diag)
    rep.record("t_unit_is_one", t.data[0][0] == 1)

    # singularity of S is a property (degeneracy), not an axiom failure;
    # the Verlinde checks only make sense when S is invertible
    invertible = mat_rank(s) == r
    if invertible and rep.checks["s_column0_nonzero"]:
        fusion = _verlinde_numbers(data)
        ok, wit = True, None
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    if not _is_nonneg_int(fusion[a][b][c]):
                        ok, wit = False, (a, b, c)
        rep.record("verlinde_integral", ok, wit)
        # N_ab^0 must be the indicator of a dual pairing b = a*
        dual_ok, dual_wit = True, None
        dual_of = []
        for a in range(r):
            hits = [b for b in range(r) if not sc_is_zero(fusion[a][b][0])]
            if len(hits) != 1 or not fusion[a][hits[0]][0] == 1:
                dual_ok, dual_wit = False, a
                break
            dual_of.append(hits[0])
        if dual_ok:
            dual_ok = sorted(dual_of) == list(range(r))
        rep.record("verlinde_duality", dual_ok, dual_wit)
    return rep


def _is_nonneg_int(x):
    if isinstance(x, Cyclo):
        if not x.is_rational():
            return False
        x = x.rational_value()
    x = mpq(x)
    return x.denominator == 1 and x >= 0


def _verlinde_numbers(data: ModularData):
    """N_ab^c = sum_x S_ax S_bx conj(S_cx) / S_0x, from the Verlinde formula."""
    r = data.rank
    s = data.smatrix
    inv0 = [1 / sc_rational(s.data[0][x]) if not isinstance(s.data[0][x], Cyclo) else s.data[0][x].inverse() for x in range(r)]
    out = [[[None] * r for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(r):
            for c in range(r):
                acc = _ZERO
                for x in range(r):
                    acc = acc + s.data[a][x] * s.data[b][x] * sc_conj(s.data[c][x]) * inv0[x]
                out[a][b][c] = acc
    return out


def quantum_dimensions(data: ModularData):
    s = data.smatrix
    if sc_is_zero(s.data[0][0]):
        raise ShapeMismatch("S_00 vanishes; quantum dimensions undefined")
    inv = 1 / sc_rational(s.data[0][0]) if not isinstance(s.data[0][0], Cyclo) else s.data[0][0].inverse()
    return [s.data[0][x] * inv for x in range(data.rank)]


def muger_center(data: ModularData):
    """Labels transparent against everything: S_xy = d_x d_y S_00 for all y."""
    r = data.rank
    s = data.smatrix
    dims = quantum_dimensions(data)
    out = []
    for x in range(r):
        if all(s.data[x][y] == dims[x] * dims[y] * s.data[0][0] for y in range(r)):
            out.append(data.labels[x])
    return out


def is_nondegenerate_modular(data: ModularData) -> bool:
    """True iff S has full rank; cross-checked against transparency."""
    by_rank = mat_rank(data.smatrix) == data.rank
    center = muger_center(data)
    by_center = center == [data.labels[0]]
    if by_rank != by_center:
        raise InternalInconsistency(
            f"rank test says {by_rank} but transparent labels are {center}"
        )
    return by_rank


def deligne_product(d1: ModularData, d2: ModularData) -> ModularData:
    labels = tuple(f"({a})*({b})" for a in d1.labels for b in d2.labels)
    return ModularData(
        d1.rank * d2.rank,
        labels,
        d1.smatrix.kron(d2.smatrix),
        d1.tmatrix.kron(d2.tmatrix),
    )


def reverse_data(data: ModularData) -> ModularData:
    """Mirror braiding: conjugate S entrywise, invert the twists."""
    r = data.rank
    s = Matrix(r, r)
    t = Matrix(r, r)
    for a in range(r):
        for b in range(r):
            s.data[a][b] = sc_conj(data.smatrix.data[a][b])
        tv = data.tmatrix.data[a][a]
        t.data[a][a] = tv.inverse() if isinstance(tv, Cyclo) else 1 / mpq(tv)
    return ModularData(data.rank, data.labels, s, t)


DOUBLE_ORDER_BOUND = 12


def double_modular_data(g: Group, bound: int = DOUBLE_ORDER_BOUND) -> ModularData:
    """Modular data of the untwisted double of a finite group.

    Labels are pairs (conjugacy class, irreducible character of the
    centralizer of its representative).  The S entry at ((A, chi), (B, mu))
    sums conj(chi)(x-conjugated y) * conj(mu)(y-conjugated x) over commuting
    pairs (x, y) in A x B, divided by the group order; the twist at (A, chi)
    is chi(a)/chi(1).
    """
    if g.order > bound:
        raise NotAGroup(f"group order {g.order} exceeds the configured bound {bound}")
    classes = conjugacy_classes(g)
    cls_of = class_index_map(g, classes)

    # one conjugator per element: conj[x] maps the class rep onto x
    conjugator = [None] * g.order
    for cls in classes:
        rep0 = cls[0]
        for h in range(g.order):
            tgt = g.conjugate(h, rep0)
            if conjugator[tgt] is None:
                conjugator[tgt] = h

    entries = []  # (class index, rep, centralizer, char values per class, cls map)
    labels = []
    for ci, cls in enumerate(classes):
        rep0 = cls[0]
        cent = centralizer(g, rep0)
        sub_classes, chars = character_table_cached(cent.group)
        sub_cls_of = class_index_map(cent.group, sub_classes)
        for xi, chi in enumerate(chars):
            entries.append((ci, rep0, cent, chi, sub_cls_of))
            labels.append(f"c{rep0}x{xi}")
    r = len(entries)

    def char_value(cent, chi, sub_cls_of, parent_elem):
        return chi[sub_cls_of[cent.local_index(parent_elem)]]

    inv_order = mpq(1, g.order)
    s = Matrix(r, r)
    t = Matrix(r, r)
    for a, (ci, arep, acent, achi, amap) in enumerate(entries):
        deg = sc_rational(achi[0])
        tv = char_value(acent, achi, amap, arep)
        t.data[a][a] = tv * (1 / deg)
        for b, (cj, brep, bcent, bchi, bmap) in enumerate(entries):
            acc = _ZERO
            for x in classes[ci]:
                gx = conjugator[x]
                gxi = g.inv(gx)
                for y in classes[cj]:
                    if g.table[x][y] != g.table[y][x]:
                        continue
                    hy = conjugator[y]
                    hyi = g.inv(hy)
                    ya = g.table[g.table[gxi][y]][gx]  # pull y into the centralizer of arep
                    xb = g.table[g.table[hyi][x]][hy]
                    acc = acc + sc_conj(char_value(acent, achi, amap, ya)) * sc_conj(
                        char_value(bcent, bchi, bmap, xb)
                    )
            s.data[a][b] = inv_order * acc
    data = ModularData(r, tuple(labels), s, t)
    report = verify_modular_data(data)
    if not report.passed:
        raise InternalInconsistency(f"double data fails axioms: {report.failing()}")
    if not is_nondegenerate_modular(data):
        raise InternalInconsistency("double data is degenerate")
    return data


def symmetric_rep_data(g: Group) -> ModularData:
    """The symmetric (fully transparent) data of finite-group representations.

    S_xy = d_x d_y with d the character degrees; T is the identity.  Useful as
    a degenerate test input: every label is transparent.
    """
    _, chars = character_table_cached(g)
    degs = [sc_rational(c[0]) for c in chars]
    r = len(degs)
    s = Matrix(r, r)
    t = Matrix.identity(r)
    for a in range(r):
        for b in range(r):
            s.data[a][b] = degs[a] * degs[b]
    labels = tuple(f"x{i}" for i in range(r))
    return ModularData(r, labels, s, t)
