"""Associative algebras over a field, tested for the Azumaya property.

Two independent routes are computed for every input and cross-asserted:

  * the sandwich route: the map A (x) A^op -> End(A), (a (x) b) |-> (x |-> a x b),
    must be an isomorphism;
  * the central-separable route: the center must be exactly the scalars, and a
    separability idempotent must exist.

Over a field every nonzero algebra is a faithful projective module over
itself, so that condition reduces to dim >= 1 and is recorded explicitly in
the report rather than silently assumed.

Structure constants follow the same sparse-dict style as the Hopf layer:
mult[(i, j)] = {k: c} means e_i e_j = sum c e_k, and the unit is a sparse
vector {k: c}.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    SingularError,
    ValidationError,
)
from .linalg import Matrix, mat_rank
from .sparsetools import vaddmul, veq

_ONE = mpq(1)


def _clean(v):
    return {k: c for k, c in v.items() if c}


class AlgebraPresentation:
    """A finite-dimensional unital associative algebra over Q(zeta_n)."""

    def __init__(self, dim, mult, unit, conductor=1, name=""):
        self.dim = dim
        self.mult = {k: _clean(v) for k, v in mult.items() if _clean(v)}
        self.unit = _clean(unit)
        self.conductor = conductor
        self.name = name
        for (i, j), v in self.mult.items():
            if not (0 <= i < dim and 0 <= j < dim and all(0 <= k < dim for k in v)):
                raise DimensionMismatch("mult index out of range")
        if not all(0 <= k < dim for k in self.unit):
            raise DimensionMismatch("unit index out of range")

    def mul_vec(self, a, b):
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                col = self.mult.get((i, j))
                if col:
                    vaddmul(out, col, ca * cb)
        return out


def verify_algebra(alg: AlgebraPresentation):
    """Raise ValidationError unless associativity and unitality hold exactly."""
    d = alg.dim
    basis = [{i: _ONE} for i in range(d)]
    one = dict(alg.unit)
    for i in range(d):
        if not veq(alg.mul_vec(one, basis[i]), basis[i]):
            raise ValidationError(f"left unit fails at basis index {i}")
        if not veq(alg.mul_vec(basis[i], one), basis[i]):
            raise ValidationError(f"right unit fails at basis index {i}")
    for i in range(d):
        for j in range(d):
            ij = alg.mul_vec(basis[i], basis[j])
            for k in range(d):
                lhs = alg.mul_vec(ij, basis[k])
                rhs = alg.mul_vec(basis[i], alg.mul_vec(basis[j], basis[k]))
                if not veq(lhs, rhs):
                    raise ValidationError(f"associativity fails at ({i},{j},{k})")


def left_mult_matrix(alg, i):
    m = Matrix(alg.dim, alg.dim)
    for j in range(alg.dim):
        for k, c in alg.mult.get((i, j), {}).items():
            m.data[k][j] = c
    return m


def right_mult_matrix(alg, i):
    m = Matrix(alg.dim, alg.dim)
    for j in range(alg.dim):
        for k, c in alg.mult.get((j, i), {}).items():
            m.data[k][j] = c
    return m


def center_of_algebra(alg: AlgebraPresentation):
    """Exact basis of {z : za = az for all a}, as a list of sparse vectors."""
    d = alg.dim
    comm = Matrix(d * d, d)
    for i in range(d):
        li = left_mult_matrix(alg, i)
        ri = right_mult_matrix(alg, i)
        for r in range(d):
            for c in range(d):
                comm.data[i * d + r][c] = comm.data[i * d + r][c] + ri.data[r][c] - li.data[r][c]
    basis = comm.kernel_basis()
    out = []
    for c in range(basis.cols):
        out.append({k: basis.data[k][c] for k in range(d) if basis.data[k][c]})
    return out


def sandwich_map(alg: AlgebraPresentation) -> Matrix:
    """The d^2 x d^2 matrix of (a (x) b) |-> (x |-> a x b) on basis pairs."""
    d = alg.dim
    out = Matrix(d * d, d * d)
    for i in range(d):
        for j in range(d):
            col = i * d + j
            for x in range(d):
                v = alg.mul_vec(alg.mul_vec({i: _ONE}, {x: _ONE}), {j: _ONE})
                for k, c in v.items():
                    out.data[k * d + x][col] = c
    return out


def separability_idempotent(alg: AlgebraPresentation):
    """A witness e in A (x) A with m(e) = 1 and (a (x) 1) e = e (1 (x) a), or None.

    The witness is returned as a sparse dict (i, j) -> scalar and re-verified
    before being handed back.
    """
    d = alg.dim
    # unknowns: e_{ij}, i*d + j
    rows = []
    rhs = []
    # m(e) = 1
    for k in range(d):
        row = [0] * (d * d)
        for i in range(d):
            for j in range(d):
                c = alg.mult.get((i, j), {}).get(k)
                if c:
                    row[i * d + j] = c
        rows.append(row)
        rhs.append(alg.unit.get(k, 0))
    # (a (x) 1) e - e (1 (x) a) = 0 for each basis a
    for a in range(d):
        la = left_mult_matrix(alg, a)
        ra = right_mult_matrix(alg, a)
        for r in range(d):
            for s in range(d):
                row = [0] * (d * d)
                for i in range(d):
                    if la.data[r][i]:
                        row[i * d + s] = row[i * d + s] + la.data[r][i]
                for j in range(d):
                    if ra.data[s][j]:
                        row[r * d + j] = row[r * d + j] - ra.data[s][j]
                if any(row):
                    rows.append(row)
                    rhs.append(0)
    mat = Matrix.from_rows(rows)
    target = Matrix.column(rhs)
    try:
        sol = mat.solve_right(target)
    except SingularError:
        return None
    e = {}
    for i in range(d):
        for j in range(d):
            c = sol.data[i * d + j][0]
            if c:
                e[(i, j)] = c
    _check_idempotent_witness(alg, e)
    return e


def _check_idempotent_witness(alg, e):
    d = alg.dim
    m_of_e = {}
    for (i, j), c in e.items():
        vaddmul(m_of_e, alg.mult.get((i, j), {}), c)
    if not veq(m_of_e, alg.unit):
        raise InternalInconsistency("separability witness fails m(e) = 1")
    for a in range(d):
        lhs = {}
        rhs = {}
        for (i, j), c in e.items():
            for k, ca in alg.mult.get((a, i), {}).items():
                key = (k, j)
                lhs[key] = lhs.get(key, 0) + c * ca
            for k, ca in alg.mult.get((j, a), {}).items():
                key = (i, k)
                rhs[key] = rhs.get(key, 0) + c * ca
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs and not veq(lhs, rhs):
            raise InternalInconsistency("separability witness fails centrality")


@dataclass(frozen=True)
class AzumayaReport:
    central: bool
    separable: bool
    sandwich_iso: bool
    faithful_projective: bool
    verdict: bool
    route_agreement: bool

    def as_dict(self):
        return {
            "central": self.central,
            "separable": self.separable,
            "sandwich_iso": self.sandwich_iso,
            "faithful_projective": self.faithful_projective,
            "verdict": self.verdict,
            "route_agreement": self.route_agreement,
        }


def is_azumaya(alg: AlgebraPresentation) -> AzumayaReport:
    """Decide the Azumaya property by two independent routes, cross-asserted."""
    verify_algebra(alg)
    central = len(center_of_algebra(alg)) == 1
    separable = separability_idempotent(alg) is not None
    sandwich_iso = mat_rank(sandwich_map(alg)) == alg.dim * alg.dim
    faithful_projective = alg.dim >= 1
    route_a = sandwich_iso and faithful_projective
    route_b = central and separable
    if route_a != route_b:
        raise InternalInconsistency(
            f"sandwich route says {route_a}, central-separable route says {route_b}"
        )
    return AzumayaReport(
        central, separable, sandwich_iso, faithful_projective, route_a, route_a == route_b
    )


# ---------------------------------------------------------------------------
# stock examples
# ---------------------------------------------------------------------------


def matrix_algebra(n: int) -> AlgebraPresentation:
    """M_n(Q) on the basis E_{rc} at index r*n + c."""
    mult = {}
    d = n * n
    for r in range(n):
        for c in range(n):
            for s in range(n):
                for t in range(n):
                    if c == s:
                        mult[(r * n + c, s * n + t)] = {r * n + t: _ONE}
    unit = {i * n + i: _ONE for i in range(n)}
    return AlgebraPresentation(d, mult, unit, name=f"M{n}(Q)")


def split_pair_algebra() -> AlgebraPresentation:
    """Q x Q on orthogonal idempotents."""
    mult = {(0, 0): {0: _ONE}, (1, 1): {1: _ONE}}
    return AlgebraPresentation(2, mult, {0: _ONE, 1: _ONE}, name="QxQ")


def gaussian_field_algebra() -> AlgebraPresentation:
    """Q(i) as a two-dimensional Q-algebra on 1, i."""
    mult = {
        (0, 0): {0: _ONE},
        (0, 1): {1: _ONE},
        (1, 0): {1: _ONE},
        (1, 1): {0: -_ONE},
    }
    return AlgebraPresentation(2, mult, {0: _ONE}, name="Q(i)")


def dual_numbers_algebra() -> AlgebraPresentation:
    """Q[x]/(x^2): commutative, not separable."""
    mult = {
        (0, 0): {0: _ONE},
        (0, 1): {1: _ONE},
        (1, 0): {1: _ONE},
    }
    return AlgebraPresentation(2, mult, {0: _ONE}, name="Q[x]/(x^2)")


def tensor_algebra(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """A (x) B with basis pairs at index i*b.dim + j."""
    db = b.dim
    mult = {}
    for (i1, j1), v1 in a.mult.items():
        for (i2, j2), v2 in b.mult.items():
            col = {}
            for k1, c1 in v1.items():
                for k2, c2 in v2.items():
                    col[k1 * db + k2] = c1 * c2
            mult[(i1 * db + i2, j1 * db + j2)] = col
    unit = {}
    for k1, c1 in a.unit.items():
        for k2, c2 in b.unit.items():
            unit[k1 * db + k2] = c1 * c2
    return AlgebraPresentation(a.dim * db, mult, unit, name=f"{a.name}(x){b.name}")


def twist_by_basis_change(alg: AlgebraPresentation, p: Matrix) -> AlgebraPresentation:
    """Transport the structure constants along an invertible matrix p.

    Used to generate associative samples that do not look like the stock
    examples while provably staying isomorphic to them.
    """
    d = alg.dim
    pinv = p.inverse()
    mult = {}
    for i in range(d):
        for j in range(d):
            # new basis f_i = sum_k p[k][i] e_k
            prod = {}
            for k1 in range(d):
                if not p.data[k1][i]:
                    continue
                for k2 in range(d):
                    if not p.data[k2][j]:
                        continue
                    vaddmul(prod, alg.mult.get((k1, k2), {}), p.data[k1][i] * p.data[k2][j])
            col = {}
            for k, c in prod.items():
                for t in range(d):
                    v = pinv.data[t][k] * c
                    if v:
                        col[t] = col.get(t, 0) + v
            col = {t: v for t, v in col.items() if v}
            if col:
                mult[(i, j)] = col
    unit_vec = {}
    for k, c in alg.unit.items():
        for t in range(d):
            v = pinv.data[t][k] * c
            if v:
                unit_vec[t] = unit_vec.get(t, 0) + v
    unit_vec = {t: v for t, v in unit_vec.items() if v}
    return AlgebraPresentation(d, mult, unit_vec, conductor=alg.conductor, name=alg.name + "~")
