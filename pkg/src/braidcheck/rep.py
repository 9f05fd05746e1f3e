"""Modules over a Hopf presentation: the objects diagrams evaluate over.

An HModule stores the action sparsely: action[h] is a colmap col -> {row: c},
the matrix of e_h acting on the carrier.  Tensor factors are flattened
row-major with the left factor major.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import DimensionMismatch, ParentMismatch
from .linalg import Matrix
from .sparsetools import colmap_apply, vaddmul

_ONE = mpq(1)


class HModule:
    def __init__(self, parent, dim, action, name=""):
        self.parent = parent
        self.dim = dim
        self.action = {
            h: {j: dict(col) for j, col in cm.items() if col}
            for h, cm in action.items()
        }
        self.name = name
        for h, cm in self.action.items():
            if not 0 <= h < parent.dim:
                raise DimensionMismatch("action index out of range")
            for j, col in cm.items():
                if not 0 <= j < dim or any(not 0 <= i < dim for i in col):
                    raise DimensionMismatch("action entry out of range")

    def action_matrix(self, h):
        m = Matrix(self.dim, self.dim)
        for j, col in self.action.get(h, {}).items():
            for i, v in col.items():
                m.data[i][j] = v
        return m

    def act_element(self, hvec):
        """Colmap of a general algebra element sum c_h e_h acting."""
        out = {}
        for h, c in hvec.items():
            for j, col in self.action.get(h, {}).items():
                dst = out.setdefault(j, {})
                vaddmul(dst, col, c)
        return {j: col for j, col in out.items() if col}

    def apply(self, h, vec):
        return colmap_apply(self.action.get(h, {}), vec)

    def __repr__(self):
        return f"HModule(dim={self.dim}, over={self.parent.name!r})"


def verify_module(X: HModule) -> bool:
    """Exact check that the action respects multiplication and the unit."""
    H = X.parent
    basis = [{i: _ONE} for i in range(X.dim)]
    for v in range(X.dim):
        acc = {}
        for h, c in H.unit.items():
            vaddmul(acc, X.apply(h, basis[v]), c)
        vaddmul(acc, basis[v], -_ONE)
        if acc:
            return False
    for i in range(H.dim):
        for j in range(H.dim):
            col = H.mult.get((i, j), {})
            for v in range(X.dim):
                lhs = X.apply(i, X.apply(j, basis[v]))
                rhs = {}
                for k, c in col.items():
                    vaddmul(rhs, X.apply(k, basis[v]), c)
                if lhs != rhs:
                    return False
    return True


def trivial_module(H) -> HModule:
    action = {}
    for i, c in H.counit.items():
        action[i] = {0: {0: c}}
    return HModule(H, 1, action, name="trivial")


def regular_module(H) -> HModule:
    action = {}
    for (i, j), col in H.mult.items():
        action.setdefault(i, {})[j] = col
    return HModule(H, H.dim, action, name="regular")


def tensor_module(X: HModule, Y: HModule) -> HModule:
    if X.parent is not Y.parent:
        raise ParentMismatch("tensor factors over different Hopf algebras")
    H = X.parent
    mY = Y.dim
    action = {}
    for h in range(H.dim):
        cm = {}
        for (a, b), c in H.comult.get(h, {}).items():
            ca = X.action.get(a)
            cb = Y.action.get(b)
            if not (ca and cb):
                continue
            for jx, colx in ca.items():
                for jy, coly in cb.items():
                    dst = cm.setdefault(jx * mY + jy, {})
                    for ix, vx in colx.items():
                        for iy, vy in coly.items():
                            key = ix * mY + iy
                            t = c * vx * vy
                            nv = dst.get(key)
                            nv = t if nv is None else nv + t
                            if nv:
                                dst[key] = nv
                            else:
                                del dst[key]
        cm = {j: col for j, col in cm.items() if col}
        if cm:
            action[h] = cm
    return HModule(H, X.dim * mY, action,
                   name=f"({X.name}(x){Y.name})")


def dual_module(X: HModule) -> HModule:
    """Left dual: (h . f)(v) = f(S(h) . v), matrix rho(S(h)) transposed."""
    H = X.parent
    action = {}
    for h in range(H.dim):
        svec = H.antipode.get(h)
        if not svec:
            continue
        cm = {}
        for k, c in svec.items():
            for j, col in X.action.get(k, {}).items():
                for i, v in col.items():
                    # transpose: dual action column i gets row j
                    dst = cm.setdefault(i, {})
                    nv = dst.get(j)
                    nv = c * v if nv is None else nv + c * v
                    if nv:
                        dst[j] = nv
                    else:
                        del dst[j]
        cm = {j: col for j, col in cm.items() if col}
        if cm:
            action[h] = cm
    return HModule(H, X.dim, action, name=f"dual({X.name})")


def ev_matrix(X: HModule) -> Matrix:
    """Evaluation dual(X) (x) X -> unit object, f (x) v -> f(v)."""
    m = X.dim
    out = Matrix(1, m * m)
    for i in range(m):
        out.data[0][i * m + i] = _ONE
    return out


def coev_matrix(X: HModule) -> Matrix:
    """Coevaluation unit -> X (x) dual(X), 1 -> sum v_i (x) f_i."""
    m = X.dim
    out = Matrix(m * m, 1)
    for i in range(m):
        out.data[i * m + i][0] = _ONE
    return out


def braiding_colmap(X: HModule, Y: HModule, R):
    """Sparse braiding X (x) Y -> Y (x) X: flip after acting by R."""
    if X.parent is not Y.parent:
        raise ParentMismatch("braiding of modules over different Hopf algebras")
    mX, mY = X.dim, Y.dim
    out = {}
    for (i, j), c in R.entries.items():
        ca = X.action.get(i)
        cb = Y.action.get(j)
        if not (ca and cb):
            continue
        for jx, colx in ca.items():
            for jy, coly in cb.items():
                dst = out.setdefault(jx * mY + jy, {})
                for ix, vx in colx.items():
                    for iy, vy in coly.items():
                        key = iy * mX + ix
                        t = c * vx * vy
                        nv = dst.get(key)
                        nv = t if nv is None else nv + t
                        if nv:
                            dst[key] = nv
                        else:
                            del dst[key]
    return {j: col for j, col in out.items() if col}


def braiding_inverse_colmap(X: HModule, Y: HModule, R):
    """Sparse inverse braiding Y (x) X -> X (x) Y."""
    H = X.parent
    rinv = R.inverse_element(H)
    mX, mY = X.dim, Y.dim
    out = {}
    for (i, j), c in rinv.items():
        ca = X.action.get(i)
        cb = Y.action.get(j)
        if not (ca and cb):
            continue
        for jx, colx in ca.items():
            for jy, coly in cb.items():
                dst = out.setdefault(jy * mX + jx, {})
                for ix, vx in colx.items():
                    for iy, vy in coly.items():
                        key = ix * mY + iy
                        t = c * vx * vy
                        nv = dst.get(key)
                        nv = t if nv is None else nv + t
                        if nv:
                            dst[key] = nv
                        else:
                            del dst[key]
    return {j: col for j, col in out.items() if col}


def braiding(X: HModule, Y: HModule, R) -> Matrix:
    cm = braiding_colmap(X, Y, R)
    out = Matrix(Y.dim * X.dim, X.dim * Y.dim)
    for j, col in cm.items():
        for i, v in col.items():
            out.data[i][j] = v
    return out


def braiding_inverse(X: HModule, Y: HModule, R) -> Matrix:
    cm = braiding_inverse_colmap(X, Y, R)
    out = Matrix(X.dim * Y.dim, Y.dim * X.dim)
    for j, col in cm.items():
        for i, v in col.items():
            out.data[i][j] = v
    return out


def hom_space(X: HModule, Y: HModule):
    """Exact basis of intertwiners T with T rho_X(h) = rho_Y(h) T."""
    if X.parent is not Y.parent:
        raise ParentMismatch("hom of modules over different Hopf algebras")
    H = X.parent
    mX, mY = X.dim, Y.dim
    # unknowns T[i][j] flattened as i * mX + j
    rows = []
    for h in range(H.dim):
        A = X.action_matrix(h)
        B = Y.action_matrix(h)
        for i in range(mY):
            for j in range(mX):
                row = [mpq(0)] * (mY * mX)
                for k in range(mX):
                    if A.data[k][j]:
                        row[i * mX + k] = row[i * mX + k] + A.data[k][j]
                for k in range(mY):
                    if B.data[i][k]:
                        row[k * mX + j] = row[k * mX + j] - B.data[i][k]
                rows.append(row)
    ker = Matrix(len(rows), mY * mX, rows).kernel_basis()
    out = []
    for c in range(ker.cols):
        T = Matrix(mY, mX)
        for i in range(mY):
            for j in range(mX):
                T.data[i][j] = ker.data[i * mX + j][c]
        out.append(T)
    return out
