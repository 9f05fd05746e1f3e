"""The canonical coend F and end E over a quasitriangular Hopf presentation.

F is realized on the dual space with the coadjoint action, E on the algebra
itself with the adjoint action.  The structure maps of F (multiplication,
comultiplication, counit, antipode), the self-pairing omega and the map
Dr: F -> E are all computed by evaluating the corresponding string diagrams
on the regular module and descending along the projection
pi(f (x) v) = (h -> f(h.v)); every descent is verified exactly against the
full evaluation, and the diagrammatic Dr is compared against its closed
form entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from gmpy2 import mpq

from .diagrams import (apply_locals, compile_diagram, named_diagram,
                       transpose_locals)
from .errors import (ConventionMismatch, DescentFailure,
                     InternalInconsistency)
from .hopf import drinfeld_map_closed, monodromy_element
from .linalg import Matrix
from .rep import HModule, dual_module, regular_module, trivial_module, verify_module
from .sparsetools import vaddmul

_ONE = mpq(1)

_CACHE = {}


# -- carriers ----------------------------------------------------------------

def coadjoint_module(H, convention="s-left") -> HModule:
    """H* with (h.f)(k) = f(S(h1) k h2) ("s-left") or f(S(h2) k h1)."""
    d = H.dim
    action = {}
    for h in range(d):
        cm = {}
        for b in range(d):
            w = {}
            for (j, k), c in H.comult.get(h, {}).items():
                if convention == "s-left":
                    s, t = j, k
                else:
                    s, t = k, j
                v1 = H.mul_vec(H.antipode.get(s, {}), {b: _ONE})
                v2 = H.mul_vec(v1, {t: _ONE})
                vaddmul(w, v2, c)
            # (h . e^a)(e_b) = w[a]: column a gets row b
            for a, val in w.items():
                cm.setdefault(a, {})[b] = val
        cm = {a: col for a, col in cm.items() if col}
        if cm:
            action[h] = cm
    return HModule(H, d, action, name="coadjoint")


def adjoint_module(H) -> HModule:
    """H with ad(h)(b) = sum h1 b S(h2)."""
    d = H.dim
    action = {}
    for h in range(d):
        cm = {}
        for b in range(d):
            w = {}
            for (j, k), c in H.comult.get(h, {}).items():
                v1 = H.mul_vec({j: _ONE}, {b: _ONE})
                v2 = H.mul_vec(v1, H.antipode.get(k, {}))
                vaddmul(w, v2, c)
            if w:
                cm[b] = w
        if cm:
            action[h] = cm
    return HModule(H, d, action, name="adjoint")


def projection_colmap(X: HModule):
    """pi_X : dual(X) (x) X -> F, column (i * m + j) -> {h: rho(e_h)[i][j]}."""
    m = X.dim
    out = {}
    for h, cm in X.action.items():
        for j, col in cm.items():
            for i, v in col.items():
                out.setdefault(i * m + j, {})[h] = v
    return out


def end_embedding_colmap(X: HModule):
    """E -> X (x) dual(X), column h -> {r * m + k: rho(e_h)[r][k]}."""
    m = X.dim
    out = {}
    for h, cm in X.action.items():
        col = {}
        for k, c in cm.items():
            for r, v in c.items():
                col[r * m + k] = v
        if col:
            out[h] = col
    return out


def _is_intertwiner(cm, src: HModule, dst: HModule):
    """Does the colmap cm commute with the two actions, exactly?"""
    from .sparsetools import colmap_apply
    for h in range(src.parent.dim):
        present = src.action.get(h, {})
        for j in range(src.dim):
            lhs = colmap_apply(cm, present.get(j, {}))
            rhs = {}
            base = cm.get(j)
            if base:
                for k, c in base.items():
                    vaddmul(rhs, dst.apply(h, {k: _ONE}), c)
            if lhs != rhs:
                return False
    return True


@dataclass
class CoendRealization:
    parent: object
    rmatrix: object
    carrier: HModule
    end_carrier: HModule
    projection: dict            # colmap (i*d+j) -> {h: value}
    pi_rows: list               # row h -> {(i*d+j): value}
    pivots: list                # d flat column indices with invertible minor
    section: dict               # colmap a -> {pivot flat index: value}
    mult: Matrix                # d x d^2   (column (a*d+b))
    comult: Matrix              # d^2 x d
    counit: Matrix              # 1 x d
    antipode: Matrix            # d x d
    unit: dict                  # sparse vector in F
    convention: str
    mult_cols: dict = field(default_factory=dict)
    comult_cols: dict = field(default_factory=dict)


# -- descent helpers ----------------------------------------------------------

def _pivots_and_section(pi_cm, d, d2):
    """Choose d columns of pi with invertible minor; return (pivots, section
    colmap a -> {pivot: coeff}) with pi o section = identity."""
    mat = Matrix(d, d2)
    for j, col in pi_cm.items():
        for h, v in col.items():
            mat.data[h][j] = v
    _, pivots = mat.rref()
    if len(pivots) < d:
        raise DescentFailure(
            f"projection has rank {len(pivots)} < {d}; not surjective")
    piv = pivots[:d]
    minor = mat.submatrix(range(d), piv)
    inv = minor.inverse()
    section = {}
    for a in range(d):
        col = {}
        for r in range(d):
            v = inv.data[r][a]
            if v:
                col[piv[r]] = v
        section[a] = col
    return piv, section


def _functional_backward(D, binding, R, start, from_output=True):
    """Pull a sparse functional on the output boundary back to the input."""
    env, locs = compile_diagram(D, binding, R=R)
    vec = dict(start)
    for sl in reversed(locs):
        vec = apply_locals(transpose_locals(sl), vec)
        if not vec:
            break
    return vec


def _push_columns(D, binding, R, columns):
    """Forward evaluation of selected input columns (sparse vectors)."""
    env, locs = compile_diagram(D, binding, R=R)
    out = {}
    for key, vec0 in columns.items():
        vec = dict(vec0)
        for sl in locs:
            vec = apply_locals(sl, vec)
            if not vec:
                break
        out[key] = vec
    return out


# -- the build ----------------------------------------------------------------

def build_coend(P, R) -> CoendRealization:
    key = (id(P), id(R))
    if key in _CACHE:
        return _CACHE[key]
    last_err = None
    for convention in ("s-left", "s-right"):
        try:
            real = _build_coend_conv(P, R, convention)
            _CACHE[key] = real
            return real
        except DescentFailure as e:
            last_err = e
    raise last_err


def _build_coend_conv(P, R, convention) -> CoendRealization:
    d = P.dim
    d2 = d * d
    reg = regular_module(P)
    regd = dual_module(reg)
    F = coadjoint_module(P, convention)
    if not verify_module(F):
        raise DescentFailure(f"coadjoint action ({convention}) is not a module")
    E = adjoint_module(P)
    if not verify_module(E):
        raise InternalInconsistency("adjoint action is not a module")

    pi = projection_colmap(reg)
    # pi must intertwine dual(reg) (x) reg with the coadjoint action
    from .rep import tensor_module
    X2 = tensor_module(regd, reg)
    if not _is_intertwiner(pi, X2, F):
        raise DescentFailure(
            f"projection is not an intertwiner under {convention}")
    # pi on the trivial module lands on the unit of F (the counit of H)
    triv = trivial_module(P)
    pi_triv = projection_colmap(triv)
    unit_F = pi_triv.get(0, {})
    if unit_F != {h: c for h, c in P.counit.items()}:
        raise InternalInconsistency("trivial-module projection is not the counit")

    pivots, section = _pivots_and_section(pi, d, d2)
    pi_rows = [dict() for _ in range(d)]
    for j, col in pi.items():
        for h, v in col.items():
            pi_rows[h][j] = v

    binding = {"x": reg, "y": reg}

    counit_F = _descend_counit(P, R, binding, pi, pi_rows, section, d, d2)
    comult_F, comult_cols = _descend_comult(P, R, binding, pi, section, d, d2)
    antipode_F = _descend_antipode(P, R, binding, reg, regd, pi, pi_rows,
                                   section, d, d2)
    mult_F, mult_cols = _descend_mult(P, R, binding, reg, pi, pi_rows,
                                      section, pivots, d, d2)

    real = CoendRealization(
        parent=P, rmatrix=R, carrier=F, end_carrier=E,
        projection=pi, pi_rows=pi_rows, pivots=pivots, section=section,
        mult=mult_F, comult=comult_F, counit=counit_F, antipode=antipode_F,
        unit=dict(unit_F), convention=convention,
        mult_cols=mult_cols, comult_cols=comult_cols,
    )
    _verify_structure_intertwiners(real, F)
    report = verify_braided_hopf(real)
    if not report["passed"]:
        raise DescentFailure(
            "descended structure maps violate Hopf axioms: "
            + ", ".join(a for a, ok in report["checks"].items() if not ok))
    return real


def _descend_counit(P, R, binding, pi, pi_rows, section, d, d2):
    # counit diagram is ev on [x~, x]; as a functional it is delta_{i,j}
    D = named_diagram("coend_counit")
    target = _functional_backward(D, binding, R, {0: _ONE})
    eps = Matrix(1, d)
    for a, col in section.items():
        s = 0
        for p, c in col.items():
            t = target.get(p)
            if t:
                s = s + c * t
        eps.data[0][a] = s if s else mpq(0)
    # full factorization check: eps o pi == target on every column
    recon = {}
    for h in range(d):
        e = eps.data[0][h]
        if e:
            vaddmul(recon, pi_rows[h], e)
    if recon != target:
        raise DescentFailure("counit evaluation does not factor through pi")
    return eps


def _descend_comult(P, R, binding, pi, section, d, d2):
    D = named_diagram("coend_comult")
    env, locs = compile_diagram(D, binding, R=R)

    def push(vec0):
        vec = dict(vec0)
        for sl in locs:
            vec = apply_locals(sl, vec)
        # compose with pi (x) pi on the four-wire output
        out = {}
        for kk, c in vec.items():
            k2, pr = divmod(kk, d2)
            col1 = pi.get(k2)
            col2 = pi.get(pr)
            if not (col1 and col2):
                continue
            for h1, v1 in col1.items():
                base = h1 * d
                for h2, v2 in col2.items():
                    kf = base + h2
                    t = c * v1 * v2
                    nv = out.get(kf)
                    nv = t if nv is None else nv + t
                    if nv:
                        out[kf] = nv
                    else:
                        del out[kf]
        return out

    cols = {}
    comult = Matrix(d2, d)
    for a, scol in section.items():
        img = push(scol)
        cols[a] = img
        for kf, v in img.items():
            comult.data[kf][a] = v
    # factorization: comult o pi == (pi x pi) o D on all d^2 columns
    for j in range(d2):
        rhs = push({j: _ONE})
        lhs = {}
        col = pi.get(j, {})
        for h, c in col.items():
            vaddmul(lhs, cols.get(h, {}), c)
        if lhs != rhs:
            raise DescentFailure("comultiplication does not factor through pi")
    return comult, cols


def _descend_antipode(P, R, binding, reg, regd, pi, pi_rows, section, d, d2):
    D = named_diagram("coend_antipode")
    pid = projection_colmap(regd)
    env, locs = compile_diagram(D, binding, R=R)

    def push(vec0):
        vec = dict(vec0)
        for sl in locs:
            vec = apply_locals(sl, vec)
        out = {}
        for kk, c in vec.items():
            col = pid.get(kk)
            if col:
                vaddmul(out, col, c)
        return out

    S = Matrix(d, d)
    cols = {}
    for a, scol in section.items():
        img = push(scol)
        cols[a] = img
        for h, v in img.items():
            S.data[h][a] = v
    for j in range(d2):
        rhs = push({j: _ONE})
        lhs = {}
        for h, c in pi.get(j, {}).items():
            vaddmul(lhs, cols.get(h, {}), c)
        if lhs != rhs:
            raise DescentFailure("antipode does not factor through pi")
    return S


def _descend_mult(P, R, binding, reg, pi, pi_rows, section, pivots, d, d2):
    """Multiplication F (x) F -> F from the two-crossing diagram, computed
    and verified row by row (the output side has only d rows)."""
    D = named_diagram("coend_mult")
    env, locs = compile_diagram(D, binding, R=R)
    rev = [transpose_locals(sl) for sl in reversed(locs)]

    d3 = d2 * d
    mult = Matrix(d, d2)
    mult_cols = {}
    for h in range(d):
        # row h of pi_{x(x)y} pulled through the output reindexing
        # [y~, x~, x, y] ~ ((x(x)y)~, x(x)y): dual pair (b, a), module pair (c, e)
        start = {}
        for (u, v), cD in P.comult.get(h, {}).items():
            cu = reg.action.get(u)
            cv = reg.action.get(v)
            if not (cu and cv):
                continue
            for c_idx, colu in cu.items():
                for b, vu in colu.items():
                    base_b = b * d2
                    for e_idx, colv in cv.items():
                        for a, vv in colv.items():
                            kf = (a * d + b) * d2 + c_idx * d + e_idx
                            t = cD * vu * vv
                            nv = start.get(kf)
                            nv = t if nv is None else nv + t
                            if nv:
                                start[kf] = nv
                            else:
                                del start[kf]
        vec = start
        for sl in rev:
            vec = apply_locals(sl, vec)
        # contract with section (x) section
        for a in range(d):
            sa = section[a]
            for b in range(d):
                sb = section[b]
                s = 0
                for p, c1 in sa.items():
                    base = p * d2
                    for q, c2 in sb.items():
                        t = vec.get(base + q)
                        if t:
                            s = s + c1 * c2 * t
                if s:
                    mult.data[h][a * d + b] = s
        # factorization: row h of  m o (pi x pi)  must equal vec exactly
        recon = {}
        row = mult.data[h]
        for a in range(d):
            ra = pi_rows[a]
            combo = {}
            for b in range(d):
                coeff = row[a * d + b]
                if coeff:
                    vaddmul(combo, pi_rows[b], coeff)
            if not combo:
                continue
            for k1, v1 in ra.items():
                base = k1 * d2
                for k2, v2 in combo.items():
                    kf = base + k2
                    t = v1 * v2
                    nv = recon.get(kf)
                    nv = t if nv is None else nv + t
                    if nv:
                        recon[kf] = nv
                    else:
                        del recon[kf]
        if recon != vec:
            raise DescentFailure("multiplication does not factor through pi x pi")
    for ab in range(d2):
        col = {}
        for h in range(d):
            v = mult.data[h][ab]
            if v:
                col[h] = v
        if col:
            mult_cols[ab] = col
    return mult, mult_cols


def _verify_structure_intertwiners(real: CoendRealization, F: HModule):
    from .rep import tensor_module
    from .sparsetools import matrix_to_colmap
    H = real.parent
    FF = tensor_module(F, F)
    if not _is_intertwiner(real.mult_cols, FF, F):
        raise DescentFailure("multiplication is not an intertwiner")
    if not _is_intertwiner(real.comult_cols, F, FF):
        raise DescentFailure("comultiplication is not an intertwiner")
    if not _is_intertwiner(matrix_to_colmap(real.antipode), F, F):
        raise DescentFailure("antipode is not an intertwiner")
    triv = trivial_module(H)
    if not _is_intertwiner(matrix_to_colmap(real.counit), F, triv):
        raise DescentFailure("counit is not an intertwiner")


# -- braided Hopf axioms -------------------------------------------------------

def verify_braided_hopf(real: CoendRealization) -> dict:
    """All Hopf-algebra axioms for F inside the braided category: plain
    (co)associativity, (co)units and antipode, plus the bialgebra
    compatibility with the braiding of F with itself inserted."""
    P, R = real.parent, real.rmatrix
    d = P.dim
    F = real.carrier
    mc = real.mult_cols
    dc = real.comult_cols
    eps = {a: real.counit.data[0][a] for a in range(d) if real.counit.data[0][a]}
    sv = {}
    for a in range(d):
        col = {h: real.antipode.data[h][a] for h in range(d)
               if real.antipode.data[h][a]}
        sv[a] = col
    eta = real.unit

    def mul(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                col = mc.get(a * d + b)
                if col:
                    vaddmul(out, col, ca * cb)
        return out

    def com(x):
        out = {}
        for a, c in x.items():
            col = dc.get(a)
            if col:
                vaddmul(out, col, c)
        return out

    checks = {}
    basis = [{a: _ONE} for a in range(d)]

    ok = True
    for a in range(d):
        for b in range(d):
            for c in range(d):
                if mul(mul(basis[a], basis[b]), basis[c]) != \
                        mul(basis[a], mul(basis[b], basis[c])):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    checks["associativity"] = ok

    checks["unitality"] = all(
        mul(eta, basis[a]) == basis[a] and mul(basis[a], eta) == basis[a]
        for a in range(d))

    ok = True
    for a in range(d):
        lhs = {}
        for pq, c in dc.get(a, {}).items():
            p, q = divmod(pq, d)
            for rs, c2 in dc.get(p, {}).items():
                kf = rs * d + q
                nv = lhs.get(kf)
                nv = c * c2 if nv is None else nv + c * c2
                if nv:
                    lhs[kf] = nv
                else:
                    del lhs[kf]
        rhs = {}
        for pq, c in dc.get(a, {}).items():
            p, q = divmod(pq, d)
            for rs, c2 in dc.get(q, {}).items():
                kf = p * d * d + rs
                nv = rhs.get(kf)
                nv = c * c2 if nv is None else nv + c * c2
                if nv:
                    rhs[kf] = nv
                else:
                    del rhs[kf]
        if lhs != rhs:
            ok = False
            break
    checks["coassociativity"] = ok

    ok = True
    for a in range(d):
        left, right = {}, {}
        for pq, c in dc.get(a, {}).items():
            p, q = divmod(pq, d)
            e = eps.get(p)
            if e:
                vaddmul(left, basis[q], c * e)
            e = eps.get(q)
            if e:
                vaddmul(right, basis[p], c * e)
        if left != basis[a] or right != basis[a]:
            ok = False
            break
    checks["counitality"] = ok

    # braided bialgebra axiom: Delta o m = (m x m) o (id x sigma x id) o
    # (Delta x Delta).  With the crossing sense used by the multiplication
    # diagram, the middle move is the inverse braiding of F with itself;
    # calibrated on the double of the four-dimensional example, where the
    # braiding is genuinely non-symmetric.
    from .rep import braiding_inverse_colmap
    sigma = braiding_inverse_colmap(F, F, R)
    ok = True
    for a in range(d):
        da = dc.get(a, {})
        for b in range(d):
            lhs = com(mul(basis[a], basis[b]))
            rhs = {}
            db = dc.get(b, {})
            for pq, c1 in da.items():
                p, q = divmod(pq, d)
                for rs, c2 in db.items():
                    r, s = divmod(rs, d)
                    mid = sigma.get(q * d + r)
                    if not mid:
                        continue
                    cc = c1 * c2
                    for qr2, cs in mid.items():
                        q2, r2 = divmod(qr2, d)
                        left = mc.get(p * d + q2)
                        right = mc.get(r2 * d + s)
                        if not (left and right):
                            continue
                        f = cc * cs
                        for u, vu in left.items():
                            base = u * d
                            for w, vw in right.items():
                                kf = base + w
                                t = f * vu * vw
                                nv = rhs.get(kf)
                                nv = t if nv is None else nv + t
                                if nv:
                                    rhs[kf] = nv
                                else:
                                    del rhs[kf]
            if lhs != rhs:
                ok = False
                break
        if not ok:
            break
    checks["bialgebra_braided"] = ok

    # Delta(eta) = eta x eta, eps o m = eps x eps, eps(eta) = 1
    deta = com(eta)
    teta = {}
    for a, ca in eta.items():
        for b, cb in eta.items():
            teta[a * d + b] = ca * cb
    checks["unit_comult"] = deta == teta
    ok = True
    for a in range(d):
        for b in range(d):
            lhs = 0
            for h, c in mul(basis[a], basis[b]).items():
                e = eps.get(h)
                if e:
                    lhs = lhs + c * e
            rhs = (eps.get(a) or 0) * (eps.get(b) or 0)
            if not (lhs == rhs or lhs - rhs == 0):
                ok = False
                break
        if not ok:
            break
    checks["counit_mult"] = ok
    se = 0
    for a, c in eta.items():
        e = eps.get(a)
        if e:
            se = se + c * e
    checks["counit_unit"] = se == 1

    ok = True
    for a in range(d):
        target = {}
        e = eps.get(a)
        if e:
            vaddmul(target, eta, e)
        accl, accr = {}, {}
        for pq, c in dc.get(a, {}).items():
            p, q = divmod(pq, d)
            vaddmul(accl, mul(sv.get(p, {}), basis[q]), c)
            vaddmul(accr, mul(basis[p], sv.get(q, {})), c)
        if accl != target or accr != target:
            ok = False
            break
    checks["antipode"] = ok

    return {"passed": all(checks.values()), "checks": checks}


# -- pairing, Drinfeld map, action map ----------------------------------------

def hopf_pairing(P, R) -> Matrix:
    """The self-pairing of F, evaluated diagrammatically and verified both
    against the descent factorization and the closed form (f,g) -> the
    monodromy element paired against f (x) g."""
    real = build_coend(P, R)
    d = P.dim
    d2 = d * d
    reg = regular_module(P)
    D = named_diagram("pairing_omega")
    W = _functional_backward(D, {"x": reg, "y": reg}, R, {0: _ONE})
    omega = Matrix(d, d)
    for a in range(d):
        sa = real.section[a]
        for b in range(d):
            sb = real.section[b]
            s = 0
            for p, c1 in sa.items():
                base = p * d2
                for q, c2 in sb.items():
                    t = W.get(base + q)
                    if t:
                        s = s + c1 * c2 * t
            if s:
                omega.data[a][b] = s
    # factorization residual
    recon = {}
    rows = real.pi_rows
    for a in range(d):
        combo = {}
        for b in range(d):
            v = omega.data[a][b]
            if v:
                vaddmul(combo, rows[b], v)
        if not combo:
            continue
        for k1, v1 in rows[a].items():
            base = k1 * d2
            for k2, v2 in combo.items():
                kf = base + k2
                t = v1 * v2
                nv = recon.get(kf)
                nv = t if nv is None else nv + t
                if nv:
                    recon[kf] = nv
                else:
                    del recon[kf]
    if recon != W:
        raise DescentFailure("pairing does not factor through pi x pi")
    # closed form: omega(f, g) = (f (x) g)((id (x) S)(R21 R)).  The antipode
    # on the second leg is forced by the crossings with the dual strand and
    # was pinned by calibrating the figure against the monodromy element on
    # examples with non-symmetric monodromy.
    M = monodromy_element(P, real.rmatrix)
    closed = Matrix(d, d)
    for (i, j), c in M.items():
        svec = P.antipode.get(j, {})
        for k, cs in svec.items():
            closed.data[i][k] = closed.data[i][k] + c * cs
    if not omega == closed:
        raise ConventionMismatch(
            "diagrammatic pairing disagrees with the closed form")
    return omega


def drinfeld_map_diagrammatic(P, R) -> Matrix:
    """Dr: F -> E from the two-crossing loop diagram; must equal the closed
    form exactly, and the full evaluation must factor through pi and the
    end embedding."""
    real = build_coend(P, R)
    d = P.dim
    d2 = d * d
    reg = regular_module(P)
    D = named_diagram("drinfeld")
    cols = _push_columns(D, {"x": reg, "y": reg}, R,
                         {j: {j: _ONE} for j in range(d2)})
    emb = end_embedding_colmap(reg)
    emb_mat = Matrix(d2, d)
    for h, col in emb.items():
        for k, v in col.items():
            emb_mat.data[k][h] = v
    _, emb_piv = emb_mat.transpose().rref()
    emb_rows = emb_piv[:d]
    minor = emb_mat.submatrix(emb_rows, range(d))
    minor_inv = minor.inverse()

    def corestrict(vec):
        rhs = Matrix(d, 1, [[vec.get(k, mpq(0))] for k in emb_rows])
        x = minor_inv @ rhs
        out = {h: x.data[h][0] for h in range(d) if x.data[h][0]}
        # the vector must actually lie in the image of the embedding
        chk = {}
        for h, c in out.items():
            vaddmul(chk, emb.get(h, {}), c)
        if chk != vec:
            raise DescentFailure("Drinfeld evaluation leaves the end image")
        return out

    dr = Matrix(d, d)
    dr_cols = {}
    for a in range(d):
        img = {}
        for p, c in real.section[a].items():
            vaddmul(img, cols.get(p, {}), c)
        col = corestrict(img)
        dr_cols[a] = col
        for h, v in col.items():
            dr.data[h][a] = v
    # factorization through pi on every column
    for j in range(d2):
        lhs = {}
        for h, c in real.projection.get(j, {}).items():
            vaddmul(lhs, dr_cols.get(h, {}), c)
        chk = {}
        for h, c in lhs.items():
            vaddmul(chk, emb.get(h, {}), c)
        if chk != cols.get(j, {}):
            raise DescentFailure("Drinfeld evaluation does not factor through pi")
    closed = drinfeld_map_closed(P, real.rmatrix)
    if not dr == closed:
        raise ConventionMismatch(
            "diagrammatic Drinfeld map disagrees with the closed form")
    return dr


def action_map(P, R, y: HModule) -> Matrix:
    """The action F (x) y -> y from the crossing-and-evaluate diagram; the
    induced map F -> y (x) dual(y) must be the y-block of Dr."""
    real = build_coend(P, R)
    d = P.dim
    d2 = d * d
    m = y.dim
    reg = regular_module(P)
    binding = {"x": reg, "y": y}
    D = named_diagram("coend_action")
    cols = _push_columns(D, binding, R,
                         {j: {j: _ONE} for j in range(d2 * m)})
    act = Matrix(m, d * m)
    act_cols = {}
    for a in range(d):
        for j in range(m):
            img = {}
            for p, c in real.section[a].items():
                vaddmul(img, cols.get(p * m + j, {}), c)
            act_cols[a * m + j] = img
            for r, v in img.items():
                act.data[r][a * m + j] = v
    # factorization through pi (x) id_y on every column
    for jj in range(d2 * m):
        p, j = divmod(jj, m)
        lhs = {}
        for h, c in real.projection.get(p, {}).items():
            vaddmul(lhs, act_cols.get(h * m + j, {}), c)
        if lhs != cols.get(jj, {}):
            raise DescentFailure("action map does not factor through pi")
    # induced F -> y (x) dual(y) must match the y-block of Dr
    dr = drinfeld_map_closed(P, real.rmatrix)
    for a in range(d):
        for r in range(m):
            for k in range(m):
                lhs = act.data[r][a * m + k]
                rhs = 0
                for h in range(d):
                    c = dr.data[h][a]
                    if c:
                        e = y.action.get(h, {}).get(k, {}).get(r)
                        if e:
                            rhs = rhs + c * e
                if not lhs - rhs == 0:
                    raise ConventionMismatch(
                        "induced component map disagrees with the Drinfeld map")
    return act


def tau_map(P, R, V: HModule) -> Matrix:
    """The transport isomorphism F (x) V -> V (x) F; returned as a matrix
    and checked to be invertible."""
    real = build_coend(P, R)
    d = P.dim
    d2 = d * d
    m = V.dim
    reg = regular_module(P)
    D = named_diagram("tau_V")
    cols = _push_columns(D, {"x": reg, "v": V}, R,
                         {j: {j: _ONE} for j in range(d2 * m)})
    tau = Matrix(m * d, d * m)
    tau_cols = {}
    for a in range(d):
        for j in range(m):
            img = {}
            for p, c in real.section[a].items():
                vaddmul(img, cols.get(p * m + j, {}), c)
            # output wires are [v, x~, x]; push the pair part through pi
            out = {}
            for kk, c in img.items():
                v_idx, pr = divmod(kk, d2)
                col = real.projection.get(pr)
                if col:
                    for h, vv in col.items():
                        kf = v_idx * d + h
                        t = c * vv
                        nv = out.get(kf)
                        nv = t if nv is None else nv + t
                        if nv:
                            out[kf] = nv
                        else:
                            del out[kf]
            tau_cols[a * m + j] = out
            for r, v in out.items():
                tau.data[r][a * m + j] = v
    if tau.rank() != d * m:
        raise InternalInconsistency("transport map is not invertible")
    return tau


@dataclass
class CriterionReport:
    dim: int
    convention: str
    omega_rank: int
    omega_nondegenerate: bool
    drinfeld_rank: int
    drinfeld_iso: bool
    verdict: bool

    def as_dict(self):
        return {
            "dim": self.dim,
            "convention": self.convention,
            "omega": {"rank": self.omega_rank,
                      "nondegenerate": self.omega_nondegenerate},
            "drinfeld": {"rank": self.drinfeld_rank, "iso": self.drinfeld_iso},
            "verdict": self.verdict,
        }


def invertibility_report(P, R) -> CriterionReport:
    """Both non-degeneracy criteria, computed independently: the rank of the
    diagrammatic pairing and the rank of the closed-form Drinfeld map.  A
    disagreement is an implementation bug, never a verdict."""
    real = build_coend(P, R)
    omega = hopf_pairing(P, R)
    omega_rank = omega.rank()
    dr = drinfeld_map_closed(P, real.rmatrix)
    dr_rank = dr.rank()
    d = P.dim
    if (omega_rank == d) != (dr_rank == d) or omega_rank != dr_rank:
        raise InternalInconsistency(
            f"pairing rank {omega_rank} and Drinfeld rank {dr_rank} disagree")
    return CriterionReport(
        dim=d, convention=real.convention,
        omega_rank=omega_rank, omega_nondegenerate=omega_rank == d,
        drinfeld_rank=dr_rank, drinfeld_iso=dr_rank == d,
        verdict=omega_rank == d,
    )
