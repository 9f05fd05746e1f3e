"""Built-in quasitriangular Hopf algebra examples.

build_example(name, **params) constructs:
  - group_algebra:       k[Z/n] (param n) or a multiplication-table group
  - dual_group_algebra:  functions on Z/n
  - sweedler:            the 4-dimensional algebra with its R_lambda family
  - uq_sl2:              the small quantum group at an odd root of unity,
                         structure constants generated from the defining
                         relations by normal-form rewriting

Results are cached; presentations are immutable and shared.
"""

from __future__ import annotations

from gmpy2 import mpq

from .cyclotomic import Cyclo, sc_inv
from .errors import UnsupportedParams
from .hopf import HopfPresentation, RMatrix
from .sparsetools import vaddmul

_CACHE = {}


def build_example(name, **params):
    key = (name, tuple(sorted(params.items())))
    if key not in _CACHE:
        builders = {
            "group_algebra": _group_algebra,
            "dual_group_algebra": _dual_group_algebra,
            "sweedler": _sweedler,
            "uq_sl2": _uq_sl2,
        }
        if name not in builders:
            raise UnsupportedParams(f"unknown example {name!r}")
        _CACHE[key] = builders[name](**params)
    return _CACHE[key]


_SUITE = []


def suite_members():
    """The example suite used across the test batteries: group algebras and
    their duals up to order six, the Sweedler family, every Drinfeld double
    of those, and the smallest small quantum group.  Built once and shared."""
    from .hopf import drinfeld_double

    if not _SUITE:
        base = []
        for n in range(2, 7):
            base.append(build_example("group_algebra", n=n))
            base.append(build_example("dual_group_algebra", n=n))
        for lam in (0, 1, 2):
            base.append(build_example("sweedler", lam=lam))
        _SUITE.extend((H.name, H, R) for H, R in base)
        for H, _ in base:
            D, RD = drinfeld_double(H)
            _SUITE.append((D.name, D, RD))
        H, R = build_example("uq_sl2", ell=3)
        _SUITE.append((H.name, H, R))
    return list(_SUITE)


# -- group algebras ---------------------------------------------------------

def _cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _group_algebra(n=None, table=None):
    if table is None:
        if n is None or n < 1:
            raise UnsupportedParams("group_algebra needs n >= 1 or a table")
        table = _cyclic_table(n)
    d = len(table)
    one = mpq(1)
    # identity element: row i with table[e][j] == j for all j
    e = next((i for i in range(d) if all(table[i][j] == j for j in range(d))), None)
    if e is None:
        raise UnsupportedParams("multiplication table has no identity")
    inv = {}
    for i in range(d):
        for j in range(d):
            if table[i][j] == e:
                inv[i] = j
    if len(inv) != d:
        raise UnsupportedParams("multiplication table has a non-invertible element")
    mult = {(i, j): {table[i][j]: one} for i in range(d) for j in range(d)}
    comult = {i: {(i, i): one} for i in range(d)}
    H = HopfPresentation(
        d, mult, {e: one}, comult, {i: one for i in range(d)},
        {i: {inv[i]: one} for i in range(d)},
        conductor=1, name=f"group_algebra({d})",
        labels=[f"g{i}" for i in range(d)],
    )
    abelian = all(table[i][j] == table[j][i] for i in range(d) for j in range(d))
    R = RMatrix({(e, e): one}) if abelian else None
    return H, R


def _dual_group_algebra(n=None):
    if n is None or n < 1:
        raise UnsupportedParams("dual_group_algebra needs n >= 1")
    H = _group_algebra(n=n)[0].dual()
    H.name = f"dual_group_algebra({n})"
    # unit of the dual is the counit vector; R = 1 (x) 1
    R = RMatrix({(i, j): mpq(1) for i in range(n) for j in range(n)})
    return H, R


# -- Sweedler's four-dimensional example ------------------------------------

def _sweedler(lam=1):
    lam = mpq(lam)
    one = mpq(1)
    half = mpq(1, 2)
    I, G, X, GX = 0, 1, 2, 3
    # g^2 = 1, x^2 = 0, xg = -gx
    mult = {
        (I, I): {I: one}, (I, G): {G: one}, (I, X): {X: one}, (I, GX): {GX: one},
        (G, I): {G: one}, (G, G): {I: one}, (G, X): {GX: one}, (G, GX): {X: one},
        (X, I): {X: one}, (X, G): {GX: -one},
        (GX, I): {GX: one}, (GX, G): {X: -one},
    }
    comult = {
        I: {(I, I): one},
        G: {(G, G): one},
        X: {(X, I): one, (G, X): one},
        GX: {(GX, G): one, (I, GX): one},
    }
    counit = {I: one, G: one}
    antipode = {I: {I: one}, G: {G: one}, X: {GX: -one}, GX: {X: one}}
    H = HopfPresentation(
        4, mult, {I: one}, comult, counit, antipode,
        conductor=1, name=f"sweedler({lam})", labels=["1", "g", "x", "gx"],
    )
    r = {
        (I, I): half, (I, G): half, (G, I): half, (G, G): -half,
    }
    lh = lam * half
    if lh:
        r[(X, X)] = lh
        r[(X, GX)] = -lh
        r[(GX, X)] = lh
        r[(GX, GX)] = lh
    return H, RMatrix(r)


# -- small quantum group of sl2 ---------------------------------------------

def _uq_sl2(ell=3):
    if ell < 3 or ell % 2 == 0:
        raise UnsupportedParams("uq_sl2 needs odd ell >= 3")
    q = Cyclo.zeta(ell)
    one = Cyclo.from_rational(mpq(1), ell)
    d = ell ** 3

    def qpow(k):
        return q ** (k % ell)

    def idx(a, b, c):
        return (a * ell + b) * ell + c

    lam = q - qpow(-1)          # q - q^{-1}
    lam_inv = sc_inv(lam)

    # normal form of F E^a, entries keyed by basis index
    fE = [{idx(0, 1, 0): one}]
    for a in range(1, ell):
        prev = fE[a - 1]
        cur = {}
        # E * fE(a-1): prepend an E to each monomial
        for k, c in prev.items():
            aa, rest = divmod(k, ell * ell)
            bb, cc = divmod(rest, ell)
            if aa + 1 < ell:
                vaddmul(cur, {idx(aa + 1, bb, cc): one}, c)
        # -(K - K^{-1})/(q - q^{-1}) * E^{a-1}
        vaddmul(cur, {idx(a - 1, 0, 1): qpow(2 * (a - 1))}, -lam_inv)
        vaddmul(cur, {idx(a - 1, 0, ell - 1): qpow(-2 * (a - 1))}, lam_inv)
        fE.append(cur)

    # left multiplication by the generators, as colmaps over basis indices
    def decode(k):
        a, rest = divmod(k, ell * ell)
        b, c = divmod(rest, ell)
        return a, b, c

    LE, LF, LK = {}, {}, {}
    for k in range(d):
        a, b, c = decode(k)
        if a + 1 < ell:
            LE[k] = {idx(a + 1, b, c): one}
        col = {}
        for k2, v in fE[a].items():
            a2, b2, c2 = decode(k2)
            if b2 + b < ell:
                # move K^{c2} past F^b
                vaddmul(col, {idx(a2, b2 + b, (c2 + c) % ell): qpow(-2 * c2 * b)}, v)
        if col:
            LF[k] = col
        LK[k] = {idx(a, b, (c + 1) % ell): qpow(2 * a - 2 * b)}

    def lapply(L, vec):
        out = {}
        for k, c in vec.items():
            col = L.get(k)
            if col:
                vaddmul(out, col, c)
        return out

    # mult tensor: left-multiplication operator of every basis monomial,
    # built incrementally (L_{E^a F^b K^c} = L_E L_{E^{a-1} F^b K^c} etc.)
    Lm = [None] * d
    Lm[0] = {k: {k: one} for k in range(d)}
    for k in range(1, d):
        a, b, c = decode(k)
        if a > 0:
            prev, gen = Lm[idx(a - 1, b, c)], LE
        elif b > 0:
            prev, gen = Lm[idx(0, b - 1, c)], LF
        else:
            prev, gen = Lm[idx(0, 0, c - 1)], LK
        cols = ((j, lapply(gen, col)) for j, col in prev.items())
        Lm[k] = {j: col for j, col in cols if col}
    mult = {}
    for i in range(d):
        for j, col in Lm[i].items():
            if col:
                mult[(i, j)] = col

    def mul_vec(x, y):
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                col = mult.get((i, j))
                if col:
                    vaddmul(out, col, ci * cj)
        return out

    def mul2(x, y):
        out = {}
        for (a1, b1), cx in x.items():
            for (a2, b2), cy in y.items():
                c1 = mult.get((a1, a2))
                c2 = mult.get((b1, b2))
                if not (c1 and c2):
                    continue
                f = cx * cy
                for k1, v1 in c1.items():
                    for k2, v2 in c2.items():
                        key = (k1, k2)
                        t = f * v1 * v2
                        nv = out.get(key)
                        nv = t if nv is None else nv + t
                        if nv:
                            out[key] = nv
                        else:
                            del out[key]
        return out

    one_idx = idx(0, 0, 0)
    # Delta(E) = E (x) K + 1 (x) E,  Delta(F) = F (x) 1 + K^{-1} (x) F
    dE = {(idx(1, 0, 0), idx(0, 0, 1)): one, (one_idx, idx(1, 0, 0)): one}
    dF = {(idx(0, 1, 0), one_idx): one, (idx(0, 0, ell - 1), idx(0, 1, 0)): one}
    dK = {(idx(0, 0, 1), idx(0, 0, 1)): one}

    comult = {}
    delta = [None] * d
    delta[one_idx] = {(one_idx, one_idx): one}
    for k in range(d):
        a, b, c = decode(k)
        if k == one_idx:
            pass
        elif a > 0:
            delta[k] = mul2(dE, delta[idx(a - 1, b, c)])
        elif b > 0:
            delta[k] = mul2(dF, delta[idx(0, b - 1, c)])
        else:
            delta[k] = mul2(dK, delta[idx(0, 0, c - 1)])
        comult[k] = delta[k]

    counit = {idx(0, 0, c): one for c in range(ell)}

    # S(E) = -E K^{-1}, S(F) = -K F = -q^{-2} F K, S(K) = K^{-1}
    sE = {idx(1, 0, ell - 1): -one}
    sF = {idx(0, 1, 1): -qpow(-2)}
    sK = {idx(0, 0, ell - 1): one}
    svec = [None] * d
    svec[one_idx] = {one_idx: one}
    antipode = {}
    for k in range(d):
        a, b, c = decode(k)
        if k == one_idx:
            pass
        elif a > 0:
            # S anti-multiplicative: S(E^a F^b K^c) = S(K)^c S(F)^b S(E)^a
            svec[k] = mul_vec(svec[idx(a - 1, b, c)], sE)
        elif b > 0:
            svec[k] = mul_vec(svec[idx(0, b - 1, c)], sF)
        else:
            svec[k] = mul_vec(svec[idx(0, 0, c - 1)], sK)
        antipode[k] = svec[k]

    labels = [f"E^{a}F^{b}K^{c}" for a in range(ell)
              for b in range(ell) for c in range(ell)]

    H = HopfPresentation(
        d, mult, {one_idx: one}, comult, counit, antipode,
        conductor=ell, name=f"uq_sl2({ell})", labels=labels,
    )

    # R = (1/ell) sum_{i,j} q^{-2ij} K^i (x) K^j
    #     * sum_k (q - q^{-1})^k / [k]! * q^{k(k-1)/2} E^k (x) F^k
    inv_ell = Cyclo.from_rational(mpq(1, ell), ell)
    cartan = {}
    for i in range(ell):
        for j in range(ell):
            cartan[(idx(0, 0, i), idx(0, 0, j))] = inv_ell * qpow(-2 * i * j)
    theta = {}
    coef = one
    for k in range(ell):
        if k > 0:
            bracket = (qpow(k) - qpow(-k)) * lam_inv  # [k]_q
            coef = coef * lam * sc_inv(bracket) * qpow(k - 1)
            # running product gives (q-q^{-1})^k / [k]! * q^{k(k-1)/2}
        key = (idx(k, 0, 0), idx(0, k, 0))
        if coef:
            theta[key] = coef
    r = mul2(cartan, theta)
    return H, RMatrix(r)
