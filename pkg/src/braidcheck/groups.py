"""Finite groups given by multiplication tables, with exact character tables.

A group of order m is a tuple-of-tuples ``table`` where ``table[x][y]`` is the
product xy as an index in ``range(m)``.  Everything downstream (conjugacy
classes, centralizers, irreducible characters) is computed exactly; character
values live in Q(zeta_e) for e the group exponent.

Character tables are found by simultaneous diagonalization of the class-sum
matrices over a prime field F_p with p = 1 (mod e), then lifted to exact
cyclotomic integers through root-of-unity multiplicities.  The lifted table is
verified against the orthogonality relations over Q(zeta_e) before being
returned, so a transcription or lifting bug cannot slip through silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .cyclotomic import Cyclo
from .errors import InternalInconsistency, NotAGroup


# ---------------------------------------------------------------------------
# group type and constructors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Group:
    """A finite group presented by its full multiplication table."""

    order: int
    table: tuple
    identity: int
    inverse: tuple

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self.inverse[x]

    def conjugate(self, g, x):
        """g x g^{-1}."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def element_order(self, x):
        k, cur = 1, x
        while cur != self.identity:
            cur = self.table[cur][x]
            k += 1
        return k

    def exponent(self):
        e = 1
        for x in range(self.order):
            o = self.element_order(x)
            e = e * o // math.gcd(e, o)
        return e


def group_from_table(table) -> Group:
    """Validate a multiplication table and wrap it as a Group.

    Raises NotAGroup with a human-readable reason when any axiom fails.
    """
    rows = tuple(tuple(r) for r in table)
    m = len(rows)
    if m == 0:
        raise NotAGroup("empty multiplication table")
    for x, row in enumerate(rows):
        if len(row) != m:
            raise NotAGroup(f"row {x} has length {len(row)}, expected {m}")
        for y, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < m:
                raise NotAGroup(f"entry ({x},{y}) = {v!r} is not an index in range({m})")
    identity = None
    for e in range(m):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(m)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity element")
    for x in range(m):
        for y in range(m):
            for z in range(m):
                if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
                    raise NotAGroup(f"associativity fails at ({x},{y},{z})")
    inverse = [None] * m
    for x in range(m):
        for y in range(m):
            if rows[x][y] == identity and rows[y][x] == identity:
                inverse[x] = y
                break
        if inverse[x] is None:
            raise NotAGroup(f"element {x} has no inverse")
    return Group(m, rows, identity, tuple(inverse))


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise NotAGroup("order must be positive")
    return group_from_table([[(x + y) % n for y in range(n)] for x in range(n)])


def symmetric_3() -> Group:
    """S_3 as permutations of {0,1,2}, composed left-to-right on points."""
    perms = [
        (0, 1, 2),
        (1, 0, 2),
        (0, 2, 1),
        (2, 1, 0),
        (1, 2, 0),
        (2, 0, 1),
    ]
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        table.append([index[tuple(p[q[k]] for k in range(3))] for q in perms])
    return group_from_table(table)


def direct_product(g1: Group, g2: Group) -> Group:
    m1, m2 = g1.order, g2.order
    table = []
    for x in range(m1 * m2):
        x1, x2 = divmod(x, m2)
        row = []
        for y in range(m1 * m2):
            y1, y2 = divmod(y, m2)
            row.append(g1.table[x1][y1] * m2 + g2.table[x2][y2])
        table.append(row)
    return group_from_table(table)


# ---------------------------------------------------------------------------
# conjugacy classes and centralizers
# ---------------------------------------------------------------------------


def conjugacy_classes(g: Group):
    """Classes as sorted tuples; identity class first, then by (size, min)."""
    seen = [False] * g.order
    classes = []
    for x in range(g.order):
        if seen[x]:
            continue
        cls = sorted({g.conjugate(h, x) for h in range(g.order)})
        for y in cls:
            seen[y] = True
        classes.append(tuple(cls))
    classes.sort(key=lambda c: (g.identity not in c, len(c), c[0]))
    return classes


def class_index_map(g: Group, classes=None):
    classes = conjugacy_classes(g) if classes is None else classes
    idx = [None] * g.order
    for i, cls in enumerate(classes):
        for x in cls:
            idx[x] = i
    return idx


@dataclass(frozen=True)
class Subgroup:
    """A subgroup with its own table plus the embedding into the parent."""

    parent: Group
    elements: tuple  # subgroup index -> parent element
    group: Group

    def parent_index(self, x):
        return self.elements[x]

    def local_index(self, parent_elem):
        return self.elements.index(parent_elem)


def centralizer(g: Group, x: int) -> Subgroup:
    elems = tuple(h for h in range(g.order) if g.table[h][x] == g.table[x][h])
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[g.table[a][b]] for b in elems] for a in elems]
    return Subgroup(g, elems, group_from_table(table))


# ---------------------------------------------------------------------------
# prime-field helpers (vectors are lists of ints mod p)
# ---------------------------------------------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def _dixon_prime(order, exponent):
    """Smallest prime p = 1 (mod e) with p^2 > 4*order."""
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * order):
        p += exponent
    return p


def _primitive_root_of_unity(p, e):
    factors = set()
    n, d = e, 2
    while d * d <= n:
        while n % d == 0:
            factors.add(d)
            n //= d
        d += 1
    if n > 1:
        factors.add(n)
    for z in range(2, p):
        if pow(z, e, p) == 1 and all(pow(z, e // q, p) != 1 for q in factors):
            return z
    if e == 1:
        return 1
    raise InternalInconsistency("no primitive root of unity mod p")


def _solve_mod_p(cols, target, p):
    """Express target as a combination of the given column vectors mod p."""
    n = len(target)
    k = len(cols)
    aug = [[cols[j][i] % p for j in range(k)] + [target[i] % p] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    sol = [0] * k
    for row, c in zip(range(r), piv_cols):
        sol[c] = aug[row][k]
    for i in range(r, n):
        if aug[i][k]:
            raise InternalInconsistency("inconsistent linear system mod p")
    return sol

def _kernel_mod_p(mat, p):
    """Basis of the right kernel of a square matrix mod p."""
    n = len(mat)
    a = [row[:] for row in mat]
    piv_of_col = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c] % p, p - 2, p)
        a[r] = [(v * inv) % p for v in a[r]]
        for i in range(n):
            if i != r and a[i][c] % p:
                f = a[i][c] % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        piv_of_col[c] = r
        r += 1
    basis = []
    for c in range(n):
        if c in piv_of_col:
            continue
        v = [0] * n
        v[c] = 1
        for pc, pr in piv_of_col.items():
            v[pc] = (-a[pr][c]) % p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# character table
# ---------------------------------------------------------------------------


def _class_multiplication(g, classes, reps, cls_of):
    """c[i][k][m] with C_i C_k = sum_m c[i][k][m] C_m in the class algebra.

    Entry c[i][k][m] counts pairs (x, y) in C_i x C_k with x*y equal to the
    fixed representative of C_m; these are the structure constants whose
    matrices share the character eigenvectors.
    """
    r = len(classes)
    c = [[[0] * r for _ in range(r)] for _ in range(r)]
    rep_pos = {rep: m for m, rep in enumerate(reps)}
    for x in range(g.order):
        i = cls_of[x]
        row = g.table[x]
        for y in range(g.order):
            m = rep_pos.get(row[y])
            if m is not None:
                c[i][cls_of[y]][m] += 1
    return c


def character_table(g: Group):
    """Irreducible characters of g, exact over Q(zeta_exponent).

    Returns (classes, chars) where chars is a list of tuples of scalars, one
    value per conjugacy class, the trivial character first and the rest in a
    deterministic order.  Verifies both orthogonality relations exactly and
    raises InternalInconsistency if the lift is wrong.
    """
    classes = conjugacy_classes(g)
    cls_of = class_index_map(g, classes)
    reps = [c[0] for c in classes]
    sizes = [len(c) for c in classes]
    r = len(classes)
    e = g.exponent()
    p = _dixon_prime(g.order, e)
    lam = _primitive_root_of_unity(p, e)

    struct = _class_multiplication(g, classes, reps, cls_of)
    # M_i acting on the eigenvector w with w_k = |C_k| chi(g_k) / chi(1):
    # (M_i w)_k = sum_m struct[i][k][m] w_m = w_i w_k.
    mats = [[[struct[i][k][m] % p for m in range(r)] for k in range(r)] for i in range(r)]

    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(b) == 1 for b in spaces):
            break
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            cols = [list(v) for v in basis]
            images = [[sum(mats[i][k][m] * v[m] for m in range(r)) % p for k in range(r)] for v in cols]
            act = [_solve_mod_p(cols, img, p) for img in images]
            # act[j] expresses M_i b_j in the basis; transpose to act on coords
            s = len(basis)
            found = 0
            for ev in range(p):
                shifted = [[(act[jc][ir] - (ev if ir == jc else 0)) % p for jc in range(s)] for ir in range(s)]
                ker = _kernel_mod_p(shifted, p)
                if not ker:
                    continue
                sub = []
                for coeff in ker:
                    vec = [sum(coeff[j] * basis[j][m] for j in range(s)) % p for m in range(r)]
                    sub.append(vec)
                nxt.append(sub)
                found += len(ker)
                if found == s:
                    break
            if found != s:
                raise InternalInconsistency("class-sum matrix not diagonalizable mod p")
        spaces = nxt
    if any(len(b) != 1 for b in spaces) or len(spaces) != r:
        raise InternalInconsistency("could not separate characters mod p")

    order_mod = g.order % p
    chars_mod = []
    for basis in spaces:
        v = basis[0]
        if v[0] % p == 0:
            raise InternalInconsistency("character eigenvector vanishes at the identity class")
        scale = pow(v[0], p - 2, p)
        w = [(x * scale) % p for x in v]
        denom = sum(w[i] * w[cls_of[g.inv(reps[i])]] * pow(sizes[i], p - 2, p) for i in range(r)) % p
        d2 = (order_mod * pow(denom, p - 2, p)) % p
        deg = next((d for d in range(1, int(math.isqrt(g.order)) + 1) if (d * d) % p == d2), None)
        if deg is None:
            raise InternalInconsistency("no integer degree matches mod p")
        theta = [(deg * w[i] * pow(sizes[i], p - 2, p)) % p for i in range(r)]
        chars_mod.append((deg, theta))

    inv_e = pow(e % p, p - 2, p)
    zeta = Cyclo.zeta(e) if e > 1 else Cyclo.from_rational(1, 1)
    zpow = [zeta ** k for k in range(e)]
    chars = []
    for deg, theta in chars_mod:
        vals = []
        for i in range(r):
            # eigenvalue multiplicities of rho(g_i): m_k < p, recovered exactly
            powers = []
            cur = g.identity
            for _ in range(e):
                powers.append(theta[cls_of[cur]])
                cur = g.table[cur][reps[i]]
            val = Cyclo.from_rational(0, 1)
            for k in range(e):
                mk = (inv_e * sum(powers[s] * pow(lam, (-k * s) % e, p) for s in range(e))) % p
                if mk:
                    val = val + mpq(mk) * zpow[k]
            vals.append(val)
        if not (vals[0].is_rational() and vals[0].rational_value() == deg):
            raise InternalInconsistency("lifted degree disagrees with mod-p degree")
        chars.append(tuple(vals))

    chars.sort(key=lambda v: (0 if all(x == 1 for x in v) else 1, sc_sort_key(v)))
    _verify_orthogonality(g, classes, cls_of, reps, sizes, chars)
    return classes, chars


def sc_sort_key(vals):
    key = []
    for v in vals:
        c = v if isinstance(v, Cyclo) else Cyclo.from_rational(v, 1)
        key.append((c.n,) + tuple((x.numerator, x.denominator) for x in c.c))
    return tuple(key)


def _verify_orthogonality(g, classes, cls_of, reps, sizes, chars):
    r = len(classes)
    for a in range(r):
        for b in range(r):
            total = Cyclo.from_rational(0, 1)
            for i in range(r):
                inv_cls = cls_of[g.inv(reps[i])]
                total = total + mpq(sizes[i]) * chars[a][i] * chars[b][inv_cls]
            want = g.order if a == b else 0
            if not (total.is_rational() and total.rational_value() == want):
                raise InternalInconsistency("character row orthogonality fails after lift")


@lru_cache(maxsize=None)
def character_table_cached(g: Group):
    return character_table(g)
