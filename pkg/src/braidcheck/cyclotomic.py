"""Exact scalars: rationals and cyclotomic field elements.

Rationals are plain ``gmpy2.mpq`` (or Python ints); elements of Q(zeta_n) are
``Cyclo`` instances holding the conductor and the coefficient vector in the
power basis 1, z, ..., z^(phi(n)-1) reduced modulo the n-th cyclotomic
polynomial.  Arithmetic freely mixes the two kinds; there is no floating point
anywhere.

Text form used by all file formats: ``q(a/b)`` for rationals and
``zeta(n)[c0, c1, ...]`` for cyclotomics (raw power-basis coefficients,
reduced on load).
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

from gmpy2 import mpq

from .errors import ParseError

Q = mpq

_ZERO = mpq(0)
_ONE = mpq(1)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of Phi_n, ascending degree, monic."""
    if n < 1:
        raise ValueError("conductor must be >= 1")
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _polydiv_exact(num, den):
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, den[dd])
        assert r == 0
        out[i - dd] = q
        for j, dc in enumerate(den):
            num[i - dd + j] -= q * dc
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """Coefficient vectors of z^k mod Phi_n for k = phi(n) .. 2*phi(n)-2 and up to n-1."""
    d = phi(n)
    top = max(2 * d - 1, n)
    table = {}
    cur = [-c for c in cyclotomic_poly(n)[:d]]  # z^d
    table[d] = tuple(cur)
    for k in range(d + 1, top):
        nxt = [0] + cur[: d - 1]
        lead = cur[d - 1]
        if lead:
            zd = table[d]
            nxt = [a + lead * b for a, b in zip(nxt, zd)]
        table[k] = tuple(nxt)
        cur = nxt
    return tuple(table.get(k, ()) for k in range(top))


def _reduce_raw(n: int, raw):
    """Reduce a raw power-coefficient vector (any length) mod z^n = 1 and Phi_n."""
    d = phi(n)
    acc = [_ZERO] * d
    table = _power_table(n)
    for k, c in enumerate(raw):
        if not c:
            continue
        k %= n
        if k < d:
            acc[k] += c
        else:
            for j, t in enumerate(table[k]):
                if t:
                    acc[j] += c * t
    return acc


class Cyclo:
    """An element of Q(zeta_n), canonical power-basis form at its declared conductor."""

    __slots__ = ("n", "c")

    def __init__(self, n, coeffs, _reduced=False):
        self.n = n
        if _reduced:
            self.c = tuple(coeffs)
        else:
            self.c = tuple(mpq(x) for x in _reduce_raw(n, coeffs))
        if len(self.c) != phi(n):
            raise ValueError("coefficient vector has wrong length")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeta(n, k=1):
        """zeta_n^k."""
        raw = [0] * (k % n + 1)
        raw[k % n] = 1
        return Cyclo(n, raw)

    @staticmethod
    def from_rational(x, n=1):
        return Cyclo(n, [mpq(x)])

    # -- representation -----------------------------------------------

    def embed(self, m):
        """Image in Q(zeta_m); m must be a multiple of the conductor."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("not a conductor multiple")
        step = m // self.n
        raw = [_ZERO] * ((len(self.c) - 1) * step + 1) if self.c else [_ZERO]
        for k, v in enumerate(self.c):
            if v:
                raw[k * step] += v
        return Cyclo(m, raw)

    def is_rational(self):
        return all(not v for v in self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.c[0]

    # -- arithmetic ----------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Cyclo):
            if other.n == self.n:
                return self, other
            m = self.n * other.n // math.gcd(self.n, other.n)
            return self.embed(m), other.embed(m)
        return self, Cyclo(self.n, [mpq(other)] + [_ZERO] * (phi(self.n) - 1), _reduced=True)

    def __add__(self, other):
        if isinstance(other, Cyclo) and other.n == self.n:
            return Cyclo(self.n, tuple(a + b for a, b in zip(self.c, other.c)), _reduced=True)
        if not isinstance(other, (Cyclo, int, type(_ZERO))):
            return NotImplemented
        a, b = self._pair(other)
        return Cyclo(a.n, tuple(x + y for x, y in zip(a.c, b.c)), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-v for v in self.c), _reduced=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else Cyclo.from_rational(-mpq(other), 1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(_ZERO))):
            q = mpq(other)
            return Cyclo(self.n, tuple(v * q for v in self.c), _reduced=True)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._pair(other)
        la, lb = len(a.c), len(b.c)
        raw = [_ZERO] * (la + lb - 1)
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if y:
                    raw[i + j] += x * y
        return Cyclo(a.n, raw)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.is_rational():
            return Cyclo(self.n, [1 / self.c[0]] + [_ZERO] * (phi(self.n) - 1), _reduced=True)
        mod = [mpq(x) for x in cyclotomic_poly(self.n)]
        a = list(self.c)
        # extended euclid: find u with a*u = gcd (a unit) mod Phi_n
        r0, r1 = mod, _trim(a)
        s0, s1 = [_ZERO], [_ONE]
        while _degree(r1) > 0:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        if not r1:
            raise ZeroDivisionError("not invertible (should not happen in a field)")
        inv_lead = 1 / r1[0]
        u = [v * inv_lead for v in s1]
        return Cyclo(self.n, u)

    def __truediv__(self, other):
        if isinstance(other, (int, type(_ZERO))):
            q = 1 / mpq(other)
            return Cyclo(self.n, tuple(v * q for v in self.c), _reduced=True)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k):
        """Apply zeta_n -> zeta_n^k (k coprime to n)."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("galois exponent must be coprime to the conductor")
        raw = [_ZERO] * self.n
        for i, v in enumerate(self.c):
            if v:
                raw[(i * k) % self.n] += v
        return Cyclo(self.n, raw)

    def conjugate(self):
        """Complex conjugation, zeta_n -> zeta_n^(-1)."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    # -- comparisons ----------------------------------------------------

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            if other.n == self.n:
                return self.c == other.c
            a, b = self._pair(other)
            return a.c == b.c
        if isinstance(other, (int, type(_ZERO))):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        # hash at a canonical conductor is hard without subfield descent; embed
        # into the declared conductor and mix. Equal values at different
        # conductors may hash differently only if one is non-rational and the
        # conductors differ, which we avoid by hashing the minimal embedding.
        return hash((self.n, self.c))

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({self.c[0]})"
        terms = []
        for i, v in enumerate(self.c):
            if v:
                terms.append(f"{v}*z{self.n}^{i}" if i else f"{v}")
        return "Cyclo(" + " + ".join(terms) + ")"


def cyclo_reduce(n, raw):
    """Canonical representative of a raw power-basis vector modulo Phi_n."""
    if n < 1:
        raise ValueError("malformed conductor: n must be >= 1")
    return Cyclo(n, [mpq(x) for x in raw])


# -- small dense polynomial helpers over mpq (ascending coefficients) ----


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _degree(p):
    return len(p) - 1


def _polysub(a, b):
    out = [_ZERO] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)


def _polymul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _polydivmod(a, b):
    a = list(a)
    db = _degree(b)
    if db < 0:
        raise ZeroDivisionError
    q = [_ZERO] * max(len(a) - db, 0)
    while _degree(a) >= db and a:
        k = _degree(a) - db
        c = a[-1] / b[-1]
        q[k] = c
        for j, v in enumerate(b):
            a[k + j] -= c * v
        _trim(a)
    return _trim(q), a


# -- generic scalar helpers (mpq | int | Cyclo) ---------------------------


def sc_zero():
    return _ZERO


def sc_one():
    return _ONE


def sc_is_zero(s):
    return not s


def sc_inv(s):
    if isinstance(s, Cyclo):
        return s.inverse()
    return 1 / mpq(s)


def sc_conj(s):
    if isinstance(s, Cyclo):
        return s.conjugate()
    return mpq(s)


def sc_rational(s):
    """Extract an mpq from a scalar known to be rational."""
    if isinstance(s, Cyclo):
        return s.rational_value()
    return mpq(s)


def as_cyclo(s, n=1):
    if isinstance(s, Cyclo):
        return s if n % s.n == 0 else s.embed(s.n * n // math.gcd(s.n, n))
    return Cyclo.from_rational(s, n)


# -- text form -------------------------------------------------------------

_Q_RE = re.compile(r"^q\((-?\d+)(?:/(\d+))?\)$")
_Z_RE = re.compile(r"^zeta\((\d+)\)\[(.*)\]$")
_COEFF_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def scalar_to_text(s):
    if isinstance(s, Cyclo) and not s.is_rational():
        coeffs = ", ".join(str(v) for v in s.c)
        return f"zeta({s.n})[{coeffs}]"
    v = sc_rational(s)
    return f"q({v.numerator}/{v.denominator})"


def scalar_from_text(text, line=0, col=0):
    text = text.strip()
    m = _Q_RE.match(text)
    if m:
        den = m.group(2)
        return mpq(int(m.group(1)), int(den) if den else 1)
    m = _Z_RE.match(text)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError(line, col, "conductor must be >= 1")
        body = m.group(2).strip()
        coeffs = []
        if body:
            for part in body.split(","):
                cm = _COEFF_RE.match(part.strip())
                if not cm:
                    raise ParseError(line, col, f"bad coefficient {part.strip()!r}")
                den = cm.group(2)
                coeffs.append(mpq(int(cm.group(1)), int(den) if den else 1))
        return cyclo_reduce(n, coeffs)
    raise ParseError(line, col, f"bad scalar {text!r}")
