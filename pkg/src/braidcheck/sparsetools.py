"""Sparse dict-based vectors and column maps used by the tensor-heavy layers.

A "vec" is a dict index -> nonzero scalar (indices are ints or tuples).
A "colmap" is a dict col -> vec, representing a matrix by nonzero columns.
"""

from __future__ import annotations

from gmpy2 import mpq

from .linalg import Matrix


def vaddmul(dst, src, coeff=1):
    """dst += coeff * src in place, dropping entries that cancel to zero."""
    if not coeff:
        return dst
    for k, v in src.items():
        nv = dst.get(k)
        nv = coeff * v if nv is None else nv + coeff * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)
    return dst


def vscale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}

def vsub(a, b):
    out = dict(a)
    vaddmul(out, b, -1)
    return out


def veq(a, b):
    return not vsub(a, b)


def colmap_apply(cm, vec):
    """Apply a colmap (matrix) to a sparse vector."""
    out = {}
    for k, c in vec.items():
        col = cm.get(k)
        if col:
            vaddmul(out, col, c)
    return out


def colmap_compose(a, b):
    """Colmap of (a after b): (a.b)(x) = a(b(x))."""
    out = {}
    for k, col in b.items():
        img = colmap_apply(a, col)
        if img:
            out[k] = img
    return out


def colmap_transpose(cm):
    out = {}
    for c, col in cm.items():
        for r, v in col.items():
            out.setdefault(r, {})[c] = v
    return out


def colmap_to_matrix(cm, rows, cols, index=None):
    """Densify; `index` maps sparse keys to flat ints (default: identity)."""
    m = Matrix(rows, cols)
    for c, col in cm.items():
        cc = index(c) if index else c
        for r, v in col.items():
            m.data[index(r) if index else r][cc] = v
    return m


def matrix_to_colmap(m):
    out = {}
    for i in range(m.rows):
        for j in range(m.cols):
            v = m.data[i][j]
            if v:
                out.setdefault(j, {})[i] = v
    return out


def pair(i, j):
    return (i, j)


def tensor_vec(a, b):
    """Kronecker product of two sparse vecs, keys become (ka, kb) flattened."""
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            out[(ka, kb)] = va * vb
    return out
