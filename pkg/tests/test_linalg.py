"""Dense exact linear algebra against a naive independent oracle."""

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from braidcheck.cyclotomic import Cyclo
from braidcheck.errors import SingularError
from braidcheck.linalg import Matrix


def naive_gauss_rank(m):
    """Plain fraction-based elimination, written independently of Matrix."""
    a = [row[:] for row in m.data]
    rows, cols = m.rows, m.cols
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if a[r][c]:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c] if not isinstance(a[rank][c], Cyclo) else a[rank][c].inverse()
        a[rank] = [v * inv for v in a[rank]]
        for r in range(rows):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def naive_det(m):
    """Cofactor expansion; only sane for tiny matrices."""
    n = m.rows
    if n == 1:
        return m.data[0][0]
    total = mpq(0)
    for j in range(n):
        if not m.data[0][j]:
            continue
        sub = Matrix(n - 1, n - 1,
                     [[m.data[r][c] for c in range(n) if c != j] for r in range(1, n)])
        term = m.data[0][j] * naive_det(sub)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _mat(rows_of_ints):
    data = [[mpq(v) for v in row] for row in rows_of_ints]
    return Matrix(len(data), len(data[0]), data)


small_matrix = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-5, 5), min_size=m, max_size=m),
            min_size=n, max_size=n)))


@settings(max_examples=120)
@given(small_matrix)
def test_rank_matches_naive_gauss(rows):
    m = _mat(rows)
    assert m.rank() == naive_gauss_rank(m)


@settings(max_examples=80)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_det_matches_cofactor(rows):
    m = _mat(rows)
    assert m.det() == naive_det(m)


@settings(max_examples=80)
@given(small_matrix)
def test_kernel_annihilates(rows):
    m = _mat(rows)
    k = m.kernel_basis()
    assert k.cols == m.cols - m.rank()
    if k.cols:
        assert (m @ k).is_zero()


def test_inverse_roundtrip():
    m = _mat([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert m @ m.inverse() == Matrix.identity(3)
    assert m.inverse() @ m == Matrix.identity(3)


def test_singular_inverse_raises():
    m = _mat([[1, 2], [2, 4]])
    with pytest.raises(SingularError):
        m.inverse()
    assert m.rank() == 1
    assert m.det() == 0


def test_solve_right_exact():
    m = _mat([[1, 2], [3, 5]])
    rhs = _mat([[1], [0]])
    x = m.solve_right(rhs)
    assert m @ x == rhs


def test_solve_inconsistent_raises():
    m = _mat([[1, 1], [1, 1]])
    rhs = _mat([[0], [1]])
    with pytest.raises(SingularError):
        m.solve_right(rhs)


def test_cyclotomic_entries():
    z = Cyclo.zeta(3)
    m = Matrix(2, 2, [[z, 1 + z], [1, z ** 2]])
    # det = z^3 - (1 + z) = 1 - 1 - z = -z
    assert m.det() == -z
    assert m.rank() == 2
    assert m @ m.inverse() == Matrix.identity(2)
    assert naive_gauss_rank(m) == 2


def test_kron_shape_and_rank():
    a = _mat([[1, 2], [0, 1]])
    b = _mat([[1, 1], [1, 2]])
    k = a.kron(b)
    assert (k.rows, k.cols) == (4, 4)
    assert k.rank() == a.rank() * b.rank()
