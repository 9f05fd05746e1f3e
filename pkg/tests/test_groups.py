"""Finite groups from multiplication tables and exact character tables."""

import pytest
from gmpy2 import mpq

from braidcheck.cyclotomic import Cyclo
from braidcheck.errors import NotAGroup
from braidcheck.groups import (
    centralizer,
    character_table,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    group_from_table,
    symmetric_3,
)


def test_not_a_group_cases():
    with pytest.raises(NotAGroup):
        group_from_table([])
    with pytest.raises(NotAGroup):
        group_from_table([[0, 1], [1]])  # ragged
    with pytest.raises(NotAGroup):
        group_from_table([[0, 1], [1, 2]])  # out of range
    with pytest.raises(NotAGroup):
        group_from_table([[0, 0], [0, 0]])  # no inverse for 1
    # associative magma with identity but a non-invertible element
    with pytest.raises(NotAGroup):
        group_from_table([[0, 1, 2], [1, 1, 1], [2, 1, 2]])


def test_non_associative_rejected():
    # build a latin square that is not a group table (order 5 loop)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(NotAGroup):
        group_from_table(table)


def test_cyclic_structure():
    g = cyclic_group(6)
    assert g.order == 6
    assert g.exponent() == 6
    assert g.element_order(1) == 6
    assert len(conjugacy_classes(g)) == 6


def test_s3_classes_and_centralizers():
    g = symmetric_3()
    classes = conjugacy_classes(g)
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    assert classes[0] == (g.identity,)
    sizes = []
    for cls in classes:
        cent = centralizer(g, cls[0])
        sizes.append(cent.group.order)
        # orbit-stabilizer: |class| * |centralizer| = |G|
        assert len(cls) * cent.group.order == g.order
    assert sorted(sizes) == [2, 3, 6]


def test_character_table_s3():
    g = symmetric_3()
    classes, chars = character_table(g)
    degs = sorted(int(c[0].rational_value()) for c in chars)
    assert degs == [1, 1, 2]
    assert sum(d * d for d in degs) == 6
    # trivial character first
    assert all(v == 1 for v in chars[0])
    # the degree-2 character is 2, 0, -1 on classes (e, transpositions, 3-cycles)
    two = next(c for c in chars if c[0] == 2)
    by_size = {len(cls): two[i] for i, cls in enumerate(classes)}
    assert by_size[1] == 2 and by_size[3] == 0 and by_size[2] == -1


def test_character_table_cyclic_roots_of_unity():
    g = cyclic_group(5)
    classes, chars = character_table(g)
    assert len(chars) == 5
    # each character is g -> zeta_5^(k*g); value at the generator class
    gen_idx = next(i for i, cls in enumerate(classes) if cls == (1,))
    vals = sorted((tuple((c.numerator, c.denominator) for c in ch[gen_idx].embed(5).c if True),)
                  for ch in [v for v in chars])
    expected = sorted((tuple((c.numerator, c.denominator) for c in Cyclo.zeta(5, k).c),)
                      for k in range(5))
    assert vals == expected


def test_character_table_product_group():
    g = direct_product(cyclic_group(2), cyclic_group(2))
    _, chars = character_table(g)
    assert len(chars) == 4
    assert all(ch[0] == 1 for ch in chars)
    # all values are +-1
    for ch in chars:
        for v in ch:
            assert v == 1 or v == -1


def test_character_second_orthogonality():
    """Column orthogonality, not used internally, as an extra oracle."""
    for g in (symmetric_3(), cyclic_group(4)):
        classes, chars = character_table(g)
        r = len(classes)
        for i in range(r):
            for j in range(r):
                total = Cyclo.from_rational(0, 1)
                for ch in chars:
                    total = total + ch[i] * ch[j].conjugate()
                want = g.order // len(classes[i]) if i == j else 0
                assert total == want
