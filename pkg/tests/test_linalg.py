from fractions import Fraction

import pytest

from coisotropy.linalg import (
    QMat,
    QQi,
    block_diag,
    commutator,
    complex_rank,
    float_rank,
    frac_nullspace,
    frac_rank,
    frac_rref,
    int_rank,
    int_rank_bareiss,
    kron,
    realify_vector,
)


def test_qqi_arithmetic():
    a = QQi(1, 2)
    b = QQi(Fraction(1, 2), -1)
    assert a + b == QQi(Fraction(3, 2), 1)
    assert a * b == QQi(Fraction(1, 2) + 2, Fraction(-1) + 1)
    assert (a * b).re == Fraction(5, 2)
    assert a.conj() == QQi(1, -2)
    assert a - a == QQi(0)
    assert not QQi(0, 0)
    assert QQi(0, 3)
    assert (a / a) == QQi(1)


def test_qqi_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QQi(1) / QQi(0)


def test_qmat_matmul_and_apply():
    a = QMat.from_rows([[1, 2], [0, 1]])
    b = QMat.from_rows([[0, 1], [1, 0]])
    assert (a @ b) == QMat.from_rows([[2, 1], [1, 0]])
    v = (QQi(1), QQi(0, 1))
    assert a.apply(v) == (QQi(1, 2), QQi(0, 1))
    assert commutator(a, b) == a @ b - b @ a


def test_qmat_structure_helpers():
    d = QMat.diag([1, 2, 3])
    assert d.is_diagonal()
    u = QMat(3, 3, {(0, 2): QQi(5)})
    assert u.is_strictly_upper()
    assert not d.is_strictly_upper()
    assert (d.transpose()) == d
    m = QMat(2, 2, {(0, 1): QQi(0, 1)})
    assert m.conj_transpose() == QMat(2, 2, {(1, 0): QQi(0, -1)})
    assert block_diag([d, u]).nrows == 6
    assert kron(QMat.identity(2), d).nrows == 6
    assert d.trace() == QQi(6)


def test_frac_rref_and_nullspace():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    rref, piv = frac_rref(rows)
    assert piv == [0]
    ns = frac_nullspace(rows, 3)
    assert len(ns) == 2
    for v in ns:
        assert sum(a * b for a, b in zip(rows[0], v)) == 0


def test_int_rank_agrees_with_bareiss():
    rows = [[2, 4, 1], [1, 2, 0], [3, 6, 1], [0, 0, 1]]
    assert int_rank_bareiss(rows) == 2
    assert int_rank(rows) == 2
    full = [[1, 0], [0, 7]]
    assert int_rank(full) == 2


def test_complex_rank_matches_float():
    i = QQi(0, 1)
    rows = [
        (QQi(1), i),
        (i, QQi(-1)),  # i * row1
        (QQi(2), QQi(0)),
    ]
    assert complex_rank(rows) == 2
    assert float_rank(rows) == 2


def test_realify_vector():
    v = (QQi(1, 2), QQi(0, -1))
    assert realify_vector(v) == [1, 0, 2, -1]


def test_frac_rank_with_denominators():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1)]]
    assert frac_rank(rows) == 1
