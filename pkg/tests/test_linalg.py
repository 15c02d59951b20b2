import random
from fractions import Fraction

import pytest

from bihomsd.errors import DependenceError, DimensionError, FieldMismatchError
from bihomsd.fields import QQ, PrimeField
from bihomsd.linalg import (
    Matrix,
    extend_to_basis,
    inverse,
    nullspace,
    rank,
    rref,
    solve,
)


def test_rref_identity():
    m = Matrix.identity(QQ, 2)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == (0, 1)


def test_rref_zero():
    m = Matrix.zeros(QQ, 3, 3)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == ()


def test_rref_proportional_rows():
    m = Matrix(QQ, [[1, 2], [2, 4]])
    reduced, pivots = rref(m)
    assert reduced == Matrix(QQ, [[1, 2], [0, 0]])
    assert pivots == (0,)
    assert rank(m) == 1


def test_rref_field_mismatch():
    a = Matrix(QQ, [[1]])
    b = Matrix(PrimeField(5), [[1]])
    with pytest.raises(FieldMismatchError):
        a @ b


def test_nullspace_full_rank():
    assert nullspace(Matrix.identity(QQ, 4)) == []


def test_nullspace_zero_map():
    basis = nullspace(Matrix.zeros(QQ, 1, 3))
    assert len(basis) == 3


def test_nullspace_rank_one():
    m = Matrix(QQ, [[1, 2], [2, 4]])
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    assert all(x == QQ.zero for x in m.apply(v.vector()))


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = Matrix(QQ, [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
        basis = nullspace(m)
        assert rank(m) + len(basis) == cols
        for v in basis:
            assert all(x == QQ.zero for x in m.apply(v.vector()))


def test_solve_identity():
    b = Matrix.column(QQ, [3, -1])
    assert solve(Matrix.identity(QQ, 2), b) == b


def test_solve_inconsistent():
    assert solve(Matrix.zeros(QQ, 2, 2), Matrix.column(QQ, [1, 0])) is None


def test_solve_scalar_division():
    v = solve(Matrix(QQ, [[2]]), Matrix.column(QQ, [3]))
    assert v.vector() == (Fraction(3, 2),)


def test_solve_residual_random():
    rng = random.Random(11)
    for _ in range(25):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)])
        b = Matrix.column(QQ, [rng.randint(-2, 2) for _ in range(rows)])
        v = solve(m, b)
        if v is not None:
            assert m.apply(v.vector()) == b.vector()


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve(Matrix.identity(QQ, 2), Matrix.column(QQ, [1, 2, 3]))


def test_extend_empty():
    basis = extend_to_basis([], 2, QQ)
    assert [b.vector() for b in basis] == [
        (QQ.one, QQ.zero),
        (QQ.zero, QQ.one),
    ]


def test_extend_e1():
    e1 = Matrix.column(QQ, [0, 1])
    basis = extend_to_basis([e1], 2)
    assert basis[0] == e1
    assert basis[1].vector() == (QQ.one, QQ.zero)


def test_extend_greedy_skips_dependent():
    # (1,1,0) = e0 + e1, so greedy keeps e0 then must skip e1 and take e2
    v = Matrix.column(QQ, [1, 1, 0])
    basis = extend_to_basis([v], 3)
    assert [b.vector() for b in basis[1:]] == [
        (QQ.one, QQ.zero, QQ.zero),
        (QQ.zero, QQ.zero, QQ.one),
    ]
    assert rank(Matrix.from_columns(QQ, [b.vector() for b in basis], 3)) == 3


def test_extend_dependent_input():
    v = Matrix.column(QQ, [1, 0])
    w = Matrix.column(QQ, [2, 0])
    with pytest.raises(DependenceError) as err:
        extend_to_basis([v, w], 2)
    assert err.value.index == 1


def test_inverse_roundtrip_fp():
    f = PrimeField(7)
    m = Matrix(f, [[1, 2], [3, 4]])
    assert m @ inverse(m) == Matrix.identity(f, 2)


def test_fp_arithmetic_exact():
    f = PrimeField(5)
    m = Matrix(f, [[2, 1], [1, 3]])
    basis = nullspace(m)
    assert rank(m) + len(basis) == 2
