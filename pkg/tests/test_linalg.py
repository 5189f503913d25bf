from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from froblie.linalg import (Echelon, Subspace, apply, columns, from_dense, identity, inverse,
                            kernel, matmul, matpow, to_dense)
from froblie.scalars import FieldSpec, make_field
from oracles import dense_rank

Q = make_field(FieldSpec.rational())
P = make_field(FieldSpec.prime(7, 3))

small = st.integers(-3, 3)


def vectors(dim, count):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), min_size=0, max_size=count)


def sparse(row):
    return from_dense(Q, [Fraction(a) for a in row])


@given(rows=vectors(4, 6))
def test_rank_matches_dense_oracle(rows):
    assert Subspace.span(Q, [sparse(r) for r in rows], 4).dim == (dense_rank(rows) if rows else 0)


@given(rows=vectors(4, 5))
def test_echelon_is_reduced(rows):
    S = Subspace.span(Q, [sparse(r) for r in rows], 4)
    assert list(S.pivots) == sorted(S.pivots)
    for p, row in zip(S.pivots, S.rows):
        assert row[p] == 1
        assert all(other.get(p) is None for other in S.rows if other is not row)


@given(a=vectors(4, 4), b=vectors(4, 4))
def test_intersection_dimension_formula(a, b):
    A = Subspace.span(Q, [sparse(r) for r in a], 4)
    B = Subspace.span(Q, [sparse(r) for r in b], 4)
    meet = A.intersect(B)
    assert meet <= A and meet <= B
    assert A.dim + B.dim == (A + B).dim + meet.dim


@given(rows=vectors(5, 5), coefs=st.lists(small, min_size=5, max_size=5))
def test_tracked_express_reconstructs(rows, coefs):
    ech = Echelon(Q, track=True)
    vecs = [sparse(r) for r in rows]
    for k, v in enumerate(vecs):
        ech.add(v, k)
    target: dict = {}
    for c, v in zip(coefs, vecs):
        Q.axpy(target, Fraction(c), v)
    combo = ech.express(target)
    rebuilt: dict = {}
    for k, c in combo.items():
        Q.axpy(rebuilt, c, vecs[k])
    assert rebuilt == target


@given(rows=st.lists(st.lists(small, min_size=3, max_size=3), min_size=4, max_size=4))
def test_kernel_vectors_are_in_kernel(rows):
    images = [sparse(r) for r in rows]
    for dep in kernel(Q, images, list(range(4))):
        acc: dict = {}
        for k, c in dep.items():
            Q.axpy(acc, c, images[k])
        assert acc == {}
    assert len(kernel(Q, images, list(range(4)))) == 4 - dense_rank(rows)


def test_inverse_and_powers():
    A = [[P.from_int(a) for a in row] for row in [[1, 2, 0], [0, 1, 3], [4, 0, 1]]]
    Ainv = inverse(P, A)
    assert matmul(P, A, Ainv) == identity(P, 3)
    assert matpow(P, A, 0) == identity(P, 3)
    assert matpow(P, A, 3) == matmul(P, A, matmul(P, A, A))
    with pytest.raises(ValueError):
        inverse(Q, [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_apply_matches_matmul():
    A = [[Fraction(a) for a in row] for row in [[1, 2], [3, 4]]]
    v = {0: Fraction(1), 1: Fraction(-1)}
    assert to_dense(Q, apply(Q, columns(Q, A), v), 2) == [-1, -1]


def test_subspace_equality_is_canonical():
    a = Subspace.span(Q, [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}], 2)
    assert a == Subspace.whole(Q, 2)
    assert Subspace.zero(Q, 2) <= a
    assert a.coordinates({0: Fraction(3), 1: Fraction(5)}) == [3, 5]
