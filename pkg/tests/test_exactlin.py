from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from measuring_lab.errors import AmbientMismatch, FieldMismatch
from measuring_lab.exactlin import (
    GF,
    QQ,
    Mat,
    Subspace,
    intersect,
    kernel,
    preimage,
    rref,
    solve,
    subspace_sum,
    tensor,
)

F2 = GF(2)
F3 = GF(3)


def mat(field, rows):
    return Mat.from_rows(field, rows)


# -- rref -------------------------------------------------------------------

def test_rref_identity():
    m, piv = rref(Mat.identity(QQ, 2))
    assert m == Mat.identity(QQ, 2)
    assert piv == [0, 1]


def test_rref_zero():
    m, piv = rref(Mat.zeros(QQ, 3, 2))
    assert m == Mat.zeros(QQ, 3, 2)
    assert piv == []


def test_rref_f2_hand_example():
    m, piv = rref(mat(F2, [[1, 1], [1, 1]]))
    assert m == mat(F2, [[1, 1], [0, 0]])
    assert piv == [0]


def test_rref_rational_normalises_pivots():
    m, piv = rref(mat(QQ, [[2, 4], [1, 3]]))
    assert m == Mat.identity(QQ, 2)
    assert piv == [0, 1]


# -- kernel -----------------------------------------------------------------

def test_kernel_identity_is_zero():
    assert kernel(Mat.identity(QQ, 3)).dim == 0


def test_kernel_zero_map_is_full():
    k = kernel(Mat.zeros(F2, 2, 4))
    assert k.dim == 4


def test_kernel_hand_example():
    k = kernel(mat(QQ, [[1, 1]]))
    assert k.dim == 1
    assert k.contains([1, -1])
    assert not k.contains([1, 1])


# -- subspaces ----------------------------------------------------------------

def test_intersect_idempotent_and_full():
    u = Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    assert intersect(u, u) == u
    assert intersect(u, Subspace.full(QQ, 3)) == u


def test_intersect_hand_example():
    u = Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    v = Subspace(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    w = intersect(u, v)
    assert w.dim == 1
    assert w.contains([0, 1, 0])


def test_intersect_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        intersect(Subspace.full(QQ, 2), Subspace.full(QQ, 3))


def test_preimage():
    m = mat(QQ, [[1, 0], [0, 0]])
    s = Subspace.zero(QQ, 2)
    pre = preimage(m, s)
    assert pre.dim == 1 and pre.contains([0, 1])


# -- tensor --------------------------------------------------------------------

def test_tensor_identities():
    assert tensor(Mat.identity(QQ, 2), Mat.identity(QQ, 3)) == Mat.identity(QQ, 6)


def test_tensor_zero_and_scalar():
    a = mat(QQ, [[2]])
    assert tensor(a, Mat.zeros(QQ, 1, 1)) == Mat.zeros(QQ, 1, 1)
    assert tensor(a, mat(QQ, [[3]])) == mat(QQ, [[6]])


def test_tensor_field_mismatch():
    with pytest.raises(FieldMismatch):
        tensor(Mat.identity(QQ, 1), Mat.identity(F2, 1))


# -- solve -----------------------------------------------------------------------

def test_solve():
    m = mat(QQ, [[1, 2], [3, 4]])
    x = solve(m, [5, 6])
    assert m.apply(x) == [Fraction(5), Fraction(6)]
    assert solve(mat(QQ, [[1, 1], [1, 1]]), [0, 1]) is None


# -- hypothesis properties ---------------------------------------------------------

def f2_matrices(max_dim=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, 1), min_size=c, max_size=c),
                min_size=r, max_size=r,
            ).map(lambda rows: mat(F2, rows))
        )
    )


@given(f2_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity_f2(m):
    _, piv = rref(m)
    assert len(piv) + kernel(m).dim == m.cols


@given(f2_matrices())
@settings(max_examples=100, deadline=None)
def test_rref_idempotent(m):
    r1, p1 = rref(m)
    r2, p2 = rref(r1)
    assert r1 == r2 and p1 == p2


@given(f2_matrices(3), f2_matrices(3), f2_matrices(3))
@settings(max_examples=60, deadline=None)
def test_tensor_associative(a, b, c):
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


def f2_subspaces(dim):
    return st.lists(
        st.lists(st.integers(0, 1), min_size=dim, max_size=dim), min_size=0, max_size=dim
    ).map(lambda rows: Subspace(F2, dim, rows))


@given(f2_subspaces(5), f2_subspaces(5))
@settings(max_examples=150, deadline=None)
def test_dimension_formula(u, v):
    assert u.dim + v.dim == intersect(u, v).dim + subspace_sum(u, v).dim


@given(f2_subspaces(4), f2_subspaces(4))
@settings(max_examples=100, deadline=None)
def test_intersection_is_lower_bound(u, v):
    w = intersect(u, v)
    assert u.contains_subspace(w) and v.contains_subspace(w)
