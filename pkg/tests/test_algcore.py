import pytest

from measuring_lab import corpus
from measuring_lab.algcore import (
    AlgebraMorphism,
    CoalgebraMorphism,
    check_algebra,
    check_coalgebra,
    convolution_algebra,
    cop,
    dual_algebra,
    dual_coalgebra,
    hom_vec_of_matrix,
    is_algebra_morphism,
    is_coalgebra_morphism,
    matrix_of_hom_vec,
    swap_mat,
    tensor_algebras,
    tensor_coalgebras,
)
from measuring_lab.corpus import F2, F3, QQ
from measuring_lab.errors import AssociativityFailure, FieldMismatch, UnitFailure
from measuring_lab.exactlin import Mat


def test_ground_field_valid():
    a = corpus.ground_algebra(QQ)
    assert a.dim == 1


def test_dual_numbers_valid():
    a = corpus.dual_numbers(QQ)
    assert a.multiply([0, 1], [0, 1]) == [0, 0]


def test_unit_failure_detected():
    # e1*e1 = e2, everything else zero, alleged unit e1
    table = [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]
    with pytest.raises(UnitFailure):
        check_algebra("bad", QQ, ["a", "b"], table, [1, 0])


def test_associativity_failure_detected():
    # e2*e2 = e1 with e1 idempotent and mixed products zero: (e2 e2) e1 != e2 (e2 e1)
    table = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    with pytest.raises(AssociativityFailure):
        check_algebra("bad", QQ, ["a", "b"], table, [1, 0])


def test_trivial_coalgebra_valid():
    c = corpus.trivial_coalgebra(F2)
    assert c.dim == 1


def test_divided_power_line_valid():
    c = corpus.divided_power_line(QQ)
    assert c.dim == 2


def test_matrix_coalgebra_valid():
    c = corpus.matrix_coalgebra(QQ, 2)
    assert c.dim == 4
    assert not c.is_cocommutative()


def test_dual_of_ground_field():
    c = dual_coalgebra(corpus.ground_algebra(QQ))
    assert c == corpus.trivial_coalgebra(QQ, name=c.name)


def test_dual_of_dual_numbers():
    c = dual_coalgebra(corpus.dual_numbers(QQ))
    # Delta(x*) = 1*(x)x* + x*(x)1*, Delta(1*) = 1*(x)1*; eps = (1, 0)
    cols = c.delta_cols()
    assert cols[0] == {(0, 0): 1}
    assert cols[1] == {(0, 1): 1, (1, 0): 1}
    assert c.counit_vec() == [1, 0]


def test_dual_of_group_algebra_f2():
    c = dual_coalgebra(corpus.cyclic_group_algebra(F2, 2))
    cols = c.delta_cols()
    # monomial basis: Delta(g*) = sum over hk=g of h* (x) k*
    assert cols[0] == {(0, 0): 1, (1, 1): 1}
    assert cols[1] == {(0, 1): 1, (1, 0): 1}


def test_double_dual_identity():
    for a in [corpus.dual_numbers(QQ), corpus.cyclic_group_algebra(F3, 3),
              corpus.matrix_algebra(F2, 2)]:
        aa = dual_algebra(dual_coalgebra(a))
        assert aa.mult == a.mult and aa.unit == a.unit


def test_dual_of_matrix_coalgebra_is_matrix_algebra():
    m2 = corpus.matrix_algebra(QQ, 2)
    assert dual_algebra(corpus.matrix_coalgebra(QQ, 2)).mult == m2.mult


def test_convolution_with_trivial_coalgebra_is_the_algebra():
    a = corpus.dual_numbers(QQ)
    conv = convolution_algebra(corpus.trivial_coalgebra(QQ), a)
    assert conv.mult == a.mult and conv.unit == a.unit


def test_convolution_with_ground_algebra_is_dual_algebra():
    c = corpus.matrix_coalgebra(F2, 2)
    conv = convolution_algebra(c, corpus.ground_algebra(F2))
    d = dual_algebra(c)
    assert conv.mult == d.mult and conv.unit == d.unit


def test_convolution_mixed_eight_dim():
    conv = convolution_algebra(corpus.matrix_coalgebra(QQ, 2), corpus.dual_numbers(QQ))
    assert conv.dim == 8  # construction already re-runs the axiom checker


def test_convolution_field_mismatch():
    with pytest.raises(FieldMismatch):
        convolution_algebra(corpus.trivial_coalgebra(QQ), corpus.dual_numbers(F2))


def test_convolution_currying_iso():
    # Hom(C(x)D, A) and Hom(C, Hom(D, A)) share structure constants on the nose
    c = dual_coalgebra(corpus.dual_numbers(F3))
    d = corpus.grouplike_coalgebra(F3, 2)
    a = corpus.dual_numbers(F3)
    lhs = convolution_algebra(tensor_coalgebras(c, d), a)
    rhs = convolution_algebra(c, convolution_algebra(d, a))
    assert lhs.mult == rhs.mult and lhs.unit == rhs.unit


def test_tensor_with_ground_field():
    a = corpus.dual_numbers(QQ)
    t = tensor_algebras(a, corpus.ground_algebra(QQ))
    assert t.mult == a.mult and t.unit == a.unit
    k = corpus.ground_algebra(QQ)
    assert tensor_algebras(k, k).dim == 1


def test_tensor_group_algebras_is_product_group():
    g = corpus.cyclic_group_algebra(F2, 2)
    t = tensor_algebras(g, g)
    # basis (i, j) multiplies componentwise: table of C2 x C2
    for i in range(4):
        for j in range(4):
            vec = t.mult_vec(i, j)
            tgt = (((i // 2) + (j // 2)) % 2) * 2 + ((i % 2) + (j % 2)) % 2
            assert vec == [1 if t_ == tgt else 0 for t_ in range(4)]


def test_tensor_coalgebras_axioms():
    c = corpus.matrix_coalgebra(F2, 2)
    d = dual_coalgebra(corpus.cyclic_group_algebra(F2, 2))
    tensor_coalgebras(c, d)  # validates on construction


def test_cop_of_cocommutative_is_same():
    c = dual_coalgebra(corpus.dual_numbers(QQ))
    assert cop(c).comult == c.comult


def test_cop_of_matrix_coalgebra_differs():
    c = corpus.matrix_coalgebra(QQ, 2)
    assert cop(c).comult != c.comult


def test_identity_is_algebra_morphism():
    a = corpus.dual_numbers(QQ)
    mor = AlgebraMorphism(a, a, Mat.identity(QQ, 2), validate=False)
    assert is_algebra_morphism(mor)


def test_zero_map_violates_unit():
    a = corpus.dual_numbers(QQ)
    mor = AlgebraMorphism(a, a, Mat.zeros(QQ, 2, 2), validate=False)
    assert not is_algebra_morphism(mor)


def test_augmentation_is_algebra_morphism():
    a = corpus.dual_numbers(QQ)
    k = corpus.ground_algebra(QQ)
    mor = AlgebraMorphism(a, k, Mat.from_rows(QQ, [[1, 0]]), validate=False)
    assert is_algebra_morphism(mor)


def test_coalgebra_morphism_counit_respected():
    c = dual_coalgebra(corpus.dual_numbers(QQ))
    k = corpus.trivial_coalgebra(QQ)
    mor = CoalgebraMorphism(c, k, Mat.from_rows(QQ, [[1, 0]]), validate=False)
    assert is_coalgebra_morphism(mor)
    bad = CoalgebraMorphism(c, k, Mat.from_rows(QQ, [[1, 1]]), validate=False)
    assert not is_coalgebra_morphism(bad)


def test_hom_vec_roundtrip():
    m = Mat.from_rows(QQ, [[1, 2, 3], [4, 5, 6]])  # map from dim 3 to dim 2
    v = hom_vec_of_matrix(m)
    assert matrix_of_hom_vec(QQ, v, 3, 2) == m


def test_swap_is_involution():
    s = swap_mat(QQ, 2, 3)
    s2 = swap_mat(QQ, 3, 2)
    assert s2.mul(s) == Mat.identity(QQ, 6)
