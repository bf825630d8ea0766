import pytest

from measuring_lab import corpus
from measuring_lab.algcore import (
    AlgebraMorphism,
    dual_coalgebra,
    hom_vec_of_matrix,
    is_coalgebra_morphism,
)
from measuring_lab.corpus import F2, F3, QQ
from measuring_lab.errors import (
    BudgetExceeded,
    HintInvalid,
    NotMeasuring,
    TruncationInsufficient,
    UnmatchedPoint,
)
from measuring_lab.exactlin import Mat, Subspace, image, intersect, kernel
from measuring_lab.measuring import (
    Budgets,
    MeasuringMap,
    ModuleMeasuringMap,
    WordCoalgebra,
    adjunction_bijection_census,
    algebra_maps,
    check_isocomod,
    comodule_couniversal_factor,
    couniversal_factor,
    finite_dual,
    free_module,
    grouplikes_of,
    largest_coideal_in,
    largest_subcoalgebra_in,
    largest_subcomodule_in,
    measuring_comodule_truncated,
    measuring_comonoid_truncated,
    p_functorial,
    pointed_cofree_truncation,
    q_functorial,
    scalar_point_block,
    verify_measuring,
    verify_module_measuring,
)
from measuring_lab.modcomod import (
    ComoduleStructure,
    ModuleStructure,
    all_matrices,
    regular_comodule,
    regular_module,
    tensor,
)

DUALNUM_2 = corpus.dual_numbers(F2)
K2 = corpus.ground_algebra(F2)
K3 = corpus.ground_algebra(F3)


def ground_module(field):
    a = corpus.ground_algebra(field)
    return ModuleStructure(a, 1, Mat.identity(field, 1))


# -- verify_measuring ----------------------------------------------------------

def test_measuring_grouplike_case_iff_algebra_map():
    c = corpus.trivial_coalgebra(F2)
    maps = algebra_maps(DUALNUM_2, K2)
    assert len(maps) == 1
    good = MeasuringMap(c, DUALNUM_2, K2,
                        Mat.col_vector(F2, hom_vec_of_matrix(maps[0].matrix)))
    assert verify_measuring(good)
    bad = MeasuringMap(c, DUALNUM_2, K2, Mat.col_vector(F2, [1, 1]))
    assert not verify_measuring(bad)


def test_measuring_evaluation_identity():
    c, psi = finite_dual(DUALNUM_2)
    assert verify_measuring(psi)


def test_measuring_perturbation_fails():
    c, psi = finite_dual(DUALNUM_2)
    perturbed = psi.psi.copy_entries()
    perturbed[0][1] = 1 - perturbed[0][1]
    assert not verify_measuring(MeasuringMap(c, psi.a, psi.b, Mat(F2, 2, 2, perturbed)))


def test_measuring_routes_agree_exhaustively_f2():
    c = dual_coalgebra(DUALNUM_2)
    count = 0
    for psi in all_matrices(F2, 2, 2):
        if verify_measuring(MeasuringMap(c, DUALNUM_2, K2, psi)):
            count += 1
    assert count == 2  # verified internally against the adjunct route


# -- algebra_maps ----------------------------------------------------------------

def test_algebra_maps_from_ground_field():
    maps = algebra_maps(K2, DUALNUM_2)
    assert len(maps) == 1 and maps[0].matrix == DUALNUM_2.unit


def test_algebra_maps_dualnum_to_k():
    maps = algebra_maps(DUALNUM_2, K2)
    assert [m.matrix.entries for m in maps] == [[[1, 0]]]


def test_algebra_maps_group_algebra_to_k():
    maps = algebra_maps(corpus.cyclic_group_algebra(F2, 2), K2)
    assert [m.matrix.entries for m in maps] == [[[1, 1]]]


def test_algebra_maps_rational_hints():
    a = corpus.cyclic_group_algebra(QQ, 2)
    kq = corpus.ground_algebra(QQ)
    maps = algebra_maps(a, kq, hints=[[[1, 1]], [[1, -1]]])
    assert len(maps) == 2
    with pytest.raises(HintInvalid):
        algebra_maps(a, kq, hints=[[[1, 2]]])


def test_algebra_maps_budget():
    with pytest.raises(BudgetExceeded):
        algebra_maps(corpus.matrix_algebra(F3, 2), corpus.matrix_algebra(F3, 2),
                     budgets=Budgets(enumeration=100))


# -- word coalgebra -----------------------------------------------------------------

def test_pointed_cofree_degree0():
    point = [1, 0]
    c, proj = pointed_cofree_truncation(2, [point], 0, field=F2)
    assert c.dim == 1
    assert c.delta_cols()[0] == {(0, 0): 1}
    assert proj.column(0) == [1, 0]


def test_pointed_cofree_degree1():
    point = [1, 0]
    c, proj = pointed_cofree_truncation(2, [point], 1, field=F2)
    assert c.dim == 3  # grouplike + two letters
    # letters are (phi, phi)-skew primitives
    assert c.delta_cols()[1] == {(0, 1): 1, (1, 0): 1}


def test_pointed_cofree_degree2_vdim1():
    c, proj = pointed_cofree_truncation(1, [[1]], 2, field=F3)
    assert c.dim == 3  # passes check_coalgebra on construction
    assert proj.column(2) == [0]  # degree-2 words project to zero


def test_word_coalgebra_two_points_mixed_components():
    c, proj = pointed_cofree_truncation(1, [[1], [2]], 1, field=F3)
    # 2 grouplikes + 4 ordered point pairs x 1 letter
    assert c.dim == 6


# -- largest sub(co)algebra / subcomodule / coideal -----------------------------------

def test_largest_subcoalgebra_full_and_zero():
    c = dual_coalgebra(DUALNUM_2)
    assert largest_subcoalgebra_in(c, Subspace.full(F2, 2)).dim == 2
    assert largest_subcoalgebra_in(c, Subspace.zero(F2, 2)).dim == 0


def test_largest_subcoalgebra_primitive_span_collapses():
    # span{x*} contains no subcoalgebra: e contains eps-nontrivial part
    c = dual_coalgebra(DUALNUM_2)
    w = Subspace(F2, 2, [[0, 1]])
    assert largest_subcoalgebra_in(c, w).dim == 0


def test_largest_subcoalgebra_contains_every_subcoalgebra():
    c = dual_coalgebra(corpus.cyclic_group_algebra(F3, 3))
    # the grouplike is the augmentation character (1,1,1); with the additive
    # functional (0,1,2) it spans the first coradical filtration step
    w = Subspace(F3, 3, [[1, 1, 1], [0, 1, 2]])
    d = largest_subcoalgebra_in(c, w)
    assert d.dim == 2 and d.contains([1, 1, 1])
    # a monomial-basis span contains no subcoalgebra at all
    assert largest_subcoalgebra_in(c, Subspace(F3, 3, [[1, 0, 0], [0, 1, 0]])).dim == 0


def test_largest_subcomodule_full_zero_and_crosscheck():
    c = dual_coalgebra(DUALNUM_2)
    x = regular_comodule(c)
    assert largest_subcomodule_in(x, Subspace.full(F2, 2)).dim == 2
    assert largest_subcomodule_in(x, Subspace.zero(F2, 2)).dim == 0
    w = Subspace(F2, 2, [[1, 0]])
    sub = largest_subcomodule_in(x, w)
    assert sub == largest_subcoalgebra_in(c, w)  # {1*} is both


def test_largest_coideal():
    c = dual_coalgebra(DUALNUM_2)
    j = largest_coideal_in(c, Subspace(F2, 2, [[0, 1]]))
    assert j.dim == 1  # the primitive span is a coideal
    j2 = largest_coideal_in(c, Subspace(F2, 2, [[1, 0]]))
    assert j2.dim == 0  # eps != 0 there


# -- truncated measuring comonoid ------------------------------------------------------

def test_p_of_ground_algebra_is_one_dimensional():
    for n in (0, 1, 2):
        p = measuring_comonoid_truncated(K2, DUALNUM_2, n)
        assert p.dim == 1


def test_p_dualnum_is_finite_dual():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    assert p.dim == 2
    c, psi = finite_dual(DUALNUM_2)
    h = couniversal_factor(p, psi)
    assert image(h.matrix).dim == 2  # isomorphism
    assert p.proj.mul(h.matrix) == psi.psi


def test_p_dualnum_rational_with_hint():
    a = corpus.dual_numbers(QQ)
    kq = corpus.ground_algebra(QQ)
    p = measuring_comonoid_truncated(a, kq, 2, hints=[[[1, 0]]])
    assert p.dim == 2
    c, psi = finite_dual(a)
    h = couniversal_factor(p, psi, grouplike_hints=[[1, 0]])
    assert image(h.matrix).dim == 2


def test_p_rational_group_algebra_two_characters():
    # two grouplikes, no primitives: the mixed skew letters are quotiented away
    a = corpus.cyclic_group_algebra(QQ, 2)
    kq = corpus.ground_algebra(QQ)
    p = measuring_comonoid_truncated(a, kq, 2, hints=[[[1, 1]], [[1, -1]]])
    assert p.dim == 2
    assert len(grouplikes_of(p.p_n, hints=[list(v) for v in p.grouplike_coords.values()])) == 2


def test_p_f3_group_algebra_two_characters():
    a = corpus.cyclic_group_algebra(F3, 2)
    p = measuring_comonoid_truncated(a, K3, 2)
    assert p.dim == 2
    assert p.self_check()


def test_p_degree_one_part_is_derivation_space():
    # independent oracle: solve v(a a') = phi(a) v(a') + v(a) phi(a'), v(1) = 0
    a = corpus.cyclic_group_algebra(F3, 3)
    p = measuring_comonoid_truncated(a, K3, 3)
    phi = algebra_maps(a, K3)[0].matrix
    rows = []
    f = F3
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.mult_vec(i, j)
            # v(prod) - phi(a_i) v(a_j) - v(a_i) phi(a_j) = 0, unknowns v(a_t)
            row = [f.zero()] * a.dim
            for t, x in enumerate(prod):
                row[t] = f.add(row[t], x)
            row[j] = f.sub(row[j], phi.entries[0][i])
            row[i] = f.sub(row[i], phi.entries[0][j])
            rows.append(row)
    rows.append([1, 0, 0])  # v(1) = 0
    derivations = kernel(Mat(F3, len(rows), a.dim, rows))
    # P's degree-1 layer at (phi, phi): elements of the raw carve of word-degree 1
    word = p.word
    deg1 = [t for t, w in enumerate(word.basis) if w.degree == 1]
    span = Subspace(F3, word.dim,
                    [[1 if i == t else 0 for i in range(word.dim)] for t in deg1])
    layer = intersect(p.raw_subspace,
                      Subspace(F3, word.dim,
                               [[1 if i == t else 0 for i in range(word.dim)]
                                for t in deg1 + [0]]))
    # subtract the grouplike line: degree-1 component dimension
    assert layer.dim - 1 == derivations.dim


def test_finite_dual_agreement_corpus():
    cases = [corpus.ground_algebra(F2), DUALNUM_2,
             corpus.cyclic_group_algebra(F2, 2), corpus.cyclic_group_algebra(F3, 3)]
    for a in cases:
        p = measuring_comonoid_truncated(a, corpus.ground_algebra(a.field), a.dim)
        c, psi = finite_dual(a)
        h = couniversal_factor(p, psi)
        assert image(h.matrix).dim == p.dim == c.dim


def test_truncation_insufficient_when_degree_too_low():
    a = corpus.cyclic_group_algebra(F3, 3)
    p = measuring_comonoid_truncated(a, K3, 1)
    c, psi = finite_dual(a)
    with pytest.raises(TruncationInsufficient):
        couniversal_factor(p, psi)


def test_couniversal_factor_grouplike_source():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    c = corpus.trivial_coalgebra(F2)
    phi = algebra_maps(DUALNUM_2, K2)[0]
    psi = MeasuringMap(c, DUALNUM_2, K2, Mat.col_vector(F2, hom_vec_of_matrix(phi.matrix)))
    h = couniversal_factor(p, psi)
    assert h.matrix.column(0) == p.grouplike_coords[(0, 0, 0)]


def test_couniversal_factor_rejects_non_measuring():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    c = corpus.trivial_coalgebra(F2)
    bad = MeasuringMap(c, DUALNUM_2, K2, Mat.col_vector(F2, [1, 1]))
    with pytest.raises(NotMeasuring):
        couniversal_factor(p, bad)


def test_monotonicity_of_truncation():
    for a in [DUALNUM_2, corpus.cyclic_group_algebra(F2, 2)]:
        k = corpus.ground_algebra(a.field)
        p1 = measuring_comonoid_truncated(a, k, 1)
        p2 = measuring_comonoid_truncated(a, k, 2)
        t1, t2 = p1.word.dim, p2.word.dim
        assert p1.word.basis == p2.word.basis[:t1]
        padded = Subspace(a.field, t2, [row + [0] * (t2 - t1)
                                        for row in p1.raw_subspace.basis])
        assert p2.raw_subspace.contains_subspace(padded)


# -- matrix points ---------------------------------------------------------------------

def test_matrix_point_recovers_matrix_coalgebra():
    m2 = corpus.matrix_algebra(F2, 2)
    p = measuring_comonoid_truncated(m2, K2, 1, m_max=2)
    assert p.dim == 4
    # a measuring into Hom(A, k) is precisely a coalgebra map into A*, so the
    # canonical projection exhibits P as the matrix coalgebra up to conjugation
    from measuring_lab.algcore import CoalgebraMorphism
    iso = CoalgebraMorphism(p.p_n, dual_coalgebra(m2), p.proj)
    assert image(iso.matrix).dim == 4
    assert measuring_comonoid_truncated(m2, K2, 1).dim == 0  # default m_max misses it


def test_factor_from_matrix_coalgebra_unsupported():
    m2 = corpus.matrix_algebra(F2, 2)
    p = measuring_comonoid_truncated(m2, K2, 1, m_max=2)
    c, psi = finite_dual(m2)
    with pytest.raises(UnmatchedPoint):
        couniversal_factor(p, psi)


# -- census -----------------------------------------------------------------------------

@pytest.mark.parametrize("a_builder", [lambda: DUALNUM_2,
                                       lambda: corpus.cyclic_group_algebra(F2, 2)])
@pytest.mark.parametrize("c_builder", [lambda: corpus.trivial_coalgebra(F2),
                                       lambda: corpus.grouplike_coalgebra(F2, 2),
                                       lambda: dual_coalgebra(DUALNUM_2)])
def test_adjunction_bijection_census(a_builder, c_builder):
    rep = adjunction_bijection_census(a_builder(), K2, c_builder(), degree=2)
    assert rep["bijective"]


def test_census_grouplike_counts_algebra_maps():
    rep = adjunction_bijection_census(DUALNUM_2, K2, corpus.trivial_coalgebra(F2), degree=2)
    assert rep["measurings"] == len(algebra_maps(DUALNUM_2, K2))


# -- module measurings and Q ------------------------------------------------------------

def test_q_over_ground_field_is_hom():
    k_mod = ground_module(F2)
    p = measuring_comonoid_truncated(K2, K2, 2)
    m = ModuleStructure(K2, 2, Mat.identity(F2, 2))
    q = measuring_comodule_truncated(m, k_mod, p)
    assert q.dim == 2  # Hom(M, N) (x) k entirely


def test_q_of_regular_module_is_finite_dual_sized():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    q = measuring_comodule_truncated(regular_module(DUALNUM_2), ground_module(F2), p)
    assert q.dim == 2
    assert verify_module_measuring(q.canonical)


def test_q_perturbed_constraint_strictly_smaller():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    q = measuring_comodule_truncated(regular_module(DUALNUM_2), ground_module(F2), p)
    from measuring_lab.modcomod import cofree_comodule
    cof = cofree_comodule(2, p.p_n)
    cut = intersect(q.raw_subspace, Subspace(F2, cof.dim, [[1, 0, 0, 1], [0, 1, 0, 0],
                                                           [0, 0, 1, 0]]))
    smaller = largest_subcomodule_in(cof, cut)
    assert smaller.dim < q.dim


def test_module_measuring_perturbation_fails():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    q = measuring_comodule_truncated(regular_module(DUALNUM_2), ground_module(F2), p)
    rho = q.proj.copy_entries()
    rho[0][0] = 1 - rho[0][0]
    bad = ModuleMeasuringMap(p.canonical_measuring, q.q_n, q.m, q.n, Mat(F2, 2, 2, rho))
    assert not verify_module_measuring(bad)


def test_comodule_couniversal_factor_canonical_is_identity():
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    q = measuring_comodule_truncated(regular_module(DUALNUM_2), ground_module(F2), p)
    mor = comodule_couniversal_factor(q, q.canonical)
    assert mor.k == Mat.identity(F2, q.dim)
    assert mor.g.matrix == Mat.identity(F2, p.dim)


def test_comodule_census_f2():
    # module-measurings X -> Hom(M, N) vs global comodule morphisms X -> Q_n
    a = DUALNUM_2
    p = measuring_comonoid_truncated(a, K2, 2)
    q = measuring_comodule_truncated(regular_module(a), ground_module(F2), p)
    c = dual_coalgebra(a)
    x = regular_comodule(c)
    measurings = []
    for rho in all_matrices(F2, 2, 2):
        for psi in all_matrices(F2, 2, 2):
            mm_psi = MeasuringMap(c, a, K2, psi)
            if not verify_measuring(mm_psi):
                continue
            mm = ModuleMeasuringMap(mm_psi, x, regular_module(a), ground_module(F2), rho)
            if verify_module_measuring(mm):
                measurings.append((tuple(map(tuple, psi.entries)),
                                   tuple(map(tuple, rho.entries))))
    factors = set()
    for psi_e, rho_e in measurings:
        mm_psi = MeasuringMap(c, a, K2, Mat(F2, 2, 2, [list(r) for r in psi_e]))
        mm = ModuleMeasuringMap(mm_psi, x, regular_module(a), ground_module(F2),
                                Mat(F2, 2, 2, [list(r) for r in rho_e]))
        mor = comodule_couniversal_factor(q, mm)
        factors.add((tuple(map(tuple, mor.g.matrix.entries)),
                     tuple(map(tuple, mor.k.entries))))
    assert len(factors) == len(measurings)
    # enumerate all global comodule morphisms (h, k) : X -> Q_n
    count = 0
    for h in all_matrices(F2, p.dim, c.dim):
        from measuring_lab.algcore import CoalgebraMorphism
        hm = CoalgebraMorphism(c, p.p_n, h, validate=False)
        if not is_coalgebra_morphism(hm):
            continue
        for k in all_matrices(F2, q.dim, x.dim):
            if tensor(k, h).mul(x.coaction) == q.q_n.coaction.mul(k):
                count += 1
    assert count == len(measurings)


# -- the comodule isomorphism lemma -------------------------------------------------------

def test_isocomod_dualnum_special_case():
    rep = check_isocomod(DUALNUM_2, K2, 1, ground_module(F2), 2)
    assert rep["ok"] and rep["stabilized"]


def test_isocomod_trivial_algebra():
    rep = check_isocomod(K2, K2, 2, ground_module(F2), 1)
    assert rep["ok"]


def test_isocomod_vdim2():
    rep = check_isocomod(DUALNUM_2, K2, 2, ground_module(F2), 2)
    assert rep["ok"]
    assert rep["q_dim"] == rep["cofree_dim"] == 4


def test_isocomod_group_algebra():
    rep = check_isocomod(corpus.cyclic_group_algebra(F2, 2), K2, 2, ground_module(F2), 2)
    assert rep["ok"]


# -- functoriality ------------------------------------------------------------------------

def test_p_functorial_identity():
    from measuring_lab.algcore import identity_algebra_morphism
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    h = p_functorial(p, p, identity_algebra_morphism(DUALNUM_2),
                     identity_algebra_morphism(K2))
    assert h.matrix == Mat.identity(F2, p.dim)


def test_q_functorial_identity():
    from measuring_lab.algcore import identity_algebra_morphism
    from measuring_lab.modcomod import GlobalModMorphism
    p = measuring_comonoid_truncated(DUALNUM_2, K2, 2)
    m = regular_module(DUALNUM_2)
    n = ground_module(F2)
    q = measuring_comodule_truncated(m, n, p)
    u = GlobalModMorphism(identity_algebra_morphism(DUALNUM_2), Mat.identity(F2, 2), m, m)
    v = GlobalModMorphism(identity_algebra_morphism(K2), Mat.identity(F2, 1), n, n)
    mor = q_functorial(q, q, u, v)
    assert mor.k == Mat.identity(F2, q.dim)
