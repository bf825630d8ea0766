"""Finite-dimensional algebras and coalgebras by structure constants.

Structure maps are stored as matrices under the fixed row-major tensor
convention of exactlin: multiplication m : A(x)A -> A is dim x dim^2,
comultiplication D : C -> C(x)C is dim^2 x dim.  Constructors validate the
defining axioms and raise a structured error naming the first failure.
Equality of structures is equality of structure-constant tensors.
"""

from __future__ import annotations

from .errors import (
    AssociativityFailure,
    CoassociativityFailure,
    CounitFailure,
    DimMismatch,
    FieldMismatch,
    MorphismFailure,
    UnitFailure,
)
from .exactlin import Mat, tensor


def swap_mat(field, dim_x, dim_y) -> Mat:
    """The symmetry X(x)Y -> Y(x)X as a permutation matrix."""
    m = Mat.zeros(field, dim_x * dim_y, dim_x * dim_y)
    one = field.one()
    for i in range(dim_x):
        for j in range(dim_y):
            m.entries[j * dim_x + i][i * dim_y + j] = one
    return m


def sparse_cols(m: Mat):
    """Columns of m as dicts {row: coeff}, skipping zeros."""
    zero = m.field.zero()
    cols = [dict() for _ in range(m.cols)]
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            if x != zero:
                cols[j][i] = x
    return cols


# -- Hom-space bookkeeping ----------------------------------------------------
# Basis of Hom(V, W) is e_ij : v_i |-> w_j with linear index i*dim(W) + j,
# matching Hom(V, W) ~ V* (x) W under the tensor convention.


def hom_dim(dim_src, dim_tgt):
    return dim_src * dim_tgt


def hom_vec_of_matrix(m: Mat):
    """Coordinates of a linear map (dimT x dimS matrix) in the Hom basis."""
    return [m.entries[j][i] for i in range(m.cols) for j in range(m.rows)]


def matrix_of_hom_vec(field, vec, dim_src, dim_tgt) -> Mat:
    if len(vec) != dim_src * dim_tgt:
        raise DimMismatch("hom vector of wrong length")
    m = Mat.zeros(field, dim_tgt, dim_src)
    for i in range(dim_src):
        for j in range(dim_tgt):
            m.entries[j][i] = field.coerce(vec[i * dim_tgt + j])
    return m


class Algebra:
    """Associative unital algebra presented by multiplication and unit tensors."""

    def __init__(self, name, field, dim, basis_labels, mult: Mat, unit: Mat, validate=True):
        if mult.rows != dim or mult.cols != dim * dim:
            raise DimMismatch(f"mult must be {dim}x{dim * dim}")
        if unit.rows != dim or unit.cols != 1:
            raise DimMismatch(f"unit must be {dim}x1")
        if len(basis_labels) != dim:
            raise DimMismatch("basis label count != dim")
        self.name = name
        self.field = field
        self.dim = dim
        self.basis_labels = list(basis_labels)
        self.mult = mult
        self.unit = unit
        if validate:
            self._validate()

    def mult_vec(self, i, j):
        return self.mult.column(i * self.dim + j)

    def unit_vec(self):
        return self.unit.column(0)

    def _validate(self):
        f, d = self.field, self.dim
        zero = f.zero()
        cols = [self.mult.column(i * d + j) for i in range(d) for j in range(d)]

        def mul_vecs(u, v):
            out = [zero] * d
            for i, a in enumerate(u):
                if a == zero:
                    continue
                for j, b in enumerate(v):
                    if b == zero:
                        continue
                    c = f.mul(a, b)
                    col = cols[i * d + j]
                    for t in range(d):
                        if col[t] != zero:
                            out[t] = f.add(out[t], f.mul(c, col[t]))
            return out

        basis = Mat.identity(f, d).entries
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = mul_vecs(cols[i * d + j], basis[k])
                    right = mul_vecs(basis[i], cols[j * d + k])
                    if left != right:
                        raise AssociativityFailure(i, j, k)
        u = self.unit_vec()
        for i in range(d):
            if mul_vecs(u, basis[i]) != basis[i]:
                raise UnitFailure("left", i)
            if mul_vecs(basis[i], u) != basis[i]:
                raise UnitFailure("right", i)

    def multiply(self, u, v):
        """Product of two coordinate vectors."""
        f, d = self.field, self.dim
        zero = f.zero()
        out = [zero] * d
        for i, a in enumerate(u):
            if a == zero:
                continue
            for j, b in enumerate(v):
                if b == zero:
                    continue
                c = f.mul(a, b)
                col = self.mult.column(i * d + j)
                for t in range(d):
                    if col[t] != zero:
                        out[t] = f.add(out[t], f.mul(c, col[t]))
        return out

    def is_commutative(self):
        d = self.dim
        return all(self.mult_vec(i, j) == self.mult_vec(j, i) for i in range(d) for j in range(d))

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.mult == other.mult
            and self.unit == other.unit
        )

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim})"


class Coalgebra:
    """Coassociative counital coalgebra presented by comultiplication and counit."""

    def __init__(self, name, field, dim, basis_labels, comult: Mat, counit: Mat, validate=True):
        if comult.rows != dim * dim or comult.cols != dim:
            raise DimMismatch(f"comult must be {dim * dim}x{dim}")
        if counit.rows != 1 or counit.cols != dim:
            raise DimMismatch(f"counit must be 1x{dim}")
        if len(basis_labels) != dim:
            raise DimMismatch("basis label count != dim")
        self.name = name
        self.field = field
        self.dim = dim
        self.basis_labels = list(basis_labels)
        self.comult = comult
        self.counit = counit
        self._delta_cols = None
        if validate:
            self._validate()

    def delta_cols(self):
        """Per-basis comultiplication as dicts {(i, j): coeff}."""
        if self._delta_cols is None:
            d = self.dim
            raw = sparse_cols(self.comult)
            self._delta_cols = [
                {(r // d, r % d): x for r, x in col.items()} for col in raw
            ]
        return self._delta_cols

    def counit_vec(self):
        return self.counit.row(0)

    def _validate(self):
        f, d = self.field, self.dim
        zero = f.zero()
        cols = self.delta_cols()
        eps = self.counit_vec()
        for t in range(d):
            left, right = {}, {}
            for (i, j), c in cols[t].items():
                for (p, q), c2 in cols[i].items():
                    key = (p, q, j)
                    left[key] = f.add(left.get(key, zero), f.mul(c, c2))
                for (p, q), c2 in cols[j].items():
                    key = (i, p, q)
                    right[key] = f.add(right.get(key, zero), f.mul(c, c2))
            left = {k: v for k, v in left.items() if v != zero}
            right = {k: v for k, v in right.items() if v != zero}
            if left != right:
                raise CoassociativityFailure(t)
        for t in range(d):
            lvec = [zero] * d
            rvec = [zero] * d
            for (i, j), c in cols[t].items():
                if eps[i] != zero:
                    lvec[j] = f.add(lvec[j], f.mul(eps[i], c))
                if eps[j] != zero:
                    rvec[i] = f.add(rvec[i], f.mul(eps[j], c))
            e_t = [zero] * d
            e_t[t] = f.one()
            if lvec != e_t:
                raise CounitFailure("left", t)
            if rvec != e_t:
                raise CounitFailure("right", t)

    def is_cocommutative(self):
        cols = self.delta_cols()
        for col in cols:
            if any(col.get((i, j)) != col.get((j, i)) for (i, j) in col):
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.comult == other.comult
            and self.counit == other.counit
        )

    def __repr__(self):
        return f"Coalgebra({self.name!r}, dim={self.dim})"


def check_algebra(name, field, basis_labels, mult_table, unit_vec) -> Algebra:
    """Validate raw structure constants: mult_table[i][j] = coefficient vector of e_i e_j."""
    dim = len(basis_labels)
    if len(mult_table) != dim or any(len(r) != dim for r in mult_table):
        raise DimMismatch("mult table must be dim x dim")
    mult = Mat.zeros(field, dim, dim * dim)
    for i in range(dim):
        for j in range(dim):
            vec = mult_table[i][j]
            if len(vec) != dim:
                raise DimMismatch(f"mult[{i}][{j}] has wrong length")
            for t in range(dim):
                mult.entries[t][i * dim + j] = field.coerce(vec[t])
    unit = Mat.col_vector(field, unit_vec)
    return Algebra(name, field, dim, basis_labels, mult, unit)


def check_coalgebra(name, field, basis_labels, comult_table, counit_vec) -> Coalgebra:
    """Validate raw data: comult_table[t] = list of (i, j, coeff) terms of Delta(e_t)."""
    dim = len(basis_labels)
    if len(comult_table) != dim:
        raise DimMismatch("comult table must have dim entries")
    comult = Mat.zeros(field, dim * dim, dim)
    for t, terms in enumerate(comult_table):
        for (i, j, c) in terms:
            comult.entries[i * dim + j][t] = field.add(
                comult.entries[i * dim + j][t], field.coerce(c)
            )
    counit = Mat.row_vector(field, counit_vec)
    return Coalgebra(name, field, dim, basis_labels, comult, counit)


# -- duals ---------------------------------------------------------------------


def dual_coalgebra(a: Algebra) -> Coalgebra:
    """A* with comultiplication the transpose of multiplication (f.d. finite dual)."""
    return Coalgebra(
        a.name + "*",
        a.field,
        a.dim,
        [lbl + "*" for lbl in a.basis_labels],
        a.mult.transpose(),
        a.unit.transpose(),
    )


def dual_algebra(c: Coalgebra) -> Algebra:
    """C* with the convolution product (f*g) = (f(x)g) o Delta and unit eps."""
    return Algebra(
        c.name + "*",
        c.field,
        c.dim,
        [lbl + "*" for lbl in c.basis_labels],
        c.comult.transpose(),
        c.counit.transpose(),
    )


def cop(c: Coalgebra) -> Coalgebra:
    """The co-opposite coalgebra: comultiplication composed with the swap."""
    s = swap_mat(c.field, c.dim, c.dim)
    return Coalgebra(c.name + "^cop", c.field, c.dim, c.basis_labels, s.mul(c.comult), c.counit)


# -- convolution ------------------------------------------------------------------


def convolution_algebra(c: Coalgebra, a: Algebra) -> Algebra:
    """Hom(C, A) with product (f*g) = m_A o (f(x)g) o Delta_C and unit eta_A o eps_C.

    Basis e_ij : c_i |-> a_j at index i*dim(A) + j.
    """
    if c.field != a.field:
        raise FieldMismatch("convolution: fields differ")
    f = c.field
    dc, da = c.dim, a.dim
    dim = dc * da
    zero = f.zero()
    dcols = c.delta_cols()
    mult = Mat.zeros(f, dim, dim * dim)
    for i in range(dc):
        for j in range(da):
            for k in range(dc):
                for l in range(da):
                    col = i * da + j
                    col2 = k * da + l
                    prod_al = a.mult_vec(j, l)
                    for t in range(dc):
                        coeff = dcols[t].get((i, k), zero)
                        if coeff == zero:
                            continue
                        for m_idx in range(da):
                            if prod_al[m_idx] != zero:
                                r = t * da + m_idx
                                mult.entries[r][col * dim + col2] = f.add(
                                    mult.entries[r][col * dim + col2],
                                    f.mul(coeff, prod_al[m_idx]),
                                )
    eps = c.counit_vec()
    uvec = a.unit_vec()
    unit = Mat.zeros(f, dim, 1)
    for i in range(dc):
        if eps[i] == zero:
            continue
        for j in range(da):
            if uvec[j] != zero:
                unit.entries[i * da + j][0] = f.mul(eps[i], uvec[j])
    labels = [f"{ci}->{aj}" for ci in c.basis_labels for aj in a.basis_labels]
    return Algebra(f"[{c.name},{a.name}]", f, dim, labels, mult, unit)


# -- tensor products -----------------------------------------------------------------


def tensor_algebras(a: Algebra, b: Algebra) -> Algebra:
    """A(x)B with (a(x)b)(a'(x)b') = aa'(x)bb' (middle-swap convention)."""
    if a.field != b.field:
        raise FieldMismatch("tensor_algebras: fields differ")
    f = a.field
    mid = tensor(tensor(Mat.identity(f, a.dim), swap_mat(f, b.dim, a.dim)),
                 Mat.identity(f, b.dim))
    mult = tensor(a.mult, b.mult).mul(mid)
    unit = tensor(a.unit, b.unit)
    labels = [f"{x}(x){y}" for x in a.basis_labels for y in b.basis_labels]
    return Algebra(f"{a.name}(x){b.name}", f, a.dim * b.dim, labels, mult, unit)


def tensor_coalgebras(c: Coalgebra, d: Coalgebra) -> Coalgebra:
    if c.field != d.field:
        raise FieldMismatch("tensor_coalgebras: fields differ")
    f = c.field
    mid = tensor(tensor(Mat.identity(f, c.dim), swap_mat(f, c.dim, d.dim)),
                 Mat.identity(f, d.dim))
    comult = mid.mul(tensor(c.comult, d.comult))
    counit = tensor(c.counit, d.counit)
    labels = [f"{x}(x){y}" for x in c.basis_labels for y in d.basis_labels]
    return Coalgebra(f"{c.name}(x){d.name}", f, c.dim * d.dim, labels, comult, counit)


# -- morphisms ------------------------------------------------------------------------


class AlgebraMorphism:
    def __init__(self, source: Algebra, target: Algebra, matrix: Mat, validate=True):
        if source.field != target.field:
            raise FieldMismatch("morphism: fields differ")
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise DimMismatch("morphism matrix shape mismatch")
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate and not is_algebra_morphism(self):
            raise MorphismFailure("algebra morphism", (), explain_algebra_morphism(self))

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"AlgebraMorphism({self.source.name} -> {self.target.name})"


class CoalgebraMorphism:
    def __init__(self, source: Coalgebra, target: Coalgebra, matrix: Mat, validate=True):
        if source.field != target.field:
            raise FieldMismatch("morphism: fields differ")
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise DimMismatch("morphism matrix shape mismatch")
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate and not is_coalgebra_morphism(self):
            raise MorphismFailure("coalgebra morphism", (), explain_coalgebra_morphism(self))

    def __eq__(self, other):
        return (
            isinstance(other, CoalgebraMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"CoalgebraMorphism({self.source.name} -> {self.target.name})"


def explain_algebra_morphism(mor):
    m = mor.matrix
    if m.mul(mor.source.mult) != mor.target.mult.mul(tensor(m, m)):
        return "multiplicativity fails"
    if m.mul(mor.source.unit) != mor.target.unit:
        return "unit fails"
    return ""


def is_algebra_morphism(mor) -> bool:
    return explain_algebra_morphism(mor) == ""


def explain_coalgebra_morphism(mor):
    m = mor.matrix
    if tensor(m, m).mul(mor.source.comult) != mor.target.comult.mul(m):
        return "comultiplicativity fails"
    if mor.target.counit.mul(m) != mor.source.counit:
        return "counit fails"
    return ""


def is_coalgebra_morphism(mor) -> bool:
    return explain_coalgebra_morphism(mor) == ""


def identity_algebra_morphism(a: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, Mat.identity(a.field, a.dim), validate=False)


def identity_coalgebra_morphism(c: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(c, c, Mat.identity(c.field, c.dim), validate=False)
