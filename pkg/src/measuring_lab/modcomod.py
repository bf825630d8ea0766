"""Modules and comodules, (co)restriction of scalars, the global categories and Hom.

Conventions (fixed once): modules are left, comodules are right, and the
coaction legs are written delta(x) = x0 (x) x1 with x1 in the coalgebra.
An action mu : A(x)M -> M is a dim(M) x dim(A)dim(M) matrix, a coaction
delta : X -> X(x)C is dim(X)dim(C) x dim(X).

The Hom functor [X, M] carries the action (f.g)(x) = sum f(x1).g(x0).  With
right comodules this is a module over the convolution algebra of the
co-opposite coalgebra [C^cop, A]; for every cocommutative C this coincides
with [C, A] on the nose.
"""

from __future__ import annotations

from itertools import product

from .algcore import (
    Algebra,
    AlgebraMorphism,
    Coalgebra,
    CoalgebraMorphism,
    convolution_algebra,
    cop,
    swap_mat,
    tensor_coalgebras as _tensor_coalgebras,
)
from .errors import (
    ActionAssociativityFailure,
    ActionUnitFailure,
    CoactionCoassociativityFailure,
    CoactionCounitFailure,
    DimMismatch,
    FieldMismatch,
)
from .exactlin import Mat, tensor


class ModuleStructure:
    """Left module over an algebra, presented by its action tensor."""

    def __init__(self, over: Algebra, dim, action: Mat, name="", validate=True):
        if action.rows != dim or action.cols != over.dim * dim:
            raise DimMismatch(f"action must be {dim}x{over.dim * dim}")
        self.over = over
        self.dim = dim
        self.action = action
        self.name = name or f"module({over.name},{dim})"
        if validate:
            self._validate()

    def _validate(self):
        # per-basis sparse check; never materialises Kronecker products
        a = self.over
        f = a.field
        zero = f.zero()
        d = self.dim
        act_col = lambda i, m: self.action.column(i * d + m)

        def act_on_vec(i, vec):
            out = [zero] * d
            for s, y in enumerate(vec):
                if y == zero:
                    continue
                col = act_col(i, s)
                for r in range(d):
                    if col[r] != zero:
                        out[r] = f.add(out[r], f.mul(y, col[r]))
            return out

        for i in range(a.dim):
            for j in range(a.dim):
                prod = a.mult_vec(i, j)
                for m in range(d):
                    left = [zero] * d
                    for t, x in enumerate(prod):
                        if x == zero:
                            continue
                        col = act_col(t, m)
                        for r in range(d):
                            if col[r] != zero:
                                left[r] = f.add(left[r], f.mul(x, col[r]))
                    right = act_on_vec(i, act_col(j, m))
                    if left != right:
                        raise ActionAssociativityFailure(i, j)
        unit = a.unit_vec()
        for m in range(d):
            got = [zero] * d
            for t, x in enumerate(unit):
                if x == zero:
                    continue
                col = act_col(t, m)
                for r in range(d):
                    if col[r] != zero:
                        got[r] = f.add(got[r], f.mul(x, col[r]))
            want = [zero] * d
            want[m] = f.one()
            if got != want:
                raise ActionUnitFailure(m)

    def act(self, a_vec, m_vec):
        f = self.over.field
        zero = f.zero()
        big = [zero] * (self.over.dim * self.dim)
        for i, x in enumerate(a_vec):
            if x == zero:
                continue
            for j, y in enumerate(m_vec):
                if y != zero:
                    big[i * self.dim + j] = f.mul(x, y)
        return self.action.apply(big)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleStructure)
            and self.over == other.over
            and self.dim == other.dim
            and self.action == other.action
        )

    def __repr__(self):
        return f"ModuleStructure({self.name!r}, over={self.over.name}, dim={self.dim})"


class ComoduleStructure:
    """Right comodule over a coalgebra, presented by its coaction tensor."""

    def __init__(self, over: Coalgebra, dim, coaction: Mat, name="", validate=True):
        if coaction.rows != dim * over.dim or coaction.cols != dim:
            raise DimMismatch(f"coaction must be {dim * over.dim}x{dim}")
        self.over = over
        self.dim = dim
        self.coaction = coaction
        self.name = name or f"comodule({over.name},{dim})"
        if validate:
            self._validate()

    def _validate(self):
        # per-basis sparse check; never materialises Kronecker products
        c = self.over
        f = c.field
        zero = f.zero()
        cols = self.coaction_cols()
        ccols = c.delta_cols()
        eps = c.counit_vec()
        for t in range(self.dim):
            left, right = {}, {}
            for (x0, x1), coeff in cols[t].items():
                for (y0, y1), c2 in cols[x0].items():
                    key = (y0, y1, x1)
                    left[key] = f.add(left.get(key, zero), f.mul(coeff, c2))
                for (p, q), c2 in ccols[x1].items():
                    key = (x0, p, q)
                    right[key] = f.add(right.get(key, zero), f.mul(coeff, c2))
            left = {k: v for k, v in left.items() if v != zero}
            right = {k: v for k, v in right.items() if v != zero}
            if left != right:
                raise CoactionCoassociativityFailure(t)
        for t in range(self.dim):
            got = [zero] * self.dim
            for (x0, x1), coeff in cols[t].items():
                if eps[x1] != zero:
                    got[x0] = f.add(got[x0], f.mul(coeff, eps[x1]))
            want = [zero] * self.dim
            want[t] = f.one()
            if got != want:
                raise CoactionCounitFailure(t)

    def coaction_cols(self):
        """delta(x_t) as dicts {(x_index, c_index): coeff}."""
        f = self.over.field
        zero = f.zero()
        dc = self.over.dim
        out = []
        for t in range(self.dim):
            col = {}
            for r in range(self.dim * dc):
                x = self.coaction.entries[r][t]
                if x != zero:
                    col[(r // dc, r % dc)] = x
            out.append(col)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ComoduleStructure)
            and self.over == other.over
            and self.dim == other.dim
            and self.coaction == other.coaction
        )

    def __repr__(self):
        return f"ComoduleStructure({self.name!r}, over={self.over.name}, dim={self.dim})"


def _first_diff(a: Mat, b: Mat):
    for i in range(a.rows):
        for j in range(a.cols):
            if a.entries[i][j] != b.entries[i][j]:
                return i
    return 0


def check_module(over, dim, action_entries, name="") -> ModuleStructure:
    return ModuleStructure(over, dim, Mat(over.field, dim, over.dim * dim, action_entries), name)


def check_comodule(over, dim, coaction_entries, name="") -> ComoduleStructure:
    return ComoduleStructure(over, dim, Mat(over.field, dim * over.dim, dim, coaction_entries), name)


def regular_module(a: Algebra) -> ModuleStructure:
    return ModuleStructure(a, a.dim, a.mult, name=f"{a.name} (regular)")


def regular_comodule(c: Coalgebra) -> ComoduleStructure:
    return ComoduleStructure(c, c.dim, c.comult, name=f"{c.name} (regular)")


def trivial_comodule(c_trivial: Coalgebra) -> ComoduleStructure:
    """The one-dimensional comodule over a one-dimensional (trivial) coalgebra."""
    if c_trivial.dim != 1:
        raise DimMismatch("trivial_comodule expects the 1-dim coalgebra")
    return regular_comodule(c_trivial)


def restrict(f: AlgebraMorphism, n: ModuleStructure) -> ModuleStructure:
    """Restriction of scalars along f : A -> B; the carrier is shared, not copied."""
    if n.over != f.target:
        raise DimMismatch("restrict: module is not over the morphism target")
    action = n.action.mul(tensor(f.matrix, Mat.identity(f.matrix.field, n.dim)))
    return ModuleStructure(f.source, n.dim, action, name=f"{n.name}|{f.source.name}")


def corestrict(g: CoalgebraMorphism, x: ComoduleStructure) -> ComoduleStructure:
    """Corestriction of scalars along g : C -> D."""
    if x.over != g.source:
        raise DimMismatch("corestrict: comodule is not over the morphism source")
    coaction = tensor(Mat.identity(g.matrix.field, x.dim), g.matrix).mul(x.coaction)
    return ComoduleStructure(g.target, x.dim, coaction, name=f"{x.name}|{g.target.name}")


# -- global morphisms -----------------------------------------------------------


class GlobalModMorphism:
    """A morphism in the global module category: a base algebra morphism plus p."""

    def __init__(self, f: AlgebraMorphism, p: Mat, source: ModuleStructure,
                 target: ModuleStructure, validate=True):
        self.f = f
        self.p = p
        self.source = source
        self.target = target
        if p.rows != target.dim or p.cols != source.dim:
            raise DimMismatch("global morphism: p shape mismatch")
        if validate and not check_global_morphism(self):
            raise DimMismatch("global module morphism square fails")

    def __repr__(self):
        return f"GlobalModMorphism({self.source.name} -> {self.target.name})"


class GlobalComodMorphism:
    def __init__(self, g: CoalgebraMorphism, k: Mat, source: ComoduleStructure,
                 target: ComoduleStructure, validate=True):
        self.g = g
        self.k = k
        self.source = source
        self.target = target
        if k.rows != target.dim or k.cols != source.dim:
            raise DimMismatch("global morphism: k shape mismatch")
        if validate and not check_global_morphism(self):
            raise DimMismatch("global comodule morphism square fails")

    def __repr__(self):
        return f"GlobalComodMorphism({self.source.name} -> {self.target.name})"


def check_global_morphism(mor) -> bool:
    """Exact check of the defining square of a global (co)module morphism."""
    if isinstance(mor, GlobalModMorphism):
        lhs = mor.p.mul(mor.source.action)
        rhs = mor.target.action.mul(tensor(mor.f.matrix, mor.p))
        return lhs == rhs
    if isinstance(mor, GlobalComodMorphism):
        lhs = tensor(mor.k, mor.g.matrix).mul(mor.source.coaction)
        rhs = mor.target.coaction.mul(mor.k)
        return lhs == rhs
    raise TypeError("not a global morphism")


def factor_global(mor):
    """Unique (vertical, (co)cartesian) factorization through the canonical lifting."""
    from .algcore import identity_algebra_morphism, identity_coalgebra_morphism

    if isinstance(mor, GlobalModMorphism):
        pulled = restrict(mor.f, mor.target)
        vertical = GlobalModMorphism(identity_algebra_morphism(mor.f.source), mor.p,
                                     mor.source, pulled)
        cart = GlobalModMorphism(mor.f, Mat.identity(mor.p.field, mor.target.dim),
                                 pulled, mor.target)
        return vertical, cart
    if isinstance(mor, GlobalComodMorphism):
        pushed = corestrict(mor.g, mor.source)
        cocart = GlobalComodMorphism(mor.g, Mat.identity(mor.k.field, mor.source.dim),
                                     mor.source, pushed)
        vertical = GlobalComodMorphism(identity_coalgebra_morphism(mor.g.target), mor.k,
                                       pushed, mor.target)
        return vertical, cocart
    raise TypeError("not a global morphism")


# -- Hom into modules ----------------------------------------------------------------


def hom_module(x: ComoduleStructure, m: ModuleStructure) -> ModuleStructure:
    """[X, M] with (f.g)(x) = sum f(x1).g(x0), a module over [C^cop, A]."""
    if x.over.field != m.over.field:
        raise FieldMismatch("hom_module: fields differ")
    f = x.over.field
    zero = f.zero()
    conv = convolution_algebra(cop(x.over), m.over)
    dc, da, dx, dm = x.over.dim, m.over.dim, x.dim, m.dim
    hom = dx * dm
    dcols = x.coaction_cols()
    action = Mat.zeros(f, hom, conv.dim * hom)
    for i in range(dc):
        for j in range(da):
            fi = i * da + j
            for k in range(dx):
                for l in range(dm):
                    gi = k * dm + l
                    col = fi * hom + gi
                    # value at x_t: sum over delta(x_t) legs (x0=k', x1=i) with x0 = k
                    for t in range(dx):
                        coeff = dcols[t].get((k, i), zero)
                        if coeff == zero:
                            continue
                        av = m.action.column(j * dm + l)
                        for out in range(dm):
                            if av[out] != zero:
                                action.entries[t * dm + out][col] = f.add(
                                    action.entries[t * dm + out][col],
                                    f.mul(coeff, av[out]),
                                )
    return ModuleStructure(conv, hom, action, name=f"[{x.name},{m.name}]")


# -- tensor structure ------------------------------------------------------------------


def tensor_modules(m: ModuleStructure, n: ModuleStructure) -> ModuleStructure:
    """M(x)N over A(x)B via the middle-swap action."""
    if m.over.field != n.over.field:
        raise FieldMismatch("tensor_modules: fields differ")
    from .algcore import tensor_algebras
    f = m.over.field
    ab = tensor_algebras(m.over, n.over)
    mid = tensor(tensor(Mat.identity(f, m.over.dim), swap_mat(f, n.over.dim, m.dim)),
                 Mat.identity(f, n.dim))
    action = tensor(m.action, n.action).mul(mid)
    return ModuleStructure(ab, m.dim * n.dim, action, name=f"{m.name}(x){n.name}")


def tensor_comodules(x: ComoduleStructure, y: ComoduleStructure) -> ComoduleStructure:
    """X(x)Y over C(x)D via (1(x)1(x)swap-middle) o (delta_X (x) delta_Y)."""
    if x.over.field != y.over.field:
        raise FieldMismatch("tensor_comodules: fields differ")
    f = x.over.field
    cd = _tensor_coalgebras(x.over, y.over)
    mid = tensor(tensor(Mat.identity(f, x.dim), swap_mat(f, x.over.dim, y.dim)),
                 Mat.identity(f, y.over.dim))
    coaction = mid.mul(tensor(x.coaction, y.coaction))
    return ComoduleStructure(cd, x.dim * y.dim, coaction, name=f"{x.name}(x){y.name}")


def cofree_comodule(v_dim, d: Coalgebra, name="") -> ComoduleStructure:
    """V(x)D with coaction 1(x)Delta (the cofree right D-comodule on V)."""
    f = d.field
    coaction = tensor(Mat.identity(f, v_dim), d.comult)
    return ComoduleStructure(d, v_dim * d.dim, coaction,
                             name=name or f"cofree({v_dim},{d.name})")


def left_coaction(x: ComoduleStructure) -> Mat:
    """The swapped coaction X -> C(x)X (a left coaction of the co-opposite)."""
    return swap_mat(x.over.field, x.dim, x.over.dim).mul(x.coaction)


# -- action isomorphisms (currying / unit) ------------------------------------------


def verify_action_isos(x: ComoduleStructure, y: ComoduleStructure, m: ModuleStructure,
                       third: ComoduleStructure | None = None) -> dict:
    """Check the currying and unit isomorphisms of the Hom action on modules.

    Under the fixed tensor/Hom index conventions both canonical isomorphisms
    have identity coordinate matrices, so the checks are exact equalities of
    parent multiplication tensors and of action tensors.
    """
    report = {}

    curried_src = hom_module(tensor_comodules(x, y), m)
    curried_tgt = hom_module(x, hom_module(y, m))
    report["curry_algebra_iso"] = (
        curried_src.over.mult == curried_tgt.over.mult
        and curried_src.over.unit == curried_tgt.over.unit
    )
    report["curry_module_iso"] = curried_src.action == curried_tgt.action

    from .corpus import trivial_coalgebra
    triv = trivial_comodule(trivial_coalgebra(m.over.field))
    unit_src = hom_module(triv, m)
    report["unit_algebra_iso"] = (
        unit_src.over.mult == m.over.mult and unit_src.over.unit == m.over.unit
    )
    report["unit_module_iso"] = unit_src.action == m.action

    if third is not None:
        l = hom_module(tensor_comodules(tensor_comodules(x, y), third), m)
        r = hom_module(tensor_comodules(x, tensor_comodules(y, third)), m)
        report["coherence_pentagon"] = l.action == r.action and l.over.mult == r.over.mult
    report["ok"] = all(v for v in report.values())
    return report


# -- exhaustive enumeration helpers (prime fields only) -------------------------------


def all_matrices(field, rows, cols):
    """All rows x cols matrices over a prime field, in lexicographic order."""
    for flat in product(field.elements(), repeat=rows * cols):
        yield Mat(field, rows, cols,
                  [list(flat[r * cols:(r + 1) * cols]) for r in range(rows)])


def comodule_morphism_matrices(x: ComoduleStructure, y: ComoduleStructure):
    """All vertical comodule morphism matrices X -> Y (same coalgebra), brute force."""
    if x.over != y.over:
        raise DimMismatch("vertical morphisms need a common coalgebra")
    out = []
    for k in all_matrices(x.over.field, y.dim, x.dim):
        if tensor(k, Mat.identity(k.field, x.over.dim)).mul(x.coaction) == y.coaction.mul(k):
            out.append(k)
    return out


def module_morphism_matrices(m: ModuleStructure, n: ModuleStructure):
    """All vertical module morphism matrices M -> N (same algebra), brute force."""
    if m.over != n.over:
        raise DimMismatch("vertical morphisms need a common algebra")
    out = []
    for p in all_matrices(m.over.field, n.dim, m.dim):
        if p.mul(m.action) == n.action.mul(tensor(Mat.identity(p.field, m.over.dim), p)):
            out.append(p)
    return out
