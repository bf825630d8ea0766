"""Exact linear algebra substrate: rationals and prime fields, dense matrices, subspaces.

All values are immutable after construction and every operation is pure.
Tensor (Kronecker) indexing is fixed once and for all as row-major:
basis vector e_i (x) e_j of V (x) W has index i*dim(W) + j.  Every higher
module relies on this single convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbientMismatch, DimMismatch, FieldMismatch


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An exact scalar field: the rationals ("Q") or a prime field ("Fp")."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p:
                raise ValueError("rationals carry no modulus")
        elif self.kind == "Fp":
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- scalar arithmetic ------------------------------------------------

    def coerce(self, x):
        if self.kind == "Q":
            return x if isinstance(x, Fraction) else Fraction(x)
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.kind == "Q" else pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All field elements; only available for prime fields."""
        if self.kind != "Fp":
            raise ValueError("cannot enumerate the rationals")
        return range(self.p)

    # -- canonical string form (used by the JSON layer) -------------------

    def show(self, a):
        return str(a)

    def parse(self, s):
        s = s.strip()
        if self.kind == "Q":
            return Fraction(s)
        return int(s) % self.p


QQ = FieldSpec("Q")


def GF(p):
    return FieldSpec("Fp", p)


class Mat:
    """Dense matrix over a FieldSpec; entries stored canonically reduced."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimMismatch(f"expected {rows}x{cols} entry grid")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = [[field.coerce(x) for x in row] for row in entries]

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, [[field.zero()] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.entries[i][i] = one
        return m

    @classmethod
    def from_rows(cls, field, rows):
        if not rows:
            raise DimMismatch("from_rows needs at least one row; use zeros instead")
        return cls(field, len(rows), len(rows[0]), rows)

    @classmethod
    def col_vector(cls, field, vec):
        return cls(field, len(vec), 1, [[x] for x in vec])

    @classmethod
    def row_vector(cls, field, vec):
        return cls(field, 1, len(vec), [list(vec)])

    # -- basics ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(tuple(r) for r in self.entries)))

    def __repr__(self):
        return f"Mat({self.field.kind}{self.field.p or ''}, {self.rows}x{self.cols})"

    def copy_entries(self):
        return [row[:] for row in self.entries]

    def is_zero(self):
        z = self.field.zero()
        return all(x == z for row in self.entries for x in row)

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def row(self, i):
        return list(self.entries[i])

    # -- arithmetic ----------------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def add(self, other):
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimMismatch("add: shape mismatch")
        f = self.field
        return Mat(f, self.rows, self.cols,
                   [[f.add(a, b) for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.entries, other.entries)])

    def sub(self, other):
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimMismatch("sub: shape mismatch")
        f = self.field
        return Mat(f, self.rows, self.cols,
                   [[f.sub(a, b) for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.entries, other.entries)])

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return Mat(f, self.rows, self.cols,
                   [[f.mul(c, x) for x in row] for row in self.entries])

    def mul(self, other):
        """Matrix product self @ other (composition of linear maps)."""
        self._check_field(other)
        if self.cols != other.rows:
            raise DimMismatch(f"mul: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        zero = f.zero()
        out = [[zero] * other.cols for _ in range(self.rows)]
        oe = other.entries
        for i, row in enumerate(self.entries):
            orow = out[i]
            for k, a in enumerate(row):
                if a == zero:
                    continue
                brow = oe[k]
                for j, b in enumerate(brow):
                    if b != zero:
                        orow[j] = f.add(orow[j], f.mul(a, b))
        return Mat(f, self.rows, other.cols, out)

    def apply(self, vec):
        """Apply to a coordinate vector (list), returning a list."""
        if len(vec) != self.cols:
            raise DimMismatch("apply: length mismatch")
        f = self.field
        zero = f.zero()
        vec = [f.coerce(x) for x in vec]
        out = []
        for row in self.entries:
            acc = zero
            for a, x in zip(row, vec):
                if a != zero and x != zero:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return out

    def transpose(self):
        return Mat(self.field, self.cols, self.rows,
                   [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def vstack(self, other):
        self._check_field(other)
        if self.cols != other.cols:
            raise DimMismatch("vstack: column mismatch")
        return Mat(self.field, self.rows + other.rows, self.cols,
                   self.copy_entries() + other.copy_entries())


def tensor(a: Mat, b: Mat) -> Mat:
    """Kronecker product of linear maps under the fixed row-major basis order."""
    if a.field != b.field:
        raise FieldMismatch("tensor: fields differ")
    f = a.field
    zero = f.zero()
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [[zero] * cols for _ in range(rows)]
    for i, arow in enumerate(a.entries):
        for j, x in enumerate(arow):
            if x == zero:
                continue
            ri, cj = i * b.rows, j * b.cols
            for k, brow in enumerate(b.entries):
                orow = out[ri + k]
                for l, y in enumerate(brow):
                    if y != zero:
                        orow[cj + l] = f.mul(x, y)
    return Mat(f, rows, cols, out)


def tensor_many(mats):
    out = mats[0]
    for m in mats[1:]:
        out = tensor(out, m)
    return out


# ---------------------------------------------------------------------------
# Echelon accumulators.  Rows are inserted one by one and kept in reduced
# echelon form; the F2 variant packs rows into int bitmasks.
# ---------------------------------------------------------------------------


class _EchelonGeneric:
    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []      # reduced rows, pivot columns strictly increasing
        self.pivots = []    # pivot column of each row

    def reduce(self, vec):
        """Reduce vec against the current rows (returns a fresh list)."""
        f = self.field
        zero = f.zero()
        vec = list(vec)
        for r, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c != zero:
                for j in range(p, self.width):
                    x = r[j]
                    if x != zero:
                        vec[j] = f.sub(vec[j], f.mul(c, x))
        return vec

    def add(self, vec):
        """Insert a row; returns True if the rank grew."""
        f = self.field
        zero = f.zero()
        vec = self.reduce(vec)
        piv = next((j for j, x in enumerate(vec) if x != zero), None)
        if piv is None:
            return False
        inv = f.inv(vec[piv])
        vec = [f.mul(inv, x) for x in vec]
        # back-eliminate the new pivot from existing rows
        for r in self.rows:
            c = r[piv]
            if c != zero:
                for j in range(piv, self.width):
                    x = vec[j]
                    if x != zero:
                        r[j] = f.sub(r[j], f.mul(c, x))
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(at, vec)
        self.pivots.insert(at, piv)
        return True

    def contains(self, vec):
        zero = self.field.zero()
        return all(x == zero for x in self.reduce(vec))

    def basis_rows(self):
        return [list(r) for r in self.rows]


class _EchelonF2:
    """Bitmask specialisation for GF(2); column j is bit j."""

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.masks = []
        self.pivots = []

    @staticmethod
    def _pack(vec):
        m = 0
        for j, x in enumerate(vec):
            if x:
                m |= 1 << j
        return m

    def _reduce_mask(self, m):
        for r, p in zip(self.masks, self.pivots):
            if (m >> p) & 1:
                m ^= r
        return m

    def reduce(self, vec):
        m = self._reduce_mask(self._pack(vec))
        return [(m >> j) & 1 for j in range(self.width)]

    def add(self, vec):
        m = self._reduce_mask(self._pack(vec))
        if not m:
            return False
        piv = (m & -m).bit_length() - 1
        self.masks = [r ^ m if (r >> piv) & 1 else r for r in self.masks]
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.masks.insert(at, m)
        self.pivots.insert(at, piv)
        return True

    def contains(self, vec):
        return self._reduce_mask(self._pack(vec)) == 0

    def basis_rows(self):
        return [[(m >> j) & 1 for j in range(self.width)] for m in self.masks]


def echelon(field, width):
    if field.kind == "Fp" and field.p == 2:
        return _EchelonF2(field, width)
    return _EchelonGeneric(field, width)


def rref(m: Mat):
    """Unique reduced row-echelon form of m, with its pivot column list."""
    acc = echelon(m.field, m.cols)
    for row in m.entries:
        acc.add(row)
    rows = acc.basis_rows()
    zero = m.field.zero()
    while len(rows) < m.rows:
        rows.append([zero] * m.cols)
    return Mat(m.field, m.rows, m.cols, rows), list(acc.pivots)


class Subspace:
    """A subspace of F^n held as a reduced row-echelon basis (one vector per row)."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim, basis_rows):
        self.field = field
        self.ambient_dim = ambient_dim
        acc = echelon(field, ambient_dim)
        for r in basis_rows:
            if len(r) != ambient_dim:
                raise DimMismatch("basis vector of wrong length")
            acc.add([field.coerce(x) for x in r])
        self.basis = acc.basis_rows()

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(field, ambient_dim, [])

    @classmethod
    def full(cls, field, ambient_dim):
        return cls(field, ambient_dim, Mat.identity(field, ambient_dim).entries)

    @classmethod
    def from_matrix_rows(cls, m: Mat):
        return cls(m.field, m.cols, m.entries)

    @property
    def dim(self):
        return len(self.basis)

    def basis_mat(self):
        if not self.basis:
            return Mat.zeros(self.field, 0, self.ambient_dim)
        return Mat.from_rows(self.field, [list(r) for r in self.basis])

    def contains(self, vec):
        acc = echelon(self.field, self.ambient_dim)
        for r in self.basis:
            acc.add(r)
        return acc.contains([self.field.coerce(x) for x in vec])

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(m: Mat) -> Subspace:
    """Null space {v : m v = 0}."""
    red, pivots = rref(m)
    f = m.field
    zero, one = f.zero(), f.one()
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [zero] * m.cols
        v[j] = one
        for r, p in zip(red.entries, pivots):
            if r[j] != zero:
                v[p] = f.neg(r[j])
        basis.append(v)
    return Subspace(f, m.cols, basis)


def annihilator_rows(s: Subspace) -> Mat:
    """A matrix N with Null(N) = s (rows span the annihilator of s)."""
    if s.dim == 0:
        return Mat.identity(s.field, s.ambient_dim)
    ann = kernel(s.basis_mat())
    if ann.dim == 0:
        return Mat.zeros(s.field, 1, s.ambient_dim)
    return ann.basis_mat()


def intersect(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch(f"{u.ambient_dim} vs {v.ambient_dim}")
    if u.field != v.field:
        raise FieldMismatch("intersect: fields differ")
    stacked = annihilator_rows(u).vstack(annihilator_rows(v))
    return kernel(stacked)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch(f"{u.ambient_dim} vs {v.ambient_dim}")
    return Subspace(u.field, u.ambient_dim, u.basis + v.basis)


def preimage(m: Mat, s: Subspace) -> Subspace:
    """{x : m x in s}."""
    if m.rows != s.ambient_dim:
        raise DimMismatch("preimage: codomain mismatch")
    return kernel(annihilator_rows(s).mul(m))


def image(m: Mat) -> Subspace:
    """Column space of m, as a subspace of F^rows."""
    return Subspace(m.field, m.rows, m.transpose().entries)


def solve(m: Mat, target):
    """One solution x of m x = target, or None."""
    f = m.field
    target = [f.coerce(t) for t in target]
    if len(target) != m.rows:
        raise DimMismatch("solve: target length mismatch")
    aug = Mat(f, m.rows, m.cols + 1, [row + [t] for row, t in zip(m.entries, target)])
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    zero = f.zero()
    x = [zero] * m.cols
    for r, p in zip(red.entries, pivots):
        x[p] = r[m.cols]
    return x


def coords_in_rowspace(rows_mat: Mat, vec):
    """Coefficients c with c @ rows_mat = vec, or None (rows need not be reduced)."""
    return solve(rows_mat.transpose(), vec)


def inverse(m: Mat) -> Mat:
    """Inverse of a square matrix (raises on singular input)."""
    if m.rows != m.cols:
        raise DimMismatch("inverse of a non-square matrix")
    f = m.field
    n = m.rows
    aug = Mat(f, n, 2 * n, [row + Mat.identity(f, n).entries[i] for i, row in enumerate(m.entries)])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Mat(f, n, n, [row[n:] for row in red.entries[:n]])
