"""Standard desk-scale test structures shared by the test suite and the CLI demos."""

from __future__ import annotations

from .algcore import Algebra, Coalgebra, check_algebra, check_coalgebra
from .exactlin import GF, QQ, Mat

F2 = GF(2)
F3 = GF(3)


def ground_algebra(field, name="k") -> Algebra:
    return check_algebra(name, field, ["1"], [[[1]]], [1])


def trivial_coalgebra(field, name="k") -> Coalgebra:
    return check_coalgebra(name, field, ["1"], [[(0, 0, 1)]], [1])


def dual_numbers(field, name=None) -> Algebra:
    """k[x]/(x^2), basis (1, x)."""
    name = name or "dual_numbers"
    table = [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ]
    return check_algebra(name, field, ["1", "x"], table, [1, 0])


def truncated_polynomials(field, n, name=None) -> Algebra:
    """k[x]/(x^n), basis (1, x, ..., x^{n-1})."""
    name = name or f"k[x]/(x^{n})"
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    zero = [0] * n
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = list(zero)
            if i + j < n:
                vec[i + j] = 1
            row.append(vec)
        table.append(row)
    unit = list(zero)
    unit[0] = 1
    return check_algebra(name, field, labels, table, unit)


def cyclic_group_algebra(field, n, name=None) -> Algebra:
    """k[C_n], basis the group elements g^0..g^{n-1}."""
    name = name or f"k[C{n}]"
    labels = [f"g^{i}" if i > 1 else ("e" if i == 0 else "g") for i in range(n)]
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = [0] * n
            vec[(i + j) % n] = 1
            row.append(vec)
        table.append(row)
    unit = [0] * n
    unit[0] = 1
    return check_algebra(name, field, labels, table, unit)


def matrix_algebra(field, n, name=None) -> Algebra:
    """Mat_n(k) with the matrix-unit basis e_ij (row-major)."""
    name = name or f"M{n}(k)"
    dim = n * n
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    table = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    vec = [0] * dim
                    if j == k:
                        vec[i * n + l] = 1
                    row.append(vec)
            table.append(row)
    unit = [0] * dim
    for i in range(n):
        unit[i * n + i] = 1
    return check_algebra(name, field, labels, table, unit)


def matrix_coalgebra(field, n, name=None) -> Coalgebra:
    """M_n(k)*: Delta(e_ij) = sum_k e_ik (x) e_kj, eps(e_ij) = delta_ij."""
    name = name or f"M{n}(k)*"
    dim = n * n
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    table = []
    for i in range(n):
        for j in range(n):
            table.append([(i * n + k, k * n + j, 1) for k in range(n)])
    counit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return check_coalgebra(name, field, labels, table, counit)


def grouplike_coalgebra(field, n, name=None) -> Coalgebra:
    """n grouplike basis elements: Delta(g_i) = g_i (x) g_i, eps = 1."""
    name = name or f"grouplikes({n})"
    labels = [f"g{i}" for i in range(n)]
    table = [[(i, i, 1)] for i in range(n)]
    return check_coalgebra(name, field, labels, table, [1] * n)


def divided_power_line(field, name="divided_line") -> Coalgebra:
    """Basis (1, x) with Delta(x) = 1(x)x + x(x)1 (a single primitive)."""
    table = [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)]]
    return check_coalgebra(name, field, ["1", "x"], table, [1, 0])


def path_coalgebra_a2(field, name="path(.->.)") -> Coalgebra:
    """Two grouplikes e, f and a skew-primitive arrow a: Delta(a) = e(x)a + a(x)f.

    The smallest non-cocommutative coalgebra; useful for handedness tests.
    """
    table = [[(0, 0, 1)], [(1, 1, 1)], [(0, 2, 1), (2, 1, 1)]]
    return check_coalgebra(name, field, ["e", "f", "a"], table, [1, 1, 0])


def zero_vector_space_module_data(field, dim):
    return Mat.zeros(field, dim, dim)


def field_of(name):
    if name == "Q":
        return QQ
    if name.startswith("F"):
        return GF(int(name[1:]))
    raise ValueError(f"unknown field shorthand {name!r}")
