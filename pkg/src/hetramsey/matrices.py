"""Matrix algebras over the exact rationals and the witness generators G_i, D_i."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    MATRIX,
    SCALAR,
    Matrix,
    Signature,
    check_same_order,
    make_signature,
    operation,
    scalar,
)
from .errors import IndexCapExceeded, OrderMismatch, UnknownOp

G_INDEX_CAP = 12
MAX_BITS_ENV = "HETRAMSEY_MAX_BITS"
DEFAULT_MAX_BITS = 64


def max_bits() -> int:
    """Global magnitude cap (bit length of generated witness entries)."""
    raw = os.environ.get(MAX_BITS_ENV)
    if raw is None:
        return DEFAULT_MAX_BITS
    value = int(raw)
    if value < 2:
        raise ValueError(f"{MAX_BITS_ENV} must be at least 2")
    return value


def d_index_cap() -> int:
    # D_i has entries 2^(2^i), so 2^i may not exceed the bit cap
    return max_bits().bit_length() - 1


def matrix_add(a: Matrix, b: Matrix) -> Matrix:
    n = check_same_order(a, b)
    return Matrix([[a.rows[i][j] + b.rows[i][j] for j in range(n)] for i in range(n)])


def matrix_mul(a: Matrix, b: Matrix) -> Matrix:
    check_same_order(a, b)
    cols = list(zip(*b.rows))
    return Matrix([[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a.rows])


def scalar_add(a, b) -> Fraction:
    return scalar(a) + scalar(b)


def scalar_mul(a, b) -> Fraction:
    return scalar(a) * scalar(b)


def det(a: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.order
    m = [list(row) for row in a.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) / prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def diag_embed(r, n: int) -> Matrix:
    if n < 1:
        raise ValueError("order must be at least 1")
    r = scalar(r)
    return Matrix([[r if i == j else 0 for j in range(n)] for i in range(n)])


def identity(n: int) -> Matrix:
    return diag_embed(1, n)


def G_matrix(i: int, n: int, cap: int = G_INDEX_CAP) -> Matrix:
    """Diagonal matrix with 5i+1 in the top-left corner and 1 elsewhere on the diagonal."""
    if i < 0:
        raise ValueError("index must be a natural number")
    if i > cap:
        raise IndexCapExceeded(f"G index {i} exceeds cap {cap}")
    if n < 1:
        raise ValueError("order must be at least 1")
    return Matrix([[(5 * i + 1 if i_ == 0 else 1) if i_ == j else 0 for j in range(n)] for i_ in range(n)])


def D_matrix(i: int, n: int, cap: int = None) -> Matrix:
    """Scalar diagonal matrix with entries 2^(2^i)."""
    if cap is None:
        cap = d_index_cap()
    if i < 0:
        raise ValueError("index must be a natural number")
    if i > cap:
        raise IndexCapExceeded(f"D index {i} exceeds cap {cap}")
    return diag_embed(2 ** (2**i), n)


def _det_op(a):
    if not isinstance(a, Matrix):
        raise OrderMismatch("det expects a matrix")
    return det(a)


OP_CATALOGUE = {
    "add": lambda: operation("add", (MATRIX, MATRIX), MATRIX, matrix_add),
    "mul": lambda: operation("mul", (MATRIX, MATRIX), MATRIX, matrix_mul),
    "fadd": lambda: operation("fadd", (SCALAR, SCALAR), SCALAR, scalar_add),
    "fmul": lambda: operation("fmul", (SCALAR, SCALAR), SCALAR, scalar_mul),
    "det": lambda: operation("det", (MATRIX,), SCALAR, _det_op),
}

OP_ALIASES = {
    "+": "add",
    "x": "mul",
    "*": "mul",
    "+F": "fadd",
    "+_F": "fadd",
    "xF": "fmul",
    "x_F": "fmul",
    "*F": "fmul",
    "|*|": "det",
}

FULL_OPS = ("add", "mul", "fadd", "fmul", "det")

_OPS = {name: make() for name, make in OP_CATALOGUE.items()}


def canonical_op_name(name: str) -> str:
    name = OP_ALIASES.get(name, name)
    if name not in OP_CATALOGUE:
        raise UnknownOp(f"unknown operation {name!r}; expected one of {sorted(OP_CATALOGUE)}")
    return name


def matrix_signature(ops: Iterable[str] = FULL_OPS) -> Signature:
    """Signature over {scalars, matrices} with the named catalogue operations, in catalogue order."""
    wanted = {canonical_op_name(o) for o in ops}
    return make_signature({SCALAR, MATRIX}, [_OPS[name] for name in FULL_OPS if name in wanted])


@dataclass(frozen=True)
class MatrixAlgebraConfig:
    order: int = 2
    included_ops: tuple = FULL_OPS

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        object.__setattr__(self, "included_ops", tuple(canonical_op_name(o) for o in self.included_ops))

    def signature(self) -> Signature:
        return matrix_signature(self.included_ops)


# -- exact integer helpers ------------------------------------------------------


def integer_nth_root(x: int, n: int) -> tuple:
    """Return ``(r, exact)`` with r = floor(x^(1/n)) by binary search on integers."""
    if n < 1:
        raise ValueError("root degree must be positive")
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2 or n == 1:
        return x, True
    lo, hi = 1, 1 << (x.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo, lo**n == x


def as_natural(v):
    """The value as a Python int when it is a nonnegative integer scalar, else None."""
    if isinstance(v, Matrix) or isinstance(v, bool):
        return None
    try:
        v = scalar(v)
    except TypeError:
        return None
    if v.denominator != 1 or v < 0:
        return None
    return v.numerator


def binary_exponents(k: int) -> list:
    return [e for e in range(k.bit_length()) if (k >> e) & 1]


def in_Y(k) -> bool:
    """Positive integers whose binary exponents are distinct powers of two."""
    k = as_natural(k)
    if k is None or k <= 0:
        return False
    return all(e > 0 and e & (e - 1) == 0 for e in binary_exponents(k))


def y_value(indices: Iterable[int]) -> int:
    return sum(2 ** (2**i) for i in indices)
