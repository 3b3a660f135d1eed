"""Sorts, signatures, exact elements and sorted sequence prefixes.

Two phyla are built in: sort 0 holds exact rational scalars and sort 1 holds
square matrices over the rationals.  Integers live inside the rationals, so
``Fraction`` is the single scalar representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import (
    MalformedHeterogeneousOp,
    MalformedOperation,
    OrderMismatch,
    SortMismatch,
    UnknownOp,
    UnknownSort,
)

SCALAR = 0
MATRIX = 1

SORT_NAMES = {"scalar": SCALAR, "matrix": MATRIX}

SCALAR_RING_OP = "scalar-ring-op"
MATRIX_RING_OP = "matrix-ring-op"
HETEROGENEOUS_UNARY = "heterogeneous-unary"
OP_KINDS = (SCALAR_RING_OP, MATRIX_RING_OP, HETEROGENEOUS_UNARY)

SortId = int


def resolve_sort(s) -> SortId:
    if isinstance(s, str):
        if s in SORT_NAMES:
            return SORT_NAMES[s]
        if s.isdigit():
            return int(s)
        raise UnknownSort(f"unknown sort name {s!r}")
    if isinstance(s, bool) or not isinstance(s, int) or s < 0:
        raise UnknownSort(f"not a sort identifier: {s!r}")
    return s


def sort_name(s: SortId) -> str:
    for name, idx in SORT_NAMES.items():
        if idx == s:
            return name
    return str(s)


# -- elements ---------------------------------------------------------------


def scalar(x) -> Fraction:
    """Canonical scalar: a normalized ``Fraction``.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"inexact or non-numeric scalar: {x!r}")
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    raise TypeError(f"not a scalar: {x!r}")


class Matrix:
    """Immutable n x n matrix of exact rationals."""

    __slots__ = ("rows", "order", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(scalar(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix order must be at least 1")
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "_hash", hash(("Matrix", rows)))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return False
        return self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return self._hash

    def is_diagonal(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def is_scalar_diagonal(self) -> bool:
        return self.is_diagonal() and len({self.rows[i][i] for i in range(self.order)}) == 1

    def __repr__(self):
        if self.is_diagonal():
            return "diag(" + ",".join(format_scalar(self.rows[i][i]) for i in range(self.order)) + ")"
        body = ";".join(",".join(format_scalar(v) for v in row) for row in self.rows)
        return f"[{body}]"


Element = Union[Fraction, Matrix]


def check_same_order(a: Matrix, b: Matrix) -> int:
    if a.order != b.order:
        raise OrderMismatch(f"matrix orders differ: {a.order} vs {b.order}")
    return a.order


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_element(x: Element) -> str:
    if isinstance(x, Matrix):
        return repr(x)
    return format_scalar(x)


def normalize(x) -> Element:
    if isinstance(x, Matrix):
        return x
    return scalar(x)


def sort_of(x: Element) -> SortId:
    if isinstance(x, Matrix):
        return MATRIX
    if isinstance(x, Fraction):
        return SCALAR
    raise SortMismatch(f"not an element of any phylum: {x!r}")


def element_equal(x, y) -> bool:
    """Equality after canonical normalization; scalars never equal matrices."""
    try:
        x, y = normalize(x), normalize(y)
    except TypeError:
        return False
    if sort_of(x) != sort_of(y):
        return False
    return x == y


# -- signatures -------------------------------------------------------------


@dataclass(frozen=True)
class OperationDecl:
    name: str
    domain: tuple
    codomain: SortId
    kind: str
    fn: Optional[Callable] = field(default=None, compare=False, repr=False)

    @property
    def arity(self) -> int:
        return len(self.domain)

    def __call__(self, *args):
        if self.fn is None:
            raise UnknownOp(f"operation {self.name!r} has no implementation")
        return self.fn(*args)


def operation(name: str, domain: Sequence, codomain, fn: Callable = None, kind: str = None) -> OperationDecl:
    """Declare an operation; ``kind`` is inferred from the sorts when omitted."""
    dom = tuple(resolve_sort(s) for s in domain)
    cod = resolve_sort(codomain)
    if kind is None:
        sorts = set(dom) | {cod}
        if sorts == {SCALAR}:
            kind = SCALAR_RING_OP
        elif sorts == {MATRIX}:
            kind = MATRIX_RING_OP
        else:
            kind = HETEROGENEOUS_UNARY
    return OperationDecl(name, dom, cod, kind, fn)


@dataclass(frozen=True)
class Signature:
    sorts: frozenset
    ops: tuple
    g0: tuple
    g1: tuple
    h: tuple

    def op(self, name: str) -> OperationDecl:
        for o in self.ops:
            if o.name == name:
                return o
        raise UnknownOp(f"operation {name!r} is not in the signature")

    @property
    def op_names(self) -> tuple:
        return tuple(o.name for o in self.ops)

    def restrict(self, names: Iterable[str]) -> "Signature":
        keep = set(names)
        return make_signature(self.sorts, [o for o in self.ops if o.name in keep])


def make_signature(sorts: Iterable, ops: Iterable[OperationDecl]) -> Signature:
    sort_set = frozenset(resolve_sort(s) for s in sorts)
    ops = tuple(ops)
    names = [o.name for o in ops]
    if len(set(names)) != len(names):
        raise MalformedOperation(f"duplicate operation names in {names}")
    g0, g1, h = [], [], []
    for o in ops:
        if o.kind not in OP_KINDS:
            raise MalformedOperation(f"{o.name}: unknown kind {o.kind!r}")
        if o.arity == 0:
            raise MalformedOperation(f"{o.name}: nullary operations are not supported")
        for s in (*o.domain, o.codomain):
            if s not in sort_set:
                raise UnknownSort(f"{o.name}: sort {s!r} is not declared")
        mixed = len(set(o.domain) | {o.codomain}) > 1
        if o.kind == HETEROGENEOUS_UNARY or mixed:
            if o.kind != HETEROGENEOUS_UNARY or o.domain != (MATRIX,) or o.codomain != SCALAR:
                raise MalformedHeterogeneousOp(
                    f"{o.name}: heterogeneous operations must be unary from sort 1 into sort 0"
                )
            h.append(o.name)
        elif o.kind == SCALAR_RING_OP:
            if o.codomain != SCALAR:
                raise MalformedOperation(f"{o.name}: scalar operation must act on sort 0")
            g0.append(o.name)
        else:
            if o.codomain != MATRIX:
                raise MalformedOperation(f"{o.name}: matrix operation must act on sort 1")
            g1.append(o.name)
    return Signature(sort_set, ops, tuple(g0), tuple(g1), tuple(h))


# -- sort words and sorted prefixes ---------------------------------------------


@dataclass(frozen=True)
class SortWord:
    """Finite prefix of a sort sequence; ``recurring`` marks sorts that recur forever."""

    prefix: tuple
    recurring: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(resolve_sort(s) for s in self.prefix))
        object.__setattr__(self, "recurring", frozenset(resolve_sort(s) for s in self.recurring))

    def __len__(self):
        return len(self.prefix)

    def __getitem__(self, i):
        return self.prefix[i]

    @property
    def is_omega(self) -> bool:
        return set(self.prefix) <= self.recurring

    def truncate(self, length: int) -> "SortWord":
        return SortWord(self.prefix[:length], self.recurring)


@dataclass(frozen=True)
class SortedPrefix:
    items: tuple
    word: SortWord

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(normalize(x) for x in self.items))

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]


def sorted_prefix(items: Iterable, word: Union[SortWord, Sequence, None] = None) -> SortedPrefix:
    """Build a prefix, inferring the sort word from the items when not given."""
    items = tuple(normalize(x) for x in items)
    if word is None:
        word = SortWord(tuple(sort_of(x) for x in items), frozenset(sort_of(x) for x in items))
    elif not isinstance(word, SortWord):
        w = tuple(word)
        word = SortWord(w, frozenset(w))
    return SortedPrefix(items, word)


def is_e_sorted(seq: SortedPrefix) -> bool:
    if len(seq.items) != len(seq.word.prefix):
        return False
    return all(sort_of(x) == s for x, s in zip(seq.items, seq.word.prefix))
