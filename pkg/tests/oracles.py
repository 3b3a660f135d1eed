"""Independent brute-force oracles.

Nothing here calls into the enumeration, reduction, or determinant code under
test; library objects are only constructed so results can be compared.
"""
from __future__ import annotations

import functools
import itertools
from fractions import Fraction

from hetramsey.core import MATRIX, SCALAR, Matrix
from hetramsey.terms import Apply, Var


def cofactor_det(rows) -> Fraction:
    rows = [[Fraction(x) for x in r] for r in rows]
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def naive_matmul(a, b):
    n = len(a)
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def binary_tree_shapes(leaves: int):
    """Every full binary tree with the given leaf count, as nested tuples."""
    if leaves == 1:
        return ["*"]
    out = []
    for left in range(1, leaves):
        for lt in binary_tree_shapes(left):
            for rt in binary_tree_shapes(leaves - left):
                out.append((lt, rt))
    return out


def count_binary_trees(leaves: int, n_ops: int = 1) -> int:
    """Trees with internal nodes drawn from ``n_ops`` binary operations."""
    return len(binary_tree_shapes(leaves)) * n_ops ** (leaves - 1)


def raw_trees(sig, leaves: int, max_depth: int, label_range: int, leaf_sorts=(SCALAR, MATRIX)):
    """All trees over ``sig`` with ``leaves`` leaves labelled arbitrarily from 1..label_range.

    No orderliness or sort discipline is imposed; callers filter afterwards.
    """
    def build(k, d):
        if k == 1:
            for pos in range(1, label_range + 1):
                for s in leaf_sorts:
                    yield Var(pos, s)
        if d == 0:
            return
        for op in sig.ops:
            for split in _splits(k, op.arity):
                for kids in itertools.product(*(list(build(c, d - 1)) for c in split)):
                    yield Apply(op, tuple(kids))

    return list(build(leaves, max_depth))


def _splits(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _splits(total - first, parts - 1):
            yield (first,) + rest


def leaf_positions(t):
    if isinstance(t, Var):
        return [t.position]
    return [p for c in t.children for p in leaf_positions(c)]


def oracle_eval(t, args):
    """Evaluate with plain arithmetic, independent of the library's op closures."""
    if isinstance(t, Var):
        return args[t.position - 1]
    vals = [oracle_eval(c, args) for c in t.children]
    name = t.op.name
    if name == "fadd":
        return vals[0] + vals[1]
    if name == "fmul":
        return vals[0] * vals[1]
    if name == "add":
        return Matrix([[x + y for x, y in zip(r, s)] for r, s in zip(vals[0].rows, vals[1].rows)])
    if name == "mul":
        return Matrix(naive_matmul(vals[0].rows, vals[1].rows))
    if name == "det":
        return cofactor_det(vals[0].rows)
    raise KeyError(name)


def _oracle_sort(v):
    return MATRIX if isinstance(v, Matrix) else SCALAR


@functools.lru_cache(maxsize=None)
def _filtered_trees(sig, k, max_depth, is_orderly):
    return tuple(t for t in raw_trees(sig, k, max_depth, k) if is_orderly(t))


def brute_fr_set(items, target, sig, max_arity, max_depth, is_orderly):
    """Evaluate every orderly, sort-correct raw tree on every subsequence."""
    out = set()
    for k in range(1, min(max_arity, len(items)) + 1):
        for t in _filtered_trees(sig, k, max_depth, is_orderly):
            if (t.sort if isinstance(t, Var) else t.op.codomain) != target:
                continue
            for idx in itertools.combinations(range(len(items)), k):
                args = [items[i] for i in idx]
                sorts = [_leaf_sort(t, p) for p in range(1, k + 1)]
                if [_oracle_sort(a) for a in args] != sorts:
                    continue
                out.add(oracle_eval(t, args))
    return out


def _leaf_sort(t, pos):
    if isinstance(t, Var):
        return t.sort if t.position == pos else None
    for c in t.children:
        s = _leaf_sort(c, pos)
        if s is not None:
            return s
    return None


def subsequence_sums(items, max_len):
    return {
        sum(c, Fraction(0))
        for k in range(1, max_len + 1)
        for c in itertools.combinations(items, k)
    }


def exact_root_by_scan(x: int, n: int):
    """Linear scan root; only for small x."""
    r = 0
    while (r + 1) ** n <= x:
        r += 1
    return r, r ** n == x


def y_members_upto(limit: int):
    """Sums of distinct 2^(2^i), i >= 0, below ``limit``."""
    powers = []
    i = 0
    while 2 ** (2 ** i) < limit:
        powers.append(2 ** (2 ** i))
        i += 1
    out = set()
    for k in range(1, len(powers) + 1):
        for c in itertools.combinations(powers, k):
            if sum(c) < limit:
                out.add(sum(c))
    return out
