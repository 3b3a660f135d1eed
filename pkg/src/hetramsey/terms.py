"""Orderly terms: representation, validation, enumeration and evaluation.

A term is a tree whose internal nodes are operations and whose leaves are
variables.  It is *orderly* when its leaves, read left to right, are exactly
x1, x2, ..., xn.  Variables carry their sort so that the identity term of each
phylum is a single leaf.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .core import SCALAR, OperationDecl, Signature, SortId, normalize, resolve_sort, sort_of
from .errors import ArityMismatch, BoundsTooLarge, SortMismatch, TermSyntaxError, UnknownOp

DEFAULT_MAX_ARITY = 6
DEFAULT_MAX_DEPTH = 4
DEFAULT_TERM_CAP = 250_000


@dataclass(frozen=True)
class Var:
    position: int
    sort: SortId = SCALAR

    def __str__(self):
        return f"x{self.position}"


@dataclass(frozen=True)
class Apply:
    op: OperationDecl
    children: tuple

    def __str__(self):
        return f"{self.op.name}({','.join(str(c) for c in self.children)})"


Term = Union[Var, Apply]


@dataclass(frozen=True)
class TermProfile:
    arity: int
    depth: int
    codomain: SortId
    domain_word: tuple


def codomain(t: Term) -> SortId:
    return t.sort if isinstance(t, Var) else t.op.codomain


def leaves(t: Term) -> list:
    if isinstance(t, Var):
        return [t]
    out = []
    for c in t.children:
        out.extend(leaves(c))
    return out


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max(depth(c) for c in t.children)


def to_text(t: Term) -> str:
    return str(t)


def _sort_correct(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if len(t.children) != t.op.arity:
        return False
    return all(codomain(c) == s and _sort_correct(c) for c, s in zip(t.children, t.op.domain))


def _ops_in(t: Term):
    if isinstance(t, Apply):
        yield t.op
        for c in t.children:
            yield from _ops_in(c)


def is_orderly(tree: Term, sig: Optional[Signature] = None) -> bool:
    if sig is not None:
        for op in _ops_in(tree):
            if op not in sig.ops:
                raise UnknownOp(f"operation {op.name!r} is not in the signature")
    positions = [v.position for v in leaves(tree)]
    if positions != list(range(1, len(positions) + 1)):
        return False
    return _sort_correct(tree)


def term_profile(t: Term) -> TermProfile:
    ls = leaves(t)
    return TermProfile(len(ls), depth(t), codomain(t), tuple(v.sort for v in ls))


# -- evaluation -----------------------------------------------------------------


def _eval(t: Term, args: Sequence):
    if isinstance(t, Var):
        return args[t.position - 1]
    return t.op(*[_eval(c, args) for c in t.children])


def evaluate(t: Term, args: Sequence):
    """Exact value of the composed operation on ``args``.

    Raises ArityMismatch, SortMismatch, or OrderMismatch (from the matrix ops).
    """
    args = [normalize(a) for a in args]
    prof = term_profile(t)
    if len(args) != prof.arity:
        raise ArityMismatch(f"term {t} takes {prof.arity} arguments, got {len(args)}")
    for i, (a, s) in enumerate(zip(args, prof.domain_word), start=1):
        if sort_of(a) != s:
            raise SortMismatch(f"x{i} of {t} expects sort {s}, got sort {sort_of(a)}")
    return _eval(t, args)


# -- enumeration ----------------------------------------------------------------


def _shift(t: Term, k: int) -> Term:
    if k == 0:
        return t
    if isinstance(t, Var):
        return Var(t.position + k, t.sort)
    return Apply(t.op, tuple(_shift(c, k) for c in t.children))


def _compositions(total: int, parts: int):
    """Ordered ways to write ``total`` as ``parts`` positive summands."""
    if parts == 1:
        yield (total,)
        return
    for cut in itertools.combinations(range(1, total), parts - 1):
        bounds = (0, *cut, total)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def structural_key(t: Term, sig: Signature) -> tuple:
    if isinstance(t, Var):
        return (0, t.sort, t.position)
    return (1, sig.ops.index(t.op), tuple(structural_key(c, sig) for c in t.children))


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.count = 0

    def spend(self, k):
        self.count += k
        if self.count > self.cap:
            raise BoundsTooLarge(f"term enumeration exceeds the cap of {self.cap} terms")


def _generate(sig: Signature, max_arity: int, max_depth: int, cap: int):
    """Map (sort, arity, depth_limit) -> tuple of terms, leaves numbered from 1."""
    memo = {}
    budget = _Budget(cap)

    def shapes(sort, arity, limit):
        key = (sort, arity, limit)
        if key in memo:
            return memo[key]
        out = []
        if arity == 1:
            out.append(Var(1, sort))
        if limit > 0:
            for op in sig.ops:
                if op.codomain != sort or op.arity > arity:
                    continue
                for comp in _compositions(arity, op.arity):
                    pools = [shapes(s, a, limit - 1) for s, a in zip(op.domain, comp)]
                    if not all(pools):
                        continue
                    offsets = list(itertools.accumulate((0, *comp[:-1])))
                    for combo in itertools.product(*pools):
                        out.append(Apply(op, tuple(_shift(c, off) for c, off in zip(combo, offsets))))
                        budget.spend(1)
        memo[key] = tuple(out)
        return memo[key]

    return shapes


@lru_cache(maxsize=256)
def _enumerate_cached(sig: Signature, cod: SortId, max_arity: int, max_depth: int, cap: int) -> tuple:
    shapes = _generate(sig, max_arity, max_depth, cap)
    terms = []
    for arity in range(1, max_arity + 1):
        terms.extend(shapes(cod, arity, max_depth))
    terms.sort(key=lambda t: (len(leaves(t)), depth(t), structural_key(t, sig)))
    return tuple(dict.fromkeys(terms))


def enumerate_orderly_terms(
    sig: Signature,
    codomain: SortId,
    max_arity: int = DEFAULT_MAX_ARITY,
    max_depth: int = DEFAULT_MAX_DEPTH,
    cap: int = DEFAULT_TERM_CAP,
) -> list:
    """All sort-correct orderly terms with the given codomain within the bounds.

    Ordered by arity, then depth, then structure (operation order of ``sig``).
    The identity leaf of the codomain sort is always included.
    """
    if max_arity < 1 or max_depth < 0:
        raise ValueError("need max_arity >= 1 and max_depth >= 0")
    return list(_enumerate_cached(sig, resolve_sort(codomain), max_arity, max_depth, cap))


# -- text form ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(x\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\()|(\))|(,))")


def parse_term(text: str, sig: Signature, sort=None) -> Term:
    """Parse the parenthesized text form, e.g. ``mul(add(x1,x2),add(x3,x4))``.

    Leaf sorts come from the enclosing operation; a bare leaf takes ``sort``
    (default: scalar).  The result is a raw tree and need not be orderly.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected input at column {pos + 1}: {text[pos:]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    if not tokens:
        raise TermSyntaxError("empty term")
    top_sort = SCALAR if sort is None else resolve_sort(sort)
    i = 0

    def node(expected):
        nonlocal i
        if i >= len(tokens):
            raise TermSyntaxError("unexpected end of term")
        tok = tokens[i]
        i += 1
        if tok.startswith("x") and tok[1:].isdigit():
            return Var(int(tok[1:]), expected)
        if tok in "(),":
            raise TermSyntaxError(f"unexpected {tok!r}")
        op = sig.op(tok)
        if i >= len(tokens) or tokens[i] != "(":
            raise TermSyntaxError(f"expected '(' after {tok}")
        i += 1
        children = []
        while True:
            slot = op.domain[len(children)] if len(children) < op.arity else expected
            children.append(node(slot))
            if i >= len(tokens):
                raise TermSyntaxError("unterminated argument list")
            if tokens[i] == ",":
                i += 1
                continue
            if tokens[i] == ")":
                i += 1
                break
            raise TermSyntaxError(f"unexpected {tokens[i]!r}")
        return Apply(op, tuple(children))

    tree = node(top_sort)
    if i != len(tokens):
        raise TermSyntaxError(f"trailing input after term: {''.join(tokens[i:])}")
    return tree
