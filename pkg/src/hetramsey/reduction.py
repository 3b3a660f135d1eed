"""Bounded decision of the reduction relation and finite FR-set approximations.

Every search is exhaustive within explicit bounds (term arity and depth, and
the finite prefix length).  An absent witness therefore means "none within
bounds", never a proof of non-reduction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .colorings import Coloring, coloring_test
from .core import (
    Signature,
    SortedPrefix,
    SortId,
    SortWord,
    format_element,
    is_e_sorted,
    resolve_sort,
    sort_of,
)
from .errors import SortMismatch
from .terms import DEFAULT_TERM_CAP, _eval, enumerate_orderly_terms, term_profile

CONTAINED = "Contained"
DISJOINT = "Disjoint"
MIXED = "Mixed"


@dataclass(frozen=True)
class Bounds:
    max_arity: int = 4
    max_depth: int = 3
    term_cap: int = DEFAULT_TERM_CAP

    def __post_init__(self):
        if self.max_arity < 1 or self.max_depth < 0:
            raise ValueError("need max_arity >= 1 and max_depth >= 0")

    def as_dict(self) -> dict:
        return {"max_arity": self.max_arity, "max_depth": self.max_depth}


@dataclass(frozen=True)
class WitnessStep:
    block: tuple
    term: object

    def __str__(self):
        return f"{self.term}@{list(self.block)}"


@dataclass(frozen=True)
class ReductionWitness:
    steps: tuple

    def verify(self, a: SortedPrefix, b: SortedPrefix) -> bool:
        if len(self.steps) != len(a):
            return False
        last = -1
        for j, step in enumerate(self.steps):
            if not step.block or list(step.block) != sorted(set(step.block)) or step.block[0] <= last:
                return False
            if step.block[-1] >= len(b):
                return False
            last = step.block[-1]
            prof = term_profile(step.term)
            if prof.codomain != a.word[j] or prof.domain_word != tuple(b.word[i] for i in step.block):
                return False
            if _eval(step.term, [b[i] for i in step.block]) != a[j]:
                return False
        return True

    def __str__(self):
        return "; ".join(str(s) for s in self.steps)


@dataclass(frozen=True)
class FrSet:
    """Finite approximation of an FR set with one producing (term, block) per element."""

    sort: SortId
    elements: tuple
    provenance: dict = field(compare=False)
    bounds: dict = field(compare=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, v):
        return v in self.provenance

    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def describe(self, v) -> str:
        term, block = self.provenance[v]
        return f"{format_element(v)} = {term}@{list(block)}"


@dataclass(frozen=True)
class Verdict:
    kind: str
    inside: object = None
    outside: object = None
    vacuous: bool = False


# -- candidate spaces ---------------------------------------------------------------


def blocks_from(start: int, n: int, max_size: int, stop: Optional[int] = None) -> Iterator[tuple]:
    """Strictly increasing index tuples within [start, n) in lexicographic order.

    ``stop`` bounds the last index of each block (exclusive).
    """
    limit = n if stop is None else min(n, stop)

    def extend(prefix):
        yield prefix
        if len(prefix) < max_size:
            for k in range(prefix[-1] + 1, n):
                yield from extend(prefix + (k,))

    for first in range(start, limit):
        for blk in extend((first,)):
            if blk[-1] < limit:
                yield blk


@lru_cache(maxsize=64)
def _catalog(sig: Signature, bounds: Bounds) -> dict:
    """(codomain, domain_word) -> terms in enumeration order."""
    cat = {}
    for cod in sorted(sig.sorts):
        for t in enumerate_orderly_terms(sig, cod, bounds.max_arity, bounds.max_depth, bounds.term_cap):
            prof = term_profile(t)
            cat.setdefault((cod, prof.domain_word), []).append(t)
    return cat


def terms_for(sig: Signature, bounds: Bounds, cod: SortId, domain_word: tuple) -> list:
    return _catalog(sig, bounds).get((cod, tuple(domain_word)), [])


@lru_cache(maxsize=200_000)
def _block_values(sig: Signature, bounds: Bounds, items: tuple, cod: SortId) -> tuple:
    """Distinct values f(items) over matching terms, each with its first term."""
    word = tuple(sort_of(x) for x in items)
    seen = {}
    for t in terms_for(sig, bounds, cod, word):
        v = _eval(t, items)
        if v not in seen:
            seen[v] = t
    return tuple(seen.items())


def _check_inputs(*seqs):
    for s in seqs:
        if not is_e_sorted(s):
            raise SortMismatch("sequence items do not match their sort word")


# -- operations -------------------------------------------------------------------


def check_reduction(a: SortedPrefix, b: SortedPrefix, sig: Signature, bounds: Bounds = Bounds()):
    """A witness that ``a`` reduces to ``b`` within bounds, or None.

    Blocks are tried in lexicographic index order before terms; unused elements
    of ``b`` may sit between blocks.
    """
    _check_inputs(a, b)
    n, m = len(b), len(a)
    dead = set()

    def search(j, start):
        if j == m:
            return ()
        if (j, start) in dead:
            return None
        stop = n - (m - j - 1)
        for blk in blocks_from(start, n, bounds.max_arity, stop):
            items = tuple(b[i] for i in blk)
            for v, t in _block_values(sig, bounds, items, a.word[j]):
                if v == a[j] and sort_of(v) == a.word[j]:
                    rest = search(j + 1, blk[-1] + 1)
                    if rest is not None:
                        return (WitnessStep(blk, t),) + rest
                    break
        dead.add((j, start))
        return None

    steps = search(0, 0)
    return None if steps is None else ReductionWitness(steps)


def fr_set(b: SortedPrefix, target, sig: Signature, bounds: Bounds = Bounds()) -> FrSet:
    """All f(tau) with f an orderly term of codomain ``target`` and tau a subsequence of b."""
    _check_inputs(b)
    if len(b) == 0:
        raise ValueError("FR set of an empty prefix")
    target = resolve_sort(target)
    prov = {}
    for blk in blocks_from(0, len(b), bounds.max_arity):
        items = tuple(b[i] for i in blk)
        for v, t in _block_values(sig, bounds, items, target):
            if v not in prov:
                prov[v] = (t, blk)
    bounds_echo = {**bounds.as_dict(), "prefix_length": len(b)}
    return FrSet(target, tuple(prov), prov, bounds_echo)


def schedule_sort_word(recurring: Iterable, first, length: int) -> SortWord:
    """Round-robin word over the recurring sorts, starting at ``first``."""
    sorts = sorted({resolve_sort(s) for s in recurring})
    first = resolve_sort(first)
    if first not in sorts:
        raise ValueError(f"first sort {first} is not among the recurring sorts {sorts}")
    if length < 1:
        raise ValueError("length must be positive")
    k = sorts.index(first)
    order = sorts[k:] + sorts[:k]
    return SortWord(tuple(order[i % len(order)] for i in range(length)), frozenset(sorts))


def enumerate_sorted_reductions(
    b: SortedPrefix, word: SortWord, sig: Signature, out_len: int, bounds: Bounds = Bounds()
) -> list:
    """Every distinct ``word``-sorted prefix of length ``out_len`` reducing to ``b``.

    Returns (prefix, first witness) pairs in depth-first discovery order.
    """
    _check_inputs(b)
    if out_len < 1:
        raise ValueError("out_len must be positive")
    if len(word) < out_len:
        raise ValueError("sort word shorter than out_len")
    out_word = word.truncate(out_len)
    n = len(b)
    memo = {}

    def suffixes(j, start):
        if j == out_len:
            return {(): ()}
        key = (j, start)
        if key in memo:
            return memo[key]
        found = {}
        stop = n - (out_len - j - 1)
        for blk in blocks_from(start, n, bounds.max_arity, stop):
            items = tuple(b[i] for i in blk)
            values = _block_values(sig, bounds, items, out_word[j])
            if not values:
                continue
            rest = suffixes(j + 1, blk[-1] + 1)
            if not rest:
                continue
            for v, t in values:
                step = WitnessStep(blk, t)
                for tail, tail_steps in rest.items():
                    key2 = (v,) + tail
                    if key2 not in found:
                        found[key2] = (step,) + tail_steps
        memo[key] = found
        return found

    return [
        (SortedPrefix(vals, out_word), ReductionWitness(steps)) for vals, steps in suffixes(0, 0).items()
    ]


def check_homogeneous(fr: FrSet, x: Coloring) -> Verdict:
    if fr.sort != x.phylum:
        raise SortMismatch(f"coloring on sort {x.phylum} but FR set has sort {fr.sort}")
    inside = outside = None
    for v in fr.elements:
        if coloring_test(x, v):
            if inside is None:
                inside = v
        elif outside is None:
            outside = v
        if inside is not None and outside is not None:
            return Verdict(MIXED, inside, outside)
    if not fr.elements:
        return Verdict(CONTAINED, vacuous=True)
    return Verdict(CONTAINED, inside=inside) if outside is None else Verdict(DISJOINT, outside=outside)
