"""Desk-scale verification of the witness constructions and structural lemmas.

Negative theorems are checked by exhaustive sweeps: every bounded reduction of
the witness sequence must receive a Mixed verdict.  Positive results are
checked by running their constructions on sample inputs.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .colorings import (
    Coloring,
    coloring_test,
    is_theta,
    nth_power_of_y,
    parse_coloring,
    pullback_by_det,
    residue_class,
)
from .core import (
    MATRIX,
    SCALAR,
    Matrix,
    Signature,
    SortedPrefix,
    SortWord,
    format_element,
    make_signature,
    operation,
    sorted_prefix,
)
from .errors import IndexCapExceeded, OrderMismatch
from .matrices import (
    D_matrix,
    G_matrix,
    binary_exponents,
    d_index_cap,
    det,
    diag_embed,
    integer_nth_root,
    matrix_add,
    matrix_mul,
    matrix_signature,
    y_value,
)
from .reduction import (
    MIXED,
    Bounds,
    FrSet,
    Verdict,
    check_homogeneous,
    check_reduction,
    enumerate_sorted_reductions,
    fr_set,
    schedule_sort_word,
)
from .terms import enumerate_orderly_terms, term_profile

VERIFIED = "Verified"
REFUTED = "Refuted"
INCONCLUSIVE = "Inconclusive"

THEOREM_IDS = ("mod5", "ubr", "pythagorean", "final", "hom-lemma", "lemma-long", "sort-sep", "subalg", "probe")


@dataclass
class Exhibit:
    element: str
    verdict: str
    term: str = ""
    block: list = field(default_factory=list)
    context: str = ""
    value: object = field(default=None, compare=False, repr=False)
    candidate: tuple = field(default=(), compare=False, repr=False)

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "verdict": self.verdict,
            "term": self.term,
            "block": list(self.block),
            "candidate": [format_element(v) for v in self.candidate],
            "context": self.context,
        }


@dataclass
class WitnessReport:
    theorem_id: str
    status: str
    bounds: dict
    exhibits: list = field(default_factory=list)
    vacuity_flags: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "bounds": dict(self.bounds),
            "stats": dict(self.stats),
            "vacuity_flags": list(self.vacuity_flags),
            "notes": list(self.notes),
            "exhibits": [e.as_dict() for e in self.exhibits],
        }


@dataclass
class CandidateResult:
    prefix: SortedPrefix
    witness: object
    fr: FrSet
    verdict: Verdict


# -- sequence builders -----------------------------------------------------------


def witness_sequence(word: SortWord, matrix_at: Callable[[int], Matrix], scalar_slot=1) -> SortedPrefix:
    """Matrix slots get matrix_at(1), matrix_at(2), ... in order; scalar slots the constant."""
    items = []
    rank = 0
    for s in word.prefix:
        if s == MATRIX:
            rank += 1
            items.append(matrix_at(rank))
        else:
            items.append(Fraction(scalar_slot))
    return SortedPrefix(tuple(items), word)


def lift(alpha: Sequence[Matrix], word: SortWord, h: Callable = det) -> SortedPrefix:
    """a(i) = alpha(i) on matrix slots and h(alpha(i)) on scalar slots."""
    if len(alpha) != len(word):
        raise ValueError("sequence and sort word lengths differ")
    items = tuple(a if s == MATRIX else h(a) for a, s in zip(alpha, word.prefix))
    return SortedPrefix(items, word)


def omega0_word(length: int) -> SortWord:
    return schedule_sort_word({SCALAR, MATRIX}, SCALAR, length)


def _matrix_prefix(alpha: Sequence[Matrix]) -> SortedPrefix:
    return SortedPrefix(tuple(alpha), SortWord((MATRIX,) * len(alpha), frozenset({MATRIX})))


def _random_matrix(rng: random.Random, n: int, lo: int, hi: int) -> Matrix:
    return Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def index_list(index_bound: int, indices: Optional[Sequence[int]] = None) -> list:
    idx = list(indices) if indices else list(range(1, index_bound + 1))
    if not idx or any(i < 0 for i in idx) or idx != sorted(set(idx)):
        raise ValueError("indices must be a nonempty strictly increasing list of naturals")
    return idx


def _nonempty_subsets(indices: Sequence[int], max_len: Optional[int] = None) -> list:
    top = len(indices) if max_len is None else min(max_len, len(indices))
    return [c for k in range(1, top + 1) for c in itertools.combinations(indices, k)]


def _ordered_pairs(indices: Sequence[int]) -> list:
    """Pairs (S, T) of nonempty index tuples with max(S) < min(T)."""
    subsets = _nonempty_subsets(indices)
    return [(s, t) for s in subsets for t in subsets if s[-1] < t[0]]


def sweep(b: SortedPrefix, word: SortWord, sig: Signature, out_len: int, bounds: Bounds, x: Coloring) -> list:
    """FR verdict of every bounded ``word``-sorted reduction of ``b``, in candidate order."""
    results = []
    for a, wit in enumerate_sorted_reductions(b, word, sig, out_len, bounds):
        fr = fr_set(a, word[0], sig, bounds)
        results.append(CandidateResult(a, wit, fr, check_homogeneous(fr, x)))
    return results


def _candidate_text(c: CandidateResult) -> str:
    return "a=<" + ", ".join(format_element(v) for v in c.prefix.items) + "> via " + str(c.witness)


def _fr_exhibit(c: CandidateResult, v, x: Coloring) -> Exhibit:
    term, block = c.fr.provenance[v]
    return Exhibit(
        format_element(v),
        "in" if coloring_test(x, v) else "out",
        str(term),
        list(block),
        _candidate_text(c),
        value=v,
        candidate=c.prefix.items,
    )


def _pick(fr: FrSet, pred: Callable, fallback):
    for v in fr.elements:
        if pred(v):
            return v
    return fallback


def _sweep_report(
    theorem_id: str,
    results: list,
    x: Coloring,
    bounds: dict,
    prefer_in: Callable = lambda v: True,
    prefer_out: Callable = lambda v: True,
) -> WitnessReport:
    report = WitnessReport(theorem_id, INCONCLUSIVE, bounds)
    report.stats["candidates"] = len(results)
    non_mixed = [c for c in results if c.verdict.kind != MIXED]
    report.stats["mixed"] = len(results) - len(non_mixed)
    report.stats["non_mixed"] = len(non_mixed)
    for c in results:
        if c.verdict.vacuous:
            report.vacuity_flags.append(f"empty FR set for {_candidate_text(c)}")
    if not results:
        report.notes.append("no reduction candidates within bounds")
        return report
    if non_mixed:
        report.status = REFUTED
        for c in non_mixed:
            v = c.verdict.inside if c.verdict.inside is not None else c.verdict.outside
            if v is None:
                report.exhibits.append(Exhibit("", c.verdict.kind, context=_candidate_text(c)))
            else:
                ex = _fr_exhibit(c, v, x)
                ex.verdict = c.verdict.kind
                report.exhibits.append(ex)
        return report
    report.status = VERIFIED
    for c in results:
        inside = _pick(c.fr, lambda v: coloring_test(x, v) and prefer_in(v), c.verdict.inside)
        outside = _pick(c.fr, lambda v: not coloring_test(x, v) and prefer_out(v), c.verdict.outside)
        report.exhibits.append(_fr_exhibit(c, inside, x))
        report.exhibits.append(_fr_exhibit(c, outside, x))
    return report


def _bounds_echo(bounds: Bounds, **extra) -> dict:
    return {**bounds.as_dict(), **extra}


# -- residue theorem ----------------------------------------------------------------


def verify_mod5_theorem(
    n: int = 2,
    index_bound: int = 3,
    out_len: int = 2,
    bounds: Bounds = Bounds(),
    scalar_only: bool = False,
    scalar_slot=1,
    indices: Optional[Sequence[int]] = None,
) -> WitnessReport:
    """Sweep the G_i witness sequence against X = {r : r = 1 mod 5}.

    Algebra (M_n, F, mul, fadd, det); with ``scalar_only`` the matrix product is
    dropped so every matrix term is a single G_i.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    ops = ("fadd", "det") if scalar_only else ("mul", "fadd", "det")
    sig = matrix_signature(ops)
    idx = index_list(index_bound, indices)
    word = omega0_word(2 * len(idx))
    b = witness_sequence(word, lambda k: G_matrix(idx[k - 1], n), scalar_slot)
    x = residue_class(5, 1)
    results = sweep(b, word, sig, out_len, bounds, x)

    products = {}
    for s in _nonempty_subsets(idx, None if not scalar_only else 1):
        products.setdefault(Fraction(_prod(5 * i + 1 for i in s)), s)
    pair_sums = {p + q for (p, sp), (q, sq) in itertools.product(products.items(), repeat=2) if sp[-1] < sq[0]}

    report = _sweep_report(
        "mod5-scalar" if scalar_only else "mod5",
        results,
        x,
        _bounds_echo(bounds, n=n, indices=idx, out_len=out_len, scalar_slot=str(scalar_slot)),
        prefer_in=lambda v: v in products,
        prefer_out=lambda v: v in pair_sums or _residue(v) == 2,
    )
    report.stats["algebra"] = ",".join(sig.op_names)
    report.stats["sequence"] = [format_element(v) for v in b.items]
    report.stats["candidates_with_det_product"] = sum(any(v in products for v in c.fr) for c in results)
    report.stats["candidates_with_pair_6_17"] = sum(
        any(v in products for v in c.fr) and any(v in pair_sums for v in c.fr) for c in results
    )
    report.stats["exhibit_residues"] = sorted({_residue(e.value) for e in report.exhibits if e.value is not None})
    return report


def _prod(it):
    out = 1
    for v in it:
        out *= v
    return out


def _residue(v, m=5):
    if isinstance(v, Matrix) or v.denominator != 1:
        return None
    return v.numerator % m


# -- double-exponential theorem -----------------------------------------------------

def _d_indices(index_bound, indices):
    idx = index_list(index_bound, indices)
    cap = d_index_cap()
    if idx[-1] > cap:
        raise IndexCapExceeded(f"D index {idx[-1]} exceeds cap {cap}")
    return idx


UBR_VARIANTS = {
    "add-fmul": ("add", "fmul", "det"),
    "add-fadd-fmul": ("add", "fadd", "fmul", "det"),
    "fmul-only": ("fmul", "det"),
}


def _y_forms(indices: Sequence[int], n: int, singletons_only: bool = False):
    """Odd forms kappa^n and even forms (kappa1*kappa2)^n over the given D-indices."""
    subsets = _nonempty_subsets(indices, 1 if singletons_only else None)
    odd = {Fraction(y_value(s) ** n) for s in subsets}
    even = {
        Fraction((y_value(s) * y_value(t)) ** n) for s in subsets for t in subsets if s[-1] < t[0]
    }
    return odd, even


def verify_ubr_theorem(
    n: int = 2,
    index_bound: int = 3,
    out_len: int = 2,
    bounds: Bounds = Bounds(),
    variant: str = "add-fmul",
    scalar_slot=1,
    indices: Optional[Sequence[int]] = None,
) -> WitnessReport:
    """Sweep the D_i witness sequence against X = {kappa^n : kappa in Y}."""
    if n < 1:
        raise ValueError("order must be at least 1")
    idx = _d_indices(index_bound, indices)
    sig = matrix_signature(UBR_VARIANTS[variant])
    word = omega0_word(2 * len(idx))
    b = witness_sequence(word, lambda k: D_matrix(idx[k - 1], n), scalar_slot)
    x = nth_power_of_y(n)
    results = sweep(b, word, sig, out_len, bounds, x)
    odd, even = _y_forms(idx, n, singletons_only=variant == "fmul-only")

    report = _sweep_report(
        "ubr" if variant == "add-fmul" else f"ubr-{variant}",
        results,
        x,
        _bounds_echo(bounds, n=n, indices=idx, out_len=out_len, scalar_slot=str(scalar_slot)),
        prefer_in=lambda v: v in odd,
        prefer_out=lambda v: v in even,
    )
    report.stats["algebra"] = ",".join(sig.op_names)
    report.stats["sequence"] = [format_element(v) for v in b.items]
    report.stats["candidates_with_odd_form"] = sum(any(v in odd for v in c.fr) for c in results)
    report.stats["candidates_with_even_form"] = sum(any(v in even for v in c.fr) for c in results)
    report.stats["even_forms_in_X"] = sorted(format_element(v) for v in even if coloring_test(x, v))
    return report


# -- Pythagorean-type inequality ------------------------------------------------------


def square_expansion(indices: Sequence[int]) -> list:
    """Exponents of the binary expansion of (sum 2^(2^i))^2 read off term by term.

    Diagonal terms give 2^(i+1); each unordered pair p < q gives 2^i_p + 2^i_q + 1.
    """
    diag = [2 ** (i + 1) for i in indices]
    cross = [2**p + 2**q + 1 for p, q in itertools.combinations(indices, 2)]
    return diag + cross


def verify_pythagorean_lemma(index_bound: int = 5, len_bound: int = 3) -> WitnessReport:
    if index_bound < 1 or len_bound < 1:
        raise ValueError("bounds must be positive")
    report = WitnessReport(
        "pythagorean", INCONCLUSIVE, {"index_bound": index_bound, "len_bound": len_bound}
    )
    tuples = _nonempty_subsets(range(1, index_bound + 1), len_bound)
    squares = {}
    expansion_failures = []
    for t in tuples:
        direct = y_value(t) ** 2
        squares.setdefault(direct, t)
        exps = square_expansion(t)
        rebuilt = sum(2**e for e in exps)
        if len(set(exps)) != len(exps) or rebuilt != direct or sorted(exps) != binary_exponents(direct):
            expansion_failures.append(t)

    comparisons = 0
    equalities = []
    rhs_expansion_failures = []
    for j, k in ((j, k) for j in tuples for k in tuples if j[-1] < k[0]):
        rhs = y_value(j) ** 2 + y_value(k) ** 2
        exps = square_expansion(j) + square_expansion(k)
        if len(set(exps)) != len(exps) or sorted(exps) != binary_exponents(rhs):
            rhs_expansion_failures.append((j, k))
        comparisons += len(tuples)
        if rhs in squares:
            equalities.append((squares[rhs], j, k))

    report.stats.update(
        {
            "lhs_tuples": len(tuples),
            "comparisons": comparisons,
            "equalities": len(equalities),
            "longsum1_mismatches": len(expansion_failures),
            "longsum2_mismatches": len(rhs_expansion_failures),
        }
    )
    for i, j, k in equalities:
        report.exhibits.append(
            Exhibit(str(y_value(i) ** 2), "equality", context=f"i={list(i)} j={list(j)} k={list(k)}")
        )
    for t in expansion_failures:
        report.exhibits.append(Exhibit(str(y_value(t) ** 2), "longsum1-mismatch", context=f"i={list(t)}"))
    for j, k in rhs_expansion_failures:
        report.exhibits.append(
            Exhibit(str(y_value(j) ** 2 + y_value(k) ** 2), "longsum2-mismatch", context=f"j={list(j)} k={list(k)}")
        )
    report.status = REFUTED if report.exhibits else VERIFIED
    if report.status == VERIFIED:
        sample = tuples[min(len(tuples) - 1, index_bound)]
        report.exhibits.append(
            Exhibit(
                str(y_value(sample) ** 2),
                "expansion",
                context=f"i={list(sample)} exponents={sorted(square_expansion(sample))}",
            )
        )
    return report


# -- final theorem -----------------------------------------------------------------

FINAL_SAMPLE_COLORINGS = ("residue:5,1", "residue:2,0", "residue:3,1", "y")


def theta_sum_sweep(n: int, indices: Sequence[int]) -> list:
    """(S, T, value, is_theta) for every kappa_S^n + kappa_T^n with max S < min T."""
    out = []
    for s, t in _ordered_pairs(indices):
        v = y_value(s) ** n + y_value(t) ** n
        out.append((s, t, v, is_theta(Fraction(v), n)))
    return out


def search_homogeneous(
    b: SortedPrefix,
    word: SortWord,
    sig: Signature,
    out_len: int,
    bounds: Bounds,
    x: Coloring,
):
    """First bounded reduction of ``b`` whose FR set is not Mixed for ``x``, or None."""
    for c in sweep(b, word, sig, out_len, bounds, x):
        if c.verdict.kind != MIXED:
            return c
    return None


def verify_final_theorem(
    n: int = 2,
    index_bound: int = 3,
    out_len: int = 2,
    bounds: Bounds = Bounds(),
    colorings: Sequence = FINAL_SAMPLE_COLORINGS,
    sample_length: int = 6,
    scalar_slot=1,
    indices: Optional[Sequence[int]] = None,
) -> WitnessReport:
    """Algebra (M_n, F, add, fadd, det): negative sweep for n > 1, construction for n = 1."""
    if n < 1:
        raise ValueError("order must be at least 1")
    if n == 1:
        return _final_positive(out_len, bounds, colorings, sample_length, scalar_slot)
    idx = _d_indices(index_bound, indices)
    sig = matrix_signature(("add", "fadd", "det"))
    x = nth_power_of_y(n)
    sums = theta_sum_sweep(n, idx)
    word = omega0_word(2 * len(idx))
    b = witness_sequence(word, lambda k: D_matrix(idx[k - 1], n), scalar_slot)
    results = sweep(b, word, sig, out_len, bounds, x)
    odd, _ = _y_forms(idx, n)
    sum_values = {Fraction(v) for _, _, v, _ in sums}
    report = _sweep_report(
        "final",
        results,
        x,
        _bounds_echo(bounds, n=n, indices=idx, out_len=out_len, scalar_slot=str(scalar_slot)),
        prefer_in=lambda v: v in odd,
        prefer_out=lambda v: v in sum_values,
    )
    bad_sums = [(s, t, v) for s, t, v, th in sums if th]
    report.stats["theta_sums_checked"] = len(sums)
    report.stats["theta_sums_in_X"] = len(bad_sums)
    report.stats["candidates_with_theta_sum"] = sum(any(v in sum_values for v in c.fr) for c in results)
    if n == 2:
        pyth = verify_pythagorean_lemma(idx[-1], len(idx))
        report.stats["pythagorean_equalities"] = pyth.stats["equalities"]
        if pyth.status != VERIFIED:
            report.status = REFUTED
    for s, t, v in bad_sums:
        report.status = REFUTED
        report.exhibits.append(Exhibit(str(v), "theta-sum-in-X", context=f"S={list(s)} T={list(t)}"))
    for s, t, v, _ in sums[:3]:
        root, _exact = integer_nth_root(v, n)
        report.notes.append(
            f"kappa{list(s)}^{n} + kappa{list(t)}^{n} = {v}; floor root {root}, not exact"
        )
    return report


def _final_positive(out_len, bounds, colorings, sample_length, scalar_slot) -> WitnessReport:
    """n = 1: lift a homogeneous alpha <=_{add} beta to a reduction of b and check it."""
    sig = matrix_signature(("add", "fadd", "det"))
    add_only = matrix_signature(("add",))
    word = omega0_word(2 * sample_length)
    b = witness_sequence(word, lambda k: diag_embed(k, 1), scalar_slot)
    beta = _matrix_prefix([v for v in b.items if isinstance(v, Matrix)])
    check_bounds = Bounds(bounds.max_arity, max(bounds.max_depth, bounds.max_arity), bounds.term_cap)
    report = WitnessReport(
        "final",
        INCONCLUSIVE,
        _bounds_echo(bounds, n=1, out_len=out_len, sample_length=sample_length, scalar_slot=str(scalar_slot)),
    )
    report.stats["sequence"] = [format_element(v) for v in b.items]
    outcomes = []
    a_word = word.truncate(out_len)
    for spec in colorings:
        x = spec if isinstance(spec, Coloring) else parse_coloring(spec)
        px = pullback_by_det(x)
        found = search_homogeneous(beta, beta.word, add_only, out_len, bounds, px)
        if found is None:
            outcomes.append(INCONCLUSIVE)
            report.notes.append(f"{x.spec}: no homogeneous alpha within bounds")
            continue
        alpha = found.prefix.items
        a = lift(alpha, a_word)
        wit = check_reduction(a, b, sig, check_bounds)
        fr = fr_set(a, SCALAR, sig, bounds)
        verdict = check_homogeneous(fr, x)
        image = {det(c) for c in found.fr}
        ok = wit is not None and verdict.kind != MIXED and fr.as_set() <= image
        outcomes.append(VERIFIED if ok else REFUTED)
        shown = verdict.inside if verdict.inside is not None else verdict.outside
        term, block = fr.provenance[shown] if shown is not None else ("", ())
        report.exhibits.append(
            Exhibit(
                format_element(shown) if shown is not None else "",
                verdict.kind,
                str(term),
                list(block),
                f"{x.spec}: alpha=<{', '.join(map(format_element, alpha))}>, "
                f"a=<{', '.join(map(format_element, a.items))}> via {wit}",
                value=shown,
                candidate=a.items,
            )
        )
        if verdict.vacuous:
            report.vacuity_flags.append(f"{x.spec}: empty FR set")
    report.stats["colorings"] = len(outcomes)
    report.stats["constructed"] = outcomes.count(VERIFIED)
    if REFUTED in outcomes:
        report.status = REFUTED
    elif outcomes and all(o == VERIFIED for o in outcomes):
        report.status = VERIFIED
    return report


# -- homomorphism lemmas -------------------------------------------------------------


def _sample_alphas(trials, lengths, orders, seed, lo=-3, hi=3):
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        length = rng.choice(lengths)
        n = rng.choice(orders)
        out.append([_random_matrix(rng, n, lo, hi) for _ in range(length)])
    return out


def verify_homomorphism_lemma(
    prefix_len: int = 3,
    bounds: Optional[Bounds] = None,
    orders: Sequence[int] = (1, 2),
    trials: int = 20,
    seed: int = 0,
    alphas: Optional[Iterable[Sequence[Matrix]]] = None,
) -> WitnessReport:
    """FR of the lifted sequence equals the det-image of the FR of alpha under mul.

    Algebra (M_n, F, fmul, mul, det).  The scalar side gets one extra level of
    depth because det sits on top of each matrix leaf.
    """
    full = matrix_signature(("mul", "fmul", "det"))
    g1 = matrix_signature(("mul",))
    if bounds is None:
        bounds = Bounds(prefix_len, max(prefix_len - 1, 1))
    lhs_bounds = Bounds(bounds.max_arity, bounds.max_depth + 1, bounds.term_cap)
    if alphas is None:
        alphas = _sample_alphas(trials, range(1, prefix_len + 1), orders, seed)
    report = WitnessReport(
        "hom-lemma",
        INCONCLUSIVE,
        _bounds_echo(bounds, prefix_len=prefix_len, trials=trials, seed=seed, orders=list(orders)),
    )
    checked = failures = 0
    for alpha in alphas:
        alpha = list(alpha)
        word = omega0_word(len(alpha))
        a = lift(alpha, word)
        lhs = fr_set(a, SCALAR, full, lhs_bounds)
        rhs_fr = fr_set(_matrix_prefix(alpha), MATRIX, g1, bounds)
        rhs = {det(c) for c in rhs_fr}
        checked += 1
        context = f"alpha=<{', '.join(map(format_element, alpha))}> word={list(word.prefix)}"
        if lhs.as_set() != rhs:
            failures += 1
            extra = sorted(lhs.as_set() ^ rhs)
            report.exhibits.append(
                Exhibit(format_element(extra[0]), "set-difference", context=context, value=extra[0])
            )
        elif len(report.exhibits) < 3:
            report.exhibits.append(
                Exhibit(
                    "{" + ", ".join(format_element(v) for v in sorted(rhs)) + "}",
                    "equal",
                    context=context,
                )
            )
    report.stats.update({"checked": checked, "mismatches": failures})
    if checked:
        report.status = REFUTED if failures else VERIFIED
    return report


def verify_lemma_long(
    prefix_len: int = 3,
    bounds: Bounds = Bounds(),
    orders: Sequence[int] = (1, 2),
    trials: int = 10,
    seed: int = 0,
    out_len: int = 2,
    alphas: Optional[Iterable[Sequence[Matrix]]] = None,
) -> WitnessReport:
    """Every scalar reduction of b also reduces to beta = det(alpha) using fmul alone."""
    full = matrix_signature(("mul", "fmul", "det"))
    g0 = matrix_signature(("fmul",))
    g0_bounds = Bounds(bounds.max_arity, max(bounds.max_depth, bounds.max_arity - 1), bounds.term_cap)
    if alphas is None:
        alphas = _sample_alphas(trials, [prefix_len], orders, seed)
    report = WitnessReport(
        "lemma-long",
        INCONCLUSIVE,
        _bounds_echo(bounds, prefix_len=prefix_len, out_len=out_len, trials=trials, seed=seed),
    )
    checked = failures = 0
    for alpha in alphas:
        alpha = list(alpha)
        word = omega0_word(len(alpha))
        b = lift(alpha, word)
        beta = sorted_prefix([det(m) for m in alpha], [SCALAR] * len(alpha))
        u_word = SortWord((SCALAR,) * out_len, frozenset({SCALAR}))
        for u, _ in enumerate_sorted_reductions(b, u_word, full, out_len, bounds):
            checked += 1
            wit = check_reduction(u, beta, g0, g0_bounds)
            context = f"u=<{', '.join(map(format_element, u.items))}> beta=<{', '.join(map(format_element, beta.items))}>"
            if wit is None:
                failures += 1
                report.exhibits.append(Exhibit(format_element(u[0]), "no-G0-witness", context=context))
            elif len(report.exhibits) < 3:
                report.exhibits.append(
                    Exhibit(
                        format_element(u[0]),
                        "G0-witness",
                        str(wit.steps[0].term),
                        list(wit.steps[0].block),
                        context,
                        value=u[0],
                        candidate=beta.items,
                    )
                )
    report.stats.update({"reductions_checked": checked, "failures": failures})
    if checked:
        report.status = REFUTED if failures else VERIFIED
    else:
        report.vacuity_flags.append("no scalar reductions within bounds")
    return report


# -- structural checks ---------------------------------------------------------------


def verify_sort_separation(bounds: Bounds = Bounds(), sig: Optional[Signature] = None) -> WitnessReport:
    """Every orderly term with matrix codomain takes only matrix arguments."""
    sig = matrix_signature() if sig is None else sig
    terms = enumerate_orderly_terms(sig, MATRIX, bounds.max_arity, bounds.max_depth, bounds.term_cap)
    report = WitnessReport("sort-sep", INCONCLUSIVE, {**bounds.as_dict(), "ops": list(sig.op_names)})
    bad = [t for t in terms if any(s != MATRIX for s in term_profile(t).domain_word)]
    report.stats.update({"matrix_terms": len(terms), "violations": len(bad)})
    for t in bad:
        report.exhibits.append(Exhibit(str(t), "mixed-domain", context=str(term_profile(t).domain_word)))
    if not bad:
        for t in terms[-3:]:
            report.exhibits.append(Exhibit(str(t), "matrix-only", context=str(term_profile(t).domain_word)))
    report.status = REFUTED if bad else VERIFIED
    return report


SCALAR_COUNTERPART = {"add": "fadd", "mul": "fmul"}


def _restricted(op_name: str, fn: Callable):
    def restricted(*args):
        for a in args:
            if not isinstance(a, Matrix) or not a.is_scalar_diagonal():
                raise OrderMismatch(f"{op_name} restricted to scalar matrices got {a!r}")
        return fn(*args)

    return restricted


def diagonal_subalgebra_signature(ops: Sequence[str]) -> Signature:
    """The matrix operations restricted to scalar diagonal matrices."""
    impl = {"add": matrix_add, "mul": matrix_mul}
    return make_signature(
        {SCALAR, MATRIX},
        [operation(o, (MATRIX, MATRIX), MATRIX, _restricted(o, impl[o])) for o in ops],
    )


def verify_subalgebra_transfer(
    bounds: Bounds = Bounds(),
    n: int = 2,
    trials: int = 20,
    seed: int = 0,
    ops: Sequence[str] = ("add", "mul"),
    max_len: int = 3,
    scalars: Optional[Iterable[Sequence[int]]] = None,
) -> WitnessReport:
    """FR sets of diag-embedded sequences agree in the diagonal subalgebra and the full ring.

    The subalgebra is computed twice: with restricted matrix operations, and in
    the isomorphic scalar copy mapped back along r -> diag(r, ..., r).
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    full = matrix_signature(ops)
    restricted = diagonal_subalgebra_signature(ops)
    scalar_copy = matrix_signature([SCALAR_COUNTERPART[o] for o in ops])
    if scalars is None:
        rng = random.Random(seed)
        scalars = [[rng.randint(-5, 5) for _ in range(rng.randint(1, max_len))] for _ in range(trials)]
    report = WitnessReport(
        "subalg", INCONCLUSIVE, _bounds_echo(bounds, n=n, trials=trials, seed=seed, ops=list(ops))
    )
    checked = mismatches = 0
    for rs in scalars:
        rs = list(rs)
        mats = _matrix_prefix([diag_embed(r, n) for r in rs])
        fr_full = fr_set(mats, MATRIX, full, bounds).as_set()
        fr_restricted = fr_set(mats, MATRIX, restricted, bounds).as_set()
        fr_copy = {diag_embed(c, n) for c in fr_set(sorted_prefix(rs), SCALAR, scalar_copy, bounds)}
        checked += 1
        closed = all(m.is_scalar_diagonal() for m in fr_full)
        if not (fr_full == fr_restricted == fr_copy and closed):
            mismatches += 1
            report.exhibits.append(Exhibit(str(rs), "mismatch", context=f"closed={closed}"))
        elif len(report.exhibits) < 3:
            report.exhibits.append(
                Exhibit("{" + ", ".join(sorted(map(repr, fr_full))) + "}", "equal", context=f"b=diag{rs}")
            )
    report.stats.update({"checked": checked, "mismatches": mismatches})
    if checked:
        report.status = REFUTED if mismatches else VERIFIED
    return report


# -- pluggable bad-sequence probe -------------------------------------------------------


def run_bad_sequence_probe(
    seq: SortedPrefix,
    x: Coloring,
    sig: Signature,
    bounds: Bounds = Bounds(),
    out_len: int = 1,
    word: Optional[SortWord] = None,
) -> WitnessReport:
    """Share of bounded reductions of ``seq`` whose FR set is Mixed for ``x``."""
    word = seq.word if word is None else word
    results = sweep(seq, word, sig, out_len, bounds, x)
    report = WitnessReport("probe", INCONCLUSIVE, _bounds_echo(bounds, out_len=out_len, coloring=x.spec))
    counts = {"Mixed": 0, "Contained": 0, "Disjoint": 0}
    for c in results:
        counts[c.verdict.kind] += 1
        if c.verdict.vacuous:
            report.vacuity_flags.append(f"empty FR set for {_candidate_text(c)}")
    total = len(results)
    report.stats.update(
        {
            "candidates": total,
            "mixed": counts["Mixed"],
            "contained": counts["Contained"],
            "disjoint": counts["Disjoint"],
            "mixed_ratio": f"{counts['Mixed']}/{total}",
        }
    )
    if "det" in sig.op_names and any(isinstance(v, Matrix) for v in seq.items):
        g1 = matrix_signature(sig.g1)
        beta = _matrix_prefix([v for v in seq.items if isinstance(v, Matrix)])
        mats = fr_set(beta, MATRIX, g1, bounds).elements
        dets = [det(m) for m in mats]
        report.stats["det_injective"] = len(set(dets)) == len(dets)
    for c in results:
        if c.verdict.kind == MIXED:
            continue
        v = c.verdict.inside if c.verdict.inside is not None else c.verdict.outside
        if v is None:
            report.exhibits.append(Exhibit("", c.verdict.kind, context=_candidate_text(c)))
        else:
            ex = _fr_exhibit(c, v, x)
            ex.verdict = c.verdict.kind
            report.exhibits.append(ex)
    if total:
        report.status = VERIFIED if counts["Mixed"] == total else REFUTED
    return report
