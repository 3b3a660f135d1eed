"""Decidable 2-colorings (membership predicates) over one phylum."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import MATRIX, SCALAR, Matrix, SortId, normalize, sort_of
from .errors import SchemaError, SortMismatch
from .matrices import as_natural, det, in_Y, integer_nth_root

RESIDUE = "residue"
DOUBLE_EXP_BINARY = "y"
NTH_POWER_OF_Y = "theta"
PREDICATE = "predicate"
PULLBACK = "pullback"

KINDS = (RESIDUE, DOUBLE_EXP_BINARY, NTH_POWER_OF_Y, PREDICATE, PULLBACK)

KIND_ALIASES = {
    "residue-class": RESIDUE,
    "double-exp": DOUBLE_EXP_BINARY,
    "double-exp-binary": DOUBLE_EXP_BINARY,
    "nth-power-of-y": NTH_POWER_OF_Y,
    "nth-power-y": NTH_POWER_OF_Y,
}


def _even(v):
    k = as_natural(v)
    return k is not None and k % 2 == 0


def _odd(v):
    k = as_natural(v)
    return k is not None and k % 2 == 1


NAMED_PREDICATES = {
    "never": lambda v: False,
    "always": lambda v: True,
    "even": _even,
    "odd": _odd,
    "positive": lambda v: not isinstance(v, Matrix) and v > 0,
}


@dataclass(frozen=True)
class Coloring:
    kind: str
    params: tuple = ()
    phylum: SortId = SCALAR
    predicate: Optional[Callable] = field(default=None, compare=False, repr=False)
    base: Optional["Coloring"] = None

    def __post_init__(self):
        if self.kind == RESIDUE:
            m, r = self.params
            if m < 2 or not 0 <= r < m:
                raise ValueError(f"residue class needs m >= 2 and 0 <= r < m, got m={m}, r={r}")
        elif self.kind == NTH_POWER_OF_Y:
            (n,) = self.params
            if n < 1:
                raise ValueError("exponent must be positive")
        elif self.kind == PREDICATE:
            if self.predicate is None:
                (name,) = self.params
                if name not in NAMED_PREDICATES:
                    raise ValueError(f"unknown predicate {name!r}")
                object.__setattr__(self, "predicate", NAMED_PREDICATES[name])
        elif self.kind == PULLBACK:
            if self.base is None or self.phylum != MATRIX:
                raise ValueError("a pullback coloring needs a scalar base and lives on matrices")
        elif self.kind != DOUBLE_EXP_BINARY:
            raise ValueError(f"unknown coloring kind {self.kind!r}")

    def __call__(self, v) -> bool:
        return coloring_test(self, v)

    @property
    def spec(self) -> str:
        if self.kind == PULLBACK:
            return f"{PULLBACK}:{self.base.spec}"
        if not self.params:
            return self.kind
        return f"{self.kind}:" + ",".join(str(p) for p in self.params)


def residue_class(m: int, r: int) -> Coloring:
    return Coloring(RESIDUE, (m, r))


def double_exp_binary() -> Coloring:
    return Coloring(DOUBLE_EXP_BINARY)


def nth_power_of_y(n: int) -> Coloring:
    return Coloring(NTH_POWER_OF_Y, (n,))


def predicate(name: str, fn: Callable = None) -> Coloring:
    return Coloring(PREDICATE, (name,), predicate=fn)


def pullback_by_det(base: Coloring) -> Coloring:
    """The coloring det^-1[X] on matrices."""
    return Coloring(PULLBACK, (), MATRIX, base=base)


def is_theta(v, n: int) -> bool:
    k = as_natural(v)
    if k is None:
        return False
    root, exact = integer_nth_root(k, n)
    return exact and in_Y(root)


def coloring_test(x: Coloring, v) -> bool:
    v = normalize(v)
    if sort_of(v) != x.phylum:
        raise SortMismatch(f"coloring on sort {x.phylum} applied to a sort {sort_of(v)} element")
    if x.kind == RESIDUE:
        m, r = x.params
        k = as_natural(v)
        return k is not None and k % m == r
    if x.kind == DOUBLE_EXP_BINARY:
        return in_Y(v)
    if x.kind == NTH_POWER_OF_Y:
        return is_theta(v, x.params[0])
    if x.kind == PULLBACK:
        return coloring_test(x.base, det(v))
    return bool(x.predicate(v))


def parse_coloring(text: str) -> Coloring:
    """Parse ``kind`` or ``kind:p1,p2`` (e.g. ``residue:5,1``, ``theta:2``, ``predicate:even``)."""
    kind, _, rest = text.strip().partition(":")
    kind = KIND_ALIASES.get(kind, kind)
    if kind == PULLBACK:
        base = parse_coloring(rest)
        if base.phylum != SCALAR:
            raise SchemaError(f"pullback base must color scalars: {text!r}", field="coloring")
        return pullback_by_det(base)
    params = [p.strip() for p in rest.split(",") if p.strip()] if rest else []
    try:
        if kind == RESIDUE:
            if len(params) != 2:
                raise ValueError("residue needs modulus and residue")
            return residue_class(int(params[0]), int(params[1]))
        if kind == DOUBLE_EXP_BINARY:
            if params:
                raise ValueError("y takes no parameters")
            return double_exp_binary()
        if kind == NTH_POWER_OF_Y:
            if len(params) != 1:
                raise ValueError("theta needs an exponent")
            return nth_power_of_y(int(params[0]))
        if kind == PREDICATE:
            if len(params) != 1:
                raise ValueError("predicate needs a name")
            return predicate(params[0])
    except ValueError as exc:
        raise SchemaError(f"bad coloring {text!r}: {exc}", field="coloring") from None
    raise SchemaError(f"unknown coloring kind {kind!r}", field="coloring")
