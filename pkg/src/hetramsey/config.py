"""Experiment configuration: schema, parsing, serialization.

Documents are YAML (JSON is accepted as a subset).  A report document can be
passed back in; its echoed ``config`` section is used.
"""
from __future__ import annotations

import json
from typing import List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from .colorings import parse_coloring
from .core import MATRIX, SCALAR, Matrix, SortedPrefix, SortWord, resolve_sort, scalar, sort_of, sorted_prefix
from .errors import CapExceeded, SchemaError
from .matrices import G_INDEX_CAP, D_matrix, G_matrix, canonical_op_name, d_index_cap, diag_embed
from .reduction import Bounds, schedule_sort_word
from .verifier import THEOREM_IDS, UBR_VARIANTS, witness_sequence

COMMANDS = ("enumerate-terms", "fr-set", "check-reduction", "search-homogeneous", "verify")
SEQUENCE_KINDS = ("G", "D", "list", "diag", "explicit")

MAX_ORDER = 8
MAX_OUT_LEN = 8
MAX_ARITY = 8
MAX_DEPTH = 8
MAX_LEN_BOUND = 6
MAX_TRIALS = 1000


class SequenceSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["G", "D", "list", "diag", "explicit"]
    indices: Optional[List[int]] = None
    items: Optional[List[Union[int, str, List[List[Union[int, str]]]]]] = None
    scalar_slot: Union[int, str] = 1

    @model_validator(mode="after")
    def _check(self):
        if self.kind in ("G", "D"):
            if self.items is not None:
                raise ValueError(f"{self.kind} sequences take indices, not items")
            if self.indices is not None:
                if not self.indices or any(i < 0 for i in self.indices):
                    raise ValueError("indices must be a nonempty list of naturals")
                if list(self.indices) != sorted(set(self.indices)):
                    raise ValueError("indices must be strictly increasing")
        else:
            if not self.items:
                raise ValueError(f"{self.kind} sequences need a nonempty item list")
        return self

    @property
    def spec(self) -> str:
        if self.kind in ("G", "D"):
            return self.kind + (":" + ",".join(map(str, self.indices)) if self.indices else "")
        return self.kind + ":" + ",".join(str(v) for v in self.items)


class WordSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    first: int = 0
    recurring: List[int] = [0, 1]
    length: Optional[int] = None

    @field_validator("first", mode="before")
    @classmethod
    def _sort(cls, v):
        return resolve_sort(v)

    @field_validator("recurring", mode="before")
    @classmethod
    def _sorts(cls, v):
        return sorted({resolve_sort(s) for s in v})


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal["enumerate-terms", "fr-set", "check-reduction", "search-homogeneous", "verify"] = "verify"
    theorem: Optional[str] = None
    n: int = 2
    index_bound: int = 3
    indices: Optional[List[int]] = None
    ops: Optional[List[str]] = None
    sequence: Optional[SequenceSpec] = None
    target_sequence: Optional[SequenceSpec] = None
    word: Optional[WordSpec] = None
    coloring: Optional[str] = None
    out_len: int = 2
    max_arity: int = 4
    max_depth: int = 3
    len_bound: int = 3
    variant: str = "add-fmul"
    scalar_only: bool = False
    trials: int = 20
    seed: int = 0
    prefix_len: int = 3
    arity: Optional[int] = None
    codomain: Optional[int] = None

    @field_validator("theorem")
    @classmethod
    def _theorem(cls, v):
        if v is not None and v not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id {v!r}; expected one of {list(THEOREM_IDS)}")
        return v

    @field_validator("ops")
    @classmethod
    def _ops(cls, v):
        if v is None:
            return v
        return [canonical_op_name(o) for o in v]

    @field_validator("coloring")
    @classmethod
    def _coloring(cls, v):
        if v is None:
            return v
        return parse_coloring(v).spec

    @field_validator("variant")
    @classmethod
    def _variant(cls, v):
        if v not in UBR_VARIANTS:
            raise ValueError(f"unknown variant {v!r}; expected one of {list(UBR_VARIANTS)}")
        return v

    @field_validator("codomain", mode="before")
    @classmethod
    def _codomain(cls, v):
        return None if v is None else resolve_sort(v)

    @field_validator("sequence", "target_sequence", mode="before")
    @classmethod
    def _seq(cls, v):
        if isinstance(v, str):
            return parse_sequence_spec(v)
        return v

    @field_validator("indices")
    @classmethod
    def _indices(cls, v):
        if v is None:
            return v
        if not v or any(i < 1 for i in v) or list(v) != sorted(set(v)):
            raise ValueError("indices must be a nonempty strictly increasing list of positive integers")
        return v

    @model_validator(mode="after")
    def _consistency(self):
        if self.command == "verify" and self.theorem is None:
            raise ValueError("the verify command needs a theorem id")
        if self.command != "verify" and self.theorem is not None:
            raise ValueError(f"theorem is only meaningful for verify, not {self.command}")
        for name in ("n", "index_bound", "out_len", "max_arity", "len_bound", "trials", "prefix_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")
        if self.coloring is not None and self.word is not None:
            phylum = parse_coloring(self.coloring).phylum
            if phylum != self.word.first:
                raise ValueError(f"coloring acts on sort {phylum} but the word starts with sort {self.word.first}")
        return self

    # -- derived objects ------------------------------------------------------

    def bounds(self) -> Bounds:
        return Bounds(self.max_arity, self.max_depth)

    def index_list(self) -> list:
        return list(self.indices) if self.indices else list(range(1, self.index_bound + 1))


def parse_sequence_spec(text: str) -> dict:
    """``G`` / ``D:1,2,3`` / ``list:1,2,3`` / ``diag:1,2`` as a sequence mapping."""
    kind, _, rest = text.strip().partition(":")
    parts = [p.strip() for p in rest.split(",") if p.strip()]
    if kind in ("G", "D"):
        try:
            return {"kind": kind, "indices": [int(p) for p in parts] or None}
        except ValueError:
            raise SchemaError(f"bad index list in {text!r}", field="sequence") from None
    if kind in ("list", "diag"):
        return {"kind": kind, "items": parts}
    raise SchemaError(f"unknown sequence kind {kind!r}; expected one of {list(SEQUENCE_KINDS)}", field="sequence")


def _check_caps(cfg: ExperimentConfig):
    caps = [
        ("n", cfg.n, MAX_ORDER),
        ("out_len", cfg.out_len, MAX_OUT_LEN),
        ("max_arity", cfg.max_arity, MAX_ARITY),
        ("max_depth", cfg.max_depth, MAX_DEPTH),
        ("len_bound", cfg.len_bound, MAX_LEN_BOUND),
        ("trials", cfg.trials, MAX_TRIALS),
        ("prefix_len", cfg.prefix_len, MAX_OUT_LEN),
    ]
    d_cap = d_index_cap()
    uses_d = cfg.theorem in ("ubr", "final", "probe") or (cfg.sequence is not None and cfg.sequence.kind == "D")
    index_cap = min(d_cap, G_INDEX_CAP) if uses_d else G_INDEX_CAP
    if cfg.theorem == "pythagorean":
        index_cap = 2 * G_INDEX_CAP
    caps.append(("indices" if cfg.indices else "index_bound", max(cfg.index_list()), index_cap))
    if cfg.sequence is not None and cfg.sequence.indices:
        seq_cap = d_cap if cfg.sequence.kind == "D" else G_INDEX_CAP
        caps.append(("sequence.indices", max(cfg.sequence.indices), seq_cap))
    for name, value, cap in caps:
        if value > cap:
            raise CapExceeded(f"{name}={value} exceeds the cap {cap}", field=name)


def _key_lines(text: str) -> dict:
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {k.value: k.start_mark.line + 1 for k, _ in node.value if isinstance(k, yaml.ScalarNode)}


def parse_config(text: str) -> ExperimentConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise SchemaError(f"not a valid document: {exc}", line=mark.line + 1 if mark else None) from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise SchemaError("config document must be a mapping")
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    return config_from_mapping(data, _key_lines(text))


def config_from_mapping(data: dict, lines: Optional[dict] = None) -> ExperimentConfig:
    lines = lines or {}
    if "theorem" in data and "command" not in data:
        data = {**data, "command": "verify"}
    try:
        cfg = ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        err = exc.errors()[0]
        loc = ".".join(str(p) for p in err["loc"]) or None
        top = str(err["loc"][0]) if err["loc"] else None
        raise SchemaError(err["msg"], field=loc, line=lines.get(top)) from None
    except SchemaError as exc:
        raise SchemaError(str(exc), field=exc.field, line=lines.get(exc.field)) from None
    _check_caps(cfg)
    return cfg


def serialize_config(cfg: ExperimentConfig) -> str:
    return json.dumps(config_echo(cfg), sort_keys=True, indent=2)


def config_echo(cfg: ExperimentConfig) -> dict:
    return cfg.model_dump(mode="json")


# -- building runtime objects -------------------------------------------------------


def _parse_item(v, n: int):
    if isinstance(v, list):
        m = Matrix(v)
        if m.order != n:
            raise SchemaError(f"explicit matrix has order {m.order}, expected n={n}", field="sequence")
        return m
    return scalar(v)


def build_sequence(cfg: ExperimentConfig, spec: Optional[SequenceSpec] = None):
    """The sorted prefix described by ``spec`` (default: the config's sequence)."""
    spec = cfg.sequence if spec is None else spec
    if spec is None:
        raise SchemaError("this command needs a sequence", field="sequence")
    if spec.kind in ("G", "D"):
        indices = spec.indices or cfg.index_list()
        word = _word(cfg, 2 * len(indices), default_recurring=[SCALAR, MATRIX])
        make = G_matrix if spec.kind == "G" else D_matrix
        rank_to_index = dict(enumerate(indices, start=1))
        if sum(1 for s in word.prefix if s == MATRIX) > len(indices):
            raise SchemaError("sort word has more matrix slots than indices", field="word")
        return witness_sequence(word, lambda k: make(rank_to_index[k], cfg.n), spec.scalar_slot)
    if spec.kind == "list":
        items = [scalar(v) for v in spec.items]
    elif spec.kind == "diag":
        items = [diag_embed(scalar(v), cfg.n) for v in spec.items]
    else:
        items = [_parse_item(v, cfg.n) for v in spec.items]
    if cfg.word is not None and spec is cfg.sequence:
        word = _word(cfg, len(items), default_recurring=sorted({sort_of(x) for x in items}))
        return SortedPrefix(tuple(items), word)
    return sorted_prefix(items)


def _word(cfg: ExperimentConfig, length: int, default_recurring) -> SortWord:
    if cfg.word is None:
        return schedule_sort_word(default_recurring, default_recurring[0], length)
    w = cfg.word
    return schedule_sort_word(w.recurring, w.first, w.length or length)
