import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from hetramsey.config import (
    ExperimentConfig,
    build_sequence,
    config_echo,
    config_from_mapping,
    parse_config,
    parse_sequence_spec,
    serialize_config,
)
from hetramsey.core import MATRIX, SCALAR
from hetramsey.errors import CapExceeded, SchemaError
from hetramsey.matrices import MAX_BITS_ENV
from hetramsey.verifier import THEOREM_IDS, VERIFIED, verify_ubr_theorem

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def test_defaults():
    cfg = parse_config('{theorem: "mod5"}')
    assert (cfg.command, cfg.n, cfg.index_bound, cfg.out_len, cfg.max_arity, cfg.max_depth) == (
        "verify", 2, 3, 2, 4, 3,
    )


def test_ubr_example_round_trips_through_the_verifier():
    cfg = parse_config('{theorem: "ubr", n: 1, indices: [1,2]}')
    r = verify_ubr_theorem(cfg.n, indices=cfg.indices)
    assert r.status == VERIFIED
    assert {("20", "in"), ("64", "out")} <= {(e.element, e.verdict) for e in r.exhibits}


def test_bad_coloring_is_a_schema_error():
    with pytest.raises(SchemaError) as err:
        parse_config("command: search-homogeneous\nsequence: 'list:1,2'\ncoloring: 'rainbow:3'\n")
    assert err.value.field == "coloring"
    assert err.value.line == 3


@pytest.mark.parametrize("doc,field", [
    ("theorem: nope", "theorem"),
    ("theorem: mod5\nn: 0", None),
    ("theorem: mod5\nbogus: 1", "bogus"),
    ("theorem: ubr\nvariant: weird", "variant"),
    ("theorem: mod5\nindices: [2, 1]", "indices"),
    ("command: fr-set\ntheorem: mod5", None),
    ("command: verify", None),
])
def test_schema_errors(doc, field):
    with pytest.raises(SchemaError) as err:
        parse_config(doc)
    if field is not None:
        assert err.value.field == field


def test_yaml_syntax_error_has_line():
    with pytest.raises(SchemaError) as err:
        parse_config("theorem: mod5\nn: [1,\n")
    assert err.value.line is not None


def test_caps():
    with pytest.raises(CapExceeded):
        parse_config("theorem: ubr\nindex_bound: 7")
    with pytest.raises(CapExceeded):
        parse_config("theorem: mod5\nindex_bound: 13")
    with pytest.raises(CapExceeded):
        parse_config("theorem: mod5\nmax_arity: 40")
    parse_config("theorem: mod5\nindex_bound: 12")


def test_env_cap_loosens_D_indices(monkeypatch):
    monkeypatch.setenv(MAX_BITS_ENV, "256")
    assert parse_config("theorem: ubr\nindex_bound: 8").index_list()[-1] == 8


def test_coloring_must_match_word():
    with pytest.raises(SchemaError):
        config_from_mapping({"command": "search-homogeneous", "coloring": "y", "word": {"first": 1}})
    config_from_mapping({"command": "search-homogeneous", "coloring": "pullback:y", "word": {"first": 1}})


def test_report_documents_are_accepted():
    cfg = parse_config("theorem: final\nn: 3")
    doc = json.dumps({"status": "Verified", "config": config_echo(cfg)})
    assert parse_config(doc) == cfg


def test_sequence_specs():
    assert parse_sequence_spec("G:1,2") == {"kind": "G", "indices": [1, 2]}
    assert parse_sequence_spec("list:1,2,3")["items"] == ["1", "2", "3"]
    with pytest.raises(SchemaError):
        parse_sequence_spec("H:1")
    cfg = config_from_mapping({"command": "fr-set", "sequence": "diag:1,2", "n": 2})
    b = build_sequence(cfg)
    assert b.word.prefix == (MATRIX, MATRIX)
    cfg = config_from_mapping({"command": "fr-set", "sequence": "G:2,5", "n": 1})
    assert [str(v) for v in build_sequence(cfg).items] == ["1", "diag(11)", "1", "diag(26)"]
    cfg = config_from_mapping({"command": "fr-set", "sequence": {"kind": "explicit", "items": [3, [[1, 2], [3, 4]]]}})
    assert build_sequence(cfg).word.prefix == (SCALAR, MATRIX)
    with pytest.raises(SchemaError):
        build_sequence(config_from_mapping({"command": "fr-set", "sequence": {"kind": "explicit", "items": [[[1]]]}}))


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.yaml")), ids=lambda p: p.stem)
def test_example_configs_parse(path):
    parse_config(path.read_text())


def test_one_example_per_theorem():
    assert {p.stem for p in CONFIG_DIR.glob("*.yaml")} >= set(THEOREM_IDS)


configs = st.builds(
    dict,
    theorem=st.sampled_from(THEOREM_IDS),
    n=st.integers(1, 3),
    index_bound=st.integers(1, 5),
    out_len=st.integers(1, 4),
    max_arity=st.integers(1, 5),
    max_depth=st.integers(0, 4),
    seed=st.integers(0, 100),
    ops=st.one_of(st.none(), st.lists(st.sampled_from(["add", "mul", "fadd", "fmul", "det"]), min_size=1, unique=True)),
    coloring=st.one_of(st.none(), st.sampled_from(["y", "theta:2", "residue:5,1", "predicate:even"])),
)


@given(configs)
def test_config_round_trip(data):
    cfg = config_from_mapping(data)
    assert parse_config(serialize_config(cfg)) == cfg
    assert isinstance(cfg, ExperimentConfig)
