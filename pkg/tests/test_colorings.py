import pytest
from hypothesis import given, strategies as st

from hetramsey.colorings import (
    coloring_test,
    double_exp_binary,
    is_theta,
    nth_power_of_y,
    parse_coloring,
    predicate,
    pullback_by_det,
    residue_class,
)
from hetramsey.core import Matrix
from hetramsey.errors import SchemaError, SortMismatch
from hetramsey.matrices import D_matrix, G_matrix
from oracles import y_members_upto


def test_residue_examples():
    x = residue_class(5, 1)
    assert x(66) and not x(17) and x(6)
    assert x.spec == "residue:5,1"


def test_y_examples():
    y = double_exp_binary()
    assert y(20) and not y(64) and not y(0)


def test_theta_examples():
    t = nth_power_of_y(2)
    assert t(400) and not t(272) and not t(65936)
    assert not t(26_214_400)
    assert not nth_power_of_y(3)(16_785_216)
    assert nth_power_of_y(3)(8000)


def test_non_naturals_are_outside_Y_based_colorings():
    for v in ("1/2", -20, 0):
        assert not double_exp_binary()(v) and not is_theta(v, 2)


@given(st.integers(0, 5000))
def test_y_matches_enumeration_oracle(k):
    assert double_exp_binary()(k) == (k in y_members_upto(5001))


@given(st.integers(1, 300), st.integers(1, 3))
def test_theta_of_y_powers(k, n):
    assert is_theta(k**n, n) == (k in y_members_upto(301))


def test_pullback_and_phylum_check():
    x = pullback_by_det(residue_class(5, 1))
    assert x(G_matrix(1, 2)) and x(D_matrix(1, 2)) and not x(Matrix([[2, 0], [0, 1]]))
    with pytest.raises(SortMismatch):
        coloring_test(residue_class(5, 1), Matrix([[1]]))
    with pytest.raises(SortMismatch):
        coloring_test(x, 6)


def test_named_predicates():
    assert predicate("even")(4) and not predicate("even")(3)
    assert predicate("always")(7) and not predicate("never")(7)


@pytest.mark.parametrize("text,expect", [
    ("residue:5,1", "residue:5,1"), ("y", "y"), ("theta:3", "theta:3"),
    ("predicate:odd", "predicate:odd"), ("pullback:residue:5,1", "pullback:residue:5,1"),
])
def test_parse_round_trip(text, expect):
    assert parse_coloring(text).spec == expect
    assert parse_coloring(parse_coloring(text).spec) == parse_coloring(text)


@pytest.mark.parametrize("text", ["residue:0,1", "residue:5", "theta:0", "predicate:prime", "nope", ""])
def test_parse_errors(text):
    with pytest.raises(SchemaError):
        parse_coloring(text)
