from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from quiverhom import homology as H
from quiverhom.dsl import INTRO_TEXT, ParseError, emit, from_quiver, parse
from quiverhom.exactla import Field
from quiverhom.rep import find_isomorphism, projective, random_submodule_quotient

from conftest import seeded_algebras

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_intro_parses():
    af = parse(INTRO_TEXT)
    assert af.vertices == ["1", "2", "3", "4"]
    assert [a[0] for a in af.arrows] == ["alpha", "beta", "gamma", "delta"]
    assert af.relations == [[(1, ("delta", "gamma"))], [(1, ("alpha", "delta"))]]
    assert af.e_indices() == [0, 2]
    assert af.algebra().dim == 11


def test_fixture_file_matches_constant():
    assert parse((FIXTURES / "intro.qh").read_text()).algebra().labels() == parse(INTRO_TEXT).algebra().labels()


def test_hand_written_modules():
    af = parse((FIXTURES / "intro_modules.qh").read_text())
    A = af.algebra()
    M = af.build_module(A, "M")
    assert find_isomorphism(M, projective(A, 0)) is not None
    N = af.build_module(A, "N")
    res = H.minimal_resolution(N)
    assert res.terms == [(0, 0, 0, 1), (0, 1, 0, 0)]


def test_relation_coefficients():
    text = """algebra over Q
vertices: 1
arrows: x: 1 -> 1, y: 1 -> 1
relations: x*y - 2/3*y*x, x*x, y*y
"""
    af = parse(text)
    assert af.relations[0] == [(1, ("x", "y")), (Fraction(-2, 3), ("y", "x"))]
    assert af.algebra().dim == 4


def test_field_line():
    assert parse("algebra over F5\nvertices: 1\n").field == Field(5)
    assert parse("vertices: 1\n", default_field=Field(7)).field == Field(7)


@pytest.mark.parametrize("text, line, col, fragment", [
    ("vertices: 1, 2\narrows: a: 1 -> 3\n", 2, 17, "unknown vertex"),
    ("vertices: 1, 2\narrows: a: 1 -> 2, b: 1 -> 2\nrelations: b*a\n", 3, 12, "not a path"),
    ("vertices: 1\narrows: a: 1 -> 1\nrelations: a\n", 3, 12, "length 1"),
    ("vertices: 1, 1\n", 1, 14, "duplicate vertex"),
    ("algebra over R\nvertices: 1\n", 1, 14, ""),
    ("vertices: 1\nfoo: 2\n", 2, 1, "unknown key"),
    ("vertices: 1\nmodule M\n  dims: 1=1\n", 2, 1, "missing 'end'"),
    ("vertices: 1\narrows: a: 1 -> 1\nrelations: a*a + a*a*q\n", 3, 18, "unknown arrow"),
    ("vertices: 1\narrows: a: 1 -> 1\nrelations: a*a a*a\n", 3, 16, "expected + or -"),
])
def test_parse_errors_report_position(text, line, col, fragment):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line
    assert exc.value.col == col
    assert fragment in exc.value.message


def test_module_matrix_shape_checked():
    text = INTRO_TEXT + "module M\n  dims: 1=1, 4=2\n  delta: [[1]]\nend\n"
    af = parse(text)
    with pytest.raises(ParseError, match="must be 2x1"):
        af.build_module(af.algebra(), "M")


def test_emit_round_trip_intro():
    af = parse((FIXTURES / "intro_modules.qh").read_text())
    again = parse(emit(af))
    assert again == af
    assert emit(again) == emit(af)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_emit_round_trip_random(seed):
    (q, ideal, A), = seeded_algebras(1, seed=seed)
    af = from_quiver(q, ideal, e_set=[q.vertices[0]], cap=5)
    back = parse(emit(af))
    assert back == af
    assert back.algebra().labels() == A.labels()
    assert back.algebra().mult == A.mult


def test_translation_fixture():
    af = parse((FIXTURES / "cyclic_translation.qh").read_text())
    assert af.tau == {"0": "2", "1": "0", "2": "1"}
    assert af.distinguished == ["0"]
