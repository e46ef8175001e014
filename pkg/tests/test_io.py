from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpss import Point, PointSet, bundle_arrangement, grid, parse_instance
from gpss.errors import ParseError
from gpss.io import emit_lines, emit_points, format_coord, read_instance

coords = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


def test_format_coord():
    assert format_coord(3) == "3"
    assert format_coord(Fraction(-6, 4)) == "-3/2"


def test_points_round_trip_with_header():
    text = emit_points(grid(3), "grid", {"m": 3})
    assert text.splitlines()[:3] == ["# gpss points", "# family: grid", '# params: {"m": 3}']
    inst = parse_instance(text)
    assert inst.kind == "points" and inst.points == grid(3)
    assert inst.family == "grid" and inst.params == {"m": 3}


def test_lines_round_trip():
    lines = bundle_arrangement(9)
    inst = parse_instance(emit_lines(lines, "bundles", {"n": 9}))
    assert inst.kind == "lines" and inst.lines == lines and inst.n == 9


@given(st.lists(st.tuples(coords, coords), unique=True, max_size=30))
def test_rational_round_trip(pairs):
    pts = PointSet(Point(x, y) for x, y in pairs)
    assert parse_instance(emit_points(pts)).points == pts


def test_comments_blank_lines_and_kind_inference():
    inst = parse_instance("\n# hand written\n1/2 3  # trailing\n\n-4 0\n")
    assert inst.kind == "points"
    assert list(inst.points) == [Point(Fraction(1, 2), 3), Point(-4, 0)]
    inst = parse_instance("2 -4 6\n0 3 1\n")
    assert inst.kind == "lines" and inst.lines == ((1, -2, 3), (0, 3, 1))
    assert parse_instance("").kind == "points"


@pytest.mark.parametrize("text, lineno", [
    ("0 0\n1 x\n", 2),
    ("0 0\n2/4 1\n", 2),
    ("0 0\n1/0 1\n", 2),
    ("0 0\n1 2 3 4\n", 2),
    ("0 0\n1 1\n0 0\n", 3),
    ("0 0\n1 2 3\n", 2),
    ("1 2 3\n1/2 1 1\n", 2),
    ("1 2 3\n2 4 6\n", 2),
    ("0 0 5\n", 1),
    ("# params: {bad\n", 1),
    ("1.5 2\n", 1),
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as err:
        parse_instance(text, "f.txt")
    assert err.value.lineno == lineno
    assert f"f.txt:{lineno}:" in str(err.value)


def test_read_instance(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(emit_points(grid(2)))
    assert read_instance(path).points == grid(2)
    binary = tmp_path / "b.bin"
    binary.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(ParseError):
        read_instance(binary)
