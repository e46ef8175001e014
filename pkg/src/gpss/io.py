"""Plain-text instance files.

Point files hold one point per line as two whitespace-separated fields, each
an integer or a reduced fraction ``a/b``. Line files hold one line per record
as three integers ``A B C`` for ``A*x + B*y + C = 0``. ``#`` starts a comment
and blank lines are ignored. Files written here start with a small comment
header naming the kind, the generating family and its parameters::

    # gpss points
    # family: grid
    # params: {"m": 3}
    0 0
    0 1
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from .errors import ParseError
from .geometry import LineKey, Point, PointSet, as_line_set, canonical_line

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_INTEGER = re.compile(r"^[+-]?\d+$")


@dataclass
class Instance:
    kind: str  # "points" or "lines"
    points: PointSet | None = None
    lines: tuple[LineKey, ...] | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points) if self.kind == "points" else len(self.lines)


def format_coord(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _parse_coord(token: str, lineno: int, path) -> Fraction | int:
    m = _RATIONAL.match(token)
    if not m:
        raise ParseError(f"not an integer or a/b rational: {token!r}", lineno, path)
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ParseError(f"zero denominator in {token!r}", lineno, path)
    if gcd(num, den) != 1 or den == 1:
        raise ParseError(f"rational {token!r} is not in lowest terms", lineno, path)
    return Fraction(num, den)


def _header(kind: str, family, params) -> list[str]:
    out = [f"# gpss {kind}"]
    if family:
        out.append(f"# family: {family}")
    if params:
        out.append("# params: " + json.dumps(params, sort_keys=True, default=str))
    return out


def emit_points(points, family: str | None = None, params: dict | None = None) -> str:
    rows = _header("points", family, params)
    rows += [f"{format_coord(p.x)} {format_coord(p.y)}" for p in PointSet(points)]
    return "\n".join(rows) + "\n"


def emit_lines(lines, family: str | None = None, params: dict | None = None) -> str:
    rows = _header("lines", family, params)
    rows += [f"{a} {b} {c}" for a, b, c in as_line_set(lines)]
    return "\n".join(rows) + "\n"


def emit_instance(inst: Instance) -> str:
    if inst.kind == "points":
        return emit_points(inst.points, inst.family, inst.params)
    return emit_lines(inst.lines, inst.family, inst.params)


def parse_instance(text: str, path=None) -> Instance:
    """Parse a point or line file; the kind follows the header or the field count."""
    kind = None
    family = None
    params: dict = {}
    points: list[Point] = []
    lines: list[LineKey] = []
    seen_points: dict[Point, int] = {}
    seen_lines: dict[LineKey, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        if not body.strip():
            meta = comment.strip()
            if meta in ("gpss points", "gpss lines"):
                kind = kind or meta.split()[1]
            elif meta.startswith("family:"):
                family = meta[len("family:"):].strip() or None
            elif meta.startswith("params:"):
                try:
                    params = json.loads(meta[len("params:"):])
                except json.JSONDecodeError as exc:
                    raise ParseError(f"bad params header: {exc}", lineno, path) from None
            continue
        fields = body.split()
        row_kind = {2: "points", 3: "lines"}.get(len(fields))
        if row_kind is None:
            raise ParseError(f"expected 2 (point) or 3 (line) fields, got {len(fields)}", lineno, path)
        kind = kind or row_kind
        if row_kind != kind:
            raise ParseError(f"{row_kind[:-1]} record in a {kind} file", lineno, path)

        if kind == "points":
            p = Point(_parse_coord(fields[0], lineno, path), _parse_coord(fields[1], lineno, path))
            if p in seen_points:
                raise ParseError(f"duplicate point (first on line {seen_points[p]})", lineno, path)
            seen_points[p] = lineno
            points.append(p)
        else:
            for tok in fields:
                if not _INTEGER.match(tok):
                    raise ParseError(f"line coefficients must be integers: {tok!r}", lineno, path)
            try:
                key = canonical_line(*(int(tok) for tok in fields))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, path) from None
            if key in seen_lines:
                raise ParseError(f"duplicate line (first on line {seen_lines[key]})", lineno, path)
            seen_lines[key] = lineno
            lines.append(key)

    kind = kind or "points"
    if kind == "points":
        return Instance("points", points=PointSet(points), family=family, params=params)
    return Instance("lines", lines=tuple(lines), family=family, params=params)


def read_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except UnicodeDecodeError:
        raise ParseError("file is not text", 0, path) from None
    return parse_instance(text, path)


def write_text(path, text: str) -> None:
    Path(path).write_text(text)
