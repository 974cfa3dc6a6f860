"""Structure and action file formats, plus deterministic reports.

Structure files are UTF-8 text with exact rational literals:

    version = 1
    name = zeuner-2            (optional)
    points = [0, 1/2, 1]
    0 * 0 = 1*0
    0 * 1/2 = 1*1/2
    ...

Every ordered point pair appears exactly once and every entry must parse
to a probability measure.  Action files hold one matrix per point, written
column-major with each column summing to 1:

    version = 1
    matrix a = [[1/2, 1/2], [1/2, 1/2]]

Point names may not contain whitespace or the characters * + = , [ ] #.
Round-trips are exact: parse(emit(t)) reproduces t field for field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .actions import AffineAction, Matrix
from .core import ConvTable, Semihypergroup
from .errors import StructureParseError
from .measures import FiniteSpace, format_measure, format_rational, parse_measure, parse_rational

FORMAT_VERSION = "1"
_RESERVED = set("*+=,[]#")


def _valid_point_name(name: str) -> bool:
    return bool(name) and not any(ch.isspace() or ch in _RESERVED for ch in name)


# ---------------------------------------------------------------------------
# structure documents

def emit_structure(table: ConvTable | Semihypergroup, name: str = "") -> str:
    """Serialize a convolution table; entries in row-major point order."""
    if isinstance(table, Semihypergroup):
        name = name or table.name
        table = table.conv
    pts = table.space.points
    for p in pts:
        if not _valid_point_name(p):
            raise StructureParseError(f"point name {p!r} cannot be serialized")
    lines = [f"version = {FORMAT_VERSION}"]
    if name:
        lines.append(f"name = {name}")
    lines.append("points = [" + ", ".join(pts) + "]")
    for x in pts:
        for y in pts:
            lines.append(f"{x} * {y} = {format_measure(table.entry(x, y))}")
    return "\n".join(lines) + "\n"


@dataclass
class StructureDocument:
    table: ConvTable
    name: str = ""
    version: str = FORMAT_VERSION


def parse_structure(text: str) -> StructureDocument:
    """Parse a structure document; errors carry the offending line number."""
    space: FiniteSpace | None = None
    name = ""
    version = ""
    entries: dict[tuple[str, str], object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if _is_keyline(line, "version"):
            version = _keyvalue(line, "version", lineno)
            continue
        if _is_keyline(line, "name"):
            name = _keyvalue(line, "name", lineno)
            continue
        if _is_keyline(line, "points"):
            if space is not None:
                raise StructureParseError("duplicate points declaration", lineno)
            body = _keyvalue(line, "points", lineno)
            if not (body.startswith("[") and body.endswith("]")):
                raise StructureParseError("points must be a [a, b, ...] list", lineno)
            names = [p.strip() for p in body[1:-1].split(",") if p.strip()]
            if not names:
                raise StructureParseError("empty point list", lineno)
            for p in names:
                if not _valid_point_name(p):
                    raise StructureParseError(f"invalid point name {p!r}", lineno)
            try:
                space = FiniteSpace(names)
            except ValueError as exc:
                raise StructureParseError(str(exc), lineno) from None
            continue
        # table entry:  x * y = measure
        if space is None:
            raise StructureParseError("table entry before the points declaration", lineno)
        if "=" not in line:
            raise StructureParseError(f"unrecognized line {line!r}", lineno)
        head, _, body = line.partition("=")
        parts = head.split("*")
        if len(parts) != 2:
            raise StructureParseError("entry key must be 'x * y'", lineno)
        x, y = parts[0].strip(), parts[1].strip()
        if x not in space or y not in space:
            raise StructureParseError(f"unknown point in pair ({x}, {y})", lineno)
        if (x, y) in entries:
            raise StructureParseError(f"duplicate entry for pair ({x}, {y})", lineno)
        try:
            m = parse_measure(space, body.strip())
        except Exception as exc:
            raise StructureParseError(str(exc), lineno) from None
        if not m.is_probability:
            raise StructureParseError(
                f"mass {m.total_mass()} != 1 or negative coefficient at ({x}, {y})",
                lineno,
            )
        entries[(x, y)] = m
    if space is None:
        raise StructureParseError("missing points declaration")
    missing = [
        (x, y) for x in space.points for y in space.points if (x, y) not in entries
    ]
    if missing:
        raise StructureParseError(f"missing entry for pair {missing[0]}")
    table = ConvTable(
        space,
        tuple(tuple(entries[(x, y)] for y in space.points) for x in space.points),
    )
    return StructureDocument(table, name, version or FORMAT_VERSION)


def _is_keyline(line: str, key: str) -> bool:
    head, eq, _ = line.partition("=")
    return bool(eq) and head.strip() == key


def _keyvalue(line: str, key: str, lineno: int) -> str:
    head, eq, value = line.partition("=")
    if head.strip() != key or not eq:
        raise StructureParseError(f"malformed {key} line", lineno)
    return value.strip()


# ---------------------------------------------------------------------------
# action documents

def emit_action(a: AffineAction) -> str:
    lines = [f"version = {FORMAT_VERSION}"]
    for x in a.semihypergroup.points:
        m = a.matrix(x)
        cols = []
        for j in range(a.state_dim):
            cols.append("[" + ", ".join(format_rational(m[i][j]) for i in range(a.state_dim)) + "]")
        lines.append(f"matrix {x} = [" + ", ".join(cols) + "]")
    return "\n".join(lines) + "\n"


def parse_action(text: str, S: Semihypergroup) -> AffineAction:
    """Parse an action file against a structure; matrices stay unverified
    (callers run check_action_law and report its verdict)."""
    mats: dict[str, Matrix] = {}
    dim: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if _is_keyline(line, "version"):
            continue
        if not line.startswith("matrix"):
            raise StructureParseError(f"unrecognized line {line!r}", lineno)
        head, _, body = line.partition("=")
        point = head[len("matrix"):].strip()
        if point not in S.space:
            raise StructureParseError(f"unknown point {point}", lineno)
        if point in mats:
            raise StructureParseError(f"duplicate matrix for point {point}", lineno)
        cols = _parse_nested_list(body.strip(), lineno)
        d = len(cols)
        if any(len(c) != d for c in cols):
            raise StructureParseError("matrix is not square", lineno)
        if dim is None:
            dim = d
        elif d != dim:
            raise StructureParseError("matrices have inconsistent sizes", lineno)
        mats[point] = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    missing = [x for x in S.points if x not in mats]
    if missing:
        raise StructureParseError(f"missing matrix for point {missing[0]}")
    assert dim is not None
    return AffineAction(S, dim, mats, "simplex", "file")


def _parse_nested_list(body: str, lineno: int) -> list[list[Fraction]]:
    if not (body.startswith("[") and body.endswith("]")):
        raise StructureParseError("matrix literal must be [[...], [...]]", lineno)
    inner = body[1:-1].strip()
    cols: list[list[Fraction]] = []
    depth = 0
    token = ""
    current: list[Fraction] = []
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                current = []
                token = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                if token.strip():
                    current.append(_rational_or_error(token, lineno))
                cols.append(current)
                token = ""
                continue
            if depth < 0:
                raise StructureParseError("unbalanced brackets", lineno)
        elif ch == "," and depth == 1:
            if token.strip():
                current.append(_rational_or_error(token, lineno))
            token = ""
            continue
        elif ch == "," and depth == 0:
            continue
        if depth >= 1:
            token += ch
    if depth != 0:
        raise StructureParseError("unbalanced brackets", lineno)
    if not cols:
        raise StructureParseError("empty matrix literal", lineno)
    return cols


def _rational_or_error(token: str, lineno: int) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError as exc:
        raise StructureParseError(str(exc), lineno) from None


# ---------------------------------------------------------------------------
# reports

@dataclass
class Report:
    """Deterministic check report: same input and seed, same bytes.

    Wall-clock timing is deliberately kept out of the payload; the CLI
    prints it to stderr instead.
    """

    command: str
    structure: str = ""
    seed: int | None = None
    fields: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)  # (name, verdict, detail)
    exit_code: int = 0

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, "pass" if ok else "FAIL", detail))

    def render_text(self) -> str:
        lines = [f"== {self.command} =="]
        if self.structure:
            lines.append(f"structure: {self.structure}")
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for key, value in self.fields.items():
            lines.append(f"{key}: {value}")
        for name, verdict, detail in self.checks:
            suffix = f"  ({detail})" if detail else ""
            lines.append(f"[{verdict}] {name}{suffix}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "structure": self.structure,
            "seed": self.seed,
            "fields": {k: str(v) for k, v in self.fields.items()},
            "checks": [
                {"name": n, "verdict": v, "detail": d} for n, v, d in self.checks
            ],
            "exit_code": self.exit_code,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
