"""Point, edge, and report files.

Points travel as CSV (one ``x,y`` row per point, header optional) or JSON
(array of [x, y] pairs); edges as JSON records {tail, head, length}; reports
as JSON objects.  Floats are written with shortest round-trip formatting, so
write-then-read returns identical values.
"""

from __future__ import annotations

import json
from pathlib import Path

from .build import DirectedEdge
from .geometry import GeometryError, Point, dist


class ParseError(ValueError):
    """Malformed input file; the message names the file and offending line."""


def _detect_format(path: str | Path, fmt: str | None) -> str:
    if fmt:
        if fmt not in ("csv", "json"):
            raise ParseError(f"unsupported format {fmt!r} (expected csv or json)")
        return fmt
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".json":
        return "json"
    raise ParseError(f"cannot infer format from {path}; pass format explicitly")


def read_points(path: str | Path, fmt: str | None = None) -> list[Point]:
    fmt = _detect_format(path, fmt)
    text = Path(path).read_text()
    points: list[Point] = []
    if fmt == "csv":
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if lineno == 1 and not _is_float(parts[0]):
                continue  # header row
            if len(parts) != 2 or not all(map(_is_float, parts)):
                raise ParseError(f"{path}:{lineno}: expected 'x,y', got {raw!r}")
            points.append(_point(parts[0], parts[1], f"{path}:{lineno}"))
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(data, list):
            raise ParseError(f"{path}: expected a JSON array of [x, y] pairs")
        for i, row in enumerate(data):
            if not (isinstance(row, list) and len(row) == 2):
                raise ParseError(f"{path}: entry {i} is not an [x, y] pair: {row!r}")
            points.append(_point(row[0], row[1], f"{path}: entry {i}"))
    return points


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _point(x, y, where: str) -> Point:
    try:
        return Point(float(x), float(y))
    except (TypeError, ValueError, GeometryError) as exc:
        raise ParseError(f"{where}: bad coordinates: {exc}") from None


def write_points(path: str | Path, points: list[Point], fmt: str | None = None) -> None:
    fmt = _detect_format(path, fmt)
    if fmt == "csv":
        lines = [f"{repr(p.x)},{repr(p.y)}" for p in points]
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))
    else:
        Path(path).write_text(json.dumps([[p.x, p.y] for p in points]) + "\n")


def read_edges(path: str | Path) -> list[DirectedEdge]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a JSON array of edge records")
    edges = []
    for i, rec in enumerate(data):
        if not (isinstance(rec, dict) and {"tail", "head", "length"} <= rec.keys()):
            raise ParseError(f"{path}: entry {i} lacks tail/head/length: {rec!r}")
        edges.append(DirectedEdge(int(rec["tail"]), int(rec["head"]), float(rec["length"])))
    return edges


def write_edges(path: str | Path, edges) -> None:
    records = [
        {"tail": e.tail, "head": e.head, "length": e.length}
        for e in sorted(edges, key=lambda e: (e.tail, e.head))
    ]
    Path(path).write_text(json.dumps(records, indent=1) + "\n")


def write_report(path: str | Path, report: dict) -> None:
    Path(path).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")


def validate_edges(points: list[Point], edges: list[DirectedEdge], tol: float = 1e-12) -> None:
    """Check that edge indices are in range and lengths match the coordinates."""
    n = len(points)
    for e in edges:
        if not (0 <= e.tail < n and 0 <= e.head < n) or e.tail == e.head:
            raise ParseError(f"edge {e.tail}->{e.head} has invalid endpoints for {n} points")
        d = dist(points[e.tail], points[e.head])
        if abs(d - e.length) > tol * max(1.0, d):
            raise ParseError(
                f"edge {e.tail}->{e.head} length {e.length} disagrees with coordinates ({d})"
            )
