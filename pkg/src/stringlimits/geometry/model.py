"""Points, polylines, disks and representations, with a text format and SVG export.

Text format, one record per vertex::

    disk 0 0 1              # optional, outer-string mode
    0 2                     # vertex id, number of pieces
    open 0,0 1/2,1 1,0      # piece kind, then x,y pairs as rationals
    closed 2,2 3,2 3,3
    1 1
    open 0,1 1,1

Vertex ids must be exactly ``0..n-1`` (in any order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def pt(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class Polyline:
    points: tuple
    closed: bool = False

    def __post_init__(self):
        pts = tuple(pt(*p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError(f"consecutive points coincide at {a}")
        if self.closed:
            if len(pts) < 3:
                raise ValueError("a closed polyline needs at least three points")
            if pts[0] == pts[-1]:
                raise ValueError("closed polylines must not repeat the first point at the end")
            if len(set(pts)) != len(pts):
                raise ValueError("closed polyline repeats a vertex")
        object.__setattr__(self, "points", pts)

    def segments(self) -> list[tuple[Point, Point]]:
        pts = self.points
        segs = list(zip(pts, pts[1:]))
        if self.closed:
            segs.append((pts[-1], pts[0]))
        return segs

    @property
    def endpoints(self) -> tuple[Point, Point] | None:
        return None if self.closed else (self.points[0], self.points[-1])


def segment(a, b) -> Polyline:
    return Polyline((a, b))


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", pt(*self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")

    def power(self, p) -> Fraction:
        """Squared distance from the center minus squared radius (0 on the circle)."""
        return (p[0] - self.center.x) ** 2 + (p[1] - self.center.y) ** 2 - self.radius**2

    def on_boundary(self, p) -> bool:
        return self.power(p) == 0

    def contains(self, p) -> bool:
        return self.power(p) <= 0


@dataclass(frozen=True)
class Representation:
    sets: tuple  # tuple[tuple[Polyline, ...], ...], indexed by vertex
    disk: Disk | None = None

    def __post_init__(self):
        sets = tuple(tuple(pieces) for pieces in self.sets)
        for v, pieces in enumerate(sets):
            if not pieces:
                raise ValueError(f"vertex {v} has an empty set")
            for piece in pieces:
                if not isinstance(piece, Polyline):
                    raise TypeError(f"vertex {v}: pieces must be Polyline, got {type(piece).__name__}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_curves(cls, curves: Sequence, disk: Disk | None = None) -> "Representation":
        """One open polyline (a point list) or a Polyline per vertex."""
        sets = []
        for c in curves:
            if isinstance(c, Polyline):
                sets.append((c,))
            elif c and isinstance(c[0], Polyline):
                sets.append(tuple(c))
            else:
                sets.append((Polyline(tuple(c)),))
        return cls(tuple(sets), disk)

    @property
    def n(self) -> int:
        return len(self.sets)

    def segments_of(self, v: int) -> list[tuple[Point, Point]]:
        return [s for piece in self.sets[v] for s in piece.segments()]

    def points(self) -> Iterable[Point]:
        for pieces in self.sets:
            for piece in pieces:
                yield from piece.points

    def vertices_of(self, v: int) -> set:
        return {p for piece in self.sets[v] for p in piece.points}


# -- text format ------------------------------------------------------------


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_representation(rep: Representation) -> str:
    lines = []
    if rep.disk is not None:
        c = rep.disk.center
        lines.append(f"disk {_fmt(c.x)} {_fmt(c.y)} {_fmt(rep.disk.radius)}")
    for v, pieces in enumerate(rep.sets):
        lines.append(f"{v} {len(pieces)}")
        for piece in pieces:
            coords = " ".join(f"{_fmt(p.x)},{_fmt(p.y)}" for p in piece.points)
            lines.append(f"{'closed' if piece.closed else 'open'} {coords}")
    return "\n".join(lines) + "\n"


def parse_representation(text: str) -> Representation:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    disk = None
    records: dict[int, list[Polyline]] = {}
    i = 0
    if rows and rows[0][0] == "disk":
        _, cx, cy, r = rows[0]
        disk = Disk(pt(Fraction(cx), Fraction(cy)), Fraction(r))
        i = 1
    while i < len(rows):
        head = rows[i]
        if len(head) != 2:
            raise ValueError(f"expected 'vertex pieces' record header, got {' '.join(head)!r}")
        v, count = int(head[0]), int(head[1])
        if v in records:
            raise ValueError(f"vertex {v} appears twice")
        pieces = []
        for row in rows[i + 1 : i + 1 + count]:
            kind = row[0]
            if kind not in ("open", "closed"):
                raise ValueError(f"piece kind must be open or closed, got {kind!r}")
            pts = []
            for tok in row[1:]:
                xs, ys = tok.split(",")
                pts.append(pt(Fraction(xs), Fraction(ys)))
            pieces.append(Polyline(tuple(pts), kind == "closed"))
        if len(pieces) != count:
            raise ValueError(f"vertex {v} announces {count} pieces, found {len(pieces)}")
        records[v] = pieces
        i += 1 + count
    if sorted(records) != list(range(len(records))):
        raise ValueError(f"vertex ids must be 0..{len(records) - 1}, got {sorted(records)}")
    return Representation(tuple(tuple(records[v]) for v in range(len(records))), disk)


def read_representation(path) -> Representation:
    with open(path, encoding="ascii") as fh:
        return parse_representation(fh.read())


def write_representation(rep: Representation, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_representation(rep))


# -- SVG --------------------------------------------------------------------

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)


def representation_svg(rep: Representation, marks: Iterable = (), size: int = 480) -> str:
    """SVG drawing: one colour per vertex, optional marked points (e.g. intersections)."""
    pts = list(rep.points())
    if rep.disk is not None:
        c, r = rep.disk.center, rep.disk.radius
        pts += [pt(c.x - r, c.y - r), pt(c.x + r, c.y + r)]
    xs = [float(p.x) for p in pts]
    ys = [float(p.y) for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def tx(p):
        return ((float(p[0]) - lo_x + pad) * scale, (hi_y - float(p[1]) + pad) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if rep.disk is not None:
        cx, cy = tx(rep.disk.center)
        out.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{float(rep.disk.radius) * scale:.2f}" '
            'fill="none" stroke="#bbbbbb" stroke-dasharray="4 3"/>'
        )
    for v, pieces in enumerate(rep.sets):
        colour = _PALETTE[v % len(_PALETTE)]
        for piece in pieces:
            coords = " ".join("{:.2f},{:.2f}".format(*tx(p)) for p in piece.points)
            tag = "polygon" if piece.closed else "polyline"
            out.append(f'<{tag} points="{coords}" fill="none" stroke="{colour}" stroke-width="1.5">'
                       f"<title>vertex {v}</title></{tag}>")
    for p in marks:
        x, y = tx(p)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
