"""Exact audits of representations: intersection graphs, general position, simplicity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..graphs import Graph
from .model import Polyline, Representation
from .predicates import integer_scale, segment_intersection, to_int


def _scaled(rep: Representation):
    """All segments as ``(vertex, a, b)`` in integer coordinates, plus the scale."""
    scale = integer_scale(rep.points())
    segs = []
    for v in range(rep.n):
        for a, b in rep.segments_of(v):
            segs.append((v, to_int(a, scale), to_int(b, scale)))
    return scale, segs


def _sweep(segs, same_vertex: bool = False):
    """Yield index pairs of segments whose x-ranges overlap (and bounding boxes meet)."""
    boxes = []
    for i, (v, a, b) in enumerate(segs):
        boxes.append((min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]), i))
    boxes.sort()
    active: list = []
    for x0, x1, y0, y1, i in boxes:
        active = [box for box in active if box[1] >= x0]
        vi = segs[i][0]
        for bx0, bx1, by0, by1, j in active:
            if (segs[j][0] == vi) != same_vertex:
                continue
            if by1 < y0 or y1 < by0:
                continue
            yield (j, i) if j < i else (i, j)
        active.append((x0, x1, y0, y1, i))


def intersection_graph(rep: Representation) -> Graph:
    """Edge ``uv`` iff the sets of ``u`` and ``v`` share at least one point."""
    _, segs = _scaled(rep)
    edges = set()
    for i, j in _sweep(segs):
        u, v = segs[i][0], segs[j][0]
        key = (u, v) if u < v else (v, u)
        if key in edges:
            continue
        if segment_intersection(segs[i][1], segs[i][2], segs[j][1], segs[j][2]) is not None:
            edges.add(key)
    return Graph.from_edges(rep.n, edges)


@dataclass(frozen=True)
class PositionReport:
    intersection_points: int
    triple_points: int
    improper_crossings: int
    coincident_overlaps: int

    @property
    def passed(self) -> bool:
        return self.triple_points == 0 and self.improper_crossings == 0 and self.coincident_overlaps == 0

    def __str__(self) -> str:
        return (
            f"intersections={self.intersection_points} triple={self.triple_points} "
            f"improper={self.improper_crossings} overlaps={self.coincident_overlaps} "
            f"{'PASS' if self.passed else 'FAIL'}"
        )


def check_general_position(rep: Representation) -> PositionReport:
    """Audit pairwise intersections between different vertices' sets.

    * a *triple point* lies on the sets of three or more vertices;
    * an *improper crossing* is an intersection point that is a vertex or an
      endpoint of one of the two polylines (touching, or crossing at a bend);
    * a *coincident overlap* is a pair of collinear segments sharing a piece of
      positive length, i.e. an infinite intersection.
    """
    _, segs = _scaled(rep)
    on: dict[tuple, set] = {}
    improper: set = set()
    overlaps = 0
    for i, j in _sweep(segs):
        (u, a, b), (v, c, d) = segs[i], segs[j]
        hit = segment_intersection(a, b, c, d)
        if hit is None:
            continue
        if hit[0] == "overlap":
            overlaps += 1
            continue
        p = hit[1]
        on.setdefault(p, set()).update((u, v))
        if p in (a, b, c, d):
            improper.add(p)
    triples = sum(1 for vs in on.values() if len(vs) >= 3)
    return PositionReport(len(on), triples, len(improper), overlaps)


def is_simple(poly: Polyline) -> bool:
    """No self-intersections apart from consecutive segments sharing their common vertex."""
    scale = integer_scale(poly.points)
    pts = [to_int(p, scale) for p in poly.points]
    m = len(pts)
    segs = [(0, pts[k], pts[(k + 1) % m]) for k in range(m if poly.closed else m - 1)]
    count = len(segs)
    for i, j in _sweep(segs, same_vertex=True):
        hit = segment_intersection(segs[i][1], segs[i][2], segs[j][1], segs[j][2])
        if hit is None:
            continue
        if hit[0] == "overlap":
            return False
        adjacent = j == i + 1 or (poly.closed and i == 0 and j == count - 1)
        if not adjacent:
            return False
        shared = segs[j][1] if j == i + 1 else segs[i][1]
        if hit[1] != shared:
            return False
    return True


def curve_crossings(rep: Representation, u: int, v: int):
    """Distinct intersection points of two sets (``None`` if they overlap along a segment)."""
    scale = integer_scale(rep.points())
    pts = set()
    for a, b in rep.segments_of(u):
        ai, bi = to_int(a, scale), to_int(b, scale)
        for c, d in rep.segments_of(v):
            hit = segment_intersection(ai, bi, to_int(c, scale), to_int(d, scale))
            if hit is None:
                continue
            if hit[0] == "overlap":
                return None
            pts.add((hit[1][0] / scale, hit[1][1] / scale))
    return pts


def set_is_connected(pieces) -> bool:
    """The pieces of one set form a connected union."""
    pieces = list(pieces)
    if len(pieces) <= 1:
        return True
    segs = [[(a, b) for a, b in piece.segments()] for piece in pieces]
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(len(pieces)):
            if j in seen:
                continue
            if any(segment_intersection(a, b, c, d) is not None for a, b in segs[i] for c, d in segs[j]):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(pieces)


def scaled_point(p, scale: int):
    return (Fraction(p[0]) / scale, Fraction(p[1]) / scale)
