"""Representations built from clique covers, and K_5 drawings read off representations."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import networkx as nx

from ..graphs import Graph, check_partition, is_outerplanar, quotient, special_labels
from .audit import intersection_graph
from .model import Disk, Polyline, Representation, pt
from .normalization import _arrangement
from .predicates import approx_unit, circle_point, dist2, segment_intersection

_MAX_HALVINGS = 20


def _boundary_order(q: Graph, live: list[int]) -> list[int]:
    """Cyclic order of the live parts around an apex joined to all of them."""
    if len(live) <= 2:
        return list(live)
    h = nx.Graph()
    h.add_nodes_from(live)
    h.add_edges_from((u, v) for u, v in q.edges if u in live and v in live)
    apex = ("apex",)
    h.add_edges_from((apex, x) for x in live)
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise ValueError("quotient is not outerplanar")
    return list(emb.neighbors_cw_order(apex))


def _tents(g: Graph, where: dict, anchor: dict, center, scale: Fraction):
    """Per cross-part edge: apex point near the midpoint of its chord."""
    by_pair: dict = {}
    for u, v in g.edges:
        x, y = where[u], where[v]
        if x != y:
            key = (x, y) if x < y else (y, x)
            by_pair.setdefault(key, []).append((u, v))
    apex = {}
    for (x, y), edges in sorted(by_pair.items()):
        a, b = anchor[x], anchor[y]
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        chord = math.sqrt(float(dist2(a, b)))
        normal = approx_unit((a[1] - b[1], b[0] - a[0]))
        # room towards the circle on both sides of the chord midpoint
        gap = chord / 2
        if float(dist2(mid, center)) > 0:
            gap = min(gap, float(scale) - math.sqrt(float(dist2(mid, center))))
        h = Fraction(gap / (2 * (len(edges) + 1))).limit_denominator(1 << 20) * scale
        h = min(h, Fraction(1, 1))
        c = len(edges)
        for t, e in enumerate(sorted(edges)):
            off = (Fraction(2 * t - (c - 1), 2)) * h
            apex[e] = (mid[0] + off * normal[0], mid[1] + off * normal[1])
    return apex


def build_outerstring_from_cover(
    g: Graph, cover: Sequence, disk: Disk | None = None
) -> Representation:
    """Outer-string representation of ``g`` from a clique cover with outerplanar quotient.

    Every non-empty part gets a point on the circle (in the cyclic order of an
    outerplanar embedding of the quotient). A cross-part edge ``uv`` is a tent
    over the chord of its two parts: ``u`` owns the half from its part's point
    to the tent apex, ``v`` the other half. Tents over one chord use distinct
    offsets, so they only meet at their apexes. Vertices without cross-part
    edges get a short inward stub. The result is audited; offsets shrink until
    the intersection graph is exactly ``g``.
    """
    parts = check_partition(g.n, cover)
    for i, p in enumerate(parts):
        if not g.is_clique(p):
            raise ValueError(f"part {i} = {sorted(p)} is not a clique")
    q = quotient(g, parts)
    if not is_outerplanar(q):
        raise ValueError("quotient of the cover is not outerplanar")
    disk = disk or Disk(pt(0, 0), 1)
    center, radius = disk.center, disk.radius
    live = [i for i, p in enumerate(parts) if p]
    if not live:
        return Representation((), disk)
    where = {v: i for i, p in enumerate(parts) for v in p}
    order = _boundary_order(q, live)
    anchor = {
        x: pt(*circle_point(center, radius, 2 * math.pi * i / len(order)))
        for i, x in enumerate(order)
    }

    scale = Fraction(1)
    for _ in range(_MAX_HALVINGS):
        apex = _tents(g, where, anchor, center, radius * scale)
        pieces: list[list[Polyline]] = [[] for _ in range(g.n)]
        for (u, v), m in apex.items():
            pieces[u].append(Polyline((anchor[where[u]], m)))
            pieces[v].append(Polyline((anchor[where[v]], m)))
        stub_len = radius * scale / 8
        for v in range(g.n):
            if not pieces[v]:
                b = anchor[where[v]]
                inward = approx_unit((center[0] - b[0], center[1] - b[1]))
                tip = (b[0] + stub_len * inward[0], b[1] + stub_len * inward[1])
                pieces[v].append(Polyline((b, tip)))
        rep = Representation(tuple(tuple(p) for p in pieces), disk)
        inside = all(disk.contains(p) for p in rep.points())
        if inside and intersection_graph(rep) == g:
            return rep
        scale /= 2
    raise RuntimeError("could not separate the tents of the cover (offsets exhausted)")


# -- K_5 drawings -------------------------------------------------------------


@dataclass(frozen=True)
class K5DrawingReport:
    """Drawing of K_5 extracted from a representation indexed like G_5.

    ``crossings`` maps each of the 15 pairs of independent edges to its number
    of crossing points (``None`` when the two curves overlap along a segment).
    """

    vertices: dict
    edges: dict
    crossings: dict = field(default_factory=dict)

    @property
    def crossing_pairs(self) -> list:
        return [pair for pair, c in sorted(self.crossings.items()) if c is None or c > 0]

    @property
    def odd_pairs(self) -> list:
        return [pair for pair, c in sorted(self.crossings.items()) if c is not None and c % 2 == 1]

    def __str__(self) -> str:
        lines = [f"independent crossing pairs: {len(self.crossing_pairs)} (odd: {len(self.odd_pairs)})"]
        for (e, f), c in sorted(self.crossings.items()):
            if c is None or c > 0:
                parity = "overlap" if c is None else ("odd" if c % 2 else "even")
                lines.append(f"  {e[0]}{e[1]} x {f[0]}{f[1]}: {c if c is not None else 'inf'} ({parity})")
        return "\n".join(lines)


def _meeting_point(rep: Representation, u: int, v: int):
    best = None
    for a, b in rep.segments_of(u):
        for c, d in rep.segments_of(v):
            hit = segment_intersection(a, b, c, d)
            if hit is None:
                continue
            p = hit[1] if hit[0] == "point" else hit[1][0]
            p = pt(*p)
            if best is None or p < best:
                best = p
    return best


def _set_path(rep: Representation, v: int, a, b, marks) -> list:
    """Hop-count shortest path from ``a`` to ``b`` through the arrangement of set ``v``."""
    adj = _arrangement(rep.segments_of(v), marks)
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in sorted(adj.get(x, ())):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if b not in parent:
        raise ValueError(f"set {v} does not connect {tuple(a)} to {tuple(b)}")
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def _path_crossings(p: list, q: list):
    pts = set()
    for a, b in zip(p, p[1:]):
        for c, d in zip(q, q[1:]):
            hit = segment_intersection(a, b, c, d)
            if hit is None:
                continue
            if hit[0] == "overlap":
                return None
            pts.add(hit[1])
    return len(pts)


def derive_k5_drawing(rep: Representation) -> K5DrawingReport:
    """Read a drawing of K_5 off a representation whose vertices are ordered like G_5.

    Vertex ``i`` is drawn at a point of ``A_i``; the edge ``ij`` runs inside
    ``A_i`` to a point of ``A_i ∩ A_ij``, through ``A_ij`` to ``A_ij ∩ A_j``,
    then inside ``A_j`` to the point of ``j``. Only crossings between the
    resulting curves are counted; nothing about their number is assumed.
    """
    labels = special_labels(5)
    if rep.n != len(labels):
        raise ValueError(f"expected {len(labels)} sets indexed like G_5, got {rep.n}")
    index = {s: i for i, s in enumerate(labels)}
    single = {i: index[frozenset((i,))] for i in range(1, 6)}
    pair = {frozenset(e): index[frozenset(e)] for e in combinations(range(1, 6), 2)}

    meet = {}
    for i in range(1, 6):
        for j in range(1, 6):
            if i == j:
                continue
            p = _meeting_point(rep, single[i], pair[frozenset((i, j))])
            if p is None:
                raise ValueError(f"A_{i} and A_{i}{j} are disjoint; the drawing needs them to meet")
            meet[i, j] = p
    vertex = {i: rep.sets[single[i]][0].points[0] for i in range(1, 6)}

    edges = {}
    for i, j in combinations(range(1, 6), 2):
        marks_i = [vertex[i], *(meet[i, t] for t in range(1, 6) if t != i)]
        marks_j = [vertex[j], *(meet[j, t] for t in range(1, 6) if t != j)]
        first = _set_path(rep, single[i], vertex[i], meet[i, j], marks_i)
        middle = _set_path(rep, pair[frozenset((i, j))], meet[i, j], meet[j, i], [meet[i, j], meet[j, i]])
        last = _set_path(rep, single[j], meet[j, i], vertex[j], marks_j)
        path = first + middle[1:] + last[1:]
        edges[i, j] = tuple(pt(*p) for p in path)

    crossings = {}
    for e, f in combinations(sorted(edges), 2):
        if set(e) & set(f):
            continue
        crossings[e, f] = _path_crossings(edges[e], edges[f])
    return K5DrawingReport(vertex, edges, crossings)


def k5_star_representation(points: Sequence) -> Representation:
    """Sets indexed like G_5 from a straight-line K_5 on five points.

    ``A_i`` is the star of first thirds of the edges at point ``i``; ``A_ij`` is
    the middle third of the edge ``ij``.
    """
    if len(points) != 5:
        raise ValueError(f"need 5 points, got {len(points)}")
    pts = [pt(*p) for p in points]
    if len(set(pts)) != 5:
        raise ValueError("the five points must be distinct")

    def at(i, j, t):
        a, b = pts[i - 1], pts[j - 1]
        return pt(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)

    sets = []
    for s in special_labels(5):
        if len(s) == 1:
            (i,) = s
            sets.append(tuple(Polyline((pts[i - 1], at(i, j, Fraction(1, 3)))) for j in range(1, 6) if j != i))
        else:
            i, j = sorted(s)
            sets.append((Polyline((at(i, j, Fraction(1, 3)), at(i, j, Fraction(2, 3)))),))
    return Representation(tuple(sets))
