"""Turn a polygonal intersection representation into simple strings in general position.

Pipeline for :func:`normalize` (all arithmetic exact):

1. ``eps`` is a third of a rational lower bound on the smallest distance between
   two disjoint sets, so disjoint sets stay ``3 eps`` apart.
2. Witness points. Every set gets a private stub (length below ``eps``) whose
   tip is its base point ``p_i``. For every intersecting pair ``i < j`` an anchor
   ``c`` in ``A_i ∩ A_j`` gets a small triangle: the segment ``c p`` joins
   ``A_i`` and the bent path ``c m p`` joins ``A_j``, so the shared point
   ``p_ij = p`` is reached from two different directions. Every stub meets the
   existing geometry only at its anchor.
3. Connecting paths. In the segment arrangement of each enlarged set, the
   hop-count shortest paths from ``p_i`` to every ``p_ij`` form a plane tree
   ``T_i`` (breadth-first search, neighbours in sorted order).
4. Thickening. ``gamma_i`` is the offset contour of ``T_i`` at distance
   ``eta = min(eps / 12, feature / 4)``: corner points on wedge bisectors, and a
   flat cap of half-length ``eta`` centred on every leaf. The caps of ``T_i`` and
   ``T_j`` at ``p_ij`` cross there, which keeps every edge of the graph; the
   contour stays within ``eta`` of ``T_i``, which keeps every non-edge.
   Walking the tree boundary is the Eulerian circuit that never crosses itself.
5. General position. Contour vertices get a seeded dyadic jitter of radius at
   most ``eta / 16``.
6. Cutting. Each closed ``gamma_i`` is opened at a gap free of other curves on
   the latest such segment of its walk from ``p_i``.

Every attempt is audited (same intersection graph, general position, simple
open curves). A failed audit triggers a new jitter draw, then a smaller jitter,
then a smaller ``eta``; after :data:`MAX_ATTEMPTS` attempts the call raises
:class:`NormalizationError`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

import numpy as np

from ..graphs import Graph
from .audit import check_general_position, intersection_graph, is_simple, set_is_connected
from .model import Disk, Polyline, Representation, pt
from .predicates import (
    approx_unit,
    orient,
    point_segment_dist2,
    segment_dist2,
    segment_intersection,
    snap_point,
    sqrt_lower,
)

MAX_ATTEMPTS = 24
_DIRECTIONS = (
    (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (-1, -1), (1, -1),
    (2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1),
    (3, 1), (1, 3), (-1, 3), (-3, 1), (-3, -1), (-1, -3), (1, -3), (3, -1),
)


class NormalizationError(RuntimeError):
    """The pipeline could not produce an audited output within its retry budget."""


@dataclass(frozen=True)
class NormalizationInfo:
    epsilon: Fraction
    eta: Fraction
    jitter: Fraction
    attempts: int


# -- helpers ----------------------------------------------------------------


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _scale(v, s):
    return (v[0] * s, v[1] * s)


def _grid_bits(length: Fraction, extra: int = 24) -> int:
    """Bits ``k`` such that ``2**-k`` is about ``length * 2**-extra``."""
    return max(0, extra - math.floor(math.log2(float(length))))


def _pow2_floor(x: Fraction) -> Fraction:
    e = math.floor(math.log2(float(x)))
    p = Fraction(2) ** e
    while p > x:
        p /= 2
    return p


def _epsilon(rep: Representation, graph: Graph) -> Fraction:
    best = None
    segs = [rep.segments_of(v) for v in range(rep.n)]
    for u in range(rep.n):
        for v in range(u + 1, rep.n):
            if graph.has_edge(u, v):
                continue
            for a, b in segs[u]:
                for c, d in segs[v]:
                    d2 = segment_dist2(a, b, c, d)
                    if best is None or d2 < best:
                        best = d2
    if best is None:
        xs = [p.x for p in rep.points()]
        ys = [p.y for p in rep.points()]
        return _pow2_floor(max(max(xs) - min(xs), max(ys) - min(ys)) / 8)
    if best == 0:
        raise NormalizationError("two sets at distance 0 are not recorded as intersecting")
    return _pow2_floor(sqrt_lower(best) / 3)


class _Scene:
    """All segments placed so far, for the 'meets only at the anchor' test."""

    def __init__(self, rep: Representation, disk: Disk | None):
        self.segs = [(a, b) for v in range(rep.n) for a, b in rep.segments_of(v)]
        self.disk = disk

    def clear(self, p, gap2) -> bool:
        """``p`` keeps squared distance at least ``gap2`` from everything placed so far."""
        return all(point_segment_dist2(p, c, d) >= gap2 for c, d in self.segs)

    def free(self, a, b, allowed=()) -> bool:
        if self.disk is not None and (self.disk.power(a) > 0 or self.disk.power(b) > 0):
            return False
        for c, d in self.segs:
            hit = segment_intersection(a, b, c, d)
            if hit is None:
                continue
            if hit[0] == "overlap" or hit[1] not in allowed:
                return False
        return True

    def place_stub(self, anchor, length: Fraction, bits: int, bent: bool, prefer=None):
        """Find a stub at ``anchor``; returns its new segments (bent: a small triangle)."""
        dirs = list(_DIRECTIONS)
        if prefer is not None:
            dirs = [prefer] + dirs
        for _ in range(16):
            for d in dirs:
                u = approx_unit(d)
                tip = _add(anchor, snap_point(_scale(u, length), bits))
                gap2 = (length / 16) ** 2
                if tip == anchor or not self.clear(tip, gap2) or not self.free(anchor, tip, (anchor,)):
                    continue
                if not bent:
                    self.segs.append((anchor, tip))
                    return [(anchor, tip)]
                # narrow triangle (about 14 degrees at the anchor) so that few
                # lines through the anchor can reach its far side
                for s in (1, -1):
                    v = (u[0] - s * u[1] / 4, u[1] + s * u[0] / 4)
                    mid = _add(anchor, snap_point(_scale(v, length), bits))
                    if mid == anchor or not self.clear(mid, gap2) or not self.free(anchor, mid, (anchor,)):
                        continue
                    if orient(anchor, tip, mid) == 0 or not self.free(mid, tip, ()):
                        continue
                    self.segs += [(anchor, tip), (anchor, mid), (mid, tip)]
                    return [(anchor, tip), (anchor, mid), (mid, tip)]
            length /= 2
        raise NormalizationError(f"no free stub direction at {anchor}")


def _anchor(rep: Representation, u: int, v: int):
    """A deterministic point of ``A_u ∩ A_v``."""
    best = None
    for a, b in rep.segments_of(u):
        for c, d in rep.segments_of(v):
            hit = segment_intersection(a, b, c, d)
            if hit is None:
                continue
            p = hit[1] if hit[0] == "point" else hit[1][0]
            if best is None or p < best:
                best = p
    return best


def _private_anchor(rep: Representation, v: int):
    """A point of ``A_v`` on no other set, preferring segment midpoints."""
    others = [s for w in range(rep.n) if w != v for s in rep.segments_of(w)]
    cands = []
    for a, b in rep.segments_of(v):
        cands.append(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
        cands.append(((3 * a[0] + b[0]) / 4, (3 * a[1] + b[1]) / 4))
    for piece in rep.sets[v]:
        cands += list(piece.points)
    for p in cands:
        if all(segment_intersection(p, p, c, d) is None for c, d in others):
            return p
    return cands[0]


# -- trees and contours -------------------------------------------------------


def _arrangement(segs, marks=()) -> dict:
    """Planar graph of a set of segments split at all mutual intersections (and at ``marks``)."""
    splits = [{a, b} for a, b in segs]
    for p in marks:
        for i, (a, b) in enumerate(segs):
            if _on(p, a, b):
                splits[i].add(p)
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            hit = segment_intersection(*segs[i], *segs[j])
            if hit is None:
                continue
            pts = [hit[1]] if hit[0] == "point" else list(hit[1])
            for p in pts:
                if _on(p, *segs[i]):
                    splits[i].add(p)
                if _on(p, *segs[j]):
                    splits[j].add(p)
    adj: dict = {}
    for (a, b), pts in zip(segs, splits):
        key = 0 if a[0] != b[0] else 1
        order = sorted(pts, key=lambda p: p[key], reverse=a[key] > b[key])
        for p, q in zip(order, order[1:]):
            adj.setdefault(p, set()).add(q)
            adj.setdefault(q, set()).add(p)
    return adj


def _on(p, a, b) -> bool:
    return segment_intersection(p, p, a, b) is not None


def _tree(adj: dict, root, targets) -> dict:
    """Union of breadth-first paths from ``root`` to ``targets`` as an adjacency dict."""
    parent = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj.get(x, ())):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    tree: dict = {root: set()}
    for t in targets:
        if t not in parent:
            raise ValueError("a set of the representation is not connected")
        while parent[t] is not None:
            p = parent[t]
            tree.setdefault(t, set()).add(p)
            tree.setdefault(p, set()).add(t)
            t = p
    return tree


def _feature2(tree: dict) -> Fraction:
    """Smallest squared distance between a tree node and a tree edge not incident to it."""
    edges = {(a, b) if a < b else (b, a) for a in tree for b in tree[a]}
    best = None
    for x in tree:
        for a, b in edges:
            if x == a or x == b:
                continue
            d2 = segment_dist2(x, x, a, b)
            if best is None or d2 < best:
                best = d2
    for a, b in edges:
        d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
        if best is None or d2 < best:
            best = d2
    return best


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _ccw_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _contour(tree: dict, root, eta: Fraction, bits: int) -> list:
    """Offset contour of a plane tree, walked with the tree on the left."""
    rot = {}
    for v, nbrs in tree.items():
        rot[v] = sorted(nbrs, key=cmp_to_key(lambda p, q, v=v: _ccw_cmp(_sub(p, v), _sub(q, v))))
    start = (root, rot[root][0])
    u, v = start
    out = []
    while True:
        ring = rot[v]
        if len(ring) == 1:
            d = _sub(v, u)
            right = approx_unit((d[1], -d[0]))
            off = snap_point(_scale(right, eta), bits)
            out += [_add(v, off), _sub(v, off)]
            w = u
        else:
            w = ring[(ring.index(u) + 1) % len(ring)]
            a, b = _sub(u, v), _sub(w, v)
            cross = a[0] * b[1] - a[1] * b[0]
            if cross == 0:
                bis = (-a[1], a[0])
            else:
                ua, ub = approx_unit(a), approx_unit(b)
                bis = _add(ua, ub)
                if cross < 0:
                    bis = (-bis[0], -bis[1])
            out.append(_add(v, snap_point(_scale(approx_unit(bis), eta), bits)))
        u, v = v, w
        if (u, v) == start:
            break
    cleaned = [p for i, p in enumerate(out) if p != out[i - 1]]
    return cleaned


# -- cutting ------------------------------------------------------------------


def _hits_on(seg, others) -> list[Fraction]:
    """Parameters along ``seg`` where other curves touch it (None-free list)."""
    a, b = seg
    ts = []
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    for c, d in others:
        hit = segment_intersection(a, b, c, d)
        if hit is None:
            continue
        pts = [hit[1]] if hit[0] == "point" else list(hit[1])
        for p in pts:
            ts.append(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / den)
    return ts


def _lerp(a, b, t):
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def _cut(loop: list, others) -> list:
    """Open a closed loop at a gap free of other curves, latest eligible segment first."""
    m = len(loop)
    fallback = None
    for k in range(m - 1, -1, -1):
        seg = (loop[k], loop[(k + 1) % m])
        ts = _hits_on(seg, others)
        if not ts:
            lo, hi = Fraction(1, 4), Fraction(3, 4)
            break
        if fallback is None:
            cuts = sorted({Fraction(0), Fraction(1), *ts})
            gap = max(zip(cuts, cuts[1:]), key=lambda g: g[1] - g[0])
            fallback = (k, gap)
    else:
        k, (g0, g1) = fallback
        lo, hi = g0 + (g1 - g0) / 4, g0 + 3 * (g1 - g0) / 4
    a, b = loop[k], loop[(k + 1) % m]
    tail = [loop[(k + 1 + i) % m] for i in range(m)]
    return [_lerp(a, b, hi)] + tail + [_lerp(a, b, lo)]


# -- main pipeline -------------------------------------------------------------


@dataclass
class _Prepared:
    graph: Graph
    eps: Fraction
    bits: int
    trees: list
    roots: list
    feature: Fraction


def _prepare(rep: Representation, outer: Disk | None) -> _Prepared:
    for v, pieces in enumerate(rep.sets):
        if not set_is_connected(pieces):
            raise ValueError(f"the set of vertex {v} is not connected")
    graph = intersection_graph(rep)
    eps = _epsilon(rep, graph)
    bits = _grid_bits(eps, 40)
    scene = _Scene(rep, outer)
    extra: list[list] = [[] for _ in range(rep.n)]
    roots, targets = [], [[] for _ in range(rep.n)]
    stub_len = eps / 2

    for v in range(rep.n):
        if outer is None:
            anchor = _private_anchor(rep, v)
            prefer = None
        else:
            anchor = _boundary_vertex(rep, v, outer)
            inward = _sub(outer.center, anchor)
            prefer = inward
        (seg,) = scene.place_stub(anchor, stub_len, bits, bent=False, prefer=prefer)
        extra[v].append(seg)
        if outer is None:
            roots.append(seg[1])
            targets[v].append(seg[0])
        else:
            roots.append(anchor)
            targets[v].append(seg[1])

    for u, v in sorted(graph.edges):
        c = _anchor(rep, u, v)
        straight, first, second = scene.place_stub(c, stub_len, bits, bent=True)
        extra[u].append(straight)
        extra[v] += [first, second]
        targets[u].append(straight[1])
        targets[v].append(straight[1])

    trees = []
    feature = None
    for v in range(rep.n):
        segs = rep.segments_of(v) + extra[v]
        adj = _arrangement([(tuple(a), tuple(b)) for a, b in segs])
        tree = _tree(adj, roots[v], targets[v])
        trees.append(tree)
        f2 = _feature2(tree)
        if f2 is not None and (feature is None or f2 < feature):
            feature = f2
    return _Prepared(graph, eps, bits, trees, roots, sqrt_lower(feature))


def _boundary_vertex(rep: Representation, v: int, disk: Disk):
    on = [p for piece in rep.sets[v] for p in piece.points if disk.on_boundary(p)]
    if not on:
        raise ValueError(
            f"vertex {v}: outer-string input needs a polyline vertex exactly on the disk boundary"
        )
    others = [s for w in range(rep.n) if w != v for s in rep.segments_of(w)]
    for p in on:
        if all(not _on(p, c, d) for c, d in others):
            return p
    return on[0]


def _jittered(loop: list, rng: np.random.Generator, rho: Fraction, bits: int) -> list:
    steps = int(rho * (1 << bits))
    if steps <= 0:
        return list(loop)
    offs = rng.integers(-steps, steps + 1, size=(len(loop), 2))
    unit = Fraction(1, 1 << bits)
    out = [(p[0] + int(dx) * unit, p[1] + int(dy) * unit) for p, (dx, dy) in zip(loop, offs)]
    return [p for i, p in enumerate(out) if p != out[i - 1]]


def _attempts(prep: _Prepared, seed: int):
    """Yield (attempt, eta, rho, bits) in the documented retry order."""
    eta0 = _pow2_floor(min(prep.eps / 12, prep.feature / 4))
    for attempt in range(MAX_ATTEMPTS):
        eta = eta0 / (2 ** (attempt // 8))
        rho = eta / 16 / (2 ** ((attempt % 8) // 2))
        bits = max(prep.bits, _grid_bits(eta, 36))
        yield attempt, eta, rho, bits


def normalize_with_info(rep: Representation, seed: int = 0) -> tuple[Representation, NormalizationInfo]:
    """:func:`normalize` plus the constants it used."""
    prep = _prepare(rep, None)
    for attempt, eta, rho, bits in _attempts(prep, seed):
        rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), attempt]))
        loops = [_jittered(_contour(t, r, eta, bits), rng, rho, bits) for t, r in zip(prep.trees, prep.roots)]
        if not all(_simple_loop(lp) for lp in loops):
            continue
        segs = [list(zip(lp, lp[1:] + lp[:1])) for lp in loops]
        curves = []
        for v, lp in enumerate(loops):
            others = [s for w in range(len(loops)) if w != v for s in segs[w]]
            curves.append(_cut(lp, others))
        out = _assemble(curves, None)
        if out is not None and _audit(out, prep.graph):
            return out, NormalizationInfo(prep.eps, eta, rho, attempt + 1)
    raise NormalizationError(f"no audited output after {MAX_ATTEMPTS} attempts")


def normalize(rep: Representation, seed: int = 0) -> Representation:
    """Equivalent representation by simple open polylines in general position.

    The output has the same intersection graph, passes
    :func:`~stringlimits.geometry.audit.check_general_position`, and every curve
    is a simple open polyline. Raises :class:`NormalizationError` when the
    retry budget runs out.
    """
    return normalize_with_info(rep, seed)[0]


def _simple_loop(loop) -> bool:
    try:
        return len(loop) >= 3 and is_simple(Polyline(tuple(loop), True))
    except ValueError:
        return False


def _assemble(curves, disk):
    try:
        return Representation(tuple((Polyline(tuple(pt(*p) for p in c)),) for c in curves), disk)
    except ValueError:
        return None


def _audit(out: Representation, graph: Graph) -> bool:
    if not all(is_simple(pieces[0]) for pieces in out.sets):
        return False
    if intersection_graph(out) != graph:
        return False
    return check_general_position(out).passed


# -- outer-string variant -------------------------------------------------------


def _ray_hits(center, through, loop):
    """Farthest crossing of the ray from ``center`` through ``through`` with a closed loop.

    Returns ``(segment index, parameter on segment)`` or None when degenerate.
    """
    d = _sub(through, center)
    best = None
    m = len(loop)
    for k in range(m):
        a, b = loop[k], loop[(k + 1) % m]
        e = _sub(b, a)
        den = d[0] * e[1] - d[1] * e[0]
        ac = _sub(a, center)
        if den == 0:
            if ac[0] * d[1] - ac[1] * d[0] == 0:
                return None
            continue
        s = (ac[0] * e[1] - ac[1] * e[0]) / den
        t = (ac[0] * d[1] - ac[1] * d[0]) / den
        if s < 0 or t < 0 or t > 1:
            continue
        if t in (0, 1):
            return None
        if best is None or s > best[0]:
            best = (s, k, t)
    return None if best is None else (best[1], best[2])


def _outer_cut(loop, others, center, root, disk_out: Disk):
    from .predicates import circle_point

    hit = _ray_hits(center, root, loop)
    if hit is None:
        return None
    k, t = hit
    m = len(loop)
    a, b = loop[k], loop[(k + 1) % m]
    ts = [s for s in _hits_on((a, b), others)]
    room = min([t, 1 - t] + [abs(s - t) for s in ts])
    if room == 0:
        return None
    tau = room / 4
    g_lo, g_hi = _lerp(a, b, t - tau), _lerp(a, b, t + tau)
    d = _sub(root, center)
    theta = math.atan2(float(d[1]), float(d[0]))
    seg_len = math.hypot(float(b[0] - a[0]), float(b[1] - a[1]))
    delta = float(tau) * seg_len / float(disk_out.radius)

    def side(g):
        r = _sub(g, center)
        return 1 if d[0] * r[1] - d[1] * r[0] > 0 else -1

    e_hi = circle_point(disk_out.center, disk_out.radius, theta + side(g_hi) * delta)
    e_lo = circle_point(disk_out.center, disk_out.radius, theta + side(g_lo) * delta)
    if e_hi == e_lo:
        return None
    tail = [loop[(k + 1 + i) % m] for i in range(m)]
    return [e_hi, g_hi] + tail + [g_lo, e_lo]


def normalize_outer_with_info(rep: Representation, disk: Disk | None = None, seed: int = 0):
    """:func:`normalize_outer` plus the constants it used."""
    disk = disk or rep.disk
    if disk is None:
        raise ValueError("outer-string normalization needs a disk")
    for p in rep.points():
        if disk.power(p) > 0:
            raise ValueError(f"point {tuple(p)} lies outside the disk")
    prep = _prepare(rep, disk)
    out_disk = Disk(disk.center, disk.radius + prep.eps / 4)
    center = (disk.center.x, disk.center.y)
    for attempt, eta, rho, bits in _attempts(prep, seed):
        rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), attempt]))
        loops = [_jittered(_contour(t, r, eta, bits), rng, rho, bits) for t, r in zip(prep.trees, prep.roots)]
        if not all(_simple_loop(lp) for lp in loops):
            continue
        segs = [list(zip(lp, lp[1:] + lp[:1])) for lp in loops]
        curves = []
        for v, lp in enumerate(loops):
            others = [s for w in range(len(loops)) if w != v for s in segs[w]]
            c = _outer_cut(lp, others, center, prep.roots[v], out_disk)
            if c is None:
                break
            curves.append(c)
        if len(curves) != len(loops):
            continue
        out = _assemble(curves, out_disk)
        if out is None or not _audit(out, prep.graph):
            continue
        if not _anchored(out, out_disk):
            continue
        return out, NormalizationInfo(prep.eps, eta, rho, attempt + 1)
    raise NormalizationError(f"no audited outer-string output after {MAX_ATTEMPTS} attempts")


def _anchored(out: Representation, disk: Disk) -> bool:
    for (piece,) in out.sets:
        pts = piece.points
        if not (disk.on_boundary(pts[0]) and disk.on_boundary(pts[-1])):
            return False
        if any(disk.power(p) >= 0 for p in pts[1:-1]):
            return False
    return True


def normalize_outer(rep: Representation, disk: Disk | None = None, seed: int = 0) -> Representation:
    """Outer-string normalization inside ``disk`` (default: the representation's disk).

    Each set must contain a polyline vertex lying exactly on the boundary circle;
    that point roots the set's tree. The output curves have both endpoints on
    the boundary of the enlarged disk of radius ``R + eps / 4`` and otherwise lie
    in its interior, with the same guarantees as :func:`normalize`.
    """
    return normalize_outer_with_info(rep, disk, seed)[0]
