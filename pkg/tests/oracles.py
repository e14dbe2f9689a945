"""Slow, independent reference implementations used only by the tests.

None of these reuse the package's algorithms: they enumerate colourings,
orientations, rotation systems, grid cells or set partitions directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np


def edge_set(n, edges):
    return {frozenset(e) for e in edges}


def colourable(n, edges, t):
    """Some map V -> [t] with no monochromatic edge (plain enumeration)."""
    es = [tuple(e) for e in edges]
    for colours in product(range(t), repeat=n):
        if all(colours[u] != colours[v] for u, v in es):
            return True
    return False


def split_into(n, edges, t, s):
    """Some map V -> [t] with colours < s cliques and the rest independent."""
    es = edge_set(n, edges)
    for colours in product(range(t), repeat=n):
        ok = True
        for u, v in combinations(range(n), 2):
            if colours[u] != colours[v]:
                continue
            adjacent = frozenset((u, v)) in es
            if (colours[u] < s) != adjacent:
                ok = False
                break
        if ok:
            return True
    return False


def comparability(n, edges):
    """Some orientation of all edges is transitive (all 2^m orientations)."""
    es = [tuple(e) for e in edges]
    for bits in product((0, 1), repeat=len(es)):
        arcs = {(u, v) if b == 0 else (v, u) for (u, v), b in zip(es, bits)}
        if all((a, c) in arcs for (a, b) in arcs for (b2, c) in arcs if b == b2 and a != c):
            return True
    return not es


def two_clique(n, edges):
    es = edge_set(n, edges)
    for mask in range(1 << n):
        side = {v for v in range(n) if mask >> v & 1}
        want = {frozenset(p) for p in combinations(range(n), 2) if (p[0] in side) == (p[1] in side)}
        if want == es:
            return True
    return False


def _faces(rot):
    """Number of faces traced by a rotation system (dict vertex -> cyclic list)."""
    darts = {(u, v) for u in rot for v in rot[u]}
    seen = set()
    faces = 0
    for d in darts:
        if d in seen:
            continue
        faces += 1
        cur = d
        while cur not in seen:
            seen.add(cur)
            u, v = cur
            nbrs = rot[v]
            cur = (v, nbrs[(nbrs.index(u) + 1) % len(nbrs)])
    return faces


def planar(n, edges):
    """Euler-genus test over all rotation systems of each connected component."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    for s in range(n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        m = sum(len(adj[v]) for v in comp) // 2
        if m == 0:
            continue
        if len(comp) >= 3 and m > 3 * len(comp) - 6:
            return False  # Euler's bound
        verts = sorted(comp)
        choices = []
        for v in verts:
            nb = sorted(adj[v])
            first, rest = nb[0], nb[1:]
            choices.append([[first, *p] for p in permutations(rest)])
        target = m - len(verts) + 2
        if not any(_faces(dict(zip(verts, rot))) == target for rot in product(*choices)):
            return False
    return True


def outerplanar(n, edges):
    edges = list(edges)
    if n >= 2 and len(edges) > 2 * n - 3:
        return False
    return planar(n + 1, list(edges) + [(v, n) for v in range(n)])


def set_partitions(items):
    """All set partitions in restricted-growth order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for i in range(len(part)):
            yield part[:i] + [[first, *part[i]]] + part[i + 1:]


def tind_grid(n, edges, measures, values):
    """t_ind by integrating psi over the cells of a uniform grid refining the blocks.

    Every block measure is a multiple of ``1 / D``; W is evaluated at the grid
    cell midpoints through the block boundaries, never through block indices.
    """
    den = math.lcm(*(Fraction(p).denominator for p in measures))
    bounds = np.cumsum([float(p) for p in measures])
    mids = (np.arange(den) + 0.5) / den
    cell_block = np.searchsorted(bounds, mids, side="right")
    vals = [[Fraction(x) for x in row] for row in values]
    es = edge_set(n, edges)
    total = Fraction(0)
    for cells in product(range(den), repeat=n):
        psi = Fraction(1)
        for u, v in combinations(range(n), 2):
            x = vals[cell_block[cells[u]]][cell_block[cells[v]]]
            psi *= x if frozenset((u, v)) in es else 1 - x
            if psi == 0:
                break
        total += psi
    return total / den**n


def constructible(n, edges, values):
    """Some block assignment respects every 0 and 1 value (all k^n assignments)."""
    es = edge_set(n, edges)
    k = len(values)
    for blocks in product(range(k), repeat=n):
        ok = True
        for u, v in combinations(range(n), 2):
            x = values[blocks[u]][blocks[v]]
            if frozenset((u, v)) in es and x == 0 or frozenset((u, v)) not in es and x == 1:
                ok = False
                break
        if ok:
            return True
    return False


def straight_line_crossings(points):
    """Pairs of disjoint edges of the straight-line K_5 whose segments properly cross."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    count = 0
    edges = list(combinations(range(len(points)), 2))
    for e, f in combinations(edges, 2):
        if set(e) & set(f):
            continue
        a, b = points[e[0]], points[e[1]]
        c, d = points[f[0]], points[f[1]]
        if orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0:
            count += 1
    return count
