"""Finite simple graphs, the special graphs G_k, B_k, H_k and basic predicates.

Vertices are always ``0..n-1``. For the special graphs the vertex order is
canonical: the singletons ``{1}..{k}`` first, then the pairs ``{i, j}`` in
lexicographic order. :func:`special_labels` returns the subset behind each
vertex index.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

VertexPartition = tuple  # tuple[frozenset[int], ...]; parts may be empty


class EnvelopeError(ValueError):
    """Raised when an exact operation is asked to run outside its size envelope."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        import numpy as np

        a = np.asarray(matrix, dtype=bool)
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(iu.tolist(), ju.tolist())))

    def to_adjacency(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        return a

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled in the order given."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            frozenset(
                (index[u], index[v])
                for u, v in self.edges
                if u in index and v in index
            ),
        )

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(u, v) for u, v in combinations(vs, 2))


# -- special graphs ---------------------------------------------------------


def special_labels(k: int) -> list[frozenset]:
    """Subsets of ``{1..k}`` behind the vertices of G_k, B_k, H_k, in vertex order."""
    singles = [frozenset((i,)) for i in range(1, k + 1)]
    pairs = [frozenset(p) for p in combinations(range(1, k + 1), 2)]
    return singles + pairs


def make_special_graph(kind: str, k: int) -> Graph:
    """G_k, B_k or H_k on the ``k + k(k-1)/2`` subsets of size one or two."""
    if kind not in ("G", "B", "H"):
        raise ValueError(f"kind must be one of G, B, H; got {kind!r}")
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    if kind == "H" and k < 4:
        raise ValueError(f"H_k is defined for k >= 4, got {k}")
    labels = special_labels(k)
    removed = {
        frozenset((frozenset((1, 2)), frozenset((1, 3)))),
        frozenset((frozenset((1, 2)), frozenset((2, 3)))),
        frozenset((frozenset((1, 3)), frozenset((2, 3)))),
    }
    edges = []
    for u, v in combinations(range(len(labels)), 2):
        a, b = labels[u], labels[v]
        if not a & b:
            continue
        if len(a) == 2 and len(b) == 2:
            if kind == "B":
                continue
            if kind == "H" and frozenset((a, b)) in removed:
                continue
        edges.append((u, v))
    return Graph.from_edges(len(labels), edges)


def make_basic(kind: str, n: int = 0) -> Graph:
    """Named small graphs: complete, cycle, path, complete_minus_edge, prism, empty.

    ``complete_minus_edge`` removes the edge ``(0, 1)``. The prism is the two
    triangles ``{0,2,4}``, ``{1,3,5}`` joined by the matching ``03, 14, 25``.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if kind == "complete":
        return Graph.from_edges(n, combinations(range(n), 2))
    if kind == "empty":
        return Graph(n)
    if kind == "cycle":
        if n < 3:
            raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
        return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))
    if kind == "path":
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "complete_minus_edge":
        if n < 2:
            raise ValueError(f"K_n - e needs n >= 2, got {n}")
        return Graph.from_edges(n, (e for e in combinations(range(n), 2) if e != (0, 1)))
    if kind == "prism":
        if n not in (0, 6):
            raise ValueError(f"the prism has exactly 6 vertices, got n={n}")
        return Graph.from_edges(
            6, [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5), (0, 3), (1, 4), (2, 5)]
        )
    raise ValueError(f"unknown basic graph kind {kind!r}")


def complement(g: Graph) -> Graph:
    return Graph.from_edges(
        g.n, (e for e in combinations(range(g.n), 2) if e not in g.edges)
    )


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


# -- searches ---------------------------------------------------------------


def contains_induced(h: Graph, g: Graph, timeout: float | None = None) -> dict | None:
    """Find an embedding of ``h`` as an induced subgraph of ``g``.

    Returns a dict ``h-vertex -> g-vertex`` or ``None``. Backtracking over the
    vertices of ``h`` in a connectivity-first order; exact for ``h`` up to 15
    vertices. With ``timeout`` (seconds) the search raises ``TimeoutError``
    when the budget runs out instead of guessing.
    """
    if h.n > g.n:
        return None
    if h.n > 15:
        raise EnvelopeError(f"pattern has {h.n} vertices; exact search supports <= 15")
    if h.n == 0:
        return {}
    deadline = None if timeout is None else time.monotonic() + timeout

    # order: start at max degree, then repeatedly the vertex with most placed neighbours
    order = [max(range(h.n), key=h.degree)]
    rest = set(range(h.n)) - set(order)
    while rest:
        placed = set(order)
        nxt = max(sorted(rest), key=lambda v: (len(h.adj[v] & placed), h.degree(v)))
        order.append(nxt)
        rest.remove(nxt)

    g_deg = [g.degree(v) for v in range(g.n)]
    mapping: dict[int, int] = {}
    used: set[int] = set()
    steps = 0

    def extend(i: int) -> bool:
        nonlocal steps
        if i == len(order):
            return True
        steps += 1
        if deadline is not None and steps % 1024 == 0 and time.monotonic() > deadline:
            raise TimeoutError("induced-subgraph search exceeded its time budget")
        hv = order[i]
        need = h.degree(hv)
        prev = [(order[j], mapping[order[j]]) for j in range(i)]
        anchored = [gv for hu, gv in prev if hu in h.adj[hv]]
        candidates = g.adj[anchored[0]] if anchored else range(g.n)
        for gv in candidates:
            if gv in used or g_deg[gv] < need:
                continue
            ok = True
            for hu, gu in prev:
                if (hu in h.adj[hv]) != (gu in g.adj[gv]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[hv] = gv
            used.add(gv)
            if extend(i + 1):
                return True
            del mapping[hv]
            used.discard(gv)
        return False

    return dict(mapping) if extend(0) else None


def membership_cts(g: Graph, t: int, s: int) -> VertexPartition | None:
    """Partition into ``s`` cliques followed by ``t - s`` independent sets, or None.

    Exact backtracking for up to 20 vertices.
    """
    if not 0 <= s <= t:
        raise ValueError(f"need 0 <= s <= t, got s={s}, t={t}")
    if g.n > 20:
        raise EnvelopeError(f"graph has {g.n} vertices; exact search supports <= 20")
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    parts: list[set[int]] = [set() for _ in range(t)]
    is_clique_part = [i < s for i in range(t)]

    def fits(v: int, i: int) -> bool:
        if is_clique_part[i]:
            return parts[i] <= g.adj[v]
        return not (parts[i] & g.adj[v])

    def place(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        tried_empty = [False, False]
        for i in range(t):
            kind = 1 if is_clique_part[i] else 0
            if not parts[i]:
                if tried_empty[kind]:
                    continue
                tried_empty[kind] = True
            if fits(v, i):
                parts[i].add(v)
                if place(idx + 1):
                    return True
                parts[i].discard(v)
        return False

    if not place(0):
        return None
    return tuple(frozenset(p) for p in parts)


def check_partition(n: int, parts: Sequence[Iterable[int]]) -> VertexPartition:
    """Validate a vertex partition (empty parts allowed) and freeze it."""
    frozen = tuple(frozenset(p) for p in parts)
    seen: set[int] = set()
    for p in frozen:
        if p & seen:
            raise ValueError(f"parts overlap on {sorted(p & seen)}")
        seen |= p
    if seen != set(range(n)):
        missing = sorted(set(range(n)) - seen)
        extra = sorted(seen - set(range(n)))
        raise ValueError(f"partition does not cover 0..{n - 1} (missing {missing}, extra {extra})")
    return frozen


def quotient(g: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """One vertex per part; ``ij`` is an edge iff some edge of ``g`` joins parts i and j."""
    frozen = check_partition(g.n, parts)
    where = {}
    for i, p in enumerate(frozen):
        for v in p:
            where[v] = i
    edges = {
        (where[u], where[v])
        for u, v in g.edges
        if where[u] != where[v]
    }
    return Graph.from_edges(len(frozen), edges)


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(g.to_networkx())[0]


def is_outerplanar(g: Graph) -> bool:
    """Outerplanar iff adding one vertex adjacent to everything keeps it planar."""
    apex = g.n
    return is_planar(Graph.from_edges(g.n + 1, list(g.edges) + [(v, apex) for v in range(g.n)]))


def connected_components(g: Graph) -> list[list[int]]:
    seen, comps = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


# -- enumeration ------------------------------------------------------------


def all_labeled_graphs(n: int):
    """Yield every labeled graph on ``0..n-1`` (``2^(n choose 2)`` of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def canonical_key(g: Graph) -> tuple:
    """Lexicographically smallest sorted edge list over all relabellings (small n only)."""
    if g.n > 8:
        raise EnvelopeError(f"canonical_key brute-forces n! relabellings; n={g.n} is too large")
    from itertools import permutations

    best = None
    for perm in permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.n, best)


@lru_cache(maxsize=None)
def isomorphism_classes(n: int) -> tuple:
    """One representative per isomorphism class on n vertices."""
    if n > 7:
        raise EnvelopeError("isomorphism classes are only tabulated up to 7 vertices")
    if n > 5:
        atlas = [gr for gr in nx.graph_atlas_g() if gr.number_of_nodes() == n]
        return tuple(Graph.from_edges(n, gr.edges()) for gr in atlas)
    seen: dict[tuple, Graph] = {}
    for g in all_labeled_graphs(n):
        key = canonical_key(g)
        if key not in seen:
            seen[key] = Graph.from_edges(n, key[1])
    return tuple(seen[k] for k in sorted(seen))


def automorphism_count(g: Graph) -> int:
    from networkx.algorithms.isomorphism import GraphMatcher

    nxg = g.to_networkx()
    return sum(1 for _ in GraphMatcher(nxg, nxg).isomorphisms_iter())


# -- text format ------------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise ValueError("empty graph file")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(rows) - 1}")
    return Graph.from_edges(n, ((int(r[0]), int(r[1])) for r in rows[1:]))


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_graph(g))
