"""W-random graphs, psi, constructibility and the standard witnessing assignments.

Randomness comes from numpy's counter-based Philox-4x64 generator keyed by
``(master_seed, trial)``. Within one trial the stream is consumed in a fixed
order: ``n`` latent uniforms first, then one uniform per vertex pair in
row-major upper-triangle order, so the draw for edge ``ij`` always sits at the
same counter offset. Identical seeds give identical graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphon import StepGraphon, is_in_rk, rk_groups
from .graphs import Graph, make_special_graph, special_labels

WitnessAssignment = tuple  # tuple[int, ...]: block index of every vertex

_MASK64 = 2**64 - 1


@dataclass(frozen=True)
class SeedSpec:
    master: int
    trial: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=[self.master & _MASK64, self.trial & _MASK64]))

    def spawn(self, trials: int) -> list["SeedSpec"]:
        """Per-trial seeds: same master key, trial counter ``0..trials-1``."""
        return [SeedSpec(self.master, t) for t in range(trials)]


def _as_seed(seed) -> SeedSpec:
    return seed if isinstance(seed, SeedSpec) else SeedSpec(int(seed))


@lru_cache(maxsize=32)
def _small_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def _draw(w: StepGraphon, n: int, seed):
    """Blocks of the latent points and the upper-triangle pairs that became edges."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    rng = _as_seed(seed).generator()
    cum, vals = w.float_tables
    latent = rng.random(n)
    blocks = np.searchsorted(cum, latent, side="right")
    coins = rng.random(n * (n - 1) // 2)
    iu, ju = _small_pairs(n) if n <= 64 else np.triu_indices(n, 1)
    present = coins < vals[blocks[iu], blocks[ju]]
    return blocks, iu[present], ju[present]


def sample_adjacency(w: StepGraphon, n: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Adjacency matrix and block assignment of one draw of G(n, W)."""
    blocks, iu, ju = _draw(w, n, seed)
    adj = np.zeros((n, n), dtype=bool)
    adj[iu, ju] = True
    adj |= adj.T
    return adj, blocks


def sample_w_random(w: StepGraphon, n: int, seed) -> tuple[Graph, WitnessAssignment]:
    """One draw of G(n, W) together with the block of every latent point."""
    blocks, iu, ju = _draw(w, n, seed)
    return Graph(n, frozenset(zip(iu.tolist(), ju.tolist()))), tuple(blocks.tolist())


def block_partition(blocks: Sequence[int], k: int) -> tuple:
    """Vertex partition induced by a block assignment (one part per block, maybe empty)."""
    parts = [set() for _ in range(k)]
    for v, b in enumerate(blocks):
        parts[b].add(v)
    return tuple(frozenset(p) for p in parts)


def psi(g: Graph, w: StepGraphon, points: Sequence) -> Fraction:
    """Product of W over edges and 1 - W over non-edges at the given points."""
    if len(points) != g.n:
        raise ValueError(f"need {g.n} points, got {len(points)}")
    blocks = [w.block_of(x) for x in points]
    return assignment_psi(g, w, blocks)


def assignment_psi(g: Graph, w: StepGraphon, blocks: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            x = w.values[blocks[u]][blocks[v]]
            out *= x if g.has_edge(u, v) else 1 - x
            if out == 0:
                return out
    return out


def witness_points(w: StepGraphon, blocks: Sequence[int]) -> tuple:
    """Block midpoints realising a block assignment as points of [0, 1]."""
    bounds = w.boundaries()
    return tuple((bounds[b] + bounds[b + 1]) / 2 for b in blocks)


def is_constructible(g: Graph, w: StepGraphon) -> WitnessAssignment | None:
    """Block assignment with psi > 0, or None when G is not W-constructible.

    Exact for step graphons: W is constant on blocks (diagonal included), so
    witnessing points only matter through their blocks. Backtracking in
    descending-degree order with forward checking; worst case ``k**n``.
    """
    k, n = w.k, g.n
    if n == 0:
        return ()
    allow_edge = [[w.values[a][b] != 0 for b in range(k)] for a in range(k)]
    allow_non = [[w.values[a][b] != 1 for b in range(k)] for a in range(k)]
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    domains = {v: set(range(k)) for v in range(n)}
    assign: dict[int, int] = {}

    def search(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for b in sorted(domains[v]):
            assign[v] = b
            trimmed = []
            ok = True
            for u in order[i + 1:]:
                table = allow_edge if g.has_edge(u, v) else allow_non
                drop = {c for c in domains[u] if not table[b][c]}
                if drop:
                    domains[u] -= drop
                    trimmed.append((u, drop))
                    if not domains[u]:
                        ok = False
                        break
            if ok and search(i + 1):
                return True
            for u, drop in trimmed:
                domains[u] |= drop
            del assign[v]
        return False

    if not search(0):
        return None
    return tuple(assign[v] for v in range(n))


# -- standard witnessing assignments ---------------------------------------


def _groups(w: StepGraphon, r: int) -> list[list[int]]:
    if not is_in_rk(w, r):
        raise ValueError(f"graphon is not in R_{r}; the standard witnesses need a member of R_{r}")
    groups = rk_groups(w, r)
    out = [[] for _ in range(r)]
    for b, gi in enumerate(groups):
        out[gi].append(b)
    return out


def _full_block(w: StepGraphon, group: list[int], label: str) -> int:
    for b in group:
        if w.values[b][b] == 1:
            return b
    raise ValueError(f"{label}: no block with diagonal value 1 in a group that needs one")


def _vertex_index(k: int) -> dict:
    return {s: i for i, s in enumerate(special_labels(k))}


def _layers(r: int) -> dict[int, list[frozenset]]:
    """X_l = {{l+1, j} : 1 <= j <= l+1} for l = 3..r ({i, i} meaning {i})."""
    return {
        ell: [frozenset((ell + 1, j)) for j in range(1, ell + 2)]
        for ell in range(3, r + 1)
    }


def standard_witness(claim: str, r: int, w: StepGraphon) -> tuple[Graph, WitnessAssignment]:
    """Obstruction graph plus the partition-based witnessing assignment of one claim.

    ``claim`` is one of ``cl00`` (two groups with a 0-diagonal block -> B_{r+1}),
    ``cl1`` (a 0-diagonal block -> G_{r+1}), ``cl111`` (a non-transitive "value 1"
    triple -> G_{r+1}), ``cl2`` (three disjoint-clique parts in one group ->
    G_{r+1}) and ``clr1`` (two groups with two parts each -> H_{r+1}, or B_3 when
    r = 2). ``w`` must be in R_r and exhibit the violating configuration.
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    groups = _groups(w, r)
    k = r + 1
    idx = _vertex_index(k)
    target: dict[frozenset, int] = {}

    def put(subsets, block):
        for s in subsets:
            target[frozenset(s)] = block

    if claim == "cl00":
        zeros = [(gi, b) for gi, grp in enumerate(groups) for b in grp if w.values[b][b] == 0]
        distinct = {}
        for gi, b in zeros:
            distinct.setdefault(gi, b)
        if len(distinct) < 2:
            raise ValueError("cl00: needs 0-diagonal blocks in two different groups")
        (_, x), (_, y) = sorted(distinct.items())[:2]
        graph = make_special_graph("B", k)
        for s in idx:
            target[s] = x if len(s) == 1 else y
    elif claim in ("cl1", "cl111", "cl2"):
        if claim == "cl1":
            found = next(
                ((gi, b) for gi, grp in enumerate(groups) for b in grp if w.values[b][b] == 0),
                None,
            )
            if found is None:
                raise ValueError("cl1: no block with diagonal value 0")
            home = found[0]
            first = [({1}, found[1]), ({2}, found[1]), ({3}, found[1])]
        elif claim == "cl111":
            found = None
            for gi, grp in enumerate(groups):
                for x in grp:
                    for y in grp:
                        for z in grp:
                            if (w.values[x][y] == 1 and w.values[y][z] == 1
                                    and w.values[x][z] == 0 and found is None):
                                found = (gi, x, y, z)
            if found is None:
                raise ValueError("cl111: no blocks x, y, z with W(x,y) = W(y,z) = 1 and W(x,z) = 0")
            home, x, y, z = found
            first = [({1}, x), ({1, 2}, y), ({2}, z)]
        else:
            found = None
            for gi, grp in enumerate(groups):
                parts = [b for b in grp if w.values[b][b] == 1]
                for i, a1 in enumerate(parts):
                    for a2 in parts[i + 1:]:
                        for a3 in parts:
                            if a3 in (a1, a2) or a3 < a2:
                                continue
                            if (w.values[a1][a2] == 0 and w.values[a1][a3] == 0
                                    and w.values[a2][a3] == 0 and found is None):
                                found = (gi, a1, a2, a3)
            if found is None:
                raise ValueError("cl2: no group with three disjoint-clique parts")
            home, a1, a2, a3 = found
            first = [({1}, a1), ({2}, a2), ({3}, a3)]
        others = [gi for gi in range(r) if gi != home]
        for s, b in first:
            target[frozenset(s)] = b
        if claim == "cl111":
            # U_l = {{l+1, j} : j <= l+1} for l = 2..r
            layers = {ell: [frozenset((ell + 1, j)) for j in range(1, ell + 2)] for ell in range(2, r + 1)}
        else:
            layers = {2: [frozenset((1, 2)), frozenset((1, 3)), frozenset((2, 3))], **_layers(r)}
        for (ell, subsets), gi in zip(sorted(layers.items()), others):
            put(subsets, _full_block(w, groups[gi], claim))
        graph = make_special_graph("G", k)
    elif claim == "clr1":
        split = []
        for gi, grp in enumerate(groups):
            full = [b for b in grp if w.values[b][b] == 1]
            pair = next(
                ((a, b) for a in full for b in full if a < b and w.values[a][b] == 0),
                None,
            )
            if pair is not None:
                split.append((gi, pair))
        if len(split) < 2:
            raise ValueError("clr1: needs two groups that each have two disjoint-clique parts")
        (g1, (x1a, x1b)), (g2, (x2a, x2b)) = split[:2]
        put([{1}, {1, 3}], x1a)
        put([{2, 3}], x1b)
        put([{2}, {1, 2}], x2a)
        put([{3}], x2b)
        others = [gi for gi in range(r) if gi not in (g1, g2)]
        for (ell, subsets), gi in zip(sorted(_layers(r).items()), others):
            put(subsets, _full_block(w, groups[gi], claim))
        graph = make_special_graph("H", k) if r >= 3 else make_special_graph("B", 3)
    else:
        raise ValueError(f"unknown claim {claim!r}; expected cl00, cl1, cl111, cl2 or clr1")

    assignment = tuple(target[s] for s in special_labels(k))
    if assignment_psi(graph, w, assignment) <= 0:
        raise AssertionError(f"{claim}: constructed assignment does not witness the graph")
    return graph, assignment
