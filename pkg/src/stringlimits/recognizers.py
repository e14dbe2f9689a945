"""Evidence for membership in two-clique, (in)comparability, string and outer-string classes.

Every answer is a :class:`ClassEvidence` with a three-valued verdict. String and
outer-string recognition is NP-hard, so those classifiers report ``member``
only with a clique covering whose quotient is planar (resp. outerplanar),
``non-member`` only with an induced copy of a forbidden graph, and ``unknown``
otherwise.
"""

from __future__ import annotations

import enum
import random
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from .graphs import (
    Graph,
    check_partition,
    complement,
    connected_components,
    contains_induced,
    is_outerplanar,
    is_planar,
    make_special_graph,
    quotient,
)

EXACT_ORIENTATION_LIMIT = 12
EXACT_COVER_LIMIT = 12


class Verdict(str, enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ClassEvidence:
    verdict: Verdict
    certificate: Any = None
    method: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @property
    def is_member(self) -> bool:
        return self.verdict is Verdict.MEMBER

    @property
    def is_non_member(self) -> bool:
        return self.verdict is Verdict.NON_MEMBER


# -- two-clique -------------------------------------------------------------


def is_two_clique(g: Graph) -> ClassEvidence:
    """Disjoint union of at most two cliques (either may be empty).

    Certificates: the two cliques, or an induced P_3 ``(a, b, c)`` with ``b`` the
    middle vertex, or three pairwise non-adjacent vertices.
    """
    comps = connected_components(g)
    for comp in comps:
        if not g.is_clique(comp):
            p3 = _induced_p3(g, comp)
            return ClassEvidence(Verdict.NON_MEMBER, ("P3", p3), "two-clique")
    if len(comps) > 2:
        return ClassEvidence(
            Verdict.NON_MEMBER, ("independent", tuple(c[0] for c in comps[:3])), "two-clique"
        )
    parts = [frozenset(c) for c in comps] + [frozenset()] * (2 - len(comps))
    return ClassEvidence(Verdict.MEMBER, tuple(parts), "two-clique")


def _induced_p3(g: Graph, comp: list[int]) -> tuple[int, int, int]:
    # a connected non-clique has a vertex with two non-adjacent neighbours
    for b in comp:
        for a, c in combinations(sorted(g.adj[b]), 2):
            if not g.has_edge(a, c):
                return (a, b, c)
    raise AssertionError("connected non-clique without an induced P3")


# -- comparability ----------------------------------------------------------


def check_transitive_orientation(g: Graph, arcs) -> bool:
    """Audit: one arc per edge, nothing else, and ``a->b->c`` implies ``a->c``."""
    arcs = set(arcs)
    if len(arcs) != g.m:
        return False
    for a, b in arcs:
        if not g.has_edge(a, b) or (b, a) in arcs:
            return False
    out = {v: set() for v in range(g.n)}
    for a, b in arcs:
        out[a].add(b)
    for a in range(g.n):
        for b in out[a]:
            if not out[b] <= out[a]:
                return False
    return True


def _gamma(g: Graph, arc1, arc2) -> bool:
    """``ab Γ a'b'``: the arcs share a tail (heads non-adjacent) or a head (tails non-adjacent)."""
    (a, b), (c, d) = arc1, arc2
    if (a, b) == (c, d) or not g.has_edge(a, b) or not g.has_edge(c, d):
        return False
    if a == c:
        return b != d and not g.has_edge(b, d)
    if b == d:
        return a != c and not g.has_edge(a, c)
    return False


def check_gamma_chain(g: Graph, chain) -> bool:
    """A Γ-chain from an arc to its reverse proves that no transitive orientation exists."""
    chain = [tuple(a) for a in chain]
    if len(chain) < 2 or chain[-1] != chain[0][::-1]:
        return False
    return all(_gamma(g, x, y) for x, y in zip(chain, chain[1:]))


def _gamma_neighbours(g: Graph, arc):
    a, b = arc
    for c in g.adj[a]:
        if c != b and not g.has_edge(b, c):
            yield (a, c)
    for c in g.adj[b]:
        if c != a and not g.has_edge(a, c):
            yield (c, b)


def _implication_classes(g: Graph):
    """Connected components of arcs under Γ, with BFS parents for chain recovery."""
    cls: dict[tuple, int] = {}
    parent: dict[tuple, tuple | None] = {}
    classes = []
    for u, v in sorted(g.edges):
        for start in ((u, v), (v, u)):
            if start in cls:
                continue
            idx = len(classes)
            members = [start]
            cls[start] = idx
            parent[start] = None
            queue = deque([start])
            while queue:
                arc = queue.popleft()
                for nxt in _gamma_neighbours(g, arc):
                    if nxt not in cls:
                        cls[nxt] = idx
                        parent[nxt] = arc
                        members.append(nxt)
                        queue.append(nxt)
            classes.append(members)
    return cls, parent, classes


def _chain_from_root(parent, arc) -> list:
    path = []
    while arc is not None:
        path.append(arc)
        arc = parent[arc]
    return path[::-1]


def is_comparability(g: Graph, timeout: float | None = None) -> ClassEvidence:
    """Transitive orientation search, exact up to 12 vertices.

    Arcs are grouped into implication classes under the forcing relation Γ
    (``ab`` forces ``ac`` when ``bc`` is not an edge). A class that contains an
    arc and its reverse yields a Γ-chain certificate of non-membership.
    Otherwise the search orients one class at a time, closing under
    transitivity, and backtracks on conflict; the result is audited before it
    is returned.
    """
    if g.n > EXACT_ORIENTATION_LIMIT:
        return ClassEvidence(Verdict.UNKNOWN, None, "transitive-orientation",
                             {"reason": f"{g.n} vertices exceeds the exact limit {EXACT_ORIENTATION_LIMIT}"})
    cls, parent, classes = _implication_classes(g)
    for members in classes:
        for arc in members:
            rev = arc[::-1]
            if cls.get(rev) == cls[arc]:
                # walk arc -> root, then root -> rev (Γ is symmetric)
                to_arc = _chain_from_root(parent, arc)
                to_rev = _chain_from_root(parent, rev)
                chain = _shortcut(to_arc[::-1] + to_rev[1:])
                return ClassEvidence(Verdict.NON_MEMBER, ("gamma-chain", tuple(chain)),
                                     "transitive-orientation")
    orientation = _orient(g, classes, cls, timeout)
    if orientation is None:
        return ClassEvidence(Verdict.NON_MEMBER, ("exhaustive", None), "transitive-orientation",
                             {"reason": "no transitive orientation exists (exhaustive search)"})
    if not check_transitive_orientation(g, orientation):
        raise AssertionError("orientation search produced a non-transitive orientation")
    return ClassEvidence(Verdict.MEMBER, tuple(sorted(orientation)), "transitive-orientation")


def _shortcut(chain: list) -> list:
    """Drop loops from a walk so the chain visits each arc once."""
    out, pos = [], {}
    for arc in chain:
        if arc in pos:
            del out[pos[arc] + 1:]
            pos = {a: i for i, a in enumerate(out)}
            continue
        pos[arc] = len(out)
        out.append(arc)
    return out


def _orient(g: Graph, classes, cls, timeout) -> set | None:
    deadline = None if timeout is None else time.monotonic() + timeout
    out = {v: set() for v in range(g.n)}

    def add(arcs) -> list | None:
        """Add arcs and close under transitivity; returns what was added or None."""
        added = []
        queue = deque(arcs)
        while queue:
            a, b = queue.popleft()
            if b in out[a]:
                continue
            if a in out[b] or not g.has_edge(a, b):
                for x, y in added:
                    out[x].discard(y)
                return None
            out[a].add(b)
            added.append((a, b))
            # new arc a->b: x->a gives x->b, b->y gives a->y
            for x in range(g.n):
                if a in out[x]:
                    queue.append((x, b))
            for y in out[b]:
                queue.append((a, y))
        return added

    seen_classes: list[int] = []
    for members in classes:
        idx = cls[members[0]]
        rev_idx = cls[members[0][::-1]]
        if rev_idx in seen_classes or idx in seen_classes:
            continue
        seen_classes.append(idx)
    pending = [classes[i] for i in seen_classes]

    def search(i: int) -> bool:
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("orientation search exceeded its time budget")
        if i == len(pending):
            return True
        members = pending[i]
        for choice in (members, [a[::-1] for a in members]):
            if all(b in out[a] for a, b in choice):
                if search(i + 1):
                    return True
                continue
            added = add(choice)
            if added is None:
                continue
            if search(i + 1):
                return True
            for x, y in added:
                out[x].discard(y)
        return False

    if not search(0):
        return None
    return {(a, b) for a in range(g.n) for b in out[a]}


def is_incomparability(g: Graph, timeout: float | None = None) -> ClassEvidence:
    """Comparability of the complement; certificates refer to the complement's edges."""
    ev = is_comparability(complement(g), timeout)
    return ClassEvidence(ev.verdict, ev.certificate, "complement-transitive-orientation", ev.details)


# -- clique coverings -------------------------------------------------------


def _parse_target(target) -> tuple[str, int | None]:
    if isinstance(target, tuple):
        name, k = target
        return str(name), int(k)
    if isinstance(target, str) and target.startswith("max_parts"):
        _, _, k = target.partition(":")
        if not k:
            raise ValueError("max_parts target needs a bound, e.g. 'max_parts:4'")
        return "max_parts", int(k)
    if target in ("planar_quotient", "outerplanar_quotient"):
        return target, None
    raise ValueError(f"unknown cover target {target!r}")


class _QuotientTest:
    """Target predicate on quotient edge sets, memoised."""

    def __init__(self, name: str, bound: int | None):
        self.name, self.bound = name, bound
        self.cache: dict[frozenset, bool] = {}

    def __call__(self, parts: int, edges: frozenset) -> bool:
        if self.name == "max_parts":
            return parts <= self.bound
        used = {v for e in edges for v in e}
        nv = len(used)
        if self.name == "planar_quotient":
            if nv <= 4:
                return True
            if len(edges) > 3 * nv - 6:
                return False
        else:
            if nv <= 3:
                return True
            if len(edges) > 2 * nv - 3:
                return False
        hit = self.cache.get(edges)
        if hit is None:
            labels = {v: i for i, v in enumerate(sorted(used))}
            q = Graph.from_edges(nv, ((labels[a], labels[b]) for a, b in edges))
            hit = is_planar(q) if self.name == "planar_quotient" else is_outerplanar(q)
            self.cache[edges] = hit
        return hit


def check_clique_cover(g: Graph, parts, target) -> bool:
    """Independent audit of a covering certificate against the target predicate."""
    name, bound = _parse_target(target)
    try:
        frozen = check_partition(g.n, parts)
    except ValueError:
        return False
    if not all(g.is_clique(p) for p in frozen):
        return False
    q = quotient(g, frozen)
    if name == "planar_quotient":
        return is_planar(q)
    if name == "outerplanar_quotient":
        return is_outerplanar(q)
    return sum(1 for p in frozen if p) <= bound


def find_clique_cover_with(
    g: Graph,
    target,
    hint: Sequence | None = None,
    timeout: float | None = None,
    seed: int = 0,
    restarts: int = 200,
) -> ClassEvidence:
    """Search for a partition into cliques whose quotient satisfies ``target``.

    ``target`` is ``"planar_quotient"``, ``"outerplanar_quotient"`` or
    ``("max_parts", k)`` (also ``"max_parts:k"``). A ``hint`` partition is tried
    first. Up to 12 vertices the search is exhaustive over set partitions in
    restricted-growth order, so failure is a genuine non-membership; beyond that
    a seeded greedy with restarts runs and failure is reported as unknown.
    The exhaustive prune is sound because the target properties are closed
    under taking subgraphs and the quotient only gains edges as parts grow.
    """
    name, bound = _parse_target(target)
    method = f"clique-cover/{name}" + (f"<={bound}" if bound is not None else "")
    if hint is not None:
        try:
            if check_clique_cover(g, hint, target):
                return ClassEvidence(Verdict.MEMBER, check_partition(g.n, hint), method, {"source": "hint"})
        except ValueError:
            pass
    test = _QuotientTest(name, bound)
    if g.n <= EXACT_COVER_LIMIT:
        found, nodes = _exhaustive_cover(g, test, timeout)
        if found is None:
            return ClassEvidence(Verdict.NON_MEMBER, ("exhaustive", nodes), method,
                                 {"source": "exhaustive", "nodes": nodes})
        cert = tuple(frozenset(p) for p in found)
        return ClassEvidence(Verdict.MEMBER, cert, method, {"source": "exhaustive", "nodes": nodes})
    found = _greedy_cover(g, test, seed, restarts, timeout)
    if found is None:
        return ClassEvidence(Verdict.UNKNOWN, None, method,
                             {"source": "greedy", "reason": "heuristic search found no covering"})
    return ClassEvidence(Verdict.MEMBER, tuple(frozenset(p) for p in found), method, {"source": "greedy"})


def _quotient_edges(g: Graph, where: dict[int, int], v: int, part: int) -> set:
    out = set()
    for u in g.adj[v]:
        p = where.get(u)
        if p is not None and p != part:
            out.add((p, part) if p < part else (part, p))
    return out


def _exhaustive_cover(g: Graph, test: _QuotientTest, timeout):
    deadline = None if timeout is None else time.monotonic() + timeout
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    parts: list[set[int]] = []
    where: dict[int, int] = {}
    edges: dict[tuple, int] = {}
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise TimeoutError("clique-cover search exceeded its time budget")
        if i == len(order):
            return True
        v = order[i]
        for p in range(len(parts) + 1):
            if p < len(parts) and not parts[p] <= g.adj[v]:
                continue
            new = [e for e in _quotient_edges(g, where, v, p) if e not in edges]
            if p == len(parts):
                parts.append(set())
            for e in new:
                edges[e] = 1
            if test(len(parts), frozenset(edges)):
                parts[p].add(v)
                where[v] = p
                if rec(i + 1):
                    return True
                del where[v]
                parts[p].discard(v)
            for e in new:
                del edges[e]
            if not parts[p]:
                parts.pop()
        return False

    if rec(0):
        return [sorted(p) for p in parts], nodes
    return None, nodes


def _greedy_cover(g: Graph, test: _QuotientTest, seed: int, restarts: int, timeout):
    deadline = None if timeout is None else time.monotonic() + timeout
    rng = random.Random(seed)
    base = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for attempt in range(restarts):
        if deadline is not None and time.monotonic() > deadline:
            return None
        order = base if attempt == 0 else rng.sample(base, len(base))
        parts: list[set[int]] = []
        where: dict[int, int] = {}
        edges: set = set()
        ok = True
        for v in order:
            placed = False
            cands = [p for p in range(len(parts)) if parts[p] <= g.adj[v]]
            # prefer the part creating the fewest new quotient edges
            scored = []
            for p in cands + [len(parts)]:
                new = _quotient_edges(g, where, v, p) - edges
                scored.append((len(new), -len(parts[p]) if p < len(parts) else 1, p, new))
            scored.sort(key=lambda t: t[:3])
            for _, _, p, new in scored:
                nparts = len(parts) + (p == len(parts))
                if test(nparts, frozenset(edges | new)):
                    if p == len(parts):
                        parts.append(set())
                    parts[p].add(v)
                    where[v] = p
                    edges |= new
                    placed = True
                    break
            if not placed:
                ok = False
                break
        if ok:
            return [sorted(p) for p in parts]
    return None


# -- string / outer-string --------------------------------------------------


def _classify(g: Graph, target: str, k: int, label: str, timeout, seed) -> ClassEvidence:
    cover = find_clique_cover_with(g, target, timeout=timeout, seed=seed)
    if cover.is_member:
        return ClassEvidence(Verdict.MEMBER, ("cover", cover.certificate), f"{label}/{cover.method}")
    for kind in ("G", "B", "H"):
        h = make_special_graph(kind, k)
        emb = contains_induced(h, g, timeout=timeout)
        if emb is not None:
            return ClassEvidence(Verdict.NON_MEMBER, (f"induced-{kind}{k}", emb), f"{label}/forbidden")
    return ClassEvidence(Verdict.UNKNOWN, None, label,
                         {"reason": "no covering found and no forbidden induced subgraph present"})


def classify_string(g: Graph, timeout: float | None = None, seed: int = 0) -> ClassEvidence:
    """Member via a planar clique covering; non-member via induced G_5, B_5 or H_5."""
    return _classify(g, "planar_quotient", 5, "string", timeout, seed)


def classify_outerstring(g: Graph, timeout: float | None = None, seed: int = 0) -> ClassEvidence:
    """Member via an outerplanar clique covering; non-member via induced G_4, B_4 or H_4."""
    return _classify(g, "outerplanar_quotient", 4, "outerstring", timeout, seed)


def format_evidence(ev: ClassEvidence) -> str:
    """Text form: ``verdict``, ``method``, then one certificate line per item."""
    lines = [f"verdict {ev.verdict}", f"method {ev.method}"]
    cert = ev.certificate
    if cert is None:
        lines.append("certificate none")
    elif isinstance(cert, tuple) and cert and isinstance(cert[0], str):
        kind, body = cert[0], cert[1]
        lines.append(f"certificate {kind}")
        if isinstance(body, dict):
            lines += [f"map {a} {b}" for a, b in sorted(body.items())]
        elif isinstance(body, tuple) and body and isinstance(body[0], frozenset):
            lines += ["part " + " ".join(map(str, sorted(p))) for p in body]
        elif isinstance(body, tuple) and body and isinstance(body[0], tuple):
            lines += [f"arc {a} {b}" for a, b in body]
        elif isinstance(body, tuple):
            lines.append("vertices " + " ".join(map(str, body)))
        elif body is not None:
            lines.append(f"nodes {body}")
    elif isinstance(cert, tuple) and cert and isinstance(cert[0], frozenset):
        lines.append("certificate partition")
        lines += ["part " + " ".join(map(str, sorted(p))) for p in cert]
    elif isinstance(cert, tuple) and cert and isinstance(cert[0], tuple):
        lines.append("certificate orientation")
        lines += [f"arc {a} {b}" for a, b in cert]
    else:
        lines.append(f"certificate {cert!r}")
    return "\n".join(lines) + "\n"
