"""Step graphons with exact rational arithmetic.

A :class:`StepGraphon` splits ``[0, 1)`` into consecutive intervals of the
given measures and is constant on each product of intervals. Only
:func:`entropy`, :func:`t_ind_mc` and :func:`cut_distance_bounds` return
floats; everything else is an exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations, permutations
from typing import NamedTuple, Sequence

import numpy as np

from .graphs import EnvelopeError, Graph, isomorphism_classes

# k**n budget for exact induced densities (six blocks, nine vertices)
TIND_BUDGET = 6**9


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class StepGraphon:
    measures: tuple
    values: tuple

    def __post_init__(self):
        measures = tuple(_frac(p) for p in self.measures)
        values = tuple(tuple(_frac(x) for x in row) for row in self.values)
        k = len(measures)
        if k == 0:
            raise ValueError("a step graphon needs at least one block")
        if any(p <= 0 for p in measures):
            raise ValueError(f"block measures must be positive: {measures}")
        if sum(measures) != 1:
            raise ValueError(f"block measures sum to {sum(measures)}, not 1")
        if len(values) != k or any(len(row) != k for row in values):
            raise ValueError(f"value matrix must be {k}x{k}")
        for i in range(k):
            for j in range(k):
                if not 0 <= values[i][j] <= 1:
                    raise ValueError(f"value at ({i}, {j}) is {values[i][j]}, outside [0, 1]")
                if values[i][j] != values[j][i]:
                    raise ValueError(f"value matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "measures", measures)
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        return len(self.measures)

    @cached_property
    def float_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Inner block boundaries and the value matrix as floats, for samplers."""
        cum = np.array([float(b) for b in self.boundaries()[1:-1]])
        vals = np.array([[float(x) for x in row] for row in self.values])
        return cum, vals

    def boundaries(self) -> list[Fraction]:
        out, acc = [Fraction(0)], Fraction(0)
        for p in self.measures:
            acc += p
            out.append(acc)
        return out

    def block_of(self, x) -> int:
        """Block containing the point ``x``; the point 1 belongs to the last block."""
        x = _frac(x)
        if not 0 <= x <= 1:
            raise ValueError(f"point {x} outside [0, 1]")
        acc = Fraction(0)
        for i, p in enumerate(self.measures):
            acc += p
            if x < acc:
                return i
        return self.k - 1

    def __call__(self, x, y) -> Fraction:
        return self.values[self.block_of(x)][self.block_of(y)]

    def permuted(self, order: Sequence[int]) -> "StepGraphon":
        return StepGraphon(
            tuple(self.measures[i] for i in order),
            tuple(tuple(self.values[i][j] for j in order) for i in order),
        )

    def complement(self) -> "StepGraphon":
        return StepGraphon(self.measures, tuple(tuple(1 - x for x in row) for row in self.values))


# -- constructors -----------------------------------------------------------


def make_constant(c) -> StepGraphon:
    c = _frac(c)
    return StepGraphon((Fraction(1),), ((c,),))


def make_wstar(k: int, s: int) -> StepGraphon:
    """W*_{k,s}: 1/2 across blocks, 1 on the first s diagonal blocks, 0 on the rest."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not 0 <= s <= k:
        raise ValueError(f"need 0 <= s <= k, got s={s}, k={k}")
    half = Fraction(1, 2)
    values = tuple(
        tuple((Fraction(1) if i < s else Fraction(0)) if i == j else half for j in range(k))
        for i in range(k)
    )
    return StepGraphon((Fraction(1, k),) * k, values)


def make_wka(k: int, a) -> StepGraphon:
    """W^k_a as a step graphon with the first interval split at a/k.

    Blocks: ``a/k, (1-a)/k`` (the split group), then ``k-1`` blocks of ``1/k``.
    For ``a`` in ``{0, 1}`` the split collapses and the result equals W*_{k,k}.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    a = _frac(a)
    if not 0 <= a <= 1:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    if a in (0, 1):
        return make_wstar(k, k)
    measures = (a / k, (1 - a) / k) + (Fraction(1, k),) * (k - 1)
    group = [0, 0] + list(range(1, k))
    n = len(measures)
    half = Fraction(1, 2)
    values = []
    for i in range(n):
        row = []
        for j in range(n):
            if group[i] != group[j]:
                row.append(half)
            else:
                row.append(Fraction(1) if i == j else Fraction(0))
        values.append(tuple(row))
    return StepGraphon(measures, tuple(values))


# -- scalar functionals -----------------------------------------------------


def _binary_entropy(x: Fraction) -> float:
    if x == 0 or x == 1:
        return 0.0
    p = float(x)
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def entropy(w: StepGraphon) -> float:
    """Sum of ``p_i p_j h(w_ij)`` with ``h(0) = h(1) = 0``; rounding error well under 1e-12."""
    return math.fsum(
        float(pi * pj) * _binary_entropy(w.values[i][j])
        for i, pi in enumerate(w.measures)
        for j, pj in enumerate(w.measures)
    )


def edge_density(w: StepGraphon) -> Fraction:
    return sum(
        (pi * pj * w.values[i][j] for i, pi in enumerate(w.measures) for j, pj in enumerate(w.measures)),
        Fraction(0),
    )


def degree_function(w: StepGraphon) -> tuple:
    """Expected normalised degree of a vertex in each block."""
    return tuple(
        sum((pj * w.values[i][j] for j, pj in enumerate(w.measures)), Fraction(0))
        for i in range(w.k)
    )


def t_ind_exact(g: Graph, w: StepGraphon) -> Fraction:
    """Exact induced density: the sum over block assignments of weight times psi.

    Cost is ``k**n`` in the worst case; refuses when that exceeds ``6**9``.
    """
    n, k = g.n, w.k
    if k**n > TIND_BUDGET:
        raise EnvelopeError(
            f"exact t_ind over {k} blocks and {n} vertices exceeds the {TIND_BUDGET} "
            "assignment budget; use t_ind_mc for a Monte Carlo estimate"
        )
    if n == 0:
        return Fraction(1)
    dp = math.lcm(*(p.denominator for p in w.measures))
    dv = math.lcm(*(x.denominator for row in w.values for x in row))
    pnum = [int(p * dp) for p in w.measures]
    on = [[int(x * dv) for x in row] for row in w.values]
    off = [[dv - x for x in row] for row in on]
    adj = g.adj
    assign = [0] * n
    total = 0

    def walk(v: int, acc: int) -> None:
        nonlocal total
        if v == n:
            total += acc
            return
        nb = adj[v]
        for b in range(k):
            val = acc * pnum[b]
            for u in range(v):
                f = on[assign[u]][b] if u in nb else off[assign[u]][b]
                if f == 0:
                    val = 0
                    break
                val *= f
            if val:
                assign[v] = b
                walk(v + 1, val)

    walk(0, 1)
    return Fraction(total, dp**n * dv ** (n * (n - 1) // 2))


class MCEstimate(NamedTuple):
    mean: float
    stderr: float
    trials: int


def t_ind_mc(g: Graph, w: StepGraphon, trials: int, seed: int = 0) -> MCEstimate:
    """Monte Carlo estimate of t_ind: mean of psi at i.i.d. uniform points."""
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), 0]))
    cum = np.array([float(b) for b in w.boundaries()[1:-1]])
    vals = np.array([[float(x) for x in row] for row in w.values])
    pts = rng.random((trials, g.n))
    blocks = np.searchsorted(cum, pts, side="right")
    psi = np.ones(trials)
    for u, v in combinations(range(g.n), 2):
        wuv = vals[blocks[:, u], blocks[:, v]]
        psi *= wuv if g.has_edge(u, v) else 1.0 - wuv
    mean = float(psi.mean())
    stderr = float(psi.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MCEstimate(mean, stderr, trials)


# -- structure --------------------------------------------------------------


def rk_groups(w: StepGraphon, k: int) -> list[int] | None:
    """Group index (which I_i) of every block, or None if a block straddles two I_i."""
    out = []
    lo = Fraction(0)
    for p in w.measures:
        hi = lo + p
        g = math.floor(lo * k)
        if hi > Fraction(g + 1, k):
            return None
        out.append(g)
        lo = hi
    return out


def is_in_rk(w: StepGraphon, k) -> bool:
    """Membership in R_k; pass ``math.inf`` for R_infinity (the constant 1/2)."""
    half = Fraction(1, 2)
    if k == math.inf:
        return all(x == half for row in w.values for x in row)
    groups = rk_groups(w, k)
    if groups is None:
        return False
    for i in range(w.k):
        for j in range(w.k):
            x = w.values[i][j]
            if groups[i] != groups[j]:
                if x != half:
                    return False
            elif x not in (0, 1):
                return False
    return True


def disjoint_clique_parts(w: StepGraphon, group: Sequence[int]) -> tuple | None:
    """Classes of the relation "value 1" on the given blocks, or None if it is not an equivalence.

    Raises ``ValueError`` when the restriction to ``group`` takes a value outside {0, 1}.
    """
    blocks = list(group)
    for i in blocks:
        for j in blocks:
            if w.values[i][j] not in (0, 1):
                raise ValueError(
                    f"restriction has value {w.values[i][j]} at ({i}, {j}); only 0/1 allowed"
                )
    if any(w.values[i][i] != 1 for i in blocks):
        return None
    for x in blocks:
        for y in blocks:
            for z in blocks:
                if w.values[x][y] == 1 and w.values[y][z] == 1 and w.values[x][z] != 1:
                    return None
    parts, seen = [], set()
    for i in blocks:
        if i in seen:
            continue
        cls = frozenset(j for j in blocks if w.values[i][j] == 1)
        seen |= cls
        parts.append(cls)
    return tuple(parts)


# -- fingerprints and cut distance -----------------------------------------


@dataclass(frozen=True)
class DensityFingerprint:
    max_size: int
    values: dict  # canonical edge tuple -> Fraction
    representatives: dict  # canonical edge tuple -> Graph

    def __eq__(self, other):
        if not isinstance(other, DensityFingerprint):
            return NotImplemented
        return self.max_size == other.max_size and self.values == other.values

    def __hash__(self):
        return hash((self.max_size, tuple(sorted(self.values.items()))))


def _classes_up_to(m: int) -> list[Graph]:
    out = []
    for n in range(1, m + 1):
        out.extend(isomorphism_classes(n))
    return out


def _class_key(g: Graph) -> tuple:
    return (g.n, tuple(sorted(g.edges)))


def density_fingerprint(w: StepGraphon, m: int) -> DensityFingerprint:
    """Exact t_ind for one representative of every isomorphism class on 1..m vertices."""
    if not 1 <= m <= 5:
        raise EnvelopeError(f"fingerprints are tabulated for 1 <= m <= 5, got {m}")
    reps = _classes_up_to(m)
    return DensityFingerprint(
        m,
        {_class_key(g): t_ind_exact(g, w) for g in reps},
        {_class_key(g): g for g in reps},
    )


def _overlay_cut_norm(w1: StepGraphon, w2: StepGraphon) -> Fraction:
    """Cut norm of w1 - w2 with both laid out on [0,1) in their block order.

    For a step kernel the supremum over measurable S, T is attained on unions of
    cells of the common refinement, so this is exact for up to 16 cells and falls
    back to the L1 norm (an upper bound) beyond.
    """
    b1, b2 = w1.boundaries(), w2.boundaries()
    cuts = sorted(set(b1) | set(b2))
    cells = []
    i = j = 0
    for lo, hi in zip(cuts, cuts[1:]):
        while b1[i + 1] <= lo:
            i += 1
        while b2[j + 1] <= lo:
            j += 1
        cells.append((hi - lo, i, j))
    c = len(cells)
    m = [
        [qa * qb * (w1.values[ia][ib] - w2.values[ja][jb]) for qb, ib, jb in cells]
        for qa, ia, ja in cells
    ]
    if all(x == 0 for row in m for x in row):
        return Fraction(0)
    if c > 16:
        return sum((abs(x) for row in m for x in row), Fraction(0))
    den = math.lcm(*(x.denominator for row in m for x in row))
    ints = [[int(x * den) for x in row] for row in m]
    bound = max(abs(x) for row in ints for x in row) * c * c
    subsets = ((np.arange(1 << c)[:, None] >> np.arange(c)[None, :]) & 1)
    if bound < 2**62:
        rows = subsets.astype(np.int64) @ np.array(ints, dtype=np.int64)
        pos = np.where(rows > 0, rows, 0).sum(axis=1).max()
        neg = -np.where(rows < 0, rows, 0).sum(axis=1).min()
        return Fraction(int(max(pos, neg)), den)
    rows = subsets.astype(object) @ np.array(ints, dtype=object)
    best = 0
    for r in rows:
        best = max(best, sum(x for x in r if x > 0), -sum(x for x in r if x < 0))
    return Fraction(int(best), den)


class CutBounds(NamedTuple):
    lower: float
    upper: float


def cut_distance_bounds(w1: StepGraphon, w2: StepGraphon, m: int = 3) -> CutBounds:
    """Bracket the cut distance between two step graphons.

    Lower bound: for every graph F on 2..m vertices,
    ``|t_ind(F, w1) - t_ind(F, w2)| <= C(|F|, 2) * delta_cut(w1, w2)``, by
    telescoping the product over the ``C(|F|, 2)`` vertex pairs and bounding each
    swapped factor by the cut norm (the remaining factors split into functions
    of one variable each). The cut norm here is ``sup |int_{S x T} (U - W)|``;
    the constant ``C(|F|, 2)`` is at most ``4|F|^2``.

    Upper bound: minimum over block-overlay couplings, i.e. every reordering of
    the blocks of ``w2`` (all ``k!`` when ``k <= 7``, otherwise the identity and
    the measure-sorted orders), of the cut norm of the overlaid difference.
    """
    m = min(m, 5)
    lower = Fraction(0)
    if m >= 2:
        for g in _classes_up_to(m):
            if g.n < 2:
                continue
            diff = abs(t_ind_exact(g, w1) - t_ind_exact(g, w2))
            lower = max(lower, diff / (g.n * (g.n - 1) // 2))
    if w2.k <= 7:
        orders = permutations(range(w2.k))
    else:
        ident = list(range(w2.k))
        by_measure = sorted(ident, key=lambda i: w2.measures[i])
        orders = [ident, by_measure, by_measure[::-1]]
    upper = None
    for order in orders:
        val = _overlay_cut_norm(w1, w2.permuted(order))
        if upper is None or val < upper:
            upper = val
        if upper == 0:
            break
    return CutBounds(float(lower), float(upper))


# -- text format ------------------------------------------------------------


def format_graphon(w: StepGraphon) -> str:
    lines = [str(w.k), " ".join(f"{p.numerator}/{p.denominator}" for p in w.measures)]
    for row in w.values:
        lines.append(" ".join(f"{x.numerator}/{x.denominator}" for x in row))
    return "\n".join(lines) + "\n"


def parse_graphon(text: str) -> StepGraphon:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise ValueError("empty graphon file")
    k = int(rows[0][0])
    if len(rows) != k + 2:
        raise ValueError(f"expected {k + 2} non-empty lines, found {len(rows)}")
    measures = tuple(Fraction(tok) for tok in rows[1])
    values = tuple(tuple(Fraction(tok) for tok in r) for r in rows[2:])
    return StepGraphon(measures, values)


def read_graphon(path) -> StepGraphon:
    with open(path, encoding="ascii") as fh:
        return parse_graphon(fh.read())


def write_graphon(w: StepGraphon, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_graphon(w))


def parse_graphon_spec(spec: str) -> StepGraphon:
    """``wka:K:A``, ``wstar:K:S``, ``const:C`` or a path to a graphon file."""
    head, _, rest = spec.partition(":")
    if head == "wka":
        k, a = rest.split(":")
        return make_wka(int(k), Fraction(a))
    if head == "wstar":
        k, s = rest.split(":")
        return make_wstar(int(k), int(s))
    if head == "const":
        return make_constant(Fraction(rest))
    return read_graphon(spec)
