"""Experiment harness: sampling probes, small-n censuses and equivalence checks.

Every probe returns an :class:`ExperimentReport`. Rows carry a ``kind``:

* ``observed`` for measured statistics,
* ``exact`` for values computed exactly from the graphon or by enumeration,
* ``conjectured reference`` for values that are only conjectured limits.

Trial ``t`` of a probe with master seed ``s`` uses ``SeedSpec(s, t)``, so each
trial is reproducible on its own and results are aggregated in trial order.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphon import (
    StepGraphon,
    cut_distance_bounds,
    degree_function,
    density_fingerprint,
    edge_density,
    format_graphon,
    make_wka,
    parse_graphon_spec,
)
from .graphs import EnvelopeError, Graph, automorphism_count, isomorphism_classes, membership_cts
from .recognizers import Verdict, is_incomparability, is_two_clique
from .sampling import SeedSpec, sample_adjacency

OBSERVED = "observed"
EXACT = "exact"
CONJECTURED = "conjectured reference"

# Limits conjectured for uniform random string and outer-string graphs; the
# probes only sample the corresponding graphons.
_CONJECTURES = {
    "wka:4:1/2": {"edge_density": Fraction(19, 32), "atoms": {Fraction(1, 2): Fraction(1, 4), Fraction(5, 8): Fraction(3, 4)}},
    "wka:3:1/2": {"edge_density": Fraction(11, 18), "atoms": {Fraction(1, 2): Fraction(1, 3), Fraction(2, 3): Fraction(2, 3)}},
}


@dataclass(frozen=True)
class ReportRow:
    statistic: str
    value: object
    stderr: float | None = None
    kind: str = OBSERVED


@dataclass
class ExperimentReport:
    experiment: str
    params: dict
    rows: list = field(default_factory=list)
    timestamp: str | None = None
    histogram: tuple | None = None  # (edges, masses, marks) for SVG output

    def add(self, statistic: str, value, stderr=None, kind: str = OBSERVED) -> None:
        self.rows.append(ReportRow(statistic, value, stderr, kind))

    def value(self, statistic: str):
        for row in self.rows:
            if row.statistic == statistic:
                return row.value
        raise KeyError(statistic)

    def row(self, statistic: str) -> ReportRow:
        for row in self.rows:
            if row.statistic == statistic:
                return row
        raise KeyError(statistic)

    def stamp(self) -> "ExperimentReport":
        self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return self

    def to_csv(self, include_timestamp: bool = False) -> str:
        """Parameter comments, then ``statistic,value,stderr,kind`` rows.

        The timestamp is left out unless asked for, so identical parameters give
        byte-identical files.
        """
        out = io.StringIO()
        out.write(f"# experiment={self.experiment}\n")
        for key in sorted(self.params):
            out.write(f"# {key}={self.params[key]}\n")
        if include_timestamp and self.timestamp:
            out.write(f"# timestamp={self.timestamp}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["statistic", "value", "stderr", "kind"])
        for row in self.rows:
            writer.writerow([row.statistic, _fmt(row.value), _fmt(row.stderr), row.kind])
        return out.getvalue()

    def __str__(self) -> str:
        width = max((len(r.statistic) for r in self.rows), default=0)
        lines = [f"{self.experiment} " + " ".join(f"{k}={self.params[k]}" for k in sorted(self.params))]
        for r in self.rows:
            err = "" if r.stderr is None else f" ± {_fmt(r.stderr)}"
            lines.append(f"  {r.statistic:<{width}}  {_fmt(r.value)}{err}  [{r.kind}]")
        return "\n".join(lines)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    return str(x)


def _mean_se(values: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return math.nan, math.nan
    se = float(arr.std(ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
    return float(arr.mean()), se


def _graphon(spec) -> tuple[StepGraphon, str]:
    if isinstance(spec, StepGraphon):
        return spec, format_graphon(spec).strip().replace("\n", " | ")
    return parse_graphon_spec(spec), str(spec)


def _conjecture(w: StepGraphon) -> dict | None:
    text = format_graphon(w)
    for key, conj in _CONJECTURES.items():
        if format_graphon(parse_graphon_spec(key)) == text:
            return conj
    return None


# -- sampling probes ----------------------------------------------------------


def run_density_probe(graphon, n: int, trials: int, seed: int = 0) -> ExperimentReport:
    """Mean edge density of G(n, W) over independent trials."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    w, label = _graphon(graphon)
    pairs = n * (n - 1) // 2
    dens = []
    for s in SeedSpec(seed).spawn(trials):
        adj, _ = sample_adjacency(w, n, s)
        dens.append(int(adj.sum()) // 2 / pairs)
    mean, se = _mean_se(dens)
    rep = ExperimentReport("density", {"graphon": label, "n": n, "trials": trials, "seed": seed})
    rep.add("edge_density_mean", mean, se)
    rep.add("edge_density_reference", edge_density(w), kind=EXACT)
    conj = _conjecture(w)
    if conj is not None:
        rep.add("edge_density_conjectured_limit", conj["edge_density"], kind=CONJECTURED)
    return rep


def degree_atoms(w: StepGraphon) -> dict:
    """Distribution of the expected normalised degree: atom -> mass."""
    atoms: dict = {}
    for value, mass in zip(degree_function(w), w.measures):
        atoms[value] = atoms.get(value, Fraction(0)) + mass
    return dict(sorted(atoms.items()))


def run_degree_probe(graphon, n: int, trials: int, seed: int = 0, bin_width: float = 0.05) -> ExperimentReport:
    """Histogram of normalised degrees ``deg / n`` and the mass near every atom.

    The mass near an atom ``y`` is the fraction of vertices with
    ``|deg / n - y| <= bin_width``, averaged over trials.
    """
    if not 0 < bin_width < 1:
        raise ValueError(f"bin width must lie in (0, 1), got {bin_width}")
    if n < 2 or trials < 1:
        raise ValueError(f"need n >= 2 and trials >= 1, got n={n}, trials={trials}")
    w, label = _graphon(graphon)
    atoms = degree_atoms(w)
    nbins = math.ceil(1 / bin_width)
    edges = np.minimum(np.arange(nbins + 1) * bin_width, 1.0)
    counts = np.zeros(nbins)
    near = {y: [] for y in atoms}
    for s in SeedSpec(seed).spawn(trials):
        adj, _ = sample_adjacency(w, n, s)
        x = adj.sum(axis=1) / n
        for y in atoms:
            near[y].append(float(np.mean(np.abs(x - float(y)) <= bin_width)))
        idx = np.minimum((x / bin_width).astype(int), nbins - 1)
        counts += np.bincount(idx, minlength=nbins)
    masses = counts / counts.sum()
    rep = ExperimentReport(
        "degrees", {"graphon": label, "n": n, "trials": trials, "seed": seed, "bin_width": bin_width}
    )
    conj = _conjecture(w)
    for y, mass in atoms.items():
        mean, se = _mean_se(near[y])
        rep.add(f"mass_near_{_fmt(y)}", mean, se)
        rep.add(f"atom_mass_{_fmt(y)}", mass, kind=EXACT)
        if conj is not None and y in conj["atoms"]:
            rep.add(f"atom_mass_{_fmt(y)}_conjectured_limit", conj["atoms"][y], kind=CONJECTURED)
    for lo, hi, m in zip(edges, edges[1:], masses):
        rep.add(f"hist[{lo:.4f},{hi:.4f})", float(m))
    rep.histogram = (tuple(float(e) for e in edges), tuple(float(m) for m in masses), tuple(float(y) for y in atoms))
    return rep


# -- censuses -----------------------------------------------------------------

_CTS = re.compile(r"^C\((\d+),\s*(\d+)\)$")


def class_oracle(name: str):
    """Membership oracle ``Graph -> bool`` for a census class."""
    if name in ("string", "outerstring", "outer-string"):
        raise ValueError(
            f"{name} graphs have no exact recognizer here (only sufficient covers and "
            "forbidden subgraphs), so a census would not be exact"
        )
    if name == "incomparability":
        def oracle(g: Graph) -> bool:
            ev = is_incomparability(g)
            if ev.verdict is Verdict.UNKNOWN:
                raise RuntimeError("incomparability recognizer gave no verdict")
            return ev.is_member
        return oracle
    if name == "twoclique":
        return lambda g: is_two_clique(g).is_member
    m = _CTS.match(name.replace(" ", ""))
    if m:
        t, s = int(m.group(1)), int(m.group(2))
        if s > t:
            raise ValueError(f"C(t,s) needs s <= t, got {name}")
        return lambda g: membership_cts(g, t, s) is not None
    raise ValueError(f"unknown class {name!r}; expected incomparability, twoclique or C(t,s)")


def run_speed_census(class_name: str, n_max: int) -> ExperimentReport:
    """Labeled counts of a class on ``1..n_max`` vertices and ``log2(count) / C(n,2)``.

    Counts sum ``n! / |Aut(G)|`` over member isomorphism classes.
    """
    if n_max > 7:
        raise EnvelopeError(f"censuses go up to 7 vertices, got n_max={n_max}")
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    oracle = class_oracle(class_name)
    rep = ExperimentReport("speed", {"class": class_name, "n_max": n_max})
    for n in range(1, n_max + 1):
        count = 0
        for g in isomorphism_classes(n):
            if oracle(g):
                count += math.factorial(n) // automorphism_count(g)
        rep.add(f"count_n{n}", count, kind=EXACT)
        if n >= 2:
            rep.add(f"exponent_n{n}", math.log2(count) / math.comb(n, 2) if count else 0.0, kind=EXACT)
    return rep


# -- two-clique ensembles -------------------------------------------------------


def twoclique_weights(n: int, ensemble: str) -> list[int]:
    """Weight of each smaller-part size ``m = 0..n//2``.

    A two-clique graph is an unordered split ``{S, V - S}`` of the vertices
    (``S`` empty gives K_n). Labeled: ``C(n, m)`` splits, halved when
    ``m = n / 2`` since both halves name the same graph. Unlabeled: one graph
    per size class.
    """
    if ensemble == "labeled":
        return [math.comb(n, m) // (2 if 2 * m == n and m > 0 else 1) for m in range(n // 2 + 1)]
    if ensemble == "unlabeled":
        return [1] * (n // 2 + 1)
    raise ValueError(f"ensemble must be labeled or unlabeled, got {ensemble!r}")


def _w1_to_uniform_half(sorted_x: np.ndarray) -> float:
    """Integral of ``|F_n(x) - 2x|`` over [0, 1/2] for the empirical CDF ``F_n``."""
    n = len(sorted_x)
    cuts = np.concatenate(([0.0], np.clip(sorted_x, 0, 0.5), [0.5]))
    total = 0.0
    for i in range(n + 1):
        a, b, c = cuts[i], cuts[i + 1], i / n
        if b <= a:
            continue
        # integral of |c - 2x| on [a, b]; the kink sits at x = c / 2
        k = min(max(c / 2, a), b)
        total += (c * k - k * k) - (c * a - a * a) + (b * b - c * b) - (k * k - c * k)
    return float(total)


def run_twoclique_limit_probe(n: int, trials: int, seed: int = 0, ensemble: str = "labeled") -> ExperimentReport:
    """Distribution of the smaller-part fraction of a uniform two-clique graph.

    Reports the Wasserstein-1 distance of the sample to both candidate limits:
    a point mass at 1/2 and the uniform law on (0, 1/2). No pairing of ensemble
    and limit is asserted.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    weights = twoclique_weights(n, ensemble)
    total = sum(weights)
    probs = np.array([Fraction(x, total) for x in weights], dtype=float)
    rng = SeedSpec(seed).generator()
    m = rng.choice(len(weights), size=trials, p=probs / probs.sum())
    frac = np.sort(m / n)
    mean, se = _mean_se(frac)
    rep = ExperimentReport("twoclique", {"n": n, "trials": trials, "seed": seed, "ensemble": ensemble})
    rep.add("min_part_fraction_mean", mean, se)
    rep.add("exact_mean", float(sum(Fraction(w * k, total * n) for k, w in enumerate(weights))), kind=EXACT)
    rep.add("w1_distance_point_mass_half", float(np.mean(np.abs(frac - 0.5))))
    rep.add("w1_distance_uniform_0_half", _w1_to_uniform_half(frac))
    rep.add("candidate_mean_point_mass_half", Fraction(1, 2), kind=CONJECTURED)
    rep.add("candidate_mean_uniform_0_half", Fraction(1, 4), kind=CONJECTURED)
    values, counts = np.unique(m, return_counts=True)
    for v, c in zip(values, counts):
        rep.add(f"fraction_{_fmt(Fraction(int(v), n))}", int(c) / trials)
    nbins = 10
    edges = np.linspace(0, 0.5, nbins + 1)
    hist, _ = np.histogram(frac, bins=edges)
    rep.histogram = (tuple(float(e) for e in edges), tuple(float(h) / trials for h in hist), (0.5,))
    return rep


# -- equivalence ----------------------------------------------------------------


def run_equivalence_probe(k: int, a, b, m: int = 3) -> ExperimentReport:
    """Compare ``W^k_a`` and ``W^k_b`` through density fingerprints and cut-distance bounds.

    The verdict is ``equivalent-evidence`` only when the fingerprints agree
    exactly and the overlay upper bound is 0; otherwise it names the first
    distinguishing statistic.
    """
    a, b = Fraction(a), Fraction(b)
    w1, w2 = make_wka(k, a), make_wka(k, b)
    f1, f2 = density_fingerprint(w1, m), density_fingerprint(w2, m)
    bounds = cut_distance_bounds(w1, w2, m=min(m, 3))
    rep = ExperimentReport("equivalence", {"k": k, "a": _fmt(a), "b": _fmt(b), "m": m})
    d1, d2 = edge_density(w1), edge_density(w2)
    rep.add("edge_density_a", d1, kind=EXACT)
    rep.add("edge_density_b", d2, kind=EXACT)
    differing = sorted(key for key in f1.values if f1.values[key] != f2.values[key])
    rep.add("fingerprint_classes", len(f1.values), kind=EXACT)
    rep.add("fingerprint_differences", len(differing), kind=EXACT)
    rep.add("cut_distance_lower", bounds.lower, kind=EXACT)
    rep.add("cut_distance_upper", bounds.upper, kind=EXACT)
    if not differing and bounds.upper == 0:
        verdict = "equivalent-evidence"
    elif d1 != d2:
        verdict = "distinguished by edge density"
    elif differing:
        nv, edges = differing[0]
        verdict = f"distinguished by t_ind of a {nv}-vertex graph with edges {list(edges)}"
    else:
        verdict = "inconclusive"
    rep.add("verdict", verdict, kind=EXACT)
    return rep


# -- SVG ------------------------------------------------------------------------


def histogram_svg(edges: Sequence[float], masses: Sequence[float], marks: Sequence[float] = (),
                  width: int = 480, height: int = 240, title: str = "") -> str:
    """Bar chart of bin masses with dashed vertical lines at ``marks``."""
    lo, hi = edges[0], edges[-1]
    span = (hi - lo) or 1.0
    top = max(masses, default=0) or 1.0
    pad = 24

    def x(v):
        return pad + (v - lo) / span * (width - 2 * pad)

    def y(v):
        return height - pad - v / top * (height - 2 * pad)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{pad}" y="16" font-size="12" font-family="sans-serif">{title}</text>')
    for e0, e1, m in zip(edges, edges[1:], masses):
        out.append(
            f'<rect x="{x(e0):.2f}" y="{y(m):.2f}" width="{max(x(e1) - x(e0) - 1, 0.5):.2f}" '
            f'height="{y(0) - y(m):.2f}" fill="#4c78a8"/>'
        )
    for v in marks:
        out.append(f'<line x1="{x(v):.2f}" y1="{pad}" x2="{x(v):.2f}" y2="{y(0):.2f}" '
                   'stroke="#d62728" stroke-dasharray="4 3"/>')
    out.append(f'<line x1="{pad}" y1="{y(0):.2f}" x2="{width - pad}" y2="{y(0):.2f}" stroke="black"/>')
    out.append(f'<text x="{pad}" y="{height - 6}" font-size="10" font-family="sans-serif">{lo:g}</text>')
    out.append(f'<text x="{width - pad - 12}" y="{height - 6}" font-size="10" font-family="sans-serif">{hi:g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def report_svg(rep: ExperimentReport) -> str:
    if rep.histogram is None:
        raise ValueError(f"the {rep.experiment} experiment has no histogram")
    edges, masses, marks = rep.histogram
    return histogram_svg(edges, masses, marks, title=rep.experiment)
