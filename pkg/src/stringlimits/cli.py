"""Command-line interface: ``graphon <command> ...``.

Graph arguments accept a file in the edge-list format or a name:

* ``G:5``, ``B:4``, ``H:5`` for the special graphs,
* ``cycle:6``, ``path:4``, ``complete:5``, ``empty:3``, ``complete_minus_edge:5``, ``prism``.

Graphon arguments are ``wka:K:A``, ``wstar:K:S``, ``const:C`` or a file.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import experiments as ex
from .geometry import (
    build_outerstring_from_cover,
    check_general_position,
    derive_k5_drawing,
    intersection_graph,
    normalize_outer_with_info,
    normalize_with_info,
    read_representation,
    representation_svg,
    write_representation,
)
from .graphon import (
    cut_distance_bounds,
    degree_function,
    density_fingerprint,
    edge_density,
    entropy,
    parse_graphon_spec,
    t_ind_exact,
    t_ind_mc,
)
from .graphs import format_graph, make_basic, make_special_graph, read_graph
from .recognizers import (
    classify_outerstring,
    classify_string,
    find_clique_cover_with,
    format_evidence,
    is_comparability,
    is_incomparability,
    is_two_clique,
)
from .sampling import SeedSpec, is_constructible, sample_w_random, standard_witness


def graph_arg(text: str):
    head, _, rest = text.partition(":")
    if head in ("G", "B", "H") and rest:
        return make_special_graph(head, int(rest))
    if head in ("cycle", "path", "complete", "empty", "complete_minus_edge"):
        return make_basic(head, int(rest))
    if head == "prism":
        return make_basic("prism")
    if not Path(text).exists():
        raise argparse.ArgumentTypeError(f"{text!r} is neither a graph name nor a file")
    return read_graph(text)


def graphon_arg(text: str):
    try:
        return parse_graphon_spec(text)
    except (ValueError, OSError) as exc:
        raise argparse.ArgumentTypeError(f"bad graphon {text!r}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- graphon commands ------------------------------------------------------------


def cmd_entropy(args):
    print(repr(entropy(args.graphon)))


def cmd_density(args):
    w = args.graphon
    print(f"edge_density {edge_density(w)}")
    print("degrees " + " ".join(str(d) for d in degree_function(w)))


def cmd_tind(args):
    if args.mc:
        est = t_ind_mc(args.graph, args.graphon, args.mc, args.seed)
        print(f"t_ind {est.mean!r} stderr {est.stderr!r} trials {est.trials}")
    else:
        print(f"t_ind {t_ind_exact(args.graph, args.graphon)}")


def cmd_fingerprint(args):
    fp = density_fingerprint(args.graphon, args.m)
    for (n, edges), value in sorted(fp.values.items()):
        print(f"{n} {list(edges)} {value}")


def cmd_cutdist(args):
    if len(args.graphons) != 2:
        raise ValueError(f"cutdist needs exactly two --graphon options, got {len(args.graphons)}")
    b = cut_distance_bounds(*args.graphons, args.m)
    print(f"lower {b.lower!r}\nupper {b.upper!r}")


def cmd_sample(args):
    g, blocks = sample_w_random(args.graphon, args.n, SeedSpec(args.seed, args.trial))
    _emit(format_graph(g), args.out)
    if args.blocks:
        Path(args.blocks).write_text(" ".join(map(str, blocks)) + "\n", encoding="ascii")


def cmd_constructible(args):
    found = is_constructible(args.graph, args.graphon)
    if found is None:
        print("not constructible")
        return 1
    print("constructible blocks " + " ".join(map(str, found)))
    return 0


def cmd_witness(args):
    g, assignment = standard_witness(args.claim, args.r, args.graphon)
    print(f"graph n={g.n} m={g.m}")
    print("blocks " + " ".join(map(str, assignment)))


def cmd_classify(args):
    g = args.graph
    if args.cls == "string":
        ev = classify_string(g, timeout=args.timeout, seed=args.seed)
    elif args.cls == "outerstring":
        ev = classify_outerstring(g, timeout=args.timeout, seed=args.seed)
    elif args.cls == "comparability":
        ev = is_comparability(g, timeout=args.timeout)
    elif args.cls == "incomparability":
        ev = is_incomparability(g, timeout=args.timeout)
    elif args.cls == "twoclique":
        ev = is_two_clique(g)
    else:
        ev = find_clique_cover_with(g, args.cls, timeout=args.timeout, seed=args.seed)
    _emit(format_evidence(ev), args.out)


# -- probes ------------------------------------------------------------------------

_PROBE_KEYS = {
    "density": {"graphon": str, "n": int, "trials": int, "seed": int},
    "degrees": {"graphon": str, "n": int, "trials": int, "seed": int, "bin_width": float},
    "speed": {"class_name": str, "n_max": int},
    "twoclique": {"n": int, "trials": int, "seed": int, "ensemble": str},
    "equiv": {"k": int, "a": Fraction, "b": Fraction, "m": int},
}

_PROBE_DEFAULTS = {
    "density": {"graphon": "wka:4:1/2", "n": 2000, "trials": 20, "seed": 0},
    "degrees": {"graphon": "wka:4:1/2", "n": 2000, "trials": 20, "seed": 0, "bin_width": 0.05},
    "speed": {"class_name": "incomparability", "n_max": 6},
    "twoclique": {"n": 100, "trials": 10000, "seed": 0, "ensemble": "labeled"},
    "equiv": {"k": 4, "a": Fraction(1, 3), "b": Fraction(2, 3), "m": 3},
}


def read_config(path) -> dict:
    """``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{number}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def probe_params(kind: str, config: dict, flags: dict) -> dict:
    """Defaults, then the config file, then explicit flags."""
    types = _PROBE_KEYS[kind]
    params = dict(_PROBE_DEFAULTS[kind])
    for source in (config, flags):
        for key, value in source.items():
            if value is None:
                continue
            if key == "class":
                key = "class_name"
            if key not in types:
                raise ValueError(f"unknown {kind} parameter {key!r}; known: {', '.join(sorted(types))}")
            params[key] = types[key](value)
    return params


def run_probe(kind: str, params: dict):
    runner = {
        "density": ex.run_density_probe,
        "degrees": ex.run_degree_probe,
        "speed": ex.run_speed_census,
        "twoclique": ex.run_twoclique_limit_probe,
        "equiv": ex.run_equivalence_probe,
    }[kind]
    return runner(**params)


def cmd_probe(args):
    config = read_config(args.config) if args.config else {}
    flags = {k: getattr(args, k, None) for k in _PROBE_KEYS[args.kind]}
    if getattr(args, "class_", None) is not None:
        flags["class_name"] = args.class_
    report = run_probe(args.kind, probe_params(args.kind, config, flags)).stamp()
    print(report)
    if args.out:
        Path(args.out).write_text(report.to_csv(), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(ex.report_svg(report), encoding="utf-8")


# -- geometry ------------------------------------------------------------------------


def cmd_normalize(args):
    rep = read_representation(args.rep)
    if args.outer:
        out, info = normalize_outer_with_info(rep, seed=args.seed)
    else:
        out, info = normalize_with_info(rep, seed=args.seed)
    if args.out:
        write_representation(out, args.out)
    report = check_general_position(out)
    print(f"epsilon {info.epsilon} eta {info.eta} attempts {info.attempts}")
    print(f"audit {report}")
    if args.svg:
        Path(args.svg).write_text(representation_svg(out), encoding="utf-8")


def cmd_graph(args):
    rep = read_representation(args.rep)
    _emit(format_graph(intersection_graph(rep)), args.out)


def cmd_outerstring(args):
    g = args.graph
    ev = find_clique_cover_with(g, "outerplanar_quotient", timeout=args.timeout)
    if not ev.is_member:
        print(format_evidence(ev), end="")
        return 1
    rep = build_outerstring_from_cover(g, ev.certificate)
    if args.out:
        write_representation(rep, args.out)
    if args.svg:
        Path(args.svg).write_text(representation_svg(rep), encoding="utf-8")
    print("parts " + " | ".join(" ".join(map(str, sorted(p))) for p in ev.certificate))
    return 0


def cmd_k5(args):
    print(derive_k5_drawing(read_representation(args.rep)))


def cmd_special(args):
    _emit(format_graph(make_special_graph(args.kind, args.k)), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("entropy", help="entropy of a step graphon")
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("density", help="exact edge density and degree function")
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("tind", help="induced density t_ind(G, W)")
    s.add_argument("--graph", type=graph_arg, required=True)
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.add_argument("--mc", type=int, default=0, help="Monte Carlo trials instead of the exact sum")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_tind)

    s = sub.add_parser("fingerprint", help="t_ind of every graph class up to m vertices")
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.add_argument("--max-size", "--m", dest="m", type=int, default=3)
    s.set_defaults(func=cmd_fingerprint)

    s = sub.add_parser("cutdist", help="lower and upper bounds on the cut distance")
    s.add_argument("--graphon", dest="graphons", type=graphon_arg, action="append", required=True,
                   help="give exactly two graphons")
    s.add_argument("--max-size", "--m", dest="m", type=int, default=3)
    s.set_defaults(func=cmd_cutdist)

    s = sub.add_parser("sample", help="one W-random graph")
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trial", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--blocks-out", dest="blocks", help="write the block of every vertex to this file")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("constructible", help="exact W-constructibility for step graphons")
    s.add_argument("--graph", type=graph_arg, required=True)
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.set_defaults(func=cmd_constructible)

    s = sub.add_parser("witness", help="standard witnessing assignment of a claim")
    s.add_argument("claim", choices=["cl00", "cl1", "cl111", "cl2", "clr1"])
    s.add_argument("r", type=int)
    s.add_argument("--graphon", type=graphon_arg, required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("classify", help="class membership with a certificate")
    s.add_argument("--graph", type=graph_arg, required=True)
    s.add_argument("--class", dest="cls", default="string",
                   help="string, outerstring, comparability, incomparability, twoclique, "
                        "planar_quotient, outerplanar_quotient or max_parts:K")
    s.add_argument("--timeout", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("probe", help="experiments with CSV reports")
    s.add_argument("kind", choices=sorted(_PROBE_KEYS))
    s.add_argument("--config", help="key=value file; flags override it")
    s.add_argument("--graphon")
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--bin-width", dest="bin_width", type=float)
    s.add_argument("--class", dest="class_")
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument("--ensemble", choices=["labeled", "unlabeled"])
    s.add_argument("--k", type=int)
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--m", type=int)
    s.add_argument("--out", help="CSV report")
    s.add_argument("--svg", help="histogram (degrees, twoclique)")
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("normalize", help="simple curves in general position")
    s.add_argument("rep")
    s.add_argument("--outer", action="store_true", help="keep every curve anchored on the disk boundary")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("intersection", help="intersection graph of a representation")
    s.add_argument("rep")
    s.add_argument("--out")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("outerstring", help="outer-string representation from an outerplanar clique cover")
    s.add_argument("--graph", type=graph_arg, required=True)
    s.add_argument("--timeout", type=float)
    s.add_argument("--out")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_outerstring)

    s = sub.add_parser("k5", help="K_5 drawing read off a representation indexed like G_5")
    s.add_argument("rep")
    s.set_defaults(func=cmd_k5)

    s = sub.add_parser("special", help="write G_k, B_k or H_k")
    s.add_argument("kind", choices=["G", "B", "H"])
    s.add_argument("k", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_special)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"graphon: error: {exc}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
