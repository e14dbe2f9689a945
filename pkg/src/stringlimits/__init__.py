"""Graph limits of string-type graph classes: step graphons, sampling, recognizers, geometry."""

from .graphon import (
    CutBounds,
    DensityFingerprint,
    MCEstimate,
    StepGraphon,
    cut_distance_bounds,
    degree_function,
    density_fingerprint,
    edge_density,
    entropy,
    is_in_rk,
    make_constant,
    make_wka,
    make_wstar,
    parse_graphon_spec,
    t_ind_exact,
    t_ind_mc,
)
from .graphs import (
    EnvelopeError,
    Graph,
    complement,
    contains_induced,
    is_outerplanar,
    is_planar,
    make_basic,
    make_special_graph,
    membership_cts,
    quotient,
)
from .recognizers import (
    ClassEvidence,
    Verdict,
    classify_outerstring,
    classify_string,
    find_clique_cover_with,
    is_comparability,
    is_incomparability,
    is_two_clique,
)
from .sampling import SeedSpec, is_constructible, psi, sample_w_random, standard_witness

__all__ = [
    "ClassEvidence",
    "classify_outerstring",
    "classify_string",
    "complement",
    "contains_induced",
    "cut_distance_bounds",
    "CutBounds",
    "degree_function",
    "density_fingerprint",
    "DensityFingerprint",
    "edge_density",
    "entropy",
    "EnvelopeError",
    "find_clique_cover_with",
    "Graph",
    "is_comparability",
    "is_constructible",
    "is_in_rk",
    "is_incomparability",
    "is_outerplanar",
    "is_planar",
    "is_two_clique",
    "make_basic",
    "make_constant",
    "make_special_graph",
    "make_wka",
    "make_wstar",
    "MCEstimate",
    "membership_cts",
    "parse_graphon_spec",
    "psi",
    "quotient",
    "sample_w_random",
    "SeedSpec",
    "standard_witness",
    "StepGraphon",
    "t_ind_exact",
    "t_ind_mc",
    "Verdict",
]

__version__ = "0.1.0"
