"""Exact computational geometry of string representations."""

from .audit import (
    PositionReport,
    check_general_position,
    curve_crossings,
    intersection_graph,
    is_simple,
)
from .model import (
    Disk,
    Point,
    Polyline,
    Representation,
    format_representation,
    parse_representation,
    pt,
    read_representation,
    representation_svg,
    segment,
    write_representation,
)
from .normalization import (
    MAX_ATTEMPTS,
    NormalizationError,
    NormalizationInfo,
    normalize,
    normalize_outer,
    normalize_outer_with_info,
    normalize_with_info,
)
from .constructions import (
    K5DrawingReport,
    build_outerstring_from_cover,
    derive_k5_drawing,
    k5_star_representation,
)

__all__ = [
    "build_outerstring_from_cover",
    "check_general_position",
    "curve_crossings",
    "derive_k5_drawing",
    "Disk",
    "format_representation",
    "intersection_graph",
    "is_simple",
    "k5_star_representation",
    "K5DrawingReport",
    "MAX_ATTEMPTS",
    "NormalizationError",
    "NormalizationInfo",
    "normalize",
    "normalize_outer",
    "normalize_outer_with_info",
    "normalize_with_info",
    "parse_representation",
    "Point",
    "Polyline",
    "PositionReport",
    "pt",
    "read_representation",
    "Representation",
    "representation_svg",
    "segment",
    "write_representation",
]
