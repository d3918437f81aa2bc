"""Rectangle barcodes of interlevel-filtered chain complexes over GF(2)."""

from ._core import (  # noqa: F401
    Bar,
    FilteredComplex,
    ParseError,
    Rectangle,
    SemanticError,
    VerificationError,
    are_delta_interleaved,
    bottleneck_distance,
    bottleneck_distance_rectangles,
    critical_values,
    dumps,
    fixture_h_sphere,
    fixture_heart_circle,
    fixture_torus,
    interlevel_dimension,
    invariant_report,
    loads,
    perturb,
    random_complex,
    rectangle_barcode,
    render_ascii,
    render_svg,
    scale,
    spread_bruteforce,
    stability_experiment,
    structure_map_rank,
    sublevel_barcode,
    validate,
    verify,
)

__all__ = [
    "Bar",
    "FilteredComplex",
    "ParseError",
    "Rectangle",
    "SemanticError",
    "VerificationError",
    "are_delta_interleaved",
    "bottleneck_distance",
    "bottleneck_distance_rectangles",
    "critical_values",
    "dumps",
    "fixture_h_sphere",
    "fixture_heart_circle",
    "fixture_torus",
    "interlevel_dimension",
    "invariant_report",
    "loads",
    "perturb",
    "random_complex",
    "rectangle_barcode",
    "render_ascii",
    "render_svg",
    "scale",
    "spread_bruteforce",
    "stability_experiment",
    "structure_map_rank",
    "sublevel_barcode",
    "validate",
    "verify",
]
