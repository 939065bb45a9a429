"""Bayesian boundary detection for noisy images."""

from ._core import (
    ChainDiagnostics,
    ChainOutput,
    PolarObservation,
    PosteriorSummary,
    RadialBoundary,
    ReferencePoint,
    bessel_i_scaled,
    circle_boundary,
    dsm_error,
    eigenvalues,
    ellipse_boundary,
    gen_binary,
    gen_gaussian,
    gibbs_binary,
    gibbs_gaussian,
    hausdorff_error,
    kernel_value,
    lebesgue_error,
    load_image,
    membership_export,
    run_cli,
    sampled_boundary,
    summarize,
    triangle_boundary,
)

__all__ = [
    "ChainDiagnostics",
    "ChainOutput",
    "PolarObservation",
    "PosteriorSummary",
    "RadialBoundary",
    "ReferencePoint",
    "bessel_i_scaled",
    "circle_boundary",
    "dsm_error",
    "eigenvalues",
    "ellipse_boundary",
    "gen_binary",
    "gen_gaussian",
    "gibbs_binary",
    "gibbs_gaussian",
    "hausdorff_error",
    "kernel_value",
    "lebesgue_error",
    "load_image",
    "membership_export",
    "run_cli",
    "sampled_boundary",
    "summarize",
    "triangle_boundary",
]
