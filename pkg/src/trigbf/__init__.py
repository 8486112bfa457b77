"""Constant-time bilateral filtering with trigonometric range kernels.

The range kernel is a raised cosine, which linearizes the bilateral filter
into spatial averages of a fixed set of auxiliary images.  Any O(1) spatial
smoother (running-sum box, recursive Gaussian) then gives a bilateral filter
whose per-pixel cost is independent of the filter size.  A brute-force
reference engine and an even-polynomial baseline are included for
validation and comparison.
"""

from ._backend import backend_name, compiled_available
from .engines import (
    AuxiliaryImages,
    EngineDiagnostics,
    bilateral_color,
    bilateral_direct,
    bilateral_poly,
    bilateral_trig,
    build_auxiliary_images,
)
from .errors import DimensionError, ParameterError, PnmParseError, TrigbfError
from .image import (
    ErrorStats,
    Image,
    error_stats,
    image_from_bytes,
    image_from_planes,
    image_to_bytes,
)
from .kernels import (
    DEGREE_TABLE_8BIT,
    PolyKernel,
    TrigKernel,
    degree_estimate,
    export_kernel_csv,
    gaussian_eval,
    kernel_table,
    make_taylor_kernel,
    make_trig_kernel,
    poly_eval,
    select_degree,
    sup_error,
    trig_eval,
)
from .pnm import read_pnm, write_pnm
from .spatial import (
    Boundary,
    SpatialKind,
    SpatialSpec,
    box_filter,
    gaussian_fir,
    gaussian_recursive,
    gaussian_taps,
    recursive_coeffs,
)

__version__ = "0.1.0"

__all__ = [
    "AuxiliaryImages",
    "Boundary",
    "DEGREE_TABLE_8BIT",
    "DimensionError",
    "EngineDiagnostics",
    "ErrorStats",
    "Image",
    "ParameterError",
    "PnmParseError",
    "PolyKernel",
    "SpatialKind",
    "SpatialSpec",
    "TrigKernel",
    "TrigbfError",
    "backend_name",
    "bilateral_color",
    "bilateral_direct",
    "bilateral_poly",
    "bilateral_trig",
    "box_filter",
    "build_auxiliary_images",
    "compiled_available",
    "degree_estimate",
    "error_stats",
    "export_kernel_csv",
    "gaussian_eval",
    "gaussian_fir",
    "gaussian_recursive",
    "gaussian_taps",
    "image_from_bytes",
    "image_from_planes",
    "image_to_bytes",
    "kernel_table",
    "make_taylor_kernel",
    "make_trig_kernel",
    "poly_eval",
    "read_pnm",
    "recursive_coeffs",
    "select_degree",
    "sup_error",
    "trig_eval",
    "write_pnm",
]
