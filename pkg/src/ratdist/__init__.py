"""Exact tools for point sets at rational distance from two or three plane points."""

from .deciders import Verdict, check_condition_iv, decide_rational_density, decide_square_density
from .exact import QuadExt
from .geometry import PlanePoint, Triangle
from .kummer import derive_quartic
from .rings import GaussianInt, RealQuadInt, fundamental_unit, gaussian_decompose, gaussian_orbit, realquad_line_points
from .threepoint import frame, generate3, generate3_collinear
from .twopoint import TwoPointConfig, generate2

__version__ = "0.1.0"

__all__ = [
    "GaussianInt",
    "PlanePoint",
    "QuadExt",
    "RealQuadInt",
    "Triangle",
    "TwoPointConfig",
    "Verdict",
    "check_condition_iv",
    "decide_rational_density",
    "decide_square_density",
    "derive_quartic",
    "frame",
    "fundamental_unit",
    "gaussian_decompose",
    "gaussian_orbit",
    "generate2",
    "generate3",
    "generate3_collinear",
    "realquad_line_points",
]
