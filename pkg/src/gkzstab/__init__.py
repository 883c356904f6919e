"""Exact weight polytopes, degrees and semistability checks for lattice
point configurations."""

from .config import PointConfiguration, dilate, load_configuration
from .errors import DegenerateHullError, InputError, ScaleGuardError
from .stability import analyze_dilation, degrees, futaki_paul
from .triangulation import enumerate_triangulations, is_regular
from .weights import gkz_vector, hurwitz_vector, massive_gkz_vector

__version__ = "0.1.0"

__all__ = [
    "PointConfiguration",
    "load_configuration",
    "dilate",
    "InputError",
    "DegenerateHullError",
    "ScaleGuardError",
    "enumerate_triangulations",
    "is_regular",
    "gkz_vector",
    "massive_gkz_vector",
    "hurwitz_vector",
    "degrees",
    "futaki_paul",
    "analyze_dilation",
]
