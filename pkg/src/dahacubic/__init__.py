"""Exact verification toolkit for the rank-one C^vC1 double affine Hecke
algebra and the affine cubic surfaces attached to it."""

from .core import Field, RatFuncV, RatFuncX
from .cubic import CubicSurface, SurfacePoly, coeffs_from_params
from .daha import GenSet, Params, ld_generators
from .qtorus import TorusOp
from .weyl import TorusPointS, WeylElement

__version__ = "0.1.0"

__all__ = [
    "CubicSurface",
    "Field",
    "GenSet",
    "Params",
    "RatFuncV",
    "RatFuncX",
    "SurfacePoly",
    "TorusOp",
    "TorusPointS",
    "WeylElement",
    "coeffs_from_params",
    "ld_generators",
]
