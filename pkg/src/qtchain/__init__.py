"""Quasitrivial monotone operations on finite chains: property checks, the
downward-right path form, exact counts, n-ary reduction and contour plots."""

from .core import BinaryOpTable, PropertyReport, analyze, new_table
from .errors import QtChainError
from .kernels import BACKEND
from .pathform import PathDecomposition, decompose, parse_path_spec, reconstruct

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinaryOpTable",
    "PathDecomposition",
    "PropertyReport",
    "QtChainError",
    "analyze",
    "decompose",
    "new_table",
    "parse_path_spec",
    "reconstruct",
]
