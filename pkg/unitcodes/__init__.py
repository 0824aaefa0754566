"""
unitcodes
Unit graphs of Z_n (+) Z_m, the linear codes of their incidence matrices, and
a harness that checks the closed-form parameters against exact computation.
"""

from .api import UnitCodeAPI
from .core import GfMatrix, PrimeField, RingElement, RingSpec, classify
from .objects import ExportFormat, LinearCode, UnitGraph, export_graph, predict
from .verify import check_instance, sweep, sweep_async
from . import types

__version__ = "0.1.0"
__author__ = "addavriance"

__all__ = [
    "UnitCodeAPI",
    "RingSpec",
    "RingElement",
    "classify",
    "PrimeField",
    "GfMatrix",
    "UnitGraph",
    "LinearCode",
    "predict",
    "ExportFormat",
    "export_graph",
    "check_instance",
    "sweep",
    "sweep_async",
    "types",
]
