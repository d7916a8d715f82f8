"""Executable graphs built from scheduled modules."""

from .compiler import LinkedProgram, MethodLowering, link, lower
from .graph import CallSite, ExecGraph, MethodGraph, MethodEntry, Resume, Segment, UnitNode, format_graph

__all__ = [
    "CallSite",
    "ExecGraph",
    "LinkedProgram",
    "MethodEntry",
    "MethodGraph",
    "MethodLowering",
    "Resume",
    "Segment",
    "UnitNode",
    "format_graph",
    "link",
    "lower",
]
