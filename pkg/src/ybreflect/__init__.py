"""Reflections of finite set-theoretic solutions of the Yang-Baxter equation."""
from __future__ import annotations

from .core import FiniteMap, PairMap, Solution, check_ybe, classify_solution
from .errors import DomainError, ResourceError, StructureError, YBError
from .reflections import (
    ReflectionCounts,
    ReflectionRecord,
    ReflectionSet,
    brute_force_reflections,
    classify_reflection,
    count_reflections,
    enumerate_reflections,
    is_reflection,
)
from .shelves import Shelf, derived_left_shelf, derived_right_shelf, solution_from_shelf

__version__ = "0.1.0"

__all__ = [
    "FiniteMap", "PairMap", "Solution", "check_ybe", "classify_solution",
    "YBError", "StructureError", "DomainError", "ResourceError",
    "ReflectionCounts", "ReflectionRecord", "ReflectionSet",
    "brute_force_reflections", "classify_reflection", "count_reflections",
    "enumerate_reflections", "is_reflection",
    "Shelf", "derived_left_shelf", "derived_right_shelf", "solution_from_shelf",
]
