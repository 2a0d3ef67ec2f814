"""Tubings of Δ-graphs: enumeration, generating functions, fans and realizations."""

from __future__ import annotations

from .complex_core import ForbiddenComplex, GroundSet, hypercube, simplex
from .delta_graph import DeltaGraph, FVector, fvector, iter_tubings, maximal_tubing_count, tubes
from .errors import (
    CapacityError,
    DomainError,
    InputError,
    MalformedFileError,
    PreconditionError,
    TubexError,
    UnknownFamilyError,
)
from .families import FamilyId, build
from .series import BivariateSeries, family_series

__all__ = [
    "BivariateSeries",
    "CapacityError",
    "DeltaGraph",
    "DomainError",
    "FVector",
    "FamilyId",
    "ForbiddenComplex",
    "GroundSet",
    "InputError",
    "MalformedFileError",
    "PreconditionError",
    "TubexError",
    "UnknownFamilyError",
    "build",
    "family_series",
    "fvector",
    "hypercube",
    "iter_tubings",
    "maximal_tubing_count",
    "simplex",
    "tubes",
]

__version__ = "0.1.0"
