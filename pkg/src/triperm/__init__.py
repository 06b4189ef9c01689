"""Strictly triangular permutations of F_p^n: canonical forms, fast iteration, Z-flows."""

from .errors import DomainError, ResourceError, TripermError, UsageError
from .fastforward import FastForwardForm, eval_power, from_triangular, sparse_generate
from .ffring import MultCounter, ReducedPoly
from .trigroup import (
    ConjugationCertificate,
    DiagonalMap,
    TriangularPermutation,
    compose,
    conjugate_to_delta,
    delta_map,
    invert,
    is_maximal_orbit,
    power,
)
from .zflow import FlowMap, build_flow, specialize

__all__ = [
    "ConjugationCertificate",
    "DiagonalMap",
    "DomainError",
    "FastForwardForm",
    "FlowMap",
    "MultCounter",
    "ReducedPoly",
    "ResourceError",
    "TriangularPermutation",
    "TripermError",
    "UsageError",
    "build_flow",
    "compose",
    "conjugate_to_delta",
    "delta_map",
    "eval_power",
    "from_triangular",
    "invert",
    "is_maximal_orbit",
    "power",
    "sparse_generate",
    "specialize",
]
