"""Consecutive integers as sums of three integer cubes.

Exact generation, symbolic certification, classification and search of
chains n, n+1, n+2 (and longer runs) that are each a sum of three cubes.
"""

from .cubes import (
    ChainClass,
    ChainTag,
    CubeTriple,
    TripleChain,
    classify_chain,
    congruence_class,
    is_trivial_difference,
    sum_of_cubes,
    verify_chain,
)
from .errors import CubeChainError
from .families import FamilyDescriptor, catalog, certify_family, instantiate, positivity_domain
from .polyring import Polynomial, parse

__all__ = [
    "ChainClass",
    "ChainTag",
    "CubeChainError",
    "CubeTriple",
    "FamilyDescriptor",
    "Polynomial",
    "TripleChain",
    "catalog",
    "certify_family",
    "classify_chain",
    "congruence_class",
    "instantiate",
    "is_trivial_difference",
    "parse",
    "positivity_domain",
    "sum_of_cubes",
    "verify_chain",
]
