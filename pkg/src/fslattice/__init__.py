"""Structure of subset sums of lattice point sets: oracles, thin cone
generators, dyadic-grid geometry, and GAP/dense-rectangle constructions."""

from .bitint import BitInt, bit_sum
from .core import (
    Box,
    CountingProfile,
    DensityError,
    DepthError,
    DomainError,
    GeneratorSet,
    Point,
    Representation,
    ResourceLimitError,
    TranslatedOrthant,
    ValidationError,
    counting_profile,
    validate_representation,
)
from .oracle import fs_enumerate, fs_membership, trm, uncovered_point_search

__all__ = [
    "BitInt",
    "Box",
    "CountingProfile",
    "DensityError",
    "DepthError",
    "DomainError",
    "GeneratorSet",
    "Point",
    "Representation",
    "ResourceLimitError",
    "TranslatedOrthant",
    "ValidationError",
    "bit_sum",
    "counting_profile",
    "fs_enumerate",
    "fs_membership",
    "trm",
    "uncovered_point_search",
    "validate_representation",
]

__version__ = "0.1.0"
