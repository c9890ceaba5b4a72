"""Finite partial rings: tables, constructions, spectra and point functors."""

from .core import (
    UNDEF,
    Homomorphism,
    Kind,
    PartialMagma,
    PartialRing,
    enumerate_homs,
    find_isomorphism,
    hom_object,
    is_isomorphic,
    product,
    sum_multiset,
    validate,
)
from .catalog import builtin
from .errors import AxiomError, BudgetExceeded, CrossCheckFailure, StructureError

__version__ = "0.1.0"
