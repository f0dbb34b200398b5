"""Matroid quotients, Higgs majors, exact realizations and tropical inclusions."""

from .errors import MatquotError, SearchInconclusive
from .extension import ModularCut, enumerate_modular_cuts, extend, is_modular_cut, lift_cut, modular_cut
from .linalg import GF, QQ, ExactMatrix, Field, plucker
from .matroid import Matroid, direct_sum, enumerate_matroids, from_bases, is_isomorphic, matroid_from_flats, uniform, weak_leq
from .quotient import (
    Factorization,
    FlagMatroid,
    Major,
    Quotient,
    factorization_from_major,
    higgs_factorization,
    higgs_lift,
    higgs_major,
    is_quotient,
    major_from_factorization,
)
from .realization import (
    ObstructionCertificate,
    QuotientRealization,
    Realization,
    check_realizes,
    column_matroid,
    extend_along_cut,
    realize_major_from_quotient,
    realize_quotient_from_major,
    search_realization,
)
from .tropical import (
    HomogeneousIdealInput,
    TropicalPoint,
    bergman_inclusion,
    linear_relative_realizability,
    matroid_of_degree_part,
    trop_matroid_membership,
)

__all__ = [
    "ExactMatrix",
    "Factorization",
    "Field",
    "FlagMatroid",
    "GF",
    "HomogeneousIdealInput",
    "Major",
    "MatquotError",
    "Matroid",
    "ModularCut",
    "ObstructionCertificate",
    "QQ",
    "Quotient",
    "QuotientRealization",
    "Realization",
    "SearchInconclusive",
    "TropicalPoint",
    "bergman_inclusion",
    "check_realizes",
    "column_matroid",
    "direct_sum",
    "enumerate_matroids",
    "enumerate_modular_cuts",
    "extend",
    "extend_along_cut",
    "factorization_from_major",
    "from_bases",
    "higgs_factorization",
    "higgs_lift",
    "higgs_major",
    "is_isomorphic",
    "is_modular_cut",
    "is_quotient",
    "lift_cut",
    "linear_relative_realizability",
    "major_from_factorization",
    "matroid_from_flats",
    "matroid_of_degree_part",
    "modular_cut",
    "plucker",
    "realize_major_from_quotient",
    "realize_quotient_from_major",
    "search_realization",
    "trop_matroid_membership",
    "uniform",
    "weak_leq",
]
