"""Soft arc consistency for valued constraint satisfaction problems."""

from .dac import check_irreducibility, enforce_dac, is_dac, solve_tree, tree_structure
from .gac import enforce_gac, enforce_sac_strict, enumerate_closures, is_gac, is_gac_strict
from .instance import parse_instance
from .model import Vcsp, equivalent, f_min, project_assignment, subproblem, valuation_of
from .transforms import ext, proj
from .valuation import (
    BoundedSum,
    CappedPrison,
    DrivingPenalty,
    FinancialLife,
    OrderedMax,
    Valuation,
    Weighted,
    verify_structure,
)

__all__ = [
    "BoundedSum",
    "CappedPrison",
    "DrivingPenalty",
    "FinancialLife",
    "OrderedMax",
    "Valuation",
    "Vcsp",
    "Weighted",
    "check_irreducibility",
    "enforce_dac",
    "enforce_gac",
    "enforce_sac_strict",
    "enumerate_closures",
    "equivalent",
    "ext",
    "f_min",
    "is_dac",
    "is_gac",
    "is_gac_strict",
    "parse_instance",
    "proj",
    "project_assignment",
    "solve_tree",
    "subproblem",
    "tree_structure",
    "valuation_of",
    "verify_structure",
]
