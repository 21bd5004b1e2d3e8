"""Quillen categories of elementary abelian subgroups along coclass families."""

from .cochains import Cochain, coboundary, cocycle_group, solve_coboundary, t_cohomology
from .errors import (BelowX0, CapExceeded, CoclassError, DivNotDivisible, NoComplement,
                     NotACocycle, NotAGroup, NotAMorphism, NotMapped, NotUniserial,
                     PrecisionTooLow, PrecisionUnstable)
from .extension import ExtensionGroup, complements_of
from .family import CoclassFamily, FamilyGroup, ProPData, compute_x0
from .fixtures import dihedral2, family_data, quaternion2, semidihedral2
from .groups import FiniteGroup, PModuleAction, Subgroup, elementary_abelian_subgroups
from .padic import PModMatrix, PModVector, kernel_basis, smith_normal_form, solve_mod
from .quillen import (Category, FunctorData, QuillenObject, category_bruteforce, check_equivalence,
                      functor_F, functor_FS, lift_morphism, oracle_check, pushout, skeleton_Gx,
                      skeleton_S)
from .splitting import split_cocycles, verify_splitting

__all__ = [
    "BelowX0", "CapExceeded", "Category", "CoclassError", "CoclassFamily", "Cochain",
    "DivNotDivisible", "ExtensionGroup", "FamilyGroup", "FiniteGroup", "FunctorData",
    "NoComplement", "NotACocycle", "NotAGroup", "NotAMorphism", "NotMapped", "NotUniserial",
    "PModMatrix", "PModVector", "PModuleAction", "PrecisionTooLow", "PrecisionUnstable",
    "ProPData", "QuillenObject", "Subgroup", "category_bruteforce", "check_equivalence",
    "coboundary", "cocycle_group", "complements_of", "compute_x0", "dihedral2",
    "elementary_abelian_subgroups", "family_data", "functor_F", "functor_FS", "kernel_basis",
    "lift_morphism", "oracle_check", "pushout", "quaternion2", "semidihedral2",
    "skeleton_Gx", "skeleton_S", "smith_normal_form", "solve_coboundary", "solve_mod",
    "split_cocycles", "t_cohomology", "verify_splitting",
]
