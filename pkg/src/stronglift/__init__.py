"""Exact lifts of SL and Sp matrices over the integers.

Reduction modulo an ideal ``nZ`` is onto for SL_k and Sp_2k; this package
constructs preimages, completes symplectic rows, matches rows modulo
pairwise coprime ideals, and works with weighted projective spaces modulo
``n``. Every lift returns a certificate of re-checkable predicates.
"""
from .errors import InternalCheckFailed, LiftError
from .lifting import *  # noqa: F401,F403
from .lifting import __all__ as _lifting_all
from .matrix import IntMatrix, det, is_sl_mod, is_symplectic, symplectic_form
from .projective import (
    ClassTable,
    ProjPoint,
    canonical_form,
    crt_bijectivity_check,
    crt_lift_projective,
    enumerate_classes,
    equivalent_points,
    reduce_projective,
)
from .ring import crt_list, egcd, factorize, is_unit_mod, mod_inverse
from .unital import (
    ShiftWitness,
    bring_unit,
    cmh_perturb,
    coprime_shift,
    diag_det_one,
    is_unital,
    usc_shift,
    usc_shift_mod,
)

__version__ = "0.1.0"

__all__ = [
    "ClassTable",
    "IntMatrix",
    "InternalCheckFailed",
    "LiftError",
    "ProjPoint",
    "ShiftWitness",
    "bring_unit",
    "canonical_form",
    "cmh_perturb",
    "coprime_shift",
    "crt_bijectivity_check",
    "crt_lift_projective",
    "crt_list",
    "det",
    "diag_det_one",
    "egcd",
    "enumerate_classes",
    "equivalent_points",
    "factorize",
    "is_sl_mod",
    "is_symplectic",
    "is_unit_mod",
    "is_unital",
    "mod_inverse",
    "reduce_projective",
    "symplectic_form",
    "usc_shift",
    "usc_shift_mod",
    *_lifting_all,
]
