"""Strong-approximation lifts, row completion and congruence lifts."""
from .certificate import LiftCertificate
from .congruence import (
    CongruenceTarget,
    sl_multi_congruence_lift,
    sl_multi_congruence_matrix,
    sp_multi_congruence_lift,
    sp_multi_congruence_matrix,
)
from .orthogonal import form_value, orthogonal_obstruction
from .sl import sl_lift, sl_lift_matrix
from .surject import row_witnesses, sl_surject_projective, sp_surject_projective
from .symplectic import (
    extension_certificate,
    sp_extend_column,
    sp_extend_row,
    sp_lift,
    sp_lift_matrix,
)

__all__ = [
    "CongruenceTarget",
    "LiftCertificate",
    "extension_certificate",
    "form_value",
    "orthogonal_obstruction",
    "row_witnesses",
    "sl_lift",
    "sl_lift_matrix",
    "sl_multi_congruence_lift",
    "sl_multi_congruence_matrix",
    "sl_surject_projective",
    "sp_extend_column",
    "sp_extend_row",
    "sp_lift",
    "sp_lift_matrix",
    "sp_multi_congruence_lift",
    "sp_multi_congruence_matrix",
    "sp_surject_projective",
]
