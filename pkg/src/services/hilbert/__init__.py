"""Dense complex statevector algebra."""

from src.services.hilbert.operators import (
    Projector,
    ProjectiveFamily,
    UnitaryOp,
    apply_projector,
    apply_unitary,
)
from src.services.hilbert.state import (
    StateVector,
    basis_state,
    inner,
    plus_state,
    product_state,
    spin_state,
    tensor,
    zero_state,
)

__all__ = [
    "Projector",
    "ProjectiveFamily",
    "StateVector",
    "UnitaryOp",
    "apply_projector",
    "apply_unitary",
    "basis_state",
    "inner",
    "plus_state",
    "product_state",
    "spin_state",
    "tensor",
    "zero_state",
]
