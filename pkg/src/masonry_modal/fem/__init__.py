from .eigen import EigenPair, solve_generalized_symmetric_eig
from .element import (
    element_internal_force,
    element_load_vector,
    element_mass,
    element_tangent_stiffness,
    elastic_stiffness,
    hermite_basis,
)
from .model import BeamModel, Constraints, Mesh, SystemState, fe_frequency, modal_analysis

__all__ = [
    "BeamModel",
    "Constraints",
    "EigenPair",
    "Mesh",
    "SystemState",
    "elastic_stiffness",
    "element_internal_force",
    "element_load_vector",
    "element_mass",
    "element_tangent_stiffness",
    "fe_frequency",
    "hermite_basis",
    "modal_analysis",
    "solve_generalized_symmetric_eig",
]
