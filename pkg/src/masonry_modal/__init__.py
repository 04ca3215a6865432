"""Natural frequencies of cracked no-tension (masonry-like) beam-columns."""

from .analytical import (
    Case1,
    Case2,
    Case3,
    ModalResult,
    case1_frequency,
    case2_frequency,
    case2_limit_loads,
    case2_x0,
    case3_frequency,
    case3_threshold,
    case3_x0,
    omega_elastic,
)
from .constitutive import (
    AxialState,
    BeamSpec,
    SectionResponse,
    curvature_from_generalized_moment,
    elastic_limit_curvature,
    generalized_moment,
    paper_beam,
    tangent_modulus,
)

__version__ = "0.1.0"

__all__ = [
    "AxialState",
    "BeamSpec",
    "Case1",
    "Case2",
    "Case3",
    "ModalResult",
    "SectionResponse",
    "case1_frequency",
    "case2_frequency",
    "case2_limit_loads",
    "case2_x0",
    "case3_frequency",
    "case3_threshold",
    "case3_x0",
    "curvature_from_generalized_moment",
    "elastic_limit_curvature",
    "generalized_moment",
    "omega_elastic",
    "paper_beam",
    "tangent_modulus",
]
