"""Frames, K-frames and tight K-frames in finite-dimensional n-inner product spaces."""
__version__ = "0.1.0"

from .errors import DegenerateAnchorError, InputError, NFrameError, PreconditionError
from .frames import (
    BoundsReport,
    FrameSequence,
    build_operators,
    frame_bounds,
    frame_operator,
    frame_operator_certificate,
)
from .kframes import (
    KFrameReport,
    ConstructionReport,
    closed_range_bounds_check,
    kframe_bounds,
    perturb_theorem_3_8,
    restrict_theorem_3_3,
    sum_theorem_3_7,
    synthesis_characterization,
    transform_theorem_3_4,
    transform_theorem_3_5,
)
from .linop import douglas_check, is_psd, operator_norm, pseudo_inverse, range_sum_check
from .nspace import AmbientSpace, AnchorSet, axiom_report, n_inner, n_norm
from .quotient import QuotientSpace, build_quotient, f_inner, lift, orthonormal_coords, project
from .tight import (
    TightnessReport,
    construct_theorem_4_3,
    construct_theorem_4_4,
    disjoint_sum_theorem_4_6,
    dual_bessel_theorem_4_5,
    scale_to_parseval,
    tightness,
)
