"""Convex-combination drawings of maximal plane graphs, coefficient
recovery, coefficient-space morphing, and resolution diagnostics."""

from .errors import (
    BarymorphError,
    DegenerateDrawing,
    DegenerateTriangle,
    DegreeTooLow,
    EulerViolation,
    GraphMismatch,
    InconsistentEmbedding,
    InvalidCoefficients,
    NonSimple,
    NonStarShaped,
    NotTriangulated,
    OuterMismatch,
    ParameterOutOfRange,
    ParseError,
    ResidualTooLarge,
    SingularSystem,
    SolverError,
    StepStalled,
    UnknownVertex,
    ValidationError,
    WitnessNotFound,
)
from .plane_graph import (
    PlaneGraph,
    build_maximal_plane_graph,
    classify_vertices,
    enclosed_subgraph,
    format_graph,
    load_graph,
    neighbors_cw,
    parse_graph,
    save_graph,
    verify_enclosed_subgraph,
)
from .geometry import (
    Drawing,
    ExtentReport,
    FaceWitness,
    ResolutionReport,
    Triangle,
    apply_rigid_transform,
    emit_svg,
    format_drawing,
    geometric_eps,
    load_drawing,
    min_distance_internal_face_witness,
    outer_triangle,
    parse_drawing,
    point_segment_distance,
    rotate_translate,
    save_drawing,
    separated_object_extremes,
    triangle_extent_check,
    triangle_resolution,
    verify_planar_straight_line,
)
from .coefficients import (
    CoefficientMatrix,
    format_coefficients,
    interpolate,
    load_coefficients,
    parse_coefficients,
    recover_coefficients,
    save_coefficients,
    uniform_coefficients,
    validate_coefficients,
)
from .embedder import (
    BarycentricSystem,
    assemble_system,
    f_drawing,
    log_resolution_floor,
    residual,
    t_drawing,
)
from .morph import (
    FGCurvePoint,
    FGMorph,
    MorphSchedule,
    discretize_morph,
    fg_curve_length_estimate,
    fg_curve_point,
    fg_morph,
    format_schedule,
    lambda_min_at,
    load_schedule,
    morph_at,
    morph_resolution_floor,
    parse_schedule,
    save_schedule,
    validate_schedule,
)
from .families import (
    EadesGarvanInstance,
    NestedTrianglesInstance,
    eades_garvan,
    eg_chain_oracle,
    nested_triangles,
    random_stacked_triangulation,
    ring_triangle_areas,
)

__version__ = "0.1.0"
