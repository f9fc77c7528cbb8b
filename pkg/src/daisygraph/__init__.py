"""Daisy graphs, arrowed daisy graphs and ordered daisy graphs: validation,
gradings, double arcs and realizability decisions."""

from .arcs import (
    ArcDecomposition,
    ArcParity,
    DoubleArc,
    Lift,
    NotLiftable,
    closed_arc_parities,
    decompose_arcs,
    short_grade_lift,
)
from .grading import (
    GradeStats,
    Grading,
    GradingCheck,
    NotGradable,
    PathError,
    delta_g,
    grade,
    grade_obstructing_loops,
    path_grading_difference,
    validate_grading,
)
from .model import (
    ArrowedDaisyGraph,
    DaisyError,
    DaisyGraph,
    EdgePath,
    HalfEdge,
    OrderedDaisyGraph,
    PreferenceError,
    StructureMismatch,
    ValidationReport,
    VertexKind,
    Violation,
    euler_char_of_image,
    make_pair,
    odg_canonicalize,
    odg_orders_equal,
    preferred_status,
    validate,
)
from .realize import ManifoldClass, RealizabilityVerdict, decide_realizable

__version__ = "0.1.0"
