"""crosscut: realizability and construction of binary matrices and plane
sets with prescribed cross sections, in exact dyadic arithmetic."""

from .dyadic import Dyadic
from .feasibility import (
    FeasibilityReport,
    Partition,
    Verdict,
    Witness,
    check_gale_ryser,
    check_hlp,
    check_hlp_symmetric,
    conjugate,
)
from .gridset import (
    DyadicSet,
    GridParams,
    InfeasibleInput,
    MoveOutOfRange,
    QuantizationError,
    SwapMove,
    discrete_exact_set,
    horizontal_section,
    initial_set,
    is_swappable,
    optimize_generation,
    reconstruct,
    swap,
    vertical_section,
)
from .matrices import (
    BinaryMatrix,
    InfeasibleMargins,
    InstanceTooLarge,
    brute_force_realize,
    col_sums,
    realize_exact_margins,
    row_sums,
    ryser_construct,
    swap_construct,
)
from .report import (
    AuditResult,
    GenerationRecord,
    MalformedTrace,
    SwapRecord,
    TraceSummary,
    audit_trace,
    parse_trace,
    render_text,
    residual,
    summary_dict,
    trace_lines,
)
from .stepfn import (
    StepFunction,
    distribution,
    distribution_steps,
    l1_distance,
    primitive_dist,
    primitive_rearr,
    rearrange,
    rearrangement_value,
)

__version__ = "0.1.0"

__all__ = [
    "AuditResult",
    "BinaryMatrix",
    "Dyadic",
    "DyadicSet",
    "FeasibilityReport",
    "GenerationRecord",
    "GridParams",
    "InfeasibleInput",
    "InfeasibleMargins",
    "InstanceTooLarge",
    "MalformedTrace",
    "MoveOutOfRange",
    "Partition",
    "QuantizationError",
    "StepFunction",
    "SwapMove",
    "SwapRecord",
    "TraceSummary",
    "Verdict",
    "Witness",
    "audit_trace",
    "brute_force_realize",
    "check_gale_ryser",
    "check_hlp",
    "check_hlp_symmetric",
    "col_sums",
    "conjugate",
    "discrete_exact_set",
    "distribution",
    "distribution_steps",
    "horizontal_section",
    "initial_set",
    "is_swappable",
    "l1_distance",
    "optimize_generation",
    "parse_trace",
    "primitive_dist",
    "primitive_rearr",
    "realize_exact_margins",
    "rearrange",
    "rearrangement_value",
    "reconstruct",
    "render_text",
    "residual",
    "row_sums",
    "ryser_construct",
    "summary_dict",
    "swap",
    "swap_construct",
    "trace_lines",
    "vertical_section",
]
