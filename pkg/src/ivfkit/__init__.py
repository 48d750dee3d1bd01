"""Interval calculus for interval-valued functions: gH-difference arithmetic,
dominance order, semicontinuity probes, level sets, directional derivatives,
and a certified approximate-minimizer search."""

from .errors import (
    EmptyArgmin,
    EmptyFamily,
    EndpointOrderViolation,
    HypothesisViolated,
    ImproperFunction,
    InfiniteOperand,
    InfiniteTerm,
    InvalidEndpoints,
    IvfkitError,
    NonConvergent,
    NotMonotone,
    OutOfDomain,
    ParseError,
    Unbounded,
    UnknownIdentifier,
)
from .interval import (
    NEG_INF,
    POS_INF,
    ZERO,
    ExtendedInterval,
    Interval,
    OrderRelation,
    add,
    add_scalar,
    classify,
    format_interval,
    gh_dist,
    gh_sub,
    gh_sub_scalar,
    incomparable,
    inf_family,
    interval_from_json,
    interval_to_json,
    make,
    minkowski_sub,
    norm,
    nprec,
    npreceq,
    parse_interval,
    prec,
    prec_strict,
    preceq,
    scalar_mul,
    sup_family,
)
from .sequences import (
    IntervalSequence,
    LimitKind,
    LimitVerdict,
    check_convergence,
    check_divergence,
    endpointwise_limit,
    is_bounded_above,
    is_monotone_increasing,
    liminf_seq,
    limsup_seq,
    monotone_limit,
    tail_infima,
    tail_suprema,
)
from .ivf import (
    IVF,
    Box,
    ContinuityReport,
    EndpointLscReport,
    LevelBoundReport,
    ProbeParams,
    SampleGrid,
    add_ivf,
    argmin_over,
    continuity_report,
    endpoint_lsc_equivalence,
    eval_ivf,
    indicator,
    infimum_over,
    is_gh_continuous_at,
    is_gh_lsc_at,
    is_gh_usc_at,
    is_proper_probe,
    level_bounded_probe,
    level_member,
    lower_limit,
    sample_level_set,
    upper_limit,
)
from .calculus import (
    DirectionalDerivative,
    LinearIVFApprox,
    bounded_linear_probe,
    gateaux_derivative,
    gateaux_map,
    linear_map,
    norm_axioms_check,
    operator_norm,
    stationarity_check,
    unit_sphere_samples,
)
from .ekeland import (
    EkelandCertificate,
    EkelandInput,
    evp_gateaux,
    evp_search,
    global_min,
    level_bound_lemma_check,
    perturbed,
    verify_certificate,
)
from .expr import ast_to_text, eval_expr, parse_expr
from .catalog import catalog, get_function, get_sequence, ivf_from_expressions, sequence_catalog

__version__ = "0.1.0"
