"""stograph: stochastic completeness of weighted graphs.

Analytic criteria with re-checkable certificates, graph surgeries that
transfer verdicts, and an independent numerical oracle (elliptic exhaustion
limits, killed heat mass, Monte Carlo explosion sampling) for
cross-validation.
"""

from .core import (
    GraphWindow,
    RadialProfile,
    RadialStats,
    ValidationReport,
    apply_laplacian,
    radial_statistics,
    validate_graph,
    weighted_degree,
    weighted_degree_all,
)
from .growth import ExpTail, FactorialTail, GrowthClass, PolyTail, RadialSequence
from .verdicts import Caveat, Certificate, SeriesJudgment, SeriesMethod, SeriesStatus, Status, TheoremTag, Verdict
from .global_degree import (
    GlobalDegreeSchedule,
    GlobalDegreeTable,
    bounded_degree_completeness_test,
    global_degree_limit,
    global_degree_step,
)
from .criteria import (
    RadialTestFunction,
    curvature_completeness_test,
    incompleteness_series_test,
    khasminskii_check,
    kplus_series_test,
    oy_violation_check,
    phi_transform,
    ratio_curvature_test,
    series_completeness_test,
    series_divergence_judge,
    weakly_symmetric_test,
)
from .oracle import (
    EllipticSolution,
    HeatMassCurve,
    McEstimate,
    ScanResult,
    dirichlet_heat_mass,
    elliptic_limit_scan,
    elliptic_window_solve,
    exp_weighted_integral,
    heat_deficit_scan,
    mc_explosion_estimate,
)
from .surgery import (
    StabilityConditions,
    SurgeryCertificate,
    glue_at_edge,
    high_degree_subgraph,
    propagate_verdict,
    restrict_subgraph,
    stability_conditions_check,
)
from .builders import (
    WindowChain,
    build_kary_tree,
    build_kary_tree_window,
    build_path,
    build_pendant_tree,
    build_spherically_symmetric,
    materialize_chain,
    materialize_window,
    radial_quotient_chain,
    radial_quotient_window,
)

__version__ = "0.1.0"
