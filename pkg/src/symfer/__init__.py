"""Bayesian inference of dihedral symmetry in planar point clouds.

Clouds are compared against their images under candidate dihedral groups
with exact 2-Wasserstein distances; the mean squared distance over a group
orbit scores each hypothesis, and a Gibbs posterior over the lattice of
orders n is sampled by Metropolis-Hastings (optionally tempered) or
enumerated exactly.  A deterministic threshold baseline is included for
comparison, along with generators for equivariant-map trajectories and
motif-replicated clouds, and a phase embedding that lifts 1-D periodic
signals onto the unit circle.
"""

from .benchmark import (
    AMBIGUOUS,
    NO_CLASSIFICATION,
    Classification,
    SweepReport,
    ThresholdOutcome,
    elementwise_distances,
    threshold_classify,
    threshold_sweep,
)
from .datagen import (
    CGParams,
    DivergenceError,
    NoiseSpec,
    add_noise,
    cg_step,
    cg_trajectory,
    make_d12_dataset,
    make_motif_dataset,
)
from .embedding import (
    DegeneratePhaseError,
    TimeSeries,
    analytic_signal,
    average_cycles,
    instantaneous_phase,
    phase_embed,
)
from .fileio import ParseError, read_cloud_csv, read_timeseries_csv, write_cloud_csv
from .groups import (
    REFLECTION,
    ROTATION,
    DihedralGroup,
    GroupElement,
    PointCloud,
    apply_element,
    compose,
    conjugate_element,
    inverse,
    replicate_motif,
    sample_fundamental_domain,
)
from .inference import (
    ChainRecord,
    ChainState,
    InferenceConfig,
    PosteriorSummary,
    TemperatureLadder,
    acceptance_probability,
    exact_posterior,
    log_unnormalized_posterior,
    mh_step,
    run_chain,
    run_mc3,
    summarize,
    total_variation,
)
from .orbit import CostReport, OccamComparison, group_cost, occam_criterion, stability_bound
from .transport import (
    TransportConfig,
    TransportResult,
    brute_force_wasserstein,
    cost_matrix,
    wasserstein,
)

__version__ = "0.1.0"

__all__ = [
    "AMBIGUOUS",
    "NO_CLASSIFICATION",
    "REFLECTION",
    "ROTATION",
    "CGParams",
    "ChainRecord",
    "ChainState",
    "Classification",
    "CostReport",
    "DegeneratePhaseError",
    "DihedralGroup",
    "DivergenceError",
    "GroupElement",
    "InferenceConfig",
    "NoiseSpec",
    "OccamComparison",
    "ParseError",
    "PointCloud",
    "PosteriorSummary",
    "SweepReport",
    "TemperatureLadder",
    "ThresholdOutcome",
    "TimeSeries",
    "TransportConfig",
    "TransportResult",
    "acceptance_probability",
    "add_noise",
    "analytic_signal",
    "apply_element",
    "average_cycles",
    "brute_force_wasserstein",
    "cg_step",
    "cg_trajectory",
    "compose",
    "conjugate_element",
    "cost_matrix",
    "elementwise_distances",
    "exact_posterior",
    "group_cost",
    "instantaneous_phase",
    "inverse",
    "log_unnormalized_posterior",
    "make_d12_dataset",
    "make_motif_dataset",
    "mh_step",
    "occam_criterion",
    "phase_embed",
    "read_cloud_csv",
    "read_timeseries_csv",
    "replicate_motif",
    "run_chain",
    "run_mc3",
    "sample_fundamental_domain",
    "stability_bound",
    "summarize",
    "threshold_classify",
    "threshold_sweep",
    "total_variation",
    "wasserstein",
    "write_cloud_csv",
]
