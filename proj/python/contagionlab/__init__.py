"""Balance-sheet contagion laboratory on sparse random digraphs.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._contagionlab import (  # noqa: F401
    BalanceSheet,
    BowTie,
    BowtieSeedStats,
    CascadeTrace,
    DiGraph,
    ExperimentConfig,
    IdentificationReport,
    ReachScalingReport,
    ReachScalingRow,
    SccDecomposition,
    TrialStats,
    TruncatedOutdegreeLaw,
    bowtie_experiment,
    bowtie_extract,
    bowtie_to_json,
    brute_force_terminal_set,
    build_single_hit,
    classify_hits,
    config_from_json,
    d_star,
    edge_exposure,
    equity,
    forward_reach,
    gen_constant_outdegree_digraph,
    gen_gnp_digraph,
    gen_iid_outdegree_digraph,
    gw_total_progeny,
    gw_total_progeny_pmf,
    identification_experiment,
    is_systemic,
    multi_hit_bound,
    nonmono_demo,
    poisson_cdf,
    reach_scaling_experiment,
    rho_out,
    run_cascade,
    run_sweep_to_csv,
    run_trials,
    scc_decompose,
    shock_size,
    truncated_outdegree_sampler,
    zero_outdegree_fraction,
)

__version__ = "0.1.0"
