#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "contagion/bowtie.hpp"
#include "contagion/cascade.hpp"
#include "contagion/rational.hpp"
#include "contagion/stats.hpp"

namespace contagion {

enum class ExperimentMode { cascade, reach_scaling, bowtie, identification, nonmono_demo };

std::string mode_name(ExperimentMode mode);
ExperimentMode mode_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::vector<Vertex> n_list;
    double lambda = 0.0;
    Rational C;
    Rational L = 1;
    double c_shock = 1.0;
    double epsilon = 0.5;
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 0;
    ExperimentMode mode = ExperimentMode::cascade;

    void validate() const; // throws ConfigError naming the offending field
};

// Strict parse: unknown keys are an error, so a typo cannot silently change
// an experiment.
ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

struct TrialStats {
    Vertex n = 0;
    std::uint32_t trials = 0;
    std::uint32_t systemic_count = 0;
    double p_hat = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    double mean_terminal = 0.0;
    std::uint64_t max_terminal = 0;
    double mean_reach = 0.0;
    std::uint64_t max_reach = 0;
    std::uint32_t multi_hit_trials = 0;
    double multi_hit_trial_frac = 0.0;
    double mean_multi_hit_bound = 0.0;
    std::uint32_t no_multi_hit_trials = 0;
    std::uint32_t equality_violations = 0; // no-multi-hit trials where D_inf != Reach+
    double rho_out = 0.0;
    double elapsed_seconds = 0.0;
};

// Monte Carlo estimator of the random-shock systemic probability. Each trial
// draws a fresh graph and an independent uniform k_n-subset shock from
// per-trial RNG streams, so results are identical for any worker count.
std::vector<TrialStats> run_trials(const ExperimentConfig& cfg, unsigned workers = 1);

struct ReachScalingRow {
    Vertex n = 0;
    std::uint32_t k_n = 0;
    std::uint64_t max_reach = 0;
    std::uint64_t max_terminal = 0;
    double log_n_squared = 0.0;
    double ratio = 0.0; // max_reach / (ln n)^2
};

struct ReachScalingReport {
    std::vector<ReachScalingRow> rows;
    double m_hat = 0.0;             // least-squares slope of max_reach on (ln n)^2
    std::vector<double> residuals;  // max_reach - m_hat * (ln n)^2 per row
};

// Refuses supercritical parameters: the polylog claim only holds below
// criticality.
ReachScalingReport reach_scaling_experiment(const ExperimentConfig& cfg, unsigned workers = 1);

struct BowtieSeedStats {
    Vertex n = 0;
    std::uint32_t seeds = 0;
    double mean_in_frac = 0.0;
    double mean_out_frac = 0.0;
    double mean_scc_frac = 0.0;
    double sd_in_frac = 0.0;
    double sd_out_frac = 0.0;
    double sd_scc_frac = 0.0;
    std::uint64_t max_scc_size = 0;
};

// Bow-tie fractions of the truncated graph across `trials` seeds per n.
std::vector<BowtieSeedStats> bowtie_experiment(const ExperimentConfig& cfg, unsigned workers = 1);

struct IdentificationReport {
    Vertex n = 0;
    double lambda = 0.0;
    std::uint64_t d_star_truncated = 0; // arm built by sender truncation
    std::uint64_t d_star_sampled = 0;   // arm drawn from the i.i.d. law
    std::uint32_t graphs_per_arm = 0;
    Chi2Result degree_test;
    KsResult reach_test;
    bool pass = false; // both p-values at or above the 0.01 level
    std::string to_json() const;
};

// Two-sample comparison of (out-degree histogram, singleton forward-reach
// size) between truncated G(n, lambda/n) draws and the i.i.d.-outdegree
// construction. `d_star_sampled_override` deliberately mismatches the second
// arm, as a power control.
IdentificationReport identification_experiment(
    const ExperimentConfig& cfg, std::optional<std::uint64_t> d_star_sampled_override = {},
    unsigned workers = 1);

struct NonmonoReport {
    std::uint64_t size_before = 0; // |D_inf| with edges {u -> v}
    std::uint64_t size_after = 0;  // |D_inf| after adding u -> w
    CascadeTrace trace_before;
    CascadeTrace trace_after;
};

// Constructive witness that the cascade is not monotone in the edge set:
// on {u -> v} with shock {u}, adding u -> w halves the per-edge exposure.
NonmonoReport nonmono_demo(const Rational& C = Rational(5, 2), const Rational& L = 1);

// Sweep CSV (cascade mode): stable column set, append-only with a header,
// resumable per configuration row.
std::string sweep_csv_header();
std::string sweep_csv_row(const ExperimentConfig& cfg, const TrialStats& stats);
void run_sweep_to_csv(const ExperimentConfig& cfg, const std::string& out_path,
                      unsigned workers = 1);

} // namespace contagion
