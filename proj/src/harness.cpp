#include "contagion/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "contagion/analytics.hpp"
#include "contagion/balance_sheet.hpp"
#include "contagion/rng.hpp"
#include "contagion/single_hit.hpp"

namespace contagion {

namespace {

// Runs fn(0..count-1) on `workers` threads; callers write to per-index slots
// so the result is independent of scheduling. The first worker exception is
// rethrown on the calling thread after everyone joined.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) {
        pool.emplace_back([&] {
            try {
                for (std::uint64_t i = next.fetch_add(1); i < count && !failed.load();
                     i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string format_double(double value, const char* fmt = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

std::string format_param(double value) { return format_double(value, "%.10g"); }

struct TrialOutcome {
    bool systemic = false;
    bool multi_hit = false;
    bool no_multi_hit_equality_violated = false;
    std::uint64_t terminal_size = 0;
    std::uint64_t reach_size = 0;
    double bound = 0.0;
};

TrialOutcome run_one_trial(const ExperimentConfig& cfg, Vertex n, std::uint32_t trial) {
    auto graph_rng = trial_engine(cfg.master_seed, n, trial, Stream::graph);
    const DiGraph g = gen_gnp_digraph(n, cfg.lambda, graph_rng);

    auto shock_rng = trial_engine(cfg.master_seed, n, trial, Stream::shock);
    const auto k = shock_size(n, cfg.c_shock);
    const auto shock = sample_vertex_subset(n, k, shock_rng);

    const BalanceSheet bs(cfg.L, cfg.C);
    const DiGraph g_sh = build_single_hit(g, bs.d_star());
    std::vector<Vertex> reach = forward_reach(g_sh, shock);
    std::sort(reach.begin(), reach.end());

    const CascadeTrace trace = run_cascade(g, bs, shock);

    TrialOutcome out;
    out.systemic = is_systemic(trace, cfg.epsilon, n);
    out.multi_hit = !trace.multi_hit_defaults.empty();
    out.terminal_size = trace.terminal_size();
    out.reach_size = reach.size();
    const auto sizes = trace.round_sizes_with_shock();
    out.bound = multi_hit_bound(cfg.lambda, sizes, n);
    if (!out.multi_hit) {
        out.no_multi_hit_equality_violated = trace.terminal_set != reach;
    }
    return out;
}

} // namespace

std::string mode_name(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::cascade: return "cascade";
        case ExperimentMode::reach_scaling: return "reach_scaling";
        case ExperimentMode::bowtie: return "bowtie";
        case ExperimentMode::identification: return "identification";
        case ExperimentMode::nonmono_demo: return "nonmono_demo";
    }
    throw std::logic_error("unreachable mode");
}

ExperimentMode mode_from_name(const std::string& name) {
    for (auto mode : {ExperimentMode::cascade, ExperimentMode::reach_scaling,
                      ExperimentMode::bowtie, ExperimentMode::identification,
                      ExperimentMode::nonmono_demo}) {
        if (mode_name(mode) == name) return mode;
    }
    throw ConfigError("mode: unknown value '" + name + "'");
}

void ExperimentConfig::validate() const {
    if (n_list.empty()) throw ConfigError("n_list: must contain at least one vertex count");
    for (Vertex n : n_list) {
        if (n < 2) throw ConfigError("n_list: vertex counts must be >= 2");
        if (lambda >= static_cast<double>(n)) {
            throw ConfigError("lambda: must be < every n in n_list");
        }
    }
    if (!(lambda > 0.0)) throw ConfigError("lambda: must be > 0");
    if (C <= 1) throw ConfigError("C: must be > 1");
    if (L <= 0) throw ConfigError("L: must be > 0");
    if (!(c_shock > 0.0)) throw ConfigError("c_shock: must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon: must lie in (0,1)");
    if (trials < 1) throw ConfigError("trials: must be >= 1");
    for (Vertex n : n_list) {
        try {
            (void)shock_size(n, c_shock);
        } catch (const std::invalid_argument&) {
            throw ConfigError("c_shock: shock size exceeds n = " + std::to_string(n));
        }
    }
}

ExperimentConfig config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    auto rational_field = [](const nlohmann::json& v, const char* field) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(BigInt(v.get<std::int64_t>()));
        throw ConfigError(std::string(field) +
                          ": expected a string like \"5/2\" or \"2.5\", or an integer");
    };

    ExperimentConfig cfg;
    bool saw_n_list = false, saw_lambda = false, saw_c = false, saw_c_shock = false,
         saw_epsilon = false, saw_trials = false, saw_seed = false;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "n_list") {
                cfg.n_list = value.get<std::vector<Vertex>>();
                saw_n_list = true;
            } else if (key == "lambda") {
                cfg.lambda = value.get<double>();
                saw_lambda = true;
            } else if (key == "C") {
                cfg.C = rational_field(value, "C");
                saw_c = true;
            } else if (key == "L") {
                cfg.L = rational_field(value, "L");
            } else if (key == "c_shock") {
                cfg.c_shock = value.get<double>();
                saw_c_shock = true;
            } else if (key == "epsilon") {
                cfg.epsilon = value.get<double>();
                saw_epsilon = true;
            } else if (key == "trials") {
                cfg.trials = value.get<std::uint32_t>();
                saw_trials = true;
            } else if (key == "master_seed") {
                cfg.master_seed = value.get<std::uint64_t>();
                saw_seed = true;
            } else if (key == "mode") {
                cfg.mode = mode_from_name(value.get<std::string>());
            } else {
                throw ConfigError("unknown config key: '" + key + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(key + ": " + e.what());
        }
    }
    if (!saw_n_list) throw ConfigError("n_list: missing");
    if (!saw_lambda) throw ConfigError("lambda: missing");
    if (!saw_c) throw ConfigError("C: missing");
    if (!saw_c_shock) throw ConfigError("c_shock: missing");
    if (!saw_epsilon) throw ConfigError("epsilon: missing");
    if (!saw_trials) throw ConfigError("trials: missing");
    if (!saw_seed) throw ConfigError("master_seed: missing");
    cfg.validate();
    return cfg;
}

ExperimentConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::vector<TrialStats> run_trials(const ExperimentConfig& cfg, unsigned workers) {
    cfg.validate();
    const BalanceSheet bs(cfg.L, cfg.C);
    std::vector<TrialStats> all;
    all.reserve(cfg.n_list.size());

    for (Vertex n : cfg.n_list) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<TrialOutcome> outcomes(cfg.trials);
        parallel_for(cfg.trials, workers,
                     [&](std::uint64_t i) { outcomes[i] = run_one_trial(cfg, n, static_cast<std::uint32_t>(i)); });

        TrialStats s;
        s.n = n;
        s.trials = cfg.trials;
        s.rho_out = rho_out(cfg.lambda, bs.d_star());
        double sum_terminal = 0.0, sum_reach = 0.0, sum_bound = 0.0;
        for (const TrialOutcome& o : outcomes) {
            s.systemic_count += o.systemic ? 1 : 0;
            s.multi_hit_trials += o.multi_hit ? 1 : 0;
            if (!o.multi_hit) {
                s.no_multi_hit_trials += 1;
                s.equality_violations += o.no_multi_hit_equality_violated ? 1 : 0;
            }
            sum_terminal += static_cast<double>(o.terminal_size);
            sum_reach += static_cast<double>(o.reach_size);
            sum_bound += o.bound;
            s.max_terminal = std::max(s.max_terminal, o.terminal_size);
            s.max_reach = std::max(s.max_reach, o.reach_size);
        }
        s.p_hat = static_cast<double>(s.systemic_count) / cfg.trials;
        const Interval ci = wilson_interval(s.systemic_count, cfg.trials);
        s.ci_lower = ci.lower;
        s.ci_upper = ci.upper;
        s.mean_terminal = sum_terminal / cfg.trials;
        s.mean_reach = sum_reach / cfg.trials;
        s.multi_hit_trial_frac = static_cast<double>(s.multi_hit_trials) / cfg.trials;
        s.mean_multi_hit_bound = sum_bound / cfg.trials;
        s.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all.push_back(std::move(s));
    }
    return all;
}

ReachScalingReport reach_scaling_experiment(const ExperimentConfig& cfg, unsigned workers) {
    cfg.validate();
    const BalanceSheet bs(cfg.L, cfg.C);
    const double rho = rho_out(cfg.lambda, bs.d_star());
    if (rho >= 1.0) {
        throw std::invalid_argument(
            "reach_scaling_experiment: supercritical parameters (rho_out = " +
            format_double(rho) + " >= 1); the polylog bound only applies below criticality");
    }

    ReachScalingReport report;
    for (Vertex n : cfg.n_list) {
        struct Sizes {
            std::uint64_t reach = 0;
            std::uint64_t terminal = 0;
        };
        std::vector<Sizes> sizes(cfg.trials);
        parallel_for(cfg.trials, workers, [&](std::uint64_t i) {
            const TrialOutcome o = run_one_trial(cfg, n, static_cast<std::uint32_t>(i));
            sizes[i] = {o.reach_size, o.terminal_size};
        });
        ReachScalingRow row;
        row.n = n;
        row.k_n = shock_size(n, cfg.c_shock);
        for (const Sizes& s : sizes) {
            row.max_reach = std::max(row.max_reach, s.reach);
            row.max_terminal = std::max(row.max_terminal, s.terminal);
        }
        const double ln_n = std::log(static_cast<double>(n));
        row.log_n_squared = ln_n * ln_n;
        row.ratio = static_cast<double>(row.max_reach) / row.log_n_squared;
        report.rows.push_back(row);
    }

    double sxy = 0.0, sxx = 0.0;
    for (const auto& row : report.rows) {
        sxy += row.log_n_squared * static_cast<double>(row.max_reach);
        sxx += row.log_n_squared * row.log_n_squared;
    }
    report.m_hat = sxx > 0.0 ? sxy / sxx : 0.0;
    for (const auto& row : report.rows) {
        report.residuals.push_back(static_cast<double>(row.max_reach) -
                                   report.m_hat * row.log_n_squared);
    }
    return report;
}

std::vector<BowtieSeedStats> bowtie_experiment(const ExperimentConfig& cfg, unsigned workers) {
    cfg.validate();
    const BalanceSheet bs(cfg.L, cfg.C);
    std::vector<BowtieSeedStats> all;
    for (Vertex n : cfg.n_list) {
        struct Fracs {
            double in = 0.0, out = 0.0, scc = 0.0;
            std::uint64_t scc_size = 0;
        };
        std::vector<Fracs> fracs(cfg.trials);
        parallel_for(cfg.trials, workers, [&](std::uint64_t i) {
            auto rng = trial_engine(cfg.master_seed, n, i, Stream::graph);
            const DiGraph g = gen_gnp_digraph(n, cfg.lambda, rng);
            const BowTie bt = bowtie_extract(build_single_hit(g, bs.d_star()));
            fracs[i] = {bt.in_frac, bt.out_frac, bt.scc_frac, bt.largest_scc.size()};
        });

        std::vector<double> in_v, out_v, scc_v;
        BowtieSeedStats s;
        s.n = n;
        s.seeds = cfg.trials;
        for (const Fracs& f : fracs) {
            in_v.push_back(f.in);
            out_v.push_back(f.out);
            scc_v.push_back(f.scc);
            s.max_scc_size = std::max(s.max_scc_size, f.scc_size);
        }
        s.mean_in_frac = sample_mean(in_v);
        s.mean_out_frac = sample_mean(out_v);
        s.mean_scc_frac = sample_mean(scc_v);
        if (cfg.trials >= 2) {
            s.sd_in_frac = sample_stddev(in_v);
            s.sd_out_frac = sample_stddev(out_v);
            s.sd_scc_frac = sample_stddev(scc_v);
        }
        all.push_back(s);
    }
    return all;
}

IdentificationReport identification_experiment(const ExperimentConfig& cfg,
                                               std::optional<std::uint64_t> d_star_sampled_override,
                                               unsigned workers) {
    cfg.validate();
    const Vertex n = cfg.n_list.front();
    const BalanceSheet bs(cfg.L, cfg.C);

    IdentificationReport report;
    report.n = n;
    report.lambda = cfg.lambda;
    report.d_star_truncated = bs.d_star();
    report.d_star_sampled = d_star_sampled_override.value_or(bs.d_star());
    report.graphs_per_arm = cfg.trials;

    const std::uint64_t bins =
        std::max(report.d_star_truncated, report.d_star_sampled) + 1;
    const TruncatedOutdegreeLaw law(n, cfg.lambda, report.d_star_sampled);

    struct ArmSample {
        std::vector<std::uint64_t> degree_counts;
        double reach = 0.0;
    };
    std::vector<ArmSample> truncated(cfg.trials), sampled(cfg.trials);

    // Arm indices share one stream space: truncated draws use trial i,
    // sampled draws use trial graphs_per_arm + i.
    parallel_for(2ull * cfg.trials, workers, [&](std::uint64_t idx) {
        const bool second_arm = idx >= cfg.trials;
        auto graph_rng = trial_engine(cfg.master_seed, n, idx, Stream::graph);
        const DiGraph g = second_arm
                              ? gen_iid_outdegree_digraph(n, law.sampler(), graph_rng)
                              : build_single_hit(gen_gnp_digraph(n, cfg.lambda, graph_rng),
                                                 report.d_star_truncated);
        ArmSample sample;
        sample.degree_counts.assign(bins, 0);
        for (Vertex v = 0; v < n; ++v) {
            const Vertex d = g.out_degree(v);
            sample.degree_counts[std::min<std::uint64_t>(d, bins - 1)] += 1;
        }
        auto shock_rng = trial_engine(cfg.master_seed, n, idx, Stream::shock);
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        const Vertex source = pick(shock_rng);
        sample.reach = static_cast<double>(forward_reach(g, std::vector<Vertex>{source}).size());
        (second_arm ? sampled : truncated)[idx % cfg.trials] = std::move(sample);
    });

    std::vector<std::uint64_t> counts_a(bins, 0), counts_b(bins, 0);
    std::vector<double> reach_a, reach_b;
    for (std::uint32_t i = 0; i < cfg.trials; ++i) {
        for (std::uint64_t k = 0; k < bins; ++k) {
            counts_a[k] += truncated[i].degree_counts[k];
            counts_b[k] += sampled[i].degree_counts[k];
        }
        reach_a.push_back(truncated[i].reach);
        reach_b.push_back(sampled[i].reach);
    }
    report.degree_test = chi2_two_sample(counts_a, counts_b);
    report.reach_test = ks_two_sample(reach_a, reach_b);
    report.pass = report.degree_test.p_value >= 0.01 && report.reach_test.p_value >= 0.01;
    return report;
}

std::string IdentificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["lambda"] = lambda;
    j["d_star_truncated"] = d_star_truncated;
    j["d_star_sampled"] = d_star_sampled;
    j["graphs_per_arm"] = graphs_per_arm;
    j["degree_chi2"] = degree_test.statistic;
    j["degree_dof"] = degree_test.dof;
    j["degree_p"] = degree_test.p_value;
    j["reach_ks_d"] = reach_test.statistic;
    j["reach_ks_p"] = reach_test.p_value;
    j["pass"] = pass;
    return j.dump(2) + "\n";
}

NonmonoReport nonmono_demo(const Rational& C, const Rational& L) {
    const BalanceSheet bs(L, C);
    const DiGraph before = DiGraph::from_edges(3, {{0, 1}});
    const std::vector<Vertex> shock{0};

    NonmonoReport report;
    report.trace_before = run_cascade(before, bs, shock);
    report.size_before = report.trace_before.terminal_size();

    const DiGraph after = before.with_edge_added(0, 2);
    report.trace_after = run_cascade(after, bs, shock);
    report.size_after = report.trace_after.terminal_size();
    return report;
}

std::string sweep_csv_header() {
    return "n,lambda,C,c_shock,epsilon,trials,systemic_count,p_hat,ci_lo,ci_hi,mean_Dinf,"
           "max_Dinf,mean_reach,max_reach,multi_hit_trial_frac,rho_out,seed";
}

std::string sweep_csv_row(const ExperimentConfig& cfg, const TrialStats& stats) {
    std::ostringstream row;
    row << stats.n << ',' << format_param(cfg.lambda) << ',' << to_string(cfg.C) << ','
        << format_param(cfg.c_shock) << ',' << format_param(cfg.epsilon) << ',' << stats.trials
        << ',' << stats.systemic_count << ',' << format_double(stats.p_hat) << ','
        << format_double(stats.ci_lower) << ',' << format_double(stats.ci_upper) << ','
        << format_double(stats.mean_terminal) << ',' << stats.max_terminal << ','
        << format_double(stats.mean_reach) << ',' << stats.max_reach << ','
        << format_double(stats.multi_hit_trial_frac) << ',' << format_double(stats.rho_out)
        << ',' << cfg.master_seed;
    return row.str();
}

void run_sweep_to_csv(const ExperimentConfig& cfg, const std::string& out_path,
                      unsigned workers) {
    cfg.validate();

    // Resume support: a configuration row already present in the output is
    // not recomputed. Matching is on the experiment identity columns.
    std::vector<std::string> existing;
    {
        std::ifstream in(out_path, std::ios::binary);
        std::string line;
        while (in && std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) existing.push_back(line);
        }
    }
    auto identity_of = [](const std::string& row) {
        // (n, lambda, C, c_shock, epsilon, trials, seed) = fields 0-5 and 16.
        std::vector<std::string> fields;
        std::stringstream ss(row);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 17) return std::string{};
        return fields[0] + ',' + fields[1] + ',' + fields[2] + ',' + fields[3] + ',' +
               fields[4] + ',' + fields[5] + ',' + fields[16];
    };
    std::vector<std::string> done;
    for (const auto& row : existing) done.push_back(identity_of(row));

    std::vector<Vertex> pending;
    for (Vertex n : cfg.n_list) {
        ExperimentConfig probe = cfg;
        probe.n_list = {n};
        TrialStats placeholder;
        placeholder.n = n;
        placeholder.trials = cfg.trials;
        const std::string identity = identity_of(sweep_csv_row(probe, placeholder));
        if (std::find(done.begin(), done.end(), identity) == done.end()) pending.push_back(n);
    }

    const bool fresh = existing.empty();
    std::ofstream out(out_path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for appending");
    if (fresh) out << sweep_csv_header() << '\n';

    for (Vertex n : pending) {
        ExperimentConfig one = cfg;
        one.n_list = {n};
        const auto stats = run_trials(one, workers);
        out << sweep_csv_row(one, stats.front()) << '\n';
        out.flush();
    }
}

} // namespace contagion
