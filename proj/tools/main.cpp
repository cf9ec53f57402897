// contagionlab CLI: graph generation, single cascades, Monte Carlo sweeps,
// bow-tie summaries, branching diagnostics, and the small-instance oracle
// suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "contagion/analytics.hpp"
#include "contagion/balance_sheet.hpp"
#include "contagion/bowtie.hpp"
#include "contagion/cascade.hpp"
#include "contagion/digraph.hpp"
#include "contagion/harness.hpp"
#include "contagion/oracle.hpp"
#include "contagion/rng.hpp"
#include "contagion/single_hit.hpp"

namespace {

using namespace contagion;

std::vector<Vertex> parse_id_list(const std::string& text) {
    std::vector<Vertex> ids;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string token = text.substr(pos, next - pos);
        if (token.empty()) throw std::invalid_argument("empty id in shock list");
        ids.push_back(static_cast<Vertex>(std::stoul(token)));
        pos = next + 1;
    }
    if (ids.empty()) throw std::invalid_argument("shock list is empty");
    return ids;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

int run_generate(Vertex n, double lambda, std::uint64_t seed, const std::string& out_path) {
    auto rng = make_engine(seed, n, 0, static_cast<std::uint64_t>(Stream::graph));
    const DiGraph g = gen_gnp_digraph(n, lambda, rng);
    g.save_edge_csv(out_path);
    std::cout << "wrote " << out_path << ": n=" << n << " edges=" << g.edge_count() << "\n";
    return 0;
}

int run_cascade_cmd(const std::string& graph_path, Vertex n_hint, const std::string& c_text,
                    const std::string& l_text, const std::string& shock_text,
                    std::optional<double> shock_c, std::uint64_t seed,
                    const std::string& trace_path) {
    const DiGraph g = DiGraph::load_edge_csv(graph_path, n_hint);
    const BalanceSheet bs(parse_rational(l_text), parse_rational(c_text));

    std::vector<Vertex> shock;
    if (shock_c) {
        auto rng = make_engine(seed, g.vertex_count(), 0, static_cast<std::uint64_t>(Stream::shock));
        shock = sample_vertex_subset(g.vertex_count(), shock_size(g.vertex_count(), *shock_c), rng);
    } else {
        shock = parse_id_list(shock_text);
    }

    const CascadeTrace trace = run_cascade(g, bs, shock);
    if (!trace_path.empty()) write_file(trace_path, trace_to_json(trace));
    std::cout << "n=" << g.vertex_count() << " shock=" << trace.shock.size()
              << " rounds=" << trace.rounds.size() << " terminal=" << trace.terminal_size()
              << " multi_hit=" << trace.multi_hit_defaults.size()
              << " round_double_hits=" << trace.round_double_hit_count << "\n";
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_path, unsigned threads) {
    const ExperimentConfig cfg = config_from_json_file(config_path);
    switch (cfg.mode) {
        case ExperimentMode::cascade:
            run_sweep_to_csv(cfg, out_path, threads);
            std::cout << "sweep complete: " << out_path << "\n";
            return 0;
        case ExperimentMode::reach_scaling: {
            const auto report = reach_scaling_experiment(cfg, threads);
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + out_path);
            out << "n,k_n,max_reach,max_Dinf,ln_n_sq,ratio,m_hat,residual\n";
            char buf[160];
            for (std::size_t i = 0; i < report.rows.size(); ++i) {
                const auto& r = report.rows[i];
                std::snprintf(buf, sizeof buf, "%u,%u,%llu,%llu,%.6f,%.6f,%.6f,%.6f\n", r.n,
                              r.k_n, static_cast<unsigned long long>(r.max_reach),
                              static_cast<unsigned long long>(r.max_terminal), r.log_n_squared,
                              r.ratio, report.m_hat, report.residuals[i]);
                out << buf;
            }
            std::cout << "reach scaling complete: m_hat=" << report.m_hat << "\n";
            return 0;
        }
        case ExperimentMode::bowtie: {
            const auto stats = bowtie_experiment(cfg, threads);
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + out_path);
            out << "n,seeds,mean_in_frac,mean_out_frac,mean_scc_frac,sd_in_frac,sd_out_frac,"
                   "sd_scc_frac,max_scc_size\n";
            char buf[200];
            for (const auto& s : stats) {
                std::snprintf(buf, sizeof buf, "%u,%u,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%llu\n", s.n,
                              s.seeds, s.mean_in_frac, s.mean_out_frac, s.mean_scc_frac,
                              s.sd_in_frac, s.sd_out_frac, s.sd_scc_frac,
                              static_cast<unsigned long long>(s.max_scc_size));
                out << buf;
            }
            std::cout << "bowtie sweep complete: " << out_path << "\n";
            return 0;
        }
        case ExperimentMode::identification: {
            const auto report = identification_experiment(cfg, {}, threads);
            write_file(out_path, report.to_json());
            std::cout << "identification " << (report.pass ? "PASS" : "FAIL")
                      << ": degree_p=" << report.degree_test.p_value
                      << " reach_p=" << report.reach_test.p_value << "\n";
            return report.pass ? 0 : 1;
        }
        case ExperimentMode::nonmono_demo: {
            const auto report = nonmono_demo(cfg.C, cfg.L);
            nlohmann::ordered_json j;
            j["size_before"] = report.size_before;
            j["size_after"] = report.size_after;
            j["trace_before"] = nlohmann::ordered_json::parse(trace_to_json(report.trace_before));
            j["trace_after"] = nlohmann::ordered_json::parse(trace_to_json(report.trace_after));
            write_file(out_path, j.dump(2) + "\n");
            std::cout << "nonmono: |D_inf| " << report.size_before << " -> " << report.size_after
                      << "\n";
            return 0;
        }
    }
    return 1;
}

int run_bowtie(const std::string& graph_path, Vertex n_hint, const std::string& c_text,
               const std::string& out_path) {
    const DiGraph g = DiGraph::load_edge_csv(graph_path, n_hint);
    const BalanceSheet bs(1, parse_rational(c_text));
    const BowTie bt = bowtie_extract(build_single_hit(g, bs.d_star()));
    const std::string json = bowtie_to_json(bt, g.vertex_count());
    if (!out_path.empty()) write_file(out_path, json);
    std::cout << json;
    return 0;
}

int run_rho(double lambda, const std::string& c_text) {
    const BalanceSheet bs(1, parse_rational(c_text));
    const double rho = rho_out(lambda, bs.d_star());
    std::printf("d_star = %llu\n", static_cast<unsigned long long>(bs.d_star()));
    std::printf("rho_out = %.6f\n", rho);
    std::printf("regime = %s\n", rho < 1.0 ? "subcritical" : (rho > 1.0 ? "supercritical" : "critical"));
    return 0;
}

// Small-instance oracle suite. Each property prints one pass/fail line.
int run_validate(std::uint32_t instances, std::uint64_t seed) {
    const double lambdas[] = {0.5, 2.0, 4.0};
    const Rational cs[] = {Rational(3, 2), Rational(5, 2), Rational(4)};

    struct Property {
        const char* name;
        std::uint32_t failures = 0;
        std::uint32_t checks = 0;
    };
    Property props[] = {
        {"cascade terminal set matches exhaustive minimal fixed point"},
        {"trace satisfies the two-sided fixed-point conditions"},
        {"terminal set is independent of update order"},
        {"single-hit reachability is contained in the terminal set"},
        {"scc labels match transitive-closure components"},
    };

    for (std::uint32_t i = 0; i < instances; ++i) {
        auto rng = make_engine(seed, i, 0, static_cast<std::uint64_t>(Stream::aux));
        std::uniform_int_distribution<Vertex> n_dist(2, 12);
        const Vertex n = n_dist(rng);
        std::vector<double> valid_lambdas;
        for (double l : lambdas) {
            if (l < n) valid_lambdas.push_back(l);
        }
        const double lambda = valid_lambdas[rng() % valid_lambdas.size()];
        const Rational C = cs[rng() % 3];
        const BalanceSheet bs(1, C);
        const DiGraph g = gen_gnp_digraph(n, lambda, rng);
        std::uniform_int_distribution<Vertex> k_dist(1, n);
        const auto shock = sample_vertex_subset(n, k_dist(rng), rng);

        const CascadeTrace trace = run_cascade(g, bs, shock);
        props[0].checks++;
        if (trace.terminal_set != brute_force_terminal_set(g, bs, shock)) props[0].failures++;
        props[1].checks++;
        if (!verify_fixed_point(g, bs, trace)) props[1].failures++;
        props[2].checks++;
        if (trace.terminal_set != async_random_order_terminal(g, bs, shock, rng)) {
            props[2].failures++;
        }
        props[3].checks++;
        auto reach = forward_reach(build_single_hit(g, bs.d_star()), shock);
        std::sort(reach.begin(), reach.end());
        if (!std::includes(trace.terminal_set.begin(), trace.terminal_set.end(), reach.begin(),
                           reach.end())) {
            props[3].failures++;
        }
        props[4].checks++;
        const auto tarjan = scc_decompose(g);
        const auto brute = brute_force_scc_labels(g);
        bool scc_ok = true;
        for (Vertex u = 0; u < n && scc_ok; ++u) {
            for (Vertex v = u + 1; v < n && scc_ok; ++v) {
                scc_ok = (tarjan.component_of[u] == tarjan.component_of[v]) ==
                         (brute[u] == brute[v]);
            }
        }
        if (!scc_ok) props[4].failures++;
    }

    bool all_pass = true;
    for (const Property& p : props) {
        const bool pass = p.failures == 0;
        all_pass = all_pass && pass;
        std::printf("[%s] %s (%u/%u)\n", pass ? "PASS" : "FAIL", p.name, p.checks - p.failures,
                    p.checks);
    }

    // The non-monotonicity witness, checked against hand-enumerated dynamics.
    const auto demo = nonmono_demo();
    const bool witness = demo.size_before == 2 && demo.size_after == 1;
    all_pass = all_pass && witness;
    std::printf("[%s] adding an out-edge shrinks the cascade at C=5/2 (%llu -> %llu)\n",
                witness ? "PASS" : "FAIL", static_cast<unsigned long long>(demo.size_before),
                static_cast<unsigned long long>(demo.size_after));
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"balance-sheet contagion laboratory on sparse random digraphs"};
    app.require_subcommand(1);

    // generate
    Vertex gen_n = 0;
    double gen_lambda = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "sample G(n, lambda/n) to an edge CSV");
    generate->add_option("--n", gen_n, "vertex count")->required();
    generate->add_option("--lambda", gen_lambda, "mean out-degree parameter")->required();
    generate->add_option("--seed", gen_seed, "RNG seed")->required();
    generate->add_option("--out", gen_out, "output edge CSV path")->required();

    // cascade
    std::string cas_graph, cas_c, cas_l = "1", cas_shock, cas_trace;
    Vertex cas_n = 0;
    double cas_shock_c = 0.0;
    std::uint64_t cas_seed = 0;
    auto* cascade_cmd = app.add_subcommand("cascade", "run one default cascade on a saved graph");
    cascade_cmd->add_option("--graph", cas_graph, "edge CSV path")->required();
    cascade_cmd->add_option("--n", cas_n, "vertex count override (isolated tail vertices)");
    cascade_cmd->add_option("--C", cas_c, "leverage, p/q or decimal")->required();
    cascade_cmd->add_option("--L", cas_l, "liabilities, p/q or decimal");
    auto* shock_opt = cascade_cmd->add_option("--shock", cas_shock, "comma-separated vertex ids");
    auto* shock_c_opt =
        cascade_cmd->add_option("--shock-c", cas_shock_c, "draw ceil(c ln n) uniform vertices");
    cascade_cmd->add_option("--seed", cas_seed, "RNG seed for --shock-c");
    cascade_cmd->add_option("--trace", cas_trace, "trace JSON output path");
    shock_opt->excludes(shock_c_opt);

    // sweep
    std::string sweep_config, sweep_out;
    unsigned sweep_threads = 1;
    auto* sweep = app.add_subcommand("sweep", "run the experiment described by a JSON config");
    sweep->add_option("--config", sweep_config, "experiment config JSON")->required();
    sweep->add_option("--out", sweep_out, "output path")->required();
    sweep->add_option("--threads", sweep_threads, "worker threads (results are identical)");

    // bowtie
    std::string bow_graph, bow_c, bow_out;
    Vertex bow_n = 0;
    auto* bowtie_cmd = app.add_subcommand("bowtie", "bow-tie summary of the truncated graph");
    bowtie_cmd->add_option("--graph", bow_graph, "edge CSV path")->required();
    bowtie_cmd->add_option("--n", bow_n, "vertex count override");
    bowtie_cmd->add_option("--C", bow_c, "leverage, p/q or decimal")->required();
    bowtie_cmd->add_option("--out", bow_out, "JSON output path");

    // rho
    double rho_lambda = 0.0;
    std::string rho_c;
    auto* rho_cmd = app.add_subcommand("rho", "print d_star, rho_out, and the regime");
    rho_cmd->add_option("--lambda", rho_lambda, "mean out-degree parameter")->required();
    rho_cmd->add_option("--C", rho_c, "leverage, p/q or decimal")->required();

    // validate
    std::uint32_t val_instances = 1000;
    std::uint64_t val_seed = 20240901;
    auto* validate = app.add_subcommand("validate", "small-instance oracle suite");
    validate->add_option("--instances", val_instances, "number of random instances");
    validate->add_option("--seed", val_seed, "suite seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return run_generate(gen_n, gen_lambda, gen_seed, gen_out);
        if (cascade_cmd->parsed()) {
            if (shock_opt->count() == 0 && shock_c_opt->count() == 0) {
                throw std::invalid_argument("cascade: provide --shock or --shock-c");
            }
            std::optional<double> shock_c;
            if (shock_c_opt->count() > 0) shock_c = cas_shock_c;
            return run_cascade_cmd(cas_graph, cas_n, cas_c, cas_l, cas_shock, shock_c, cas_seed,
                                   cas_trace);
        }
        if (sweep->parsed()) return run_sweep(sweep_config, sweep_out, sweep_threads);
        if (bowtie_cmd->parsed()) return run_bowtie(bow_graph, bow_n, bow_c, bow_out);
        if (rho_cmd->parsed()) return run_rho(rho_lambda, rho_c);
        if (validate->parsed()) return run_validate(val_instances, val_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
