#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "contagion/analytics.hpp"
#include "contagion/balance_sheet.hpp"
#include "contagion/bowtie.hpp"
#include "contagion/cascade.hpp"
#include "contagion/digraph.hpp"
#include "contagion/harness.hpp"
#include "contagion/oracle.hpp"
#include "contagion/rng.hpp"
#include "contagion/single_hit.hpp"

namespace py = pybind11;
using namespace contagion;

namespace {

Rational rational_arg(const std::string& text) { return parse_rational(text); }

std::mt19937_64 engine_from_seed(std::uint64_t seed) {
    return make_engine(seed, 0, 0, static_cast<std::uint64_t>(Stream::aux));
}

} // namespace

PYBIND11_MODULE(_contagionlab, m) {
    m.doc() = "Balance-sheet contagion laboratory on sparse random digraphs";

    py::class_<DiGraph>(m, "DiGraph")
        .def_static(
            "from_edges",
            [](Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                return DiGraph::from_edges(n, edges);
            },
            py::arg("n"), py::arg("edges"))
        .def_static("load_edge_csv", &DiGraph::load_edge_csv, py::arg("path"),
                    py::arg("vertex_count_hint") = 0)
        .def("save_edge_csv", &DiGraph::save_edge_csv, py::arg("path"))
        .def_property_readonly("n", &DiGraph::vertex_count)
        .def_property_readonly("edge_count", &DiGraph::edge_count)
        .def("out_degree", &DiGraph::out_degree, py::arg("v"))
        .def(
            "out_neighbors",
            [](const DiGraph& g, Vertex v) {
                auto row = g.out_neighbors(v);
                return std::vector<Vertex>(row.begin(), row.end());
            },
            py::arg("v"))
        .def("has_edge", &DiGraph::has_edge, py::arg("u"), py::arg("v"))
        .def("transpose", &DiGraph::transpose)
        .def("with_edge_added", &DiGraph::with_edge_added, py::arg("u"), py::arg("v"))
        .def("__eq__", [](const DiGraph& a, const DiGraph& b) { return a == b; })
        .def("__repr__", [](const DiGraph& g) {
            return "DiGraph(n=" + std::to_string(g.vertex_count()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    m.def(
        "gen_gnp_digraph",
        [](Vertex n, double lambda, std::uint64_t seed) {
            auto rng = make_engine(seed, n, 0, static_cast<std::uint64_t>(Stream::graph));
            return gen_gnp_digraph(n, lambda, rng);
        },
        py::arg("n"), py::arg("lam"), py::arg("seed"));
    m.def(
        "gen_iid_outdegree_digraph",
        [](Vertex n, const TruncatedOutdegreeLaw& law, std::uint64_t seed) {
            auto rng = make_engine(seed, n, 0, static_cast<std::uint64_t>(Stream::graph));
            return gen_iid_outdegree_digraph(n, law.sampler(), rng);
        },
        py::arg("n"), py::arg("law"), py::arg("seed"));
    m.def(
        "gen_constant_outdegree_digraph",
        [](Vertex n, Vertex degree, std::uint64_t seed) {
            auto rng = make_engine(seed, n, 0, static_cast<std::uint64_t>(Stream::graph));
            return gen_iid_outdegree_digraph(
                n, [degree](std::mt19937_64&) { return degree; }, rng);
        },
        py::arg("n"), py::arg("degree"), py::arg("seed"));
    m.def("zero_outdegree_fraction", &zero_outdegree_fraction, py::arg("g"));

    py::class_<BalanceSheet>(m, "BalanceSheet")
        .def(py::init([](const std::string& L, const std::string& C) {
                 return BalanceSheet(rational_arg(L), rational_arg(C));
             }),
             py::arg("L") = "1", py::arg("C") = "2")
        .def_property_readonly("liabilities",
                               [](const BalanceSheet& b) { return to_string(b.liabilities()); })
        .def_property_readonly("leverage",
                               [](const BalanceSheet& b) { return to_string(b.leverage()); })
        .def_property_readonly("equity", [](const BalanceSheet& b) { return to_string(b.equity()); })
        .def_property_readonly("equity_float",
                               [](const BalanceSheet& b) { return to_double(b.equity()); })
        .def_property_readonly("d_star", &BalanceSheet::d_star)
        .def("edge_exposure",
             [](const BalanceSheet& b, std::uint64_t d) { return to_string(b.edge_exposure(d)); })
        .def("is_active", &BalanceSheet::is_active, py::arg("d_out"))
        .def("__repr__", [](const BalanceSheet& b) {
            return "BalanceSheet(L=" + to_string(b.liabilities()) +
                   ", C=" + to_string(b.leverage()) + ", E=" + to_string(b.equity()) +
                   ", d_star=" + std::to_string(b.d_star()) + ")";
        });

    m.def(
        "equity",
        [](const std::string& L, const std::string& C) {
            return to_string(equity(rational_arg(L), rational_arg(C)));
        },
        py::arg("L"), py::arg("C"));
    m.def(
        "d_star",
        [](const std::string& L, const std::string& C) {
            return d_star(rational_arg(L), rational_arg(C));
        },
        py::arg("L"), py::arg("C"));
    m.def(
        "edge_exposure",
        [](const std::string& L, std::uint64_t d) {
            return to_string(edge_exposure(rational_arg(L), d));
        },
        py::arg("L"), py::arg("d_out"));

    py::class_<CascadeTrace>(m, "CascadeTrace")
        .def_readonly("n", &CascadeTrace::n)
        .def_readonly("shock", &CascadeTrace::shock)
        .def_readonly("rounds", &CascadeTrace::rounds)
        .def_readonly("terminal_set", &CascadeTrace::terminal_set)
        .def_readonly("multi_hit_defaults", &CascadeTrace::multi_hit_defaults)
        .def_readonly("round_double_hit_count", &CascadeTrace::round_double_hit_count)
        .def_property_readonly("terminal_size", &CascadeTrace::terminal_size)
        .def("defaulted", &CascadeTrace::defaulted, py::arg("v"))
        .def("hit_profile", &CascadeTrace::hit_profile, py::arg("v"))
        .def("to_json", [](const CascadeTrace& t) { return trace_to_json(t); })
        .def("__repr__", [](const CascadeTrace& t) {
            return "CascadeTrace(shock=" + std::to_string(t.shock.size()) +
                   ", terminal=" + std::to_string(t.terminal_size()) + ")";
        });

    m.def(
        "run_cascade",
        [](const DiGraph& g, const BalanceSheet& bs, const std::vector<Vertex>& shock) {
            return run_cascade(g, bs, shock);
        },
        py::arg("g"), py::arg("bs"), py::arg("shock"));
    m.def(
        "classify_hits",
        [](const CascadeTrace& t, const DiGraph& g, const BalanceSheet& bs) {
            const HitClassification h = classify_hits(t, g, bs);
            return py::make_tuple(h.single_hit, h.multi_hit, h.round_double_hit_count);
        },
        py::arg("trace"), py::arg("g"), py::arg("bs"));
    m.def("is_systemic", &is_systemic, py::arg("trace"), py::arg("epsilon"), py::arg("n"));

    m.def("build_single_hit", &build_single_hit, py::arg("g"), py::arg("d_star"));
    m.def(
        "forward_reach",
        [](const DiGraph& g, const std::vector<Vertex>& sources) {
            return forward_reach(g, sources);
        },
        py::arg("g"), py::arg("sources"));

    py::class_<TruncatedOutdegreeLaw>(m, "TruncatedOutdegreeLaw")
        .def(py::init<Vertex, double, std::uint64_t>(), py::arg("n"), py::arg("lam"),
             py::arg("d_star"))
        .def_property_readonly("n", &TruncatedOutdegreeLaw::n)
        .def_property_readonly("lam", &TruncatedOutdegreeLaw::lambda)
        .def_property_readonly("d_star", &TruncatedOutdegreeLaw::d_star)
        .def("pmf", &TruncatedOutdegreeLaw::pmf, py::arg("k"))
        .def("mean", &TruncatedOutdegreeLaw::mean)
        .def(
            "sample",
            [](const TruncatedOutdegreeLaw& law, std::uint64_t seed, std::size_t count) {
                auto rng = engine_from_seed(seed);
                std::vector<Vertex> out(count);
                for (auto& x : out) x = law.sample(rng);
                return out;
            },
            py::arg("seed"), py::arg("count") = 1);
    m.def("truncated_outdegree_sampler", &truncated_outdegree_sampler, py::arg("n"),
          py::arg("lam"), py::arg("d_star"));

    m.def("poisson_cdf", &poisson_cdf, py::arg("lam"), py::arg("k"));
    m.def("rho_out", &rho_out, py::arg("lam"), py::arg("d_star"));
    m.def("shock_size", &shock_size, py::arg("n"), py::arg("c"));
    m.def(
        "multi_hit_bound",
        [](double lambda, const std::vector<std::uint64_t>& delta_sizes, std::uint64_t n) {
            return multi_hit_bound(lambda, delta_sizes, n);
        },
        py::arg("lam"), py::arg("delta_sizes"), py::arg("n"));
    m.def(
        "gw_total_progeny",
        [](const TruncatedOutdegreeLaw& law, std::uint64_t initial, std::uint64_t cap,
           std::uint64_t seed) {
            auto rng = engine_from_seed(seed);
            return gw_total_progeny([&law](std::mt19937_64& r) { return std::uint64_t{law.sample(r)}; },
                                    initial, cap, rng);
        },
        py::arg("law"), py::arg("initial"), py::arg("cap"), py::arg("seed"));
    m.def(
        "gw_total_progeny_pmf",
        [](const std::vector<double>& pmf, std::uint64_t initial, std::uint64_t cap,
           std::uint64_t seed) {
            auto rng = engine_from_seed(seed);
            std::discrete_distribution<std::uint64_t> dist(pmf.begin(), pmf.end());
            return gw_total_progeny([&dist](std::mt19937_64& r) { return dist(r); }, initial, cap,
                                    rng);
        },
        py::arg("pmf"), py::arg("initial"), py::arg("cap"), py::arg("seed"));

    py::class_<SccDecomposition>(m, "SccDecomposition")
        .def_readonly("component_of", &SccDecomposition::component_of)
        .def_readonly("component_sizes", &SccDecomposition::component_sizes)
        .def_property_readonly("component_count", &SccDecomposition::component_count);
    m.def("scc_decompose", &scc_decompose, py::arg("g"));

    py::class_<BowTie>(m, "BowTie")
        .def_readonly("largest_scc", &BowTie::largest_scc)
        .def_readonly("in_set", &BowTie::in_set)
        .def_readonly("out_set", &BowTie::out_set)
        .def_readonly("in_frac", &BowTie::in_frac)
        .def_readonly("out_frac", &BowTie::out_frac)
        .def_readonly("scc_frac", &BowTie::scc_frac)
        .def("__repr__", [](const BowTie& bt) {
            return "BowTie(scc=" + std::to_string(bt.largest_scc.size()) +
                   ", in=" + std::to_string(bt.in_set.size()) +
                   ", out=" + std::to_string(bt.out_set.size()) + ")";
        });
    m.def("bowtie_extract", &bowtie_extract, py::arg("g"));
    m.def("bowtie_to_json", &bowtie_to_json, py::arg("bowtie"), py::arg("n"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readonly("n_list", &ExperimentConfig::n_list)
        .def_readonly("lambda_", &ExperimentConfig::lambda)
        .def_readonly("c_shock", &ExperimentConfig::c_shock)
        .def_readonly("epsilon", &ExperimentConfig::epsilon)
        .def_readonly("trials", &ExperimentConfig::trials)
        .def_readonly("master_seed", &ExperimentConfig::master_seed);
    m.def("config_from_json", &config_from_json_text, py::arg("text"));

    py::class_<TrialStats>(m, "TrialStats")
        .def_readonly("n", &TrialStats::n)
        .def_readonly("trials", &TrialStats::trials)
        .def_readonly("systemic_count", &TrialStats::systemic_count)
        .def_readonly("p_hat", &TrialStats::p_hat)
        .def_readonly("ci_lower", &TrialStats::ci_lower)
        .def_readonly("ci_upper", &TrialStats::ci_upper)
        .def_readonly("mean_terminal", &TrialStats::mean_terminal)
        .def_readonly("max_terminal", &TrialStats::max_terminal)
        .def_readonly("mean_reach", &TrialStats::mean_reach)
        .def_readonly("max_reach", &TrialStats::max_reach)
        .def_readonly("multi_hit_trials", &TrialStats::multi_hit_trials)
        .def_readonly("multi_hit_trial_frac", &TrialStats::multi_hit_trial_frac)
        .def_readonly("mean_multi_hit_bound", &TrialStats::mean_multi_hit_bound)
        .def_readonly("no_multi_hit_trials", &TrialStats::no_multi_hit_trials)
        .def_readonly("equality_violations", &TrialStats::equality_violations)
        .def_readonly("rho_out", &TrialStats::rho_out);
    m.def("run_trials", &run_trials, py::arg("config"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_sweep_to_csv", &run_sweep_to_csv, py::arg("config"), py::arg("out_path"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    py::class_<ReachScalingRow>(m, "ReachScalingRow")
        .def_readonly("n", &ReachScalingRow::n)
        .def_readonly("k_n", &ReachScalingRow::k_n)
        .def_readonly("max_reach", &ReachScalingRow::max_reach)
        .def_readonly("max_terminal", &ReachScalingRow::max_terminal)
        .def_readonly("log_n_squared", &ReachScalingRow::log_n_squared)
        .def_readonly("ratio", &ReachScalingRow::ratio);
    py::class_<ReachScalingReport>(m, "ReachScalingReport")
        .def_readonly("rows", &ReachScalingReport::rows)
        .def_readonly("m_hat", &ReachScalingReport::m_hat)
        .def_readonly("residuals", &ReachScalingReport::residuals);
    m.def("reach_scaling_experiment", &reach_scaling_experiment, py::arg("config"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    py::class_<BowtieSeedStats>(m, "BowtieSeedStats")
        .def_readonly("n", &BowtieSeedStats::n)
        .def_readonly("seeds", &BowtieSeedStats::seeds)
        .def_readonly("mean_in_frac", &BowtieSeedStats::mean_in_frac)
        .def_readonly("mean_out_frac", &BowtieSeedStats::mean_out_frac)
        .def_readonly("mean_scc_frac", &BowtieSeedStats::mean_scc_frac)
        .def_readonly("sd_in_frac", &BowtieSeedStats::sd_in_frac)
        .def_readonly("sd_out_frac", &BowtieSeedStats::sd_out_frac)
        .def_readonly("sd_scc_frac", &BowtieSeedStats::sd_scc_frac)
        .def_readonly("max_scc_size", &BowtieSeedStats::max_scc_size);
    m.def("bowtie_experiment", &bowtie_experiment, py::arg("config"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<IdentificationReport>(m, "IdentificationReport")
        .def_readonly("n", &IdentificationReport::n)
        .def_readonly("d_star_truncated", &IdentificationReport::d_star_truncated)
        .def_readonly("d_star_sampled", &IdentificationReport::d_star_sampled)
        .def_readonly("graphs_per_arm", &IdentificationReport::graphs_per_arm)
        .def_property_readonly("degree_p",
                               [](const IdentificationReport& r) { return r.degree_test.p_value; })
        .def_property_readonly("reach_p",
                               [](const IdentificationReport& r) { return r.reach_test.p_value; })
        .def_readonly("pass_", &IdentificationReport::pass)
        .def("to_json", &IdentificationReport::to_json);
    m.def(
        "identification_experiment",
        [](const ExperimentConfig& cfg, std::optional<std::uint64_t> override, unsigned workers) {
            return identification_experiment(cfg, override, workers);
        },
        py::arg("config"), py::arg("d_star_sampled_override") = std::nullopt,
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    m.def(
        "nonmono_demo",
        [](const std::string& C, const std::string& L) {
            const NonmonoReport r = nonmono_demo(rational_arg(C), rational_arg(L));
            return py::make_tuple(r.size_before, r.size_after);
        },
        py::arg("C") = "5/2", py::arg("L") = "1");

    m.def(
        "brute_force_terminal_set",
        [](const DiGraph& g, const BalanceSheet& bs, const std::vector<Vertex>& shock) {
            return brute_force_terminal_set(g, bs, shock);
        },
        py::arg("g"), py::arg("bs"), py::arg("shock"));
}
