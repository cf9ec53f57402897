#include "doctest.h"

#include <stdexcept>
#include <algorithm>
#include <numeric>

#include "contagion/cascade.hpp"
#include "contagion/oracle.hpp"
#include "contagion/rng.hpp"
#include "contagion/single_hit.hpp"

using namespace contagion;

namespace {

// Random small instance shared by the oracle-backed property tests.
struct Instance {
    DiGraph g;
    BalanceSheet bs;
    std::vector<Vertex> shock;
};

Instance random_instance(std::uint64_t seed, Vertex max_n = 12) {
    auto rng = make_engine(0xfeed, seed);
    std::uniform_int_distribution<Vertex> n_dist(2, max_n);
    const Vertex n = n_dist(rng);
    const double lambdas[] = {0.5, 2.0, 4.0};
    double lambda = lambdas[rng() % 3];
    while (lambda >= n) lambda = lambdas[rng() % 3];
    const Rational cs[] = {Rational(3, 2), Rational(5, 2), Rational(4)};
    const Rational C = cs[rng() % 3];
    const DiGraph g = gen_gnp_digraph(n, lambda, rng);
    std::uniform_int_distribution<Vertex> k_dist(1, n);
    auto shock = sample_vertex_subset(n, k_dist(rng), rng);
    return {g, BalanceSheet(1, C), shock};
}

} // namespace

TEST_CASE("single-hit chain stops where exposure halves") {
    // n=4, edges 0->1, 1->2, 1->3; C=5/2 so E=2/3 and d_star=1. The shocked
    // vertex sends its full liability to 1; vertex 1 splits across 2 and 3.
    const DiGraph g = DiGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
    const BalanceSheet bs(1, Rational(5, 2));
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0});

    CHECK(trace.terminal_set == std::vector<Vertex>{0, 1});
    REQUIRE(trace.rounds.size() == 1);
    CHECK(trace.rounds[0] == std::vector<Vertex>{1});
    CHECK(trace.multi_hit_defaults.empty());
    CHECK(trace.round_double_hit_count == 0);

    const auto hits = classify_hits(trace, g, bs);
    CHECK(hits.single_hit == std::vector<Vertex>{1});
    CHECK(hits.multi_hit.empty());
    CHECK(hits.round_double_hit_count == 0);
}

TEST_CASE("two inactive senders accumulate to a multi-hit default") {
    // C=4: E=1/3, d_star=3. u1=0 and u2=1 each have out-degree 4 (inactive),
    // both point at v=2 plus three private fillers. v collects 1/4 + 1/4.
    const DiGraph g = DiGraph::from_edges(9, {{0, 2}, {0, 3}, {0, 4}, {0, 5},
                                              {1, 2}, {1, 6}, {1, 7}, {1, 8}});
    const BalanceSheet bs(1, 4);
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0, 1});

    CHECK(trace.terminal_set == std::vector<Vertex>{0, 1, 2});
    REQUIRE(trace.rounds.size() == 1);
    CHECK(trace.rounds[0] == std::vector<Vertex>{2});
    CHECK(trace.multi_hit_defaults == std::vector<Vertex>{2});
    CHECK(trace.round_double_hit_count == 1); // both hits land in one round

    const auto hits = classify_hits(trace, g, bs);
    CHECK(hits.single_hit.empty());
    CHECK(hits.multi_hit == std::vector<Vertex>{2});
}

TEST_CASE("shocking everything terminates immediately") {
    const DiGraph g = DiGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    const BalanceSheet bs(1, 2);
    std::vector<Vertex> all(4);
    std::iota(all.begin(), all.end(), 0u);
    const CascadeTrace trace = run_cascade(g, bs, all);
    CHECK(trace.terminal_set == all);
    CHECK(trace.rounds.empty());
    CHECK(trace.multi_hit_defaults.empty());
    const auto hits = classify_hits(trace, g, bs);
    CHECK(hits.single_hit.empty());
    CHECK(hits.multi_hit.empty());
}

TEST_CASE("cross-round accumulation defaults without any round double hit") {
    // C=5/2: E=2/3. Vertex 3 receives 1/2 from the shocked 0 (degree 2) in
    // round 0 and the remaining 1/2 from 2 (degree 2) a round later; the
    // cumulative sum crosses 2/3 even though no single round hit it twice.
    const DiGraph g = DiGraph::from_edges(5, {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {2, 4}});
    const BalanceSheet bs(1, Rational(5, 2));
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0, 1});

    CHECK(trace.terminal_set == std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(trace.rounds.size() == 2);
    CHECK(trace.rounds[0] == std::vector<Vertex>{2});
    CHECK(trace.rounds[1] == std::vector<Vertex>{3});
    CHECK(trace.multi_hit_defaults == std::vector<Vertex>{3});
    CHECK(trace.round_double_hit_count == 0); // the two hits landed in different rounds
    CHECK(trace.terminal_set == brute_force_terminal_set(g, bs, std::vector<Vertex>{0, 1}));
}

TEST_CASE("cascade input validation") {
    const DiGraph g = DiGraph::from_edges(3, {{0, 1}});
    const BalanceSheet bs(1, 2);
    CHECK_THROWS_AS(run_cascade(g, bs, std::vector<Vertex>{}), std::invalid_argument);
    CHECK_THROWS_AS(run_cascade(g, bs, std::vector<Vertex>{3}), std::invalid_argument);
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0});
    const DiGraph other = DiGraph::from_edges(5, {{0, 1}});
    CHECK_THROWS_AS(classify_hits(trace, other, bs), std::invalid_argument);
}

TEST_CASE("is_systemic thresholds") {
    CascadeTrace trace;
    trace.n = 4;
    trace.terminal_set = {0, 1, 2, 3};
    CHECK(is_systemic(trace, 0.5, 4));
    CHECK_FALSE(is_systemic(trace, 0.9, 10));

    // Exact boundary is inclusive: |terminal| = 0.1 n.
    CascadeTrace boundary;
    boundary.terminal_set.resize(1000);
    CHECK(is_systemic(boundary, 0.1, 10000));
    boundary.terminal_set.resize(999);
    CHECK_FALSE(is_systemic(boundary, 0.1, 10000));

    CHECK_THROWS_AS(is_systemic(trace, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(is_systemic(trace, 1.0, 4), std::invalid_argument);
}

TEST_CASE("terminal set matches the exhaustive minimal fixed point") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = random_instance(seed);
        const CascadeTrace trace = run_cascade(inst.g, inst.bs, inst.shock);
        REQUIRE(trace.terminal_set == brute_force_terminal_set(inst.g, inst.bs, inst.shock));
        REQUIRE(verify_fixed_point(inst.g, inst.bs, trace));

        // Trace structure: rounds are disjoint, nonempty, within bounds, and
        // partition the terminal set together with the shock.
        REQUIRE(trace.rounds.size() <= inst.g.vertex_count());
        std::vector<Vertex> rebuilt = trace.shock;
        for (const auto& round : trace.rounds) {
            REQUIRE(!round.empty());
            rebuilt.insert(rebuilt.end(), round.begin(), round.end());
        }
        const std::size_t total = rebuilt.size();
        std::sort(rebuilt.begin(), rebuilt.end());
        rebuilt.erase(std::unique(rebuilt.begin(), rebuilt.end()), rebuilt.end());
        REQUIRE(rebuilt.size() == total); // pairwise disjoint
        REQUIRE(rebuilt == trace.terminal_set);
    }
}

TEST_CASE("terminal set is independent of update order") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = random_instance(seed + 1000, 20);
        const CascadeTrace trace = run_cascade(inst.g, inst.bs, inst.shock);
        auto rng = make_engine(0xabc, seed);
        for (int rep = 0; rep < 3; ++rep) {
            REQUIRE(trace.terminal_set ==
                    async_random_order_terminal(inst.g, inst.bs, inst.shock, rng));
        }
    }
}

TEST_CASE("single-hit reach is always contained in the terminal set") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Instance inst = random_instance(seed + 2000, 30);
        const CascadeTrace trace = run_cascade(inst.g, inst.bs, inst.shock);
        auto reach = forward_reach(build_single_hit(inst.g, inst.bs.d_star()), inst.shock);
        std::sort(reach.begin(), reach.end());
        REQUIRE(std::includes(trace.terminal_set.begin(), trace.terminal_set.end(),
                              reach.begin(), reach.end()));
    }
}

TEST_CASE("cascade outcomes are invariant under scaling the liabilities") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance inst = random_instance(seed + 3000, 16);
        const CascadeTrace base = run_cascade(inst.g, inst.bs, inst.shock);
        for (const Rational& scale : {Rational(17, 3), Rational(1, 4)}) {
            const BalanceSheet scaled(scale, inst.bs.leverage());
            const CascadeTrace other = run_cascade(inst.g, scaled, inst.shock);
            REQUIRE(base.terminal_set == other.terminal_set);
            REQUIRE(base.rounds == other.rounds);
            REQUIRE(base.multi_hit_defaults == other.multi_hit_defaults);
        }
    }
}

TEST_CASE("adding an out-edge can shrink the terminal set") {
    // The witness: u->v with shock {u} defaults v (w = L >= 2/3); adding
    // u->w halves the exposure below the threshold.
    const DiGraph before = DiGraph::from_edges(3, {{0, 1}});
    const DiGraph after = before.with_edge_added(0, 2);
    const std::vector<Vertex> shock{0};

    const BalanceSheet tight(1, Rational(5, 2));
    CHECK(run_cascade(before, tight, shock).terminal_size() == 2);
    CHECK(run_cascade(after, tight, shock).terminal_size() == 1);

    // With C=4 (E=1/3) the halved exposure still triggers, and now both
    // targets fall: the cascade grows instead.
    const BalanceSheet loose(1, 4);
    CHECK(run_cascade(before, loose, shock).terminal_size() == 2);
    CHECK(run_cascade(after, loose, shock).terminal_size() == 3);
    CHECK(run_cascade(after, loose, shock).terminal_set ==
          brute_force_terminal_set(after, loose, shock));

    // No contagion at all below C=2.
    const BalanceSheet inert(1, Rational(3, 2));
    CHECK(run_cascade(before, inert, shock).terminal_size() == 1);
    CHECK(run_cascade(after, inert, shock).terminal_size() == 1);
}

TEST_CASE("trace JSON has the stable schema") {
    const DiGraph g = DiGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
    const BalanceSheet bs(1, Rational(5, 2));
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0});
    CHECK(trace_to_json(trace) ==
          "{\n"
          "  \"shock\": [\n    0\n  ],\n"
          "  \"rounds\": [\n    [\n      1\n    ]\n  ],\n"
          "  \"terminal_size\": 2,\n"
          "  \"multi_hit_ids\": [],\n"
          "  \"round_double_hits\": 0\n"
          "}\n");
}

TEST_CASE("deliveries record only hits on live vertices") {
    const DiGraph g = DiGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
    const BalanceSheet bs(1, Rational(5, 2));
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0});
    REQUIRE(trace.deliveries.size() == 3);
    CHECK(trace.deliveries[0].round == 0);
    CHECK(trace.deliveries[0].sender == 0);
    CHECK(trace.deliveries[0].target == 1);
    CHECK(trace.deliveries[1].sender == 1);
    CHECK(trace.deliveries[2].sender == 1);
}

TEST_CASE("hit profiles group senders by round") {
    // Vertex 3 is hit by 0 in round 0 and by 2 in round 1 (the cross-round
    // accumulation example), vertex 2 by 1 in round 0 only.
    const DiGraph g = DiGraph::from_edges(5, {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {2, 4}});
    const BalanceSheet bs(1, Rational(5, 2));
    const CascadeTrace trace = run_cascade(g, bs, std::vector<Vertex>{0, 1});

    const auto profile3 = trace.hit_profile(3);
    REQUIRE(profile3.size() == 2);
    CHECK(profile3[0].first == 0);
    CHECK(profile3[0].second == std::vector<Vertex>{0});
    CHECK(profile3[1].first == 1);
    CHECK(profile3[1].second == std::vector<Vertex>{2});

    const auto profile2 = trace.hit_profile(2);
    REQUIRE(profile2.size() == 1);
    CHECK(profile2[0].second == std::vector<Vertex>{1});

    CHECK(trace.hit_profile(0).empty()); // shock members receive nothing recorded
}
