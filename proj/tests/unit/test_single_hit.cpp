#include "doctest.h"

#include <stdexcept>
#include <algorithm>
#include <cmath>

#include "contagion/analytics.hpp"
#include "contagion/rng.hpp"
#include "contagion/single_hit.hpp"

using namespace contagion;

TEST_CASE("sender truncation keeps rows all-or-nothing") {
    // degrees: a=0 has 1, b=1 has 2, c=2 has 4.
    const DiGraph g = DiGraph::from_edges(
        7, {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {2, 5}, {2, 6}});

    const DiGraph sh = build_single_hit(g, 2);
    CHECK(sh.out_degree(0) == 1);
    CHECK(sh.out_degree(1) == 2);
    CHECK(sh.out_degree(2) == 0); // degree 4 > 2: every edge dropped
    CHECK(sh.edge_count() == 3);

    CHECK(build_single_hit(g, 0).edge_count() == 0);
    CHECK(build_single_hit(g, 4) == g); // truncation vacuous
    CHECK(build_single_hit(g, 1000) == g);
}

TEST_CASE("truncation is idempotent because degrees come from the original graph") {
    auto rng = make_engine(5);
    const DiGraph g = gen_gnp_digraph(400, 3.0, rng);
    for (std::uint64_t d : {0ull, 1ull, 2ull, 5ull}) {
        const DiGraph once = build_single_hit(g, d);
        // Every retained sender keeps a degree <= d, so it stays active.
        CHECK(build_single_hit(once, d) == once);
    }
}

TEST_CASE("forward reach basics") {
    const DiGraph empty = DiGraph::from_edges(5, {});
    CHECK(forward_reach(empty, std::vector<Vertex>{3}) == std::vector<Vertex>{3});

    const DiGraph path = DiGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(forward_reach(path, std::vector<Vertex>{0}) == std::vector<Vertex>{0, 1, 2, 3});

    const DiGraph cycle = DiGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}});
    auto reach = forward_reach(cycle, std::vector<Vertex>{1});
    std::sort(reach.begin(), reach.end());
    CHECK(reach == std::vector<Vertex>{0, 1, 2});

    CHECK(forward_reach(path, std::vector<Vertex>{}).empty());
    CHECK_THROWS_AS(forward_reach(path, std::vector<Vertex>{4}), std::invalid_argument);
}

TEST_CASE("forward reach is monotone in sources and edges") {
    auto rng = make_engine(0xbeef);
    for (int rep = 0; rep < 50; ++rep) {
        const Vertex n = 2 + rng() % 20;
        const double lambda = std::min(2.0, n / 2.0);
        const DiGraph g = gen_gnp_digraph(n, lambda, rng);

        auto small = sample_vertex_subset(n, 1 + rng() % n, rng);
        auto large = small;
        for (Vertex extra : sample_vertex_subset(n, 1 + rng() % n, rng)) large.push_back(extra);
        std::sort(large.begin(), large.end());
        large.erase(std::unique(large.begin(), large.end()), large.end());

        auto r_small = forward_reach(g, small);
        auto r_large = forward_reach(g, large);
        std::sort(r_small.begin(), r_small.end());
        std::sort(r_large.begin(), r_large.end());
        REQUIRE(std::includes(r_large.begin(), r_large.end(), r_small.begin(), r_small.end()));

        // Removing a sender's row only shrinks reach (edge monotonicity).
        const DiGraph sub = build_single_hit(g, 1);
        auto r_sub = forward_reach(sub, small);
        std::sort(r_sub.begin(), r_sub.end());
        REQUIRE(std::includes(r_small.begin(), r_small.end(), r_sub.begin(), r_sub.end()));
    }
}

TEST_CASE("truncated out-degree law: atom at zero and exact pmf") {
    SUBCASE("d_star = 0 is the constant 0") {
        const TruncatedOutdegreeLaw law(100, 2.0, 0);
        CHECK(law.pmf(0) == doctest::Approx(1.0));
        auto rng = make_engine(1);
        for (int i = 0; i < 50; ++i) CHECK(law.sample(rng) == 0);
    }

    SUBCASE("pmf sums to one") {
        for (std::uint64_t d : {0ull, 1ull, 3ull, 7ull}) {
            const TruncatedOutdegreeLaw law(10000, 2.0, d);
            double total = 0.0;
            for (std::uint64_t k = 0; k <= law.max_degree(); ++k) total += law.pmf(k);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("large-n pmf approaches the Poisson limit") {
        const TruncatedOutdegreeLaw law(100000, 2.0, 3);
        const double e2 = std::exp(-2.0);
        CHECK(law.pmf(1) == doctest::Approx(2.0 * e2).epsilon(1e-3));
        CHECK(law.pmf(2) == doctest::Approx(2.0 * e2).epsilon(1e-3));
        CHECK(law.pmf(3) == doctest::Approx(4.0 * e2 / 3.0).epsilon(1e-3));
        // P(K=0) -> exp(-2) + P(Pois(2) > 3) ~ 0.13534 + 0.14288.
        CHECK(law.pmf(0) == doctest::Approx(0.27822).epsilon(1e-3));
        CHECK(law.mean() == doctest::Approx(10.0 * e2).epsilon(1e-3));
    }
}

TEST_CASE("truncated law sample mean matches rho_out" * doctest::timeout(120)) {
    const Vertex n = 100000;
    const TruncatedOutdegreeLaw law(n, 2.0, 3);
    auto rng = make_engine(0x5a17);
    const std::uint64_t draws = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const double x = law.sample(rng);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / draws;
    const double sd = std::sqrt(sumsq / draws - mean * mean);
    const double target = rho_out(2.0, 3); // 10 exp(-2), the n -> inf limit
    CHECK(std::abs(mean - target) <= 3.0 * sd / std::sqrt(static_cast<double>(draws)) + 2e-4);
}

TEST_CASE("the law plugs into the iid generator") {
    const TruncatedOutdegreeLaw law(200, 2.0, 3);
    auto rng = make_engine(77);
    const DiGraph g = gen_iid_outdegree_digraph(200, law.sampler(), rng);
    for (Vertex v = 0; v < 200; ++v) CHECK(g.out_degree(v) <= 3);
}
