#include "doctest.h"

#include <stdexcept>
#include <cmath>
#include <random>

#include "contagion/rng.hpp"
#include "contagion/stats.hpp"

using namespace contagion;

TEST_CASE("wilson interval") {
    const Interval zero = wilson_interval(0, 200);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == doctest::Approx(0.0188447).epsilon(1e-4));
    CHECK(zero.upper < 0.02); // informative even at p_hat = 0

    const Interval all = wilson_interval(200, 200);
    CHECK(all.upper == 1.0);
    CHECK(all.lower == doctest::Approx(1.0 - zero.upper).epsilon(1e-9));

    const Interval half = wilson_interval(100, 200);
    CHECK(half.lower < 0.5);
    CHECK(half.upper > 0.5);
    CHECK_THROWS_AS(wilson_interval(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
}

TEST_CASE("chi2 two-sample accepts same law, rejects different laws") {
    auto rng = make_engine(0xc2);
    std::poisson_distribution<std::uint32_t> pois2(2.0);
    std::poisson_distribution<std::uint32_t> pois3(3.0);
    std::vector<std::uint64_t> a(15, 0), b(15, 0), c(15, 0);
    for (int i = 0; i < 20000; ++i) {
        a[std::min(pois2(rng), 14u)] += 1;
        b[std::min(pois2(rng), 14u)] += 1;
        c[std::min(pois3(rng), 14u)] += 1;
    }
    CHECK(chi2_two_sample(a, b).p_value >= 0.01);
    CHECK(chi2_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("chi2 goodness of fit") {
    auto rng = make_engine(0xc3);
    std::poisson_distribution<std::uint32_t> pois(2.0);
    std::vector<std::uint64_t> counts(15, 0);
    for (int i = 0; i < 20000; ++i) counts[std::min(pois(rng), 14u)] += 1;

    std::vector<double> pmf(15, 0.0);
    double p = std::exp(-2.0);
    double used = 0.0;
    for (int k = 0; k < 14; ++k) {
        pmf[k] = p;
        used += p;
        p *= 2.0 / (k + 1);
    }
    pmf[14] = 1.0 - used;
    CHECK(chi2_goodness_of_fit(counts, pmf).p_value >= 0.01);

    std::vector<double> wrong = pmf;
    std::rotate(wrong.begin(), wrong.begin() + 1, wrong.end());
    CHECK(chi2_goodness_of_fit(counts, wrong).p_value < 1e-6);
}

TEST_CASE("ks two-sample separates shifted samples") {
    auto rng = make_engine(0x45);
    std::normal_distribution<double> base(0.0, 1.0);
    std::vector<double> a, b, shifted;
    for (int i = 0; i < 2000; ++i) {
        a.push_back(base(rng));
        b.push_back(base(rng));
        shifted.push_back(base(rng) + 0.5);
    }
    CHECK(ks_two_sample(a, b).p_value >= 0.01);
    CHECK(ks_two_sample(a, shifted).p_value < 1e-6);
    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), std::invalid_argument);
}

TEST_CASE("mean and stddev") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    CHECK(sample_mean(xs) == doctest::Approx(2.5));
    CHECK(sample_stddev(xs) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    const std::vector<double> empty;
    const std::vector<double> single{1.0};
    CHECK_THROWS_AS(sample_mean(empty), std::invalid_argument);
    CHECK_THROWS_AS(sample_stddev(single), std::invalid_argument);
}
