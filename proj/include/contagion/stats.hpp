#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace contagion {

struct Chi2Result {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

// Two-sample homogeneity test on aligned count histograms. Trailing bins are
// pooled until every expected count reaches `min_expected`.
Chi2Result chi2_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           double min_expected = 5.0);

// One-sample goodness of fit of counts against an exact pmf.
Chi2Result chi2_goodness_of_fit(std::span<const std::uint64_t> counts,
                                std::span<const double> pmf, double min_expected = 5.0);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov with the asymptotic tail (conservative under
// heavy ties, which is the safe direction for a pass/fail gate).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct Interval {
    double lower = 0.0;
    double upper = 1.0;
};

// 95% Wilson score interval; informative even at p_hat in {0, 1}.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

double sample_mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

} // namespace contagion
