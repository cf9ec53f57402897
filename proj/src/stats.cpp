#include "contagion/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace contagion {

namespace {

constexpr double kZ95 = 1.959963984540054;

double chi2_sf(double statistic, double dof) {
    if (dof <= 0.0) return 1.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

} // namespace

Chi2Result chi2_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           double min_expected) {
    if (a.size() != b.size()) throw std::invalid_argument("chi2_two_sample: bin mismatch");
    double total_a = 0.0, total_b = 0.0;
    for (std::uint64_t x : a) total_a += static_cast<double>(x);
    for (std::uint64_t x : b) total_b += static_cast<double>(x);
    if (total_a == 0.0 || total_b == 0.0) {
        throw std::invalid_argument("chi2_two_sample: empty sample");
    }
    const double total = total_a + total_b;

    struct Group {
        double oa = 0.0, ob = 0.0, ea = 0.0, eb = 0.0;
    };
    // Pool neighboring bins until both expected-under-homogeneity counts
    // reach min_expected; the dangling remainder merges into the last group.
    std::vector<Group> groups;
    Group acc;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double row = static_cast<double>(a[k]) + static_cast<double>(b[k]);
        acc.oa += static_cast<double>(a[k]);
        acc.ob += static_cast<double>(b[k]);
        acc.ea += row * total_a / total;
        acc.eb += row * total_b / total;
        if (acc.ea >= min_expected && acc.eb >= min_expected) {
            groups.push_back(acc);
            acc = Group{};
        }
    }
    if (acc.ea > 0.0 || acc.eb > 0.0) {
        if (groups.empty()) {
            groups.push_back(acc);
        } else {
            groups.back().oa += acc.oa;
            groups.back().ob += acc.ob;
            groups.back().ea += acc.ea;
            groups.back().eb += acc.eb;
        }
    }

    Chi2Result r;
    for (const Group& g : groups) {
        if (g.ea > 0.0) r.statistic += (g.oa - g.ea) * (g.oa - g.ea) / g.ea;
        if (g.eb > 0.0) r.statistic += (g.ob - g.eb) * (g.ob - g.eb) / g.eb;
    }
    r.dof = static_cast<double>(groups.size()) - 1.0;
    r.p_value = chi2_sf(r.statistic, r.dof);
    return r;
}

Chi2Result chi2_goodness_of_fit(std::span<const std::uint64_t> counts,
                                std::span<const double> pmf, double min_expected) {
    if (counts.size() != pmf.size()) throw std::invalid_argument("chi2_goodness_of_fit: bin mismatch");
    double total = 0.0;
    for (std::uint64_t c : counts) total += static_cast<double>(c);
    if (total == 0.0) throw std::invalid_argument("chi2_goodness_of_fit: empty sample");

    // Pool trailing bins on expected counts.
    std::vector<std::pair<double, double>> pooled; // (observed, expected)
    double acc_obs = 0.0, acc_exp = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        acc_obs += static_cast<double>(counts[k]);
        acc_exp += pmf[k] * total;
        if (acc_exp >= min_expected) {
            pooled.emplace_back(acc_obs, acc_exp);
            acc_obs = acc_exp = 0.0;
        }
    }
    if ((acc_obs > 0.0 || acc_exp > 0.0) && !pooled.empty()) {
        pooled.back().first += acc_obs;
        pooled.back().second += acc_exp;
    } else if (acc_exp > 0.0) {
        pooled.emplace_back(acc_obs, acc_exp);
    }

    Chi2Result r;
    for (const auto& [obs, exp] : pooled) {
        if (exp > 0.0) r.statistic += (obs - exp) * (obs - exp) / exp;
    }
    r.dof = static_cast<double>(pooled.size()) - 1.0;
    r.p_value = chi2_sf(r.statistic, r.dof);
    return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }

    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double q = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        q += term;
        sign = -sign;
        if (std::abs(term) < 1e-12) break;
    }
    KsResult r;
    r.statistic = d;
    r.p_value = std::clamp(2.0 * q, 0.0, 1.0);
    return r;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double margin = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    Interval ci{std::max(0.0, (center - margin) / denom),
                std::min(1.0, (center + margin) / denom)};
    // The degenerate endpoints are exact; roundoff must not push the bound
    // across p_hat.
    if (successes == 0) ci.lower = 0.0;
    if (successes == trials) ci.upper = 1.0;
    return ci;
}

double sample_mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("sample_mean: empty");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_stddev: need >= 2 values");
    const double m = sample_mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

} // namespace contagion
