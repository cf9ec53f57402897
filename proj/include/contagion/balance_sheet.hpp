#pragma once

#include <cstdint>

#include "contagion/rational.hpp"

namespace contagion {

// Equity backing each institution: E = L / (C - 1). Exact.
Rational equity(const Rational& liabilities, const Rational& leverage);

// Single-hit cutoff d* = max{d >= 1 : L/d >= E} = floor(C - 1); 0 when the
// set is empty (C < 2). Independent of L.
std::uint64_t d_star(const Rational& liabilities, const Rational& leverage);

// Per-edge exposure L / d_out for a sender with d_out >= 1 outgoing edges.
Rational edge_exposure(const Rational& liabilities, std::uint64_t d_out);

// Homogeneous balance sheet shared by every institution: liabilities L,
// leverage C > 1, with derived equity and single-hit cutoff. Pure value type.
class BalanceSheet {
public:
    BalanceSheet(Rational liabilities, Rational leverage);

    const Rational& liabilities() const { return liabilities_; }
    const Rational& leverage() const { return leverage_; }
    const Rational& equity() const { return equity_; }
    std::uint64_t d_star() const { return d_star_; }

    Rational edge_exposure(std::uint64_t d_out) const {
        return contagion::edge_exposure(liabilities_, d_out);
    }

    // A node is active iff its out-degree is at most d*. Active nodes are the
    // only ones whose single edge can cause a default on its own.
    bool is_active(std::uint64_t d_out) const { return d_out <= d_star_; }

    bool operator==(const BalanceSheet&) const = default;

private:
    Rational liabilities_;
    Rational leverage_;
    Rational equity_;
    std::uint64_t d_star_;
};

inline bool is_active(std::uint64_t d_out, const BalanceSheet& bs) { return bs.is_active(d_out); }

} // namespace contagion
