#include "contagion/balance_sheet.hpp"

namespace contagion {

Rational equity(const Rational& liabilities, const Rational& leverage) {
    if (liabilities <= 0) throw std::invalid_argument("liabilities must be positive");
    if (leverage <= 1) throw std::invalid_argument("leverage must exceed 1");
    return liabilities / (leverage - 1);
}

std::uint64_t d_star(const Rational& liabilities, const Rational& leverage) {
    if (liabilities <= 0) throw std::invalid_argument("liabilities must be positive");
    if (leverage <= 1) throw std::invalid_argument("leverage must exceed 1");
    // L/E = C - 1 exactly, so the cutoff never depends on L.
    return floor_to_uint64(leverage - 1);
}

Rational edge_exposure(const Rational& liabilities, std::uint64_t d_out) {
    if (liabilities <= 0) throw std::invalid_argument("liabilities must be positive");
    if (d_out == 0) {
        throw std::invalid_argument("edge_exposure undefined for out-degree 0: "
                                    "such liabilities are owed externally");
    }
    return liabilities / Rational(BigInt(d_out));
}

BalanceSheet::BalanceSheet(Rational liabilities, Rational leverage)
    : liabilities_(std::move(liabilities)),
      leverage_(std::move(leverage)),
      equity_(contagion::equity(liabilities_, leverage_)),
      d_star_(contagion::d_star(liabilities_, leverage_)) {}

} // namespace contagion
