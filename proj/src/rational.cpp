#include "contagion/rational.hpp"

#include <cctype>

namespace contagion {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    // Trim surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("malformed rational literal: expected p/q");
        }
        BigInt d{std::string(den)};
        if (d == 0) throw std::invalid_argument("rational literal has zero denominator");
        result = Rational(BigInt{std::string(num)}, d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot);
        std::string_view fp = text.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
            throw std::invalid_argument("malformed decimal literal");
        }
        BigInt scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        BigInt whole = ip.empty() ? BigInt{0} : BigInt{std::string(ip)};
        BigInt frac = fp.empty() ? BigInt{0} : BigInt{std::string(fp)};
        result = Rational(whole * scale + frac, scale);
    } else {
        if (!all_digits(text)) throw std::invalid_argument("malformed integer literal");
        result = Rational(BigInt{std::string(text)});
    }
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
    std::string s = numerator(value).str();
    if (denominator(value) != 1) {
        s += '/';
        s += denominator(value).str();
    }
    return s;
}

std::uint64_t floor_to_uint64(const Rational& value) {
    if (value < 0) throw std::invalid_argument("floor_to_uint64 requires a non-negative value");
    BigInt q = numerator(value) / denominator(value); // both positive: truncation == floor
    if (q > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("rational floor exceeds uint64 range");
    }
    return q.convert_to<std::uint64_t>();
}

} // namespace contagion
