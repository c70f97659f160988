#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cvrp {

// Exact rational threshold used for the small/big client split.
// Demand comparisons against delta are done in integers, so client
// classification never depends on floating point.
struct Delta {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Delta() = default;
    Delta(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0) throw std::invalid_argument("delta: denominator must be positive");
        if (num < 0) throw std::invalid_argument("delta: must be nonnegative");
        if (2 * num > den) throw std::invalid_argument("delta: must be at most 1/2");
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_zero() const { return num == 0; }

    // floor(1/delta); only meaningful for delta > 0.
    std::int64_t inverse_floor() const {
        if (num == 0) throw std::invalid_argument("delta: 1/delta undefined for delta=0");
        return den / num;
    }

    bool operator==(const Delta& o) const { return num == o.num && den == o.den; }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    // Accepts "p/q" or a plain decimal such as "0.25" (taken exactly as
    // written, i.e. 25/100).
    static Delta parse(const std::string& text);
};

inline Delta Delta::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("delta: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::int64_t p = std::stoll(text.substr(0, slash));
        const std::int64_t q = std::stoll(text.substr(slash + 1));
        return Delta(p, q);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Delta(std::stoll(text), 1);
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("delta: too many decimal digits");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
    return Delta(w * den + (frac.empty() ? 0 : std::stoll(frac)), den);
}

}  // namespace cvrp
