// Exact rational nominal levels.

#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "ssmt/error.hpp"

namespace ssmt {

// A level alpha = num/den in (0,1), always stored in lowest terms.
struct Fraction {
    std::int64_t num = 1;
    std::int64_t den = 2;

    static Fraction make(std::int64_t num, std::int64_t den) {
        if (num <= 0 || den <= 0 || num >= den) {
            throw ParameterError("alpha fraction " + std::to_string(num) + "/" + std::to_string(den) +
                                 " is not in (0,1)");
        }
        const std::int64_t g = std::gcd(num, den);
        return Fraction{num / g, den / g};
    }

    // Continued-fraction approximation with denominator at most max_den; throws if the
    // closest such fraction is further than tol from value.
    static Fraction approximate(double value, std::int64_t max_den = 1000000, double tol = 1e-12);

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    // Parses "a/b".
    static Fraction parse(const std::string& text);

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

}  // namespace ssmt
