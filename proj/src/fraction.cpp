#include "ssmt/fraction.hpp"

#include <cmath>
#include <stdexcept>

namespace ssmt {

Fraction Fraction::approximate(double value, std::int64_t max_den, double tol) {
    if (!(value > 0.0 && value < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    // Convergents h/k of the continued fraction expansion of value.
    std::int64_t h_prev = 0, h = 1;
    std::int64_t k_prev = 1, k = 0;
    double rest = value;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_real = std::floor(rest);
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t h_next = a * h + h_prev;
        const std::int64_t k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        if (std::fabs(static_cast<double>(h) / static_cast<double>(k) - value) <= tol) break;
        const double frac = rest - a_real;
        if (frac <= 0.0) break;
        rest = 1.0 / frac;
    }
    if (k <= 0 || h <= 0 || std::fabs(static_cast<double>(h) / static_cast<double>(k) - value) > tol) {
        throw ParameterError("alpha " + std::to_string(value) +
                             " has no rational form with denominator <= " + std::to_string(max_den));
    }
    return make(h, k);
}

Fraction Fraction::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw ParameterError("expected a fraction a/b, got '" + text + "'");
    try {
        std::size_t used_num = 0, used_den = 0;
        const std::string num_text = text.substr(0, slash);
        const std::string den_text = text.substr(slash + 1);
        const long long num = std::stoll(num_text, &used_num);
        const long long den = std::stoll(den_text, &used_den);
        if (used_num != num_text.size() || used_den != den_text.size()) throw std::invalid_argument(text);
        return make(num, den);
    } catch (const std::logic_error&) {
        throw ParameterError("expected a fraction a/b, got '" + text + "'");
    }
}

}  // namespace ssmt
