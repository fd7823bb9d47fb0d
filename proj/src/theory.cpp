#include "ssmt/theory.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ssmt/csv.hpp"
#include "ssmt/error.hpp"

namespace ssmt {

namespace {

constexpr double kIntegerTol = 1e-9;

void check_sizes(std::size_t n, std::size_t m, std::size_t m0) {
    if (n == 0 || m == 0) throw ParameterError("fdr_bounds needs n, m >= 1");
    if (m0 > m) throw ParameterError("m0 cannot exceed m");
}

void check_unit_open(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw ParameterError(std::string(name) + " must lie in (0,1)");
}

}  // namespace

FdrBounds fdr_bounds(double alpha, std::size_t n, std::size_t m, std::size_t m0) {
    check_unit_open(alpha, "alpha");
    check_sizes(n, m, m0);
    const double md = static_cast<double>(m);
    const double scaled = alpha * (static_cast<double>(n) + 1.0) / md;
    const double nearest = std::round(scaled);
    const bool exact = std::fabs(scaled - nearest) <= kIntegerTol * std::max(1.0, scaled);
    const double fl = exact ? nearest : std::floor(scaled);

    FdrBounds b;
    b.upper = alpha * static_cast<double>(m0) / md;
    b.exact = exact;
    b.lower = exact ? b.upper : (static_cast<double>(m0) / md) * (md / (static_cast<double>(n) + 1.0)) * fl;
    return b;
}

FdrBounds fdr_bounds(const Fraction& alpha, std::size_t n, std::size_t m, std::size_t m0) {
    check_sizes(n, m, m0);
    // alpha (n+1)/m = a (n+1) / (b m).
    const std::int64_t numer = alpha.num * static_cast<std::int64_t>(n + 1);
    const std::int64_t denom = alpha.den * static_cast<std::int64_t>(m);
    const std::int64_t fl = numer / denom;
    const double md = static_cast<double>(m);

    FdrBounds b;
    b.upper = alpha.value() * static_cast<double>(m0) / md;
    b.exact = (numer % denom) == 0;
    b.lower = b.exact ? b.upper
                      : (static_cast<double>(m0) / md) * (md / (static_cast<double>(n) + 1.0)) * static_cast<double>(fl);
    return b;
}

double gamma_star(double alpha, double eta) {
    check_unit_open(alpha, "alpha");
    check_unit_open(eta, "eta");
    return 28.0 * std::log(2.0) * (1.0 + eta) / (alpha * eta * eta);
}

double gamma_lower_star(double alpha, double eta) {
    if (!(alpha > 0.0 && alpha < 0.25)) throw ParameterError("gamma_lower_star needs alpha in (0, 1/4)");
    check_unit_open(eta, "eta");
    const double base = 1.0 + 1.0 / std::sqrt(alpha * (1.0 - eta));
    return 1.0 / (base * base * base) / 64.0;
}

BoundaryConstants boundary_constants(double alpha, double eta) {
    return BoundaryConstants{gamma_star(alpha, eta), gamma_lower_star(alpha, eta), alpha, eta};
}

double power_guarantee_prob(double gamma, double alpha, double eta) {
    if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
    const double exponent = 1.0 - 3.0 * gamma / gamma_star(alpha, eta);
    return std::max(0.0, 1.0 - std::exp2(exponent));
}

double rule_of_thumb_n(std::size_t m, double alpha, std::size_t k) {
    return static_cast<double>(m) / (alpha * static_cast<double>(std::max<std::size_t>(1, k)));
}

std::string to_string(PhaseRegion region) {
    switch (region) {
        case PhaseRegion::MimicPossibleGeneral: return "MimicPossibleGeneral";
        case PhaseRegion::MimicImpossibleGeneral: return "MimicImpossibleGeneral";
        case PhaseRegion::MimicPossibleFavorable: return "MimicPossibleFavorable";
    }
    return "unknown";
}

PhasePoint classify_phase(double n, double m, double alpha, std::size_t k, double eta) {
    check_unit_open(alpha, "alpha");
    if (!(m >= 1.0) || !(n >= 0.0)) throw ParameterError("classify_phase needs m >= 1 and n >= 0");
    PhasePoint p;
    p.n = n;
    p.m = m;
    p.alpha = alpha;
    p.k = k;
    const double kk = static_cast<double>(std::max<std::size_t>(1, k));
    p.rule_of_thumb_n = m / (alpha * kk);
    p.gamma_star_n = gamma_star(alpha, eta) * m / kk;
    p.gamma_lower_star_n = alpha < 0.25 ? gamma_lower_star(alpha, eta) * m : std::nan("");
    if (n >= m / alpha) {
        p.region = PhaseRegion::MimicPossibleGeneral;
    } else if (k >= 1 && n >= m / (alpha * static_cast<double>(k))) {
        p.region = PhaseRegion::MimicPossibleFavorable;
    } else {
        p.region = PhaseRegion::MimicImpossibleGeneral;
    }
    return p;
}

std::vector<PhasePoint> phase_diagram(std::span<const double> m_grid, double alpha,
                                      std::span<const std::size_t> k_values, double eta) {
    if (m_grid.empty() || k_values.empty()) throw ParameterError("phase_diagram needs nonempty grids");
    std::vector<PhasePoint> rows;
    rows.reserve(m_grid.size() * k_values.size());
    for (const double m : m_grid) {
        for (const std::size_t k : k_values) {
            const double kk = static_cast<double>(std::max<std::size_t>(1, k));
            rows.push_back(classify_phase(m / (alpha * kk), m, alpha, k, eta));
        }
    }
    return rows;
}

std::vector<PhasePoint> phase_diagram(std::span<const double> m_grid, double alpha,
                                      std::span<const std::size_t> k_values, std::span<const double> n_grid,
                                      double eta) {
    if (m_grid.empty() || k_values.empty() || n_grid.empty()) {
        throw ParameterError("phase_diagram needs nonempty grids");
    }
    std::vector<PhasePoint> rows;
    rows.reserve(m_grid.size() * k_values.size() * n_grid.size());
    for (const double m : m_grid) {
        for (const std::size_t k : k_values) {
            for (const double n : n_grid) rows.push_back(classify_phase(n, m, alpha, k, eta));
        }
    }
    return rows;
}

}  // namespace ssmt

namespace ssmt {

void write_phase_csv(std::ostream& out, std::span<const PhasePoint> rows) {
    out << "n,m,alpha,k,region,rule_of_thumb_n,gamma_star_n,gamma_lower_star_n\n";
    for (const auto& r : rows) {
        out << format_double(r.n) << ',' << format_double(r.m) << ',' << format_double(r.alpha) << ',' << r.k << ','
            << to_string(r.region) << ',' << format_double(r.rule_of_thumb_n) << ',' << format_double(r.gamma_star_n)
            << ',' << format_double(r.gamma_lower_star_n) << '\n';
    }
}

}  // namespace ssmt
