// Closed-form quantities: FDR sandwich for the semi-supervised BH procedure,
// achievability / impossibility constants, and the phase classification.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssmt/fraction.hpp"

namespace ssmt {

struct FdrBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;  // alpha (n+1) / m is an integer
};

// lower = (m0/m) (m/(n+1)) floor(alpha (n+1)/m), upper = alpha m0 / m.
// The double overload treats alpha (n+1)/m within 1e-9 of an integer as an integer.
FdrBounds fdr_bounds(double alpha, std::size_t n, std::size_t m, std::size_t m0);
FdrBounds fdr_bounds(const Fraction& alpha, std::size_t n, std::size_t m, std::size_t m0);

// gamma*(alpha, eta) = 28 log(2) (1 + eta) / (alpha eta^2).
double gamma_star(double alpha, double eta);

// gamma_*(alpha, eta) = (1 + (alpha (1 - eta))^{-1/2})^{-3} / 64, for alpha in (0, 1/4).
double gamma_lower_star(double alpha, double eta);

struct BoundaryConstants {
    double gamma_star = 0.0;
    double gamma_lower_star = 0.0;
    double alpha = 0.0;
    double eta = 0.0;
};
BoundaryConstants boundary_constants(double alpha, double eta);

// max(0, 1 - 2^{1 - 3 gamma / gamma*(alpha, eta)}).
double power_guarantee_prob(double gamma, double alpha, double eta);

// m / (alpha max(1, k)).
double rule_of_thumb_n(std::size_t m, double alpha, std::size_t k);

enum class PhaseRegion { MimicPossibleGeneral, MimicImpossibleGeneral, MimicPossibleFavorable };

std::string to_string(PhaseRegion region);

struct PhasePoint {
    double n = 0.0;
    double m = 0.0;
    double alpha = 0.0;
    std::size_t k = 0;
    PhaseRegion region = PhaseRegion::MimicImpossibleGeneral;
    double rule_of_thumb_n = 0.0;
    // Boundaries with the theoretical constants: gamma* m / max(1,k) and gamma_* m.
    double gamma_star_n = 0.0;
    double gamma_lower_star_n = 0.0;
};

// Boundaries use constant 1: n >= m/alpha is general-possible (inclusive), else
// n >= m/(alpha k) with k >= 1 is favorable-possible, else impossible.
// n and m are real so application-scale sizes like 2.3e6 fit directly.
PhasePoint classify_phase(double n, double m, double alpha, std::size_t k, double eta = 0.5);

// Boundary rows: for every (m, k), the point on the rule-of-thumb line.
std::vector<PhasePoint> phase_diagram(std::span<const double> m_grid, double alpha,
                                      std::span<const std::size_t> k_values, double eta = 0.5);
// Region map: every (n, m, k) in the cross product.
std::vector<PhasePoint> phase_diagram(std::span<const double> m_grid, double alpha,
                                      std::span<const std::size_t> k_values, std::span<const double> n_grid,
                                      double eta = 0.5);

// Columns: n,m,alpha,k,region,rule_of_thumb_n,gamma_star_n,gamma_lower_star_n
void write_phase_csv(std::ostream& out, std::span<const PhasePoint> rows);

}  // namespace ssmt
