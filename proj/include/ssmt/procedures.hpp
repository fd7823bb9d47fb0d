// Rejection procedures: BH step-up, the semi-supervised BH merge scan and its
// baselines, the Blackbox and Randomized BH variants, and a local-fdr comparator.
//
// Indices are 0-based throughout the library.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ssmt/fraction.hpp"
#include "ssmt/pvalues.hpp"
#include "ssmt/rng.hpp"
#include "ssmt/samples.hpp"

namespace ssmt {

struct RejectionSet {
    std::vector<std::size_t> indices;  // sorted ascending
    std::size_t k_hat = 0;
    double threshold_p = 0.0;          // largest rejected p-value, 0 if empty

    bool contains(std::size_t i) const;
    bool empty() const noexcept { return indices.empty(); }
};

struct SsBhDiagnostics {
    std::size_t K = 0;            // rejected test statistics
    std::size_t V = 0;            // null training values at or above the rejection threshold
    std::vector<double> fdp_path; // estimated FDP at each test position visited, bottom-up
    std::size_t stop_index = 0;   // 1-based position in the merged descending order (K + V); 0 if K = 0
};

struct SsBhResult {
    RejectionSet rejections;
    SsBhDiagnostics diagnostics;
};

// Throws ParameterError unless 0 < alpha < 1.
void validate_alpha(double alpha);

// The step-up comparison p <= alpha * k / m. A relative slack of 1e-12 keeps exact
// rational boundaries (e.g. p = 1/15 against 0.2 * 1 / 3) from being lost to rounding.
// Every BH-type procedure in the library goes through this one predicate.
bool stepup_accepts(double p, double alpha, std::size_t k, std::size_t m) noexcept;

RejectionSet bh_stepup(std::span<const double> p, double alpha);
inline RejectionSet bh_stepup(const PValues& p, double alpha) { return bh_stepup(p.values, alpha); }

// Semi-supervised BH as a descending merge scan. The rejection set is identical to
// bh_stepup(conservative_empirical_pvalues(x, y), alpha). On ties, null training values
// sort above test statistics, and within a sample the lower index comes first.
SsBhResult ss_bh(const TestStatistics& x, const NullTrainingSample& y, double alpha);

// c_m = 1 + 1/2 + ... + 1/m.
double harmonic_number(std::size_t m);

// ss_bh at level alpha / c_m.
RejectionSet by_procedure(const TestStatistics& x, const NullTrainingSample& y, double alpha);

// Splits y, in order, into m blocks of floor(n/m) values (the trailing n mod m are
// dropped) and computes each conservative p-value from its own block.
RejectionSet split_bh(const TestStatistics& x, const NullTrainingSample& y, double alpha);

// Smallest n >= 1 with (n + 1) * alpha / m an integer.
std::size_t blackbox_n(const Fraction& alpha, std::size_t m);
std::size_t blackbox_n(std::int64_t alpha_num, std::int64_t alpha_den, std::size_t m);

using NullSampler = std::function<double(Rng&)>;

struct BlackboxResult {
    SsBhResult result;
    std::size_t n_used = 0;
    std::uint64_t seed = 0;
};

BlackboxResult blackbox_bh(const TestStatistics& x, const Fraction& alpha, const NullSampler& sampler,
                           std::uint64_t seed);

struct EquicorrSpec {
    double rho = -0.1;
    std::size_t m = 1;

    // Throws ParameterError unless -1/m <= rho < 0.
    void validate() const;
};

// Appends coordinates to t until it has target_len entries, so that a rho-equicorrelated
// standard Gaussian input stays rho-equicorrelated. Draws one N(0,1) per new coordinate.
std::vector<double> equicorrelated_extend(std::span<const double> t, double rho, std::size_t target_len,
                                          Rng& noise);

struct RandomizedResult {
    SsBhResult result;
    std::size_t n_used = 0;
};

// Largest n with rho >= -1/(n + m - 1).
std::size_t randomized_n(double rho, std::size_t m);

inline constexpr std::size_t kDefaultRandomizedNMax = 50'000'000;

RandomizedResult randomized_bh(const TestStatistics& x, const EquicorrSpec& spec, double alpha, Rng& noise,
                               std::size_t n_max = kDefaultRandomizedNMax);

using Density = std::function<double(double)>;

// Local-fdr comparator: rejects the largest prefix of ascending lfdr values whose
// running mean is <= alpha. threshold_p holds the largest rejected lfdr.
RejectionSet locfdr_oracle(std::span<const double> t, const Density& g0, const Density& g1, double pi0,
                           double alpha);

}  // namespace ssmt
