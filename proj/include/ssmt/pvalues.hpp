// Oracle and empirical p-value families.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssmt/null_model.hpp"
#include "ssmt/samples.hpp"

namespace ssmt {

enum class PValueKind { Oracle, NaiveEmpirical, ConservativeEmpirical };

struct PValues {
    std::vector<double> values;
    PValueKind kind = PValueKind::Oracle;
    std::size_t n_used = 0;  // 0 for Oracle

    std::size_t size() const noexcept { return values.size(); }
};

// (1 + count) / (n + 1): the value every conservative empirical p-value is built from.
// Shared with the merge scan so both routes produce bit-identical numbers.
inline double conservative_value(std::size_t count, std::size_t n) noexcept {
    return (1.0 + static_cast<double>(count)) / (static_cast<double>(n) + 1.0);
}

// p_i = F0(x_i).
PValues oracle_pvalues(const TestStatistics& x, const NullModel& f0);

// p_i = #{j : y_j >= x_i} / n. Not super-uniform: can be exactly 0.
PValues naive_empirical_pvalues(const TestStatistics& x, const NullTrainingSample& y);

// p_i = (1 + #{j : y_j >= x_i}) / (n + 1). A tied y counts against x_i, which is the
// conservative direction. Sort-and-merge, O((n+m) log(n+m)).
PValues conservative_empirical_pvalues(const TestStatistics& x, const NullTrainingSample& y);

// (1 + #{j : y_j >= t}) / (n + 1); nonincreasing in t.
double empirical_upper_tail(const NullTrainingSample& y, double t);

// For each x_i, #{j : y_j >= x_i}. Used by both empirical families.
std::vector<std::size_t> count_null_at_or_above(std::span<const double> x, std::span<const double> y);

}  // namespace ssmt
