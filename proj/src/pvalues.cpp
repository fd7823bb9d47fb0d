#include "ssmt/pvalues.hpp"

#include <algorithm>
#include <numeric>

namespace ssmt {

std::vector<std::size_t> count_null_at_or_above(std::span<const double> x, std::span<const double> y) {
    std::vector<double> y_sorted(y.begin(), y.end());
    std::sort(y_sorted.begin(), y_sorted.end());

    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // Ascending merge: `below` counts y values strictly less than the current x.
    std::vector<std::size_t> counts(x.size());
    std::size_t below = 0;
    for (const std::size_t i : order) {
        while (below < y_sorted.size() && y_sorted[below] < x[i]) ++below;
        counts[i] = y_sorted.size() - below;
    }
    return counts;
}

PValues oracle_pvalues(const TestStatistics& x, const NullModel& f0) {
    PValues p;
    p.kind = PValueKind::Oracle;
    p.values.reserve(x.size());
    for (const double v : x.values()) p.values.push_back(f0.upper_tail(v));
    return p;
}

PValues naive_empirical_pvalues(const TestStatistics& x, const NullTrainingSample& y) {
    const auto counts = count_null_at_or_above(x.values(), y.values());
    const double n = static_cast<double>(y.size());
    PValues p;
    p.kind = PValueKind::NaiveEmpirical;
    p.n_used = y.size();
    p.values.reserve(counts.size());
    for (const std::size_t c : counts) p.values.push_back(static_cast<double>(c) / n);
    return p;
}

PValues conservative_empirical_pvalues(const TestStatistics& x, const NullTrainingSample& y) {
    const auto counts = count_null_at_or_above(x.values(), y.values());
    PValues p;
    p.kind = PValueKind::ConservativeEmpirical;
    p.n_used = y.size();
    p.values.reserve(counts.size());
    for (const std::size_t c : counts) p.values.push_back(conservative_value(c, y.size()));
    return p;
}

double empirical_upper_tail(const NullTrainingSample& y, double t) {
    std::size_t count = 0;
    for (const double v : y.values()) count += (v >= t) ? 1 : 0;
    return conservative_value(count, y.size());
}

}  // namespace ssmt
