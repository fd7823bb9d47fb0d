#include "ssmt/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ssmt/error.hpp"

namespace ssmt {

namespace {

constexpr double kStepUpSlack = 1e-12;
constexpr double kVarianceFloor = -1e-12;

RejectionSet from_indices(std::vector<std::size_t> indices, double threshold_p) {
    std::sort(indices.begin(), indices.end());
    RejectionSet r;
    r.k_hat = indices.size();
    r.indices = std::move(indices);
    r.threshold_p = r.indices.empty() ? 0.0 : threshold_p;
    return r;
}

}  // namespace

bool RejectionSet::contains(std::size_t i) const { return std::binary_search(indices.begin(), indices.end(), i); }

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1), got " + std::to_string(alpha));
}

bool stepup_accepts(double p, double alpha, std::size_t k, std::size_t m) noexcept {
    const double threshold = alpha * static_cast<double>(k) / static_cast<double>(m);
    return p <= threshold * (1.0 + kStepUpSlack);
}

RejectionSet bh_stepup(std::span<const double> p, double alpha) {
    validate_alpha(alpha);
    const std::size_t m = p.size();
    for (const double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("p-values must lie in [0,1]");
    }
    std::vector<double> sorted(p.begin(), p.end());
    std::sort(sorted.begin(), sorted.end());

    std::size_t k_hat = 0;
    for (std::size_t k = m; k >= 1; --k) {
        if (stepup_accepts(sorted[k - 1], alpha, k, m)) {
            k_hat = k;
            break;
        }
    }
    if (k_hat == 0) return {};

    std::vector<std::size_t> rejected;
    rejected.reserve(k_hat);
    for (std::size_t i = 0; i < m; ++i) {
        if (stepup_accepts(p[i], alpha, k_hat, m)) rejected.push_back(i);
    }
    return from_indices(std::move(rejected), sorted[k_hat - 1]);
}

SsBhResult ss_bh(const TestStatistics& x, const NullTrainingSample& y, double alpha) {
    validate_alpha(alpha);
    const std::size_t m = x.size();
    const std::size_t n = y.size();

    std::vector<double> y_desc(y.values().begin(), y.values().end());
    std::sort(y_desc.begin(), y_desc.end(), std::greater<>());

    std::vector<std::pair<double, std::size_t>> x_desc(m);
    for (std::size_t i = 0; i < m; ++i) x_desc[i] = {x[i], i};
    std::sort(x_desc.begin(), x_desc.end(), [](const auto& a, const auto& b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
    });

    // above[K-1] = number of null values merged above the K-th largest test statistic;
    // a tied null value is placed above.
    std::vector<std::size_t> above(m);
    std::size_t j = 0;
    for (std::size_t k = 0; k < m; ++k) {
        while (j < n && y_desc[j] >= x_desc[k].first) ++j;
        above[k] = j;
    }

    // Bottom-up scan over test positions only; the estimated FDP between two test
    // positions can only be larger than at the lower one.
    SsBhResult out;
    auto& diag = out.diagnostics;
    std::size_t K = m;
    for (; K >= 1; --K) {
        const std::size_t V = above[K - 1];
        const double p_hat = conservative_value(V, n);
        diag.fdp_path.push_back(p_hat * static_cast<double>(m) / static_cast<double>(K));
        if (stepup_accepts(p_hat, alpha, K, m)) break;
    }
    if (K == 0) {
        diag.V = n;
        return out;
    }

    diag.K = K;
    diag.V = above[K - 1];
    diag.stop_index = K + diag.V;
    std::vector<std::size_t> rejected(K);
    for (std::size_t k = 0; k < K; ++k) rejected[k] = x_desc[k].second;
    out.rejections = from_indices(std::move(rejected), conservative_value(diag.V, n));
    return out;
}

double harmonic_number(std::size_t m) {
    double c = 0.0;
    for (std::size_t i = 1; i <= m; ++i) c += 1.0 / static_cast<double>(i);
    return c;
}

RejectionSet by_procedure(const TestStatistics& x, const NullTrainingSample& y, double alpha) {
    validate_alpha(alpha);
    return ss_bh(x, y, alpha / harmonic_number(x.size())).rejections;
}

RejectionSet split_bh(const TestStatistics& x, const NullTrainingSample& y, double alpha) {
    validate_alpha(alpha);
    const std::size_t m = x.size();
    const std::size_t block = y.size() / m;
    if (block == 0) {
        throw InsufficientNullSampleError("split BH needs n >= m (n = " + std::to_string(y.size()) +
                                          ", m = " + std::to_string(m) + ")");
    }
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t count = 0;
        for (std::size_t j = i * block; j < (i + 1) * block; ++j) count += (y[j] >= x[i]) ? 1 : 0;
        p[i] = conservative_value(count, block);
    }
    return bh_stepup(p, alpha);
}

std::size_t blackbox_n(const Fraction& alpha, std::size_t m) {
    if (m == 0) throw ParameterError("m must be positive");
    // (n + 1) * a / (b * m) is an integer iff d = b*m / gcd(a, b*m) divides n + 1.
    const std::int64_t bm = alpha.den * static_cast<std::int64_t>(m);
    const std::int64_t d = bm / std::gcd(alpha.num, bm);
    return d >= 2 ? static_cast<std::size_t>(d - 1) : 1;
}

std::size_t blackbox_n(std::int64_t alpha_num, std::int64_t alpha_den, std::size_t m) {
    return blackbox_n(Fraction::make(alpha_num, alpha_den), m);
}

BlackboxResult blackbox_bh(const TestStatistics& x, const Fraction& alpha, const NullSampler& sampler,
                           std::uint64_t seed) {
    const std::size_t n = blackbox_n(alpha, x.size());
    Rng rng = make_rng(seed);
    std::vector<double> draws(n);
    for (auto& v : draws) v = sampler(rng);
    BlackboxResult out;
    out.result = ss_bh(x, NullTrainingSample(std::move(draws)), alpha.value());
    out.n_used = n;
    out.seed = seed;
    return out;
}

void EquicorrSpec::validate() const {
    if (m == 0) throw ParameterError("equicorrelated spec needs m >= 1");
    if (!(rho < 0.0)) throw ParameterError("equicorrelation rho must be negative");
    if (rho < -1.0 / static_cast<double>(m)) {
        throw AdmissibilityError("rho = " + std::to_string(rho) + " is below -1/m; no null training sample fits");
    }
}

std::vector<double> equicorrelated_extend(std::span<const double> t, double rho, std::size_t target_len,
                                          Rng& noise) {
    if (target_len < t.size()) throw ParameterError("target length is shorter than the input");
    if (!(rho > -1.0 && rho < 1.0)) throw AdmissibilityError("equicorrelation rho must lie in (-1, 1)");
    std::vector<double> out(t.begin(), t.end());
    out.reserve(target_len);
    double sum = std::accumulate(out.begin(), out.end(), 0.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t k = out.size(); k < target_len; ++k) {
        const double kd = static_cast<double>(k);
        const double denom = 1.0 + (kd - 1.0) * rho;
        const double var = denom > 0.0 ? 1.0 - kd * rho * rho / denom : -1.0;
        if (!(denom > 0.0) || var < kVarianceFloor) {
            throw AdmissibilityError("rho = " + std::to_string(rho) + " is not admissible for " +
                                     std::to_string(target_len) + " equicorrelated coordinates");
        }
        const double next = (k == 0 ? 0.0 : rho / denom * sum) + std::sqrt(std::max(var, 0.0)) * normal(noise);
        out.push_back(next);
        sum += next;
    }
    return out;
}

std::size_t randomized_n(double rho, std::size_t m) {
    const double raw = -1.0 / rho - static_cast<double>(m) + 1.0;
    // Absorb rounding in -1/rho so that e.g. rho = -0.01, m = 10 gives 91.
    const double n = std::floor(raw + 1e-9);
    if (!(n >= 1.0)) throw AdmissibilityError("rho too negative: no null training sample of size >= 1 fits");
    return static_cast<std::size_t>(n);
}

RandomizedResult randomized_bh(const TestStatistics& x, const EquicorrSpec& spec, double alpha, Rng& noise,
                               std::size_t n_max) {
    spec.validate();
    if (spec.m != x.size()) throw ParameterError("equicorrelated spec m does not match the test statistics");
    validate_alpha(alpha);
    const std::size_t n = randomized_n(spec.rho, spec.m);
    if (n > n_max) {
        throw ParameterError("rho = " + std::to_string(spec.rho) + " needs n = " + std::to_string(n) +
                             " > n_max = " + std::to_string(n_max));
    }
    auto full = equicorrelated_extend(x.values(), spec.rho, n + spec.m, noise);
    std::vector<double> y(full.begin() + static_cast<std::ptrdiff_t>(spec.m), full.end());
    RandomizedResult out;
    out.result = ss_bh(x, NullTrainingSample(std::move(y)), alpha);
    out.n_used = n;
    return out;
}

RejectionSet locfdr_oracle(std::span<const double> t, const Density& g0, const Density& g1, double pi0,
                           double alpha) {
    validate_alpha(alpha);
    if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw ParameterError("pi0 must lie in [0,1]");
    const std::size_t m = t.size();
    std::vector<double> lfdr(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double null_part = pi0 * g0(t[i]);
        const double alt_part = (1.0 - pi0) * g1(t[i]);
        const double total = null_part + alt_part;
        if (!(total > 0.0)) {
            if (g0(t[i]) <= 0.0 && g1(t[i]) <= 0.0) {
                throw UndefinedLfdrError("both densities vanish at t = " + std::to_string(t[i]));
            }
            // Only the zero-weighted component is positive here.
            lfdr[i] = pi0 >= 1.0 ? 1.0 : 0.0;
        } else {
            lfdr[i] = null_part / total;
        }
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lfdr[a] < lfdr[b]; });

    std::size_t best = 0;
    double running = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        running += lfdr[order[k - 1]];
        if (running / static_cast<double>(k) <= alpha) best = k;
    }
    std::vector<std::size_t> rejected(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best));
    return from_indices(std::move(rejected), best > 0 ? lfdr[order[best - 1]] : 0.0);
}

}  // namespace ssmt
