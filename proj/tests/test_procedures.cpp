#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ssmt/datagen.hpp"
#include "ssmt/error.hpp"
#include "ssmt/procedures.hpp"

using namespace ssmt;

namespace {

std::vector<std::size_t> idx(std::initializer_list<std::size_t> v) { return std::vector<std::size_t>(v); }

// Definition-level BH: max k with p_(k) <= alpha k / m, computed by exhaustive search
// over k with explicit counting (no sorting of the index set).
std::vector<std::size_t> brute_bh(const std::vector<double>& p, double alpha) {
    const std::size_t m = p.size();
    std::size_t k_hat = 0;
    for (std::size_t k = 1; k <= m; ++k) {
        // p_(k) <= t  iff  at least k p-values are <= t
        std::size_t below = 0;
        for (const double v : p) below += stepup_accepts(v, alpha, k, m) ? 1 : 0;
        if (below >= k) k_hat = k;
    }
    std::vector<std::size_t> out;
    if (k_hat == 0) return out;
    for (std::size_t i = 0; i < m; ++i) {
        if (stepup_accepts(p[i], alpha, k_hat, m)) out.push_back(i);
    }
    return out;
}

}  // namespace

TEST(BhStepUp, HandEvaluation) {
    // thresholds 0.05, 0.10, 0.15
    const auto r = bh_stepup(std::vector<double>{0.01, 0.04, 0.2}, 0.15);
    EXPECT_EQ(r.k_hat, 2u);
    EXPECT_EQ(r.indices, idx({0, 1}));
    EXPECT_DOUBLE_EQ(r.threshold_p, 0.04);
}

TEST(BhStepUp, Saturation) {
    EXPECT_TRUE(bh_stepup(std::vector<double>{1.0, 1.0, 1.0}, 0.9).empty());
    const auto r = bh_stepup(std::vector<double>{0.01, 0.02, 0.03}, 0.1);
    EXPECT_EQ(r.k_hat, 3u);
    EXPECT_EQ(r.indices, idx({0, 1, 2}));
}

TEST(BhStepUp, ParameterErrors) {
    EXPECT_THROW(bh_stepup(std::vector<double>{0.1}, 0.0), ParameterError);
    EXPECT_THROW(bh_stepup(std::vector<double>{0.1}, 1.0), ParameterError);
    EXPECT_THROW(bh_stepup(std::vector<double>{1.5}, 0.1), ParameterError);
}

TEST(SsBh, HandTrace) {
    // p-hat = (1/4, 1); BH at 0.5 rejects only the statistic 4.
    const auto res = ss_bh(TestStatistics({4.0, 0.5}), NullTrainingSample({1.0, 2.0, 3.0}), 0.5);
    EXPECT_EQ(res.rejections.indices, idx({0}));
    EXPECT_EQ(res.diagnostics.K, 1u);
    EXPECT_EQ(res.diagnostics.V, 0u);
    EXPECT_EQ(res.diagnostics.stop_index, 1u);
    EXPECT_DOUBLE_EQ(res.rejections.threshold_p, 0.25);
}

TEST(SsBh, MergeScanIllustration) {
    // m = 14, n = 17, alpha = 0.2. Descending merged order:
    //   Y X X X X X Y X X X X X X X | Y X Y Y X Y ... Y
    // At the line: K = 12, V = 2, FDP = (3/18)(14/12) ~ 0.194; above it FDP > 0.2.
    std::vector<double> xs, ys;
    const std::string pattern = "YXXXXXYXXXXXXXYXYYXYYYYYYYYYYYY";
    ASSERT_EQ(pattern.size(), 31u);
    double value = 100.0;
    for (const char c : pattern) {
        (c == 'X' ? xs : ys).push_back(value);
        value -= 1.0;
    }
    ASSERT_EQ(xs.size(), 14u);
    ASSERT_EQ(ys.size(), 17u);
    // shuffle test labels so the rejected indices are not simply a prefix
    std::vector<double> shuffled = xs;
    std::mt19937_64 rng(7);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    const auto res = ss_bh(TestStatistics(shuffled), NullTrainingSample(ys), 0.2);
    EXPECT_EQ(res.diagnostics.K, 12u);
    EXPECT_EQ(res.diagnostics.V, 2u);
    EXPECT_EQ(res.diagnostics.stop_index, 14u);
    const double final_fdp = res.diagnostics.fdp_path.back();
    EXPECT_NEAR(final_fdp, (3.0 / 18.0) * (14.0 / 12.0), 1e-15);
    EXPECT_LE(final_fdp, 0.2);
    ASSERT_EQ(res.diagnostics.fdp_path.size(), 3u);  // K = 14, 13, 12
    for (std::size_t i = 0; i + 1 < res.diagnostics.fdp_path.size(); ++i) EXPECT_GT(res.diagnostics.fdp_path[i], 0.2);

    const double cutoff = xs[11];
    for (std::size_t i = 0; i < shuffled.size(); ++i) EXPECT_EQ(res.rejections.contains(i), shuffled[i] >= cutoff);
}

TEST(SsBh, EverythingBelowTheNullRejectsNothing) {
    const auto res = ss_bh(TestStatistics({-5.0, -4.0, -3.0}), NullTrainingSample({0.0, 1.0, 2.0}), 0.9);
    EXPECT_TRUE(res.rejections.empty());
    EXPECT_EQ(res.diagnostics.K, 0u);
}

TEST(SsBh, TiedNullValuesCountIntoV) {
    // x ties with y: p-hat = (1 + 1)/2 = 1 at n = 1 -> no rejection even at alpha near 1.
    const auto res = ss_bh(TestStatistics({1.0}), NullTrainingSample({1.0}), 0.99);
    EXPECT_TRUE(res.rejections.empty());
    // Tied test statistics are rejected together.
    const auto tied = ss_bh(TestStatistics({5.0, 5.0, 0.0}), NullTrainingSample({1.0, 2.0, 3.0}), 0.9);
    EXPECT_EQ(tied.rejections.indices, idx({0, 1}));
}

TEST(SsBh, EquivalenceWithStepUpOnConservativePValues) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(1, 200);
    std::uniform_real_distribution<double> level(0.01, 0.99);
    std::uniform_int_distribution<int> coarse(0, 20);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = size(rng), n = size(rng);
        const bool ties = trial % 3 == 0;
        std::vector<double> xs(m), ys(n);
        for (std::size_t i = 0; i < m; ++i) xs[i] = ties ? coarse(rng) : normal(rng) + (i % 4 == 0 ? 2.0 : 0.0);
        for (auto& v : ys) v = ties ? coarse(rng) : normal(rng);
        const double alpha = level(rng);
        const TestStatistics x(xs);
        const NullTrainingSample y(ys);
        const auto scan = ss_bh(x, y, alpha);
        const auto p = conservative_empirical_pvalues(x, y);
        const auto ref = bh_stepup(p, alpha);
        ASSERT_EQ(scan.rejections.indices, ref.indices) << "trial " << trial;
        ASSERT_EQ(scan.rejections.indices, brute_bh(p.values, alpha)) << "trial " << trial;
        if (scan.diagnostics.K >= 1) {
            const double est = (scan.diagnostics.V + 1.0) / (n + 1.0) * m / scan.diagnostics.K;
            EXPECT_LE(est, alpha * (1.0 + 1e-12));
        }
    }
}

TEST(SsBh, StepUpMonotoneInAlpha) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xs(30), ys(40);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = normal(rng) + (i < 10 ? 2.5 : 0.0);
        for (auto& v : ys) v = normal(rng);
        const TestStatistics x(xs);
        const NullTrainingSample y(ys);
        const auto p = conservative_empirical_pvalues(x, y);
        for (double a = 0.05; a < 0.9; a += 0.1) {
            const auto small = ss_bh(x, y, a).rejections.indices;
            const auto big = ss_bh(x, y, a + 0.05).rejections.indices;
            EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
            const auto bs = bh_stepup(p, a).indices;
            const auto bb = bh_stepup(p, a + 0.05).indices;
            EXPECT_TRUE(std::includes(bb.begin(), bb.end(), bs.begin(), bs.end()));
        }
    }
}

TEST(SsBh, MinimumPValueBarrier) {
    // 1/(n+1) > alpha: nothing can be rejected whatever the statistics.
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xs(5);
        for (auto& v : xs) v = normal(rng) + 10.0;
        EXPECT_TRUE(ss_bh(TestStatistics(xs), NullTrainingSample({normal(rng)}), 0.4).rejections.empty());
    }
}

TEST(SsBh, EmptyNullSampleIsAnError) {
    EXPECT_THROW(ss_bh(TestStatistics({1.0}), NullTrainingSample(std::vector<double>{}), 0.1), EmptyNullSampleError);
}

TEST(ByProcedure, HarmonicNumbersAndDominance) {
    EXPECT_NEAR(harmonic_number(3), 11.0 / 6.0, 1e-15);
    EXPECT_DOUBLE_EQ(harmonic_number(1), 1.0);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xs(20), ys(100);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = normal(rng) + (i < 8 ? 3.0 : 0.0);
        for (auto& v : ys) v = normal(rng);
        const TestStatistics x(xs);
        const NullTrainingSample y(ys);
        const auto by = by_procedure(x, y, 0.3).indices;
        const auto ss = ss_bh(x, y, 0.3).rejections.indices;
        EXPECT_TRUE(std::includes(ss.begin(), ss.end(), by.begin(), by.end()));
        EXPECT_EQ(by, ss_bh(x, y, 0.3 / harmonic_number(20)).rejections.indices);
    }
    // m = 1: identical to ss_bh
    const TestStatistics x1({2.5});
    const NullTrainingSample y1({0.1, 0.2, 0.3, -1.0});
    EXPECT_EQ(by_procedure(x1, y1, 0.3).indices, ss_bh(x1, y1, 0.3).rejections.indices);
}

TEST(SplitBh, BlockSizesAndGranularity) {
    // n = m: each p-value is 1/2 or 1
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> xs(6), ys(6);
    for (auto& v : xs) v = normal(rng);
    for (auto& v : ys) v = normal(rng);
    const auto r = split_bh(TestStatistics(xs), NullTrainingSample(ys), 0.9);
    for (const std::size_t i : r.indices) EXPECT_TRUE(ys[i] < xs[i]);
    if (!r.empty()) EXPECT_DOUBLE_EQ(r.threshold_p, 0.5);

    // n = 2m + 1: blocks of two, trailing value ignored
    const TestStatistics x({10.0, 10.0});
    const NullTrainingSample y({0.0, 1.0, 2.0, 3.0, 100.0});
    const auto s = split_bh(x, y, 0.9);
    EXPECT_EQ(s.indices, idx({0, 1}));
    EXPECT_DOUBLE_EQ(s.threshold_p, 1.0 / 3.0);

    EXPECT_THROW(split_bh(TestStatistics({1.0, 2.0}), NullTrainingSample({0.0}), 0.5), InsufficientNullSampleError);
}

TEST(SplitBh, SingleTestMatchesSsBh) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> ys(25);
        for (auto& v : ys) v = normal(rng);
        const TestStatistics x({normal(rng) + 2.0});
        const NullTrainingSample y(ys);
        EXPECT_EQ(split_bh(x, y, 0.2).indices, ss_bh(x, y, 0.2).rejections.indices);
    }
}

TEST(BlackboxN, WorkedExamples) {
    EXPECT_EQ(blackbox_n(1, 2, 2), 3u);
    EXPECT_EQ(blackbox_n(1, 5, 3), 14u);
    EXPECT_EQ(blackbox_n(1, 2, 1), 1u);
    EXPECT_EQ(blackbox_n(2, 4, 2), 3u);  // normalized to 1/2
    EXPECT_THROW(blackbox_n(3, 2, 2), ParameterError);
    EXPECT_THROW(blackbox_n(0, 2, 2), ParameterError);
}

TEST(BlackboxN, MatchesBruteForceScan) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::int64_t> den(2, 60);
    std::uniform_int_distribution<std::size_t> msize(1, 200);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t b = den(rng);
        std::uniform_int_distribution<std::int64_t> num(1, b - 1);
        const Fraction a = Fraction::make(num(rng), b);
        const std::size_t m = msize(rng);
        std::size_t scan = 0;
        for (std::size_t n = 1; n <= 1000000; ++n) {
            if ((static_cast<std::int64_t>(n + 1) * a.num) % (a.den * static_cast<std::int64_t>(m)) == 0) {
                scan = n;
                break;
            }
        }
        ASSERT_EQ(blackbox_n(a, m), scan);
    }
}

TEST(BlackboxBh, DeterministicGivenSeed) {
    const TestStatistics x({3.0, 0.1, 2.5, -1.0});
    const auto sampler = [](Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); };
    const auto a = blackbox_bh(x, Fraction::make(1, 2), sampler, 42);
    const auto b = blackbox_bh(x, Fraction::make(1, 2), sampler, 42);
    EXPECT_EQ(a.result.rejections.indices, b.result.rejections.indices);
    EXPECT_EQ(a.result.diagnostics.V, b.result.diagnostics.V);
    EXPECT_EQ(a.n_used, blackbox_n(1, 2, 4));
    EXPECT_EQ(a.seed, 42u);
    EXPECT_EQ(blackbox_bh(TestStatistics({1.0, 2.0}), Fraction::make(1, 2), sampler, 1).n_used, 3u);
}

TEST(EquicorrelatedExtend, DegenerateCases) {
    Rng a = make_rng(1), b = make_rng(1);
    const std::vector<double> t{0.3, -0.2};
    // rho = 0: new coordinates are the raw standard normal draws
    const auto out = equicorrelated_extend(t, 0.0, 5, a);
    std::normal_distribution<double> normal(0.0, 1.0);
    ASSERT_EQ(out.size(), 5u);
    EXPECT_EQ(out[0], 0.3);
    EXPECT_EQ(out[1], -0.2);
    for (std::size_t i = 2; i < 5; ++i) EXPECT_DOUBLE_EQ(out[i], normal(b));
    // identity
    Rng c = make_rng(2);
    EXPECT_EQ(equicorrelated_extend(t, -0.1, 2, c), t);
}

TEST(EquicorrelatedExtend, AdmissibilityBoundary) {
    Rng rng = make_rng(3);
    // rho = -1/(d-1) is admissible for d coordinates and not for d + 1.
    EXPECT_NO_THROW(equicorrelated_extend(std::vector<double>{0.5}, -0.25, 5, rng));
    EXPECT_THROW(equicorrelated_extend(std::vector<double>{0.5}, -0.25, 6, rng), AdmissibilityError);
    // at the boundary the coordinates sum to zero
    const auto z = equicorrelated_extend(std::vector<double>{}, -0.25, 5, rng);
    EXPECT_NEAR(std::accumulate(z.begin(), z.end(), 0.0), 0.0, 1e-12);
}

TEST(RandomizedBh, SampleSize) {
    EXPECT_EQ(randomized_n(-0.01, 10), 91u);
    EXPECT_LE(-1.0 / (91 + 10 - 1), -0.01 + 1e-15);
    EXPECT_EQ(randomized_n(-0.1, 10), 1u);
    EXPECT_EQ(randomized_n(-1.0 / 7.0, 7), 1u);
    EXPECT_THROW(randomized_n(-0.2, 10), AdmissibilityError);

    Rng rng = make_rng(9);
    const TestStatistics x({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
    EXPECT_THROW(randomized_bh(x, EquicorrSpec{-0.2, 10}, 0.1, rng), AdmissibilityError);
    EXPECT_THROW(randomized_bh(x, EquicorrSpec{-1e-9, 10}, 0.1, rng, 1000), ParameterError);
    const auto res = randomized_bh(x, EquicorrSpec{-0.01, 10}, 0.1, rng);
    EXPECT_EQ(res.n_used, 91u);
    EXPECT_EQ(res.result.diagnostics.fdp_path.empty(), false);
}

TEST(Locfdr, DegenerateMixtures) {
    const std::vector<double> t{-1.0, 0.5, 2.0, 4.0};
    const Density g0 = [](double v) { return gaussian_density(v); };
    const Density g1 = [](double v) { return gaussian_density(v, 3.0); };
    EXPECT_TRUE(locfdr_oracle(t, g0, g1, 1.0, 0.5).empty());
    EXPECT_EQ(locfdr_oracle(t, g0, g1, 0.0, 0.5).k_hat, 4u);
    const Density zero = [](double) { return 0.0; };
    EXPECT_THROW(locfdr_oracle(t, zero, zero, 0.5, 0.1), UndefinedLfdrError);
}

TEST(Locfdr, MatchesBruteForcePrefixRule) {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Density g0 = [](double v) { return gaussian_density(v); };
    const Density g1 = [](double v) { return gaussian_density(v, 3.0); };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> t(50);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = normal(rng) + (i >= 45 ? 3.0 : 0.0);
        const auto r = locfdr_oracle(t, g0, g1, 0.9, 0.2);
        // brute force: for every k, the k smallest lfdr values by exhaustive selection
        std::vector<double> lfdr(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double a = 0.9 * g0(t[i]), b = 0.1 * g1(t[i]);
            lfdr[i] = a / (a + b);
        }
        std::size_t best = 0;
        for (std::size_t k = 1; k <= t.size(); ++k) {
            std::vector<bool> used(t.size(), false);
            double sum = 0.0;
            for (std::size_t pick = 0; pick < k; ++pick) {
                std::size_t arg = t.size();
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (!used[i] && (arg == t.size() || lfdr[i] < lfdr[arg])) arg = i;
                }
                used[arg] = true;
                sum += lfdr[arg];
            }
            if (sum / k <= 0.2) best = k;
        }
        EXPECT_EQ(r.k_hat, best);
        for (const std::size_t i : r.indices) EXPECT_LE(lfdr[i], r.threshold_p);
    }
}

TEST(SsBh, LabelPermutationInvariance) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(12), y(40);
        for (auto& v : x) v = normal(rng) + 1.0;
        for (auto& v : y) v = normal(rng);
        std::vector<std::size_t> perm(x.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> xp(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xp[i] = x[perm[i]];
        const auto a = ss_bh(TestStatistics(x), NullTrainingSample(y), 0.3).rejections;
        const auto b = ss_bh(TestStatistics(xp), NullTrainingSample(y), 0.3).rejections;
        std::vector<std::size_t> mapped;
        for (const std::size_t i : b.indices) mapped.push_back(perm[i]);
        std::sort(mapped.begin(), mapped.end());
        std::vector<std::size_t> orig(a.indices);
        std::sort(orig.begin(), orig.end());
        EXPECT_EQ(mapped, orig);
    }
}
