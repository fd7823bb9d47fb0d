#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ssmt/error.hpp"
#include "ssmt/evaluation.hpp"
#include "ssmt/theory.hpp"

using namespace ssmt;

namespace {

ScenarioSpec scenario(Family family, std::size_t m, std::size_t n, std::size_t m1, double effect, double alpha) {
    ScenarioSpec s;
    s.family = family;
    s.m = m;
    s.n = n;
    s.m1 = m1;
    s.effect = effect;
    s.alpha = alpha;
    s.seed = 2024;
    return s;
}

RejectionSet rejecting(std::vector<std::size_t> idx) {
    RejectionSet r;
    r.indices = std::move(idx);
    r.k_hat = r.indices.size();
    return r;
}

}  // namespace

TEST(Metrics, HandExamples) {
    // hypotheses 0..3, only index 2 is null
    const std::vector<bool> mask{false, false, true, false};
    EXPECT_DOUBLE_EQ(fdp(rejecting({1, 2, 3}), mask), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(fdp(rejecting({}), mask), 0.0);
    const std::vector<bool> mask2{true, false, false};
    EXPECT_DOUBLE_EQ(tdp(rejecting({1}), mask2), 0.5);
    EXPECT_DOUBLE_EQ(tdp(rejecting({}), std::vector<bool>{true, true}), 0.0);
}

TEST(Metrics, ProcedureNames) {
    for (const auto id : {ProcedureId::SsBh, ProcedureId::OracleBh, ProcedureId::NaiveBh, ProcedureId::By,
                          ProcedureId::SplitBh, ProcedureId::BlackboxBh, ProcedureId::RandomizedBh,
                          ProcedureId::Locfdr}) {
        EXPECT_EQ(parse_procedure(to_string(id)), id);
    }
    EXPECT_THROW(parse_procedure("holm"), ParameterError);
}

TEST(MonteCarlo, SingleReplicateSummary) {
    const auto spec = scenario(Family::GaussianIid, 10, 50, 5, 3.0, 0.2);
    const std::vector<ProcedureId> ids{ProcedureId::SsBh};
    MonteCarloOptions opt;
    opt.keep_outcomes = true;
    const auto res = monte_carlo(spec, ids, 1, 0.0, opt);
    ASSERT_EQ(res.outcomes.size(), 2u);
    const auto& s = res.summary.at(ProcedureId::SsBh);
    EXPECT_EQ(s.reps, 1u);
    EXPECT_EQ(s.fdr_hat, res.outcomes[0].fdp);
    EXPECT_EQ(s.tdr_hat, res.outcomes[0].tdp);
    EXPECT_EQ(s.sd_fdp, 0.0);
    EXPECT_EQ(s.se_tdr, 0.0);

    // Re-run that replicate by hand.
    const Dataset d = generate(spec, 0);
    const auto hand = ss_bh(d.x, d.nts(), spec.alpha).rejections;
    EXPECT_EQ(res.outcomes[0].rejections, hand.k_hat);
    EXPECT_DOUBLE_EQ(res.outcomes[0].tdp, tdp(hand, d.h0_mask));
}

TEST(MonteCarlo, FullNullFdrIsExactAtIntegerPoint) {
    // alpha (n+1)/m = 0.5 * 4 / 2 = 1
    const auto spec = scenario(Family::GaussianIid, 2, 3, 0, 0.0, 0.5);
    const std::vector<ProcedureId> ids{ProcedureId::SsBh};
    const auto res = monte_carlo(spec, ids, 40000);
    const auto b = fdr_bounds(0.5, 3, 2, 2);
    ASSERT_TRUE(b.exact);
    const auto& ss = res.summary.at(ProcedureId::SsBh);
    EXPECT_NEAR(ss.fdr_hat, b.upper, 4.0 * ss.se_fdr);
    const auto& oracle = res.summary.at(ProcedureId::OracleBh);
    EXPECT_NEAR(oracle.fdr_hat, 0.5, 4.0 * oracle.se_fdr);
}

TEST(MonteCarlo, FdrWithinSandwichAwayFromIntegerPoints) {
    const auto spec = scenario(Family::GaussianIid, 4, 9, 2, 2.0, 0.3);
    const std::vector<ProcedureId> ids{ProcedureId::SsBh};
    const auto res = monte_carlo(spec, ids, 40000);
    const auto b = fdr_bounds(0.3, 9, 4, 2);
    ASSERT_FALSE(b.exact);
    const auto& ss = res.summary.at(ProcedureId::SsBh);
    EXPECT_LE(ss.fdr_hat, b.upper + 4.0 * ss.se_fdr);
}

TEST(MonteCarlo, ContainmentImpliesNoDominance) {
    const auto spec = scenario(Family::GaussianIid, 20, 400, 10, 2.5, 0.2);
    const std::vector<ProcedureId> ids{ProcedureId::SsBh};
    MonteCarloOptions opt;
    opt.keep_outcomes = true;
    const auto res = monte_carlo(spec, ids, 500, 0.5, opt);
    std::size_t seen = 0;
    for (const auto& o : res.outcomes) {
        if (o.procedure != ProcedureId::SsBh) continue;
        ++seen;
        if (o.contained) EXPECT_GE(o.tdp, o.oracle_tdp);
    }
    EXPECT_EQ(seen, 500u);
    const double c = containment_frequency(res.outcomes);
    const double d = tdp_dominance_frequency(res.outcomes);
    EXPECT_LE(d, 1.0 - c + 1e-12);
    EXPECT_DOUBLE_EQ(binomial_se(0.25, 100), std::sqrt(0.25 * 0.75 / 100.0));
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
    const auto spec = scenario(Family::GaussianIid, 8, 30, 3, 2.0, 0.25);
    const std::vector<ProcedureId> ids{ProcedureId::SsBh, ProcedureId::NaiveBh, ProcedureId::By,
                                       ProcedureId::SplitBh, ProcedureId::BlackboxBh, ProcedureId::Locfdr};
    std::vector<std::string> rendered;
    for (const std::size_t threads : {1u, 4u, 8u}) {
        MonteCarloOptions opt;
        opt.threads = threads;
        opt.keep_outcomes = true;
        opt.block_size = 97;
        const auto res = monte_carlo(spec, ids, 600, 0.0, opt);
        std::ostringstream os;
        write_summary_csv(os, res.summary);
        write_outcomes_csv(os, res.outcomes);
        rendered.push_back(os.str());
    }
    EXPECT_EQ(rendered[0], rendered[1]);
    EXPECT_EQ(rendered[0], rendered[2]);
}

TEST(MonteCarlo, FailuresAreCountedPerProcedure) {
    // n = 0: every empirical procedure fails, the oracle still runs.
    const auto spec = scenario(Family::GaussianNegEquicorr, 2, 0, 0, 0.0, 0.5);
    const std::vector<ProcedureId> ids{ProcedureId::SsBh};
    const auto res = monte_carlo(spec, ids, 50);
    EXPECT_EQ(res.summary.at(ProcedureId::SsBh).failures, 50u);
    EXPECT_EQ(res.summary.at(ProcedureId::SsBh).reps, 0u);
    EXPECT_TRUE(std::isnan(res.summary.at(ProcedureId::SsBh).fdr_hat));
    EXPECT_EQ(res.summary.at(ProcedureId::OracleBh).reps, 50u);
}

TEST(MonteCarlo, RejectsUnsupportedPairs) {
    const auto iid = scenario(Family::GaussianIid, 4, 10, 0, 0.0, 0.2);
    const std::vector<ProcedureId> randomized{ProcedureId::RandomizedBh};
    EXPECT_THROW(monte_carlo(iid, randomized, 10), UnsupportedConfigurationError);
    const auto student = scenario(Family::StudentIid, 4, 10, 0, 0.0, 0.2);
    const std::vector<ProcedureId> locfdr{ProcedureId::Locfdr};
    EXPECT_THROW(monte_carlo(student, locfdr, 10), UnsupportedConfigurationError);
    EXPECT_THROW(monte_carlo(iid, randomized, 0), ParameterError);
}

TEST(MonteCarlo, RandomizedBhControlsFdrUnderEquicorrelation) {
    // rho = -1/(n+m-1) with n = 3, m = 2 gives randomized n = 3 and alpha (n+1)/m = 1.
    const auto spec = scenario(Family::GaussianNegEquicorr, 2, 3, 0, 0.0, 0.5);
    const std::vector<ProcedureId> ids{ProcedureId::RandomizedBh, ProcedureId::SsBh};
    const auto res = monte_carlo(spec, ids, 20000);
    const auto& r = res.summary.at(ProcedureId::RandomizedBh);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_LE(r.fdr_hat, 0.5 + 4.0 * r.se_fdr);
}

TEST(Detectability, EdgeCases) {
    auto spec = scenario(Family::GaussianIid, 10, 0, 0, 2.0, 0.5);
    EXPECT_EQ(detectability_k(spec, 0.05, 100), 0u);
    spec.m1 = 10;
    EXPECT_EQ(detectability_k(spec, 1.0, 100), 10u);
    // beta = 0 with weak signals: some replicate has zero true discoveries.
    spec.effect = 0.5;
    EXPECT_EQ(detectability_k(spec, 0.0, 2000), 0u);
}

TEST(Detectability, MatchesDirectCount) {
    auto spec = scenario(Family::GaussianIid, 10, 0, 10, 2.0, 0.5);
    const std::size_t reps = 3000;
    const std::size_t k = detectability_k(spec, 0.05, reps);
    const NullModel f0 = null_model(spec);
    std::vector<std::size_t> hits(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto d = generate(spec, r);
        hits[r] = bh_stepup(oracle_pvalues(d.x, f0), 0.25).k_hat;
    }
    auto frac_at_most = [&](std::size_t c) {
        return static_cast<double>(std::count_if(hits.begin(), hits.end(), [&](std::size_t h) { return h <= c; })) /
               reps;
    };
    if (k > 0) EXPECT_LE(frac_at_most(k - 1), 0.05);
    if (k < 10) EXPECT_GT(frac_at_most(k), 0.05);
}

TEST(ParallelFor, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(100, 4, [](std::size_t i) {
                     if (i == 57) throw NumericalError("boom");
                 }),
                 NumericalError);
    std::vector<int> seen(1000, 0);
    parallel_for(1000, 3, [&](std::size_t i) { seen[i] += 1; });
    EXPECT_EQ(std::accumulate(seen.begin(), seen.end(), 0), 1000);
}
