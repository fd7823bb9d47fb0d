// Seeded scenario generators for the simulation study.
//
// Replicate r of a scenario draws from an engine seeded with
// child_seed(spec.seed, r); null training values are drawn before test statistics.
// Alternatives always occupy the last m1 test indices.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssmt/null_model.hpp"
#include "ssmt/procedures.hpp"
#include "ssmt/samples.hpp"

namespace ssmt {

enum class Family { GaussianIid, GaussianNegEquicorr, StudentIid, LrtTwoGroup };

std::string to_string(Family family);
Family parse_family(const std::string& name);

struct ScenarioSpec {
    std::size_t m = 10;
    std::size_t n = 10;
    std::size_t m1 = 0;
    Family family = Family::GaussianIid;
    double effect = 0.0;  // alternative shift mu (or alternative mean of T for LrtTwoGroup)
    double df = 3.0;      // StudentIid only
    std::optional<double> pi0;  // LrtTwoGroup only; must equal m0/m when given
    double alpha = 0.1;
    std::uint64_t seed = 1;
    // Allows shifted alternatives in the negative-equicorrelation family.
    bool equicorr_alternatives = false;

    std::size_t m0() const noexcept { return m - m1; }
    double effective_pi0() const noexcept { return static_cast<double>(m - m1) / static_cast<double>(m); }

    // Throws ParameterError / UnsupportedConfigurationError on inconsistent fields.
    void validate() const;
};

void to_json(nlohmann::json& j, const ScenarioSpec& spec);
void from_json(const nlohmann::json& j, ScenarioSpec& spec);

struct Dataset {
    std::optional<NullTrainingSample> y;  // absent when n = 0
    TestStatistics x;
    std::vector<bool> h0_mask;            // true = null

    // Throws EmptyNullSampleError when the scenario has n = 0.
    const NullTrainingSample& nts() const;
    std::size_t m1() const;
};

Dataset gen_gaussian_iid(const ScenarioSpec& spec, std::uint64_t replicate = 0);
Dataset gen_gaussian_neg_equicorr(const ScenarioSpec& spec, std::uint64_t replicate = 0);
Dataset gen_student_iid(const ScenarioSpec& spec, std::uint64_t replicate = 0);

struct LrtDataset {
    Dataset data;                // statistics are likelihood ratios g1(T)/g0(T)
    std::vector<double> raw_t;   // T_1..T_m behind x
};

LrtDataset gen_lrt_two_group(const ScenarioSpec& spec, std::uint64_t replicate = 0);

// Dispatches on spec.family. For LrtTwoGroup, raw T values are dropped.
Dataset generate(const ScenarioSpec& spec, std::uint64_t replicate);

// Likelihood ratio exp(mu t - mu^2/2) computed in log space; overflow maps to the
// largest finite double, which orders above every finite statistic.
double gaussian_likelihood_ratio(double t, double mu) noexcept;

// Draws T ~ N(0,1) and returns its likelihood ratio: i.i.d. draws from the null law of X.
NullSampler lrt_blackbox_sampler(double mu);

// Null draws for the scenario's marginal null law.
NullSampler null_sampler(const ScenarioSpec& spec);

// Upper tail of the null law of the test statistics.
NullModel null_model(const ScenarioSpec& spec);

// F0bar(t) = integral of g0(u) 1{g1(u) > t g0(u)} du, closed form for the Gaussian shift pair.
double lrt_oracle_tail(double t, double mu);

// General densities on [lo, hi]: the region {g1 > t g0} is located on a grid, its
// endpoints refined by bisection, and g0 integrated over it by Gauss-Kronrod.
// Throws NumericalError when the accumulated error estimate exceeds abs_tol.
double lrt_oracle_tail(double t, const Density& g0, const Density& g1, double lo, double hi,
                       double abs_tol = 1e-8);

double gaussian_density(double x, double mean = 0.0) noexcept;

}  // namespace ssmt
