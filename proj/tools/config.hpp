// Run configuration shared by every subcommand. The JSON form doubles as the run
// manifest, so a manifest can be fed back through --config to repeat a run.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssmt/datagen.hpp"
#include "ssmt/evaluation.hpp"
#include "ssmt/fraction.hpp"

namespace ssmt::cli {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string command;
    std::string x_path;
    std::string y_path;
    std::string out = "ssmt_out";
    std::string preset;

    double alpha = 0.2;
    std::optional<std::string> alpha_frac;
    std::size_t m = 10;
    std::size_t n = 100;
    std::size_t m1 = 0;
    double mu = 0.0;
    std::string family = "GaussianIid";
    std::optional<double> rho;
    double df = 3.0;
    std::optional<double> pi0;
    bool equicorr_alternatives = false;

    std::vector<std::string> procedures{"ss_bh"};
    std::size_t reps = 1000;
    double eta = 0.0;
    std::uint64_t seed = 20240101;
    double budget = 1.0;
    std::size_t threads = 1;
    bool emit_svg = false;
    bool keep_outcomes = false;

    std::vector<std::size_t> n_grid;
    std::vector<double> m_grid;
    std::vector<std::size_t> k_values{3, 100};
    std::size_t runs = 5;
    bool doubling = false;  // bench: also time 2n, 2m
    double beta = 0.05;     // boundary: detectability tolerance

    // Effective alpha: the fraction if given, else the decimal.
    double level() const;
    // alpha as a fraction: parsed from alpha_frac, else approximated from alpha.
    Fraction level_fraction() const;
    ScenarioSpec scenario() const;
    std::vector<ProcedureId> procedure_ids() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
// Missing keys keep their defaults; unknown keys are ignored.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config(const std::string& path);

}  // namespace ssmt::cli
