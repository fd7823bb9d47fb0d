// Frozen parameter grids for the figure presets and the panel runner shared with
// the sweep command.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ssmt/datagen.hpp"
#include "ssmt/evaluation.hpp"
#include "ssmt/theory.hpp"

namespace ssmt::cli {

struct Panel {
    std::string name;  // output file stem
    Family family = Family::GaussianIid;
    std::size_t m = 2;
    std::size_t m1 = 0;
    double mu = 0.0;
    double alpha = 0.5;
    double df = 3.0;
    std::vector<std::size_t> n_values;
    std::size_t reps = 1000;  // replicates per cell at budget 1
    std::size_t reps_large = 0;  // used instead of reps when n >= large_from
    std::size_t large_from = std::numeric_limits<std::size_t>::max();
    std::vector<ProcedureId> procedures{ProcedureId::SsBh};
    bool power = false;  // also chart TDR
};

struct FigurePreset {
    std::string id;
    std::string title;
    std::vector<Panel> panels;
    bool phase = false;  // fig1 is a phase diagram, not a simulation
};

std::vector<std::string> preset_ids();
// Throws ParameterError for an unknown id.
const FigurePreset& figure_preset(const std::string& id);

// Replicates for one cell: max(1, round(base * budget)). Throws ParameterError for budget <= 0.
std::size_t scaled_reps(std::size_t base, double budget);

struct CellResult {
    ScenarioSpec spec;
    std::size_t reps = 0;
    MetricsSummary summary;
    std::optional<FdrBounds> bounds;  // absent when n = 0
};

// Runs every n of the panel. Cell seeds derive from (seed, panel_index, n) only, so a
// panel's numbers do not depend on which other panels run alongside it.
std::vector<CellResult> run_panel(const Panel& panel, double budget, std::uint64_t seed, std::size_t panel_index,
                                  std::size_t threads, std::optional<std::size_t> reps_override = std::nullopt);

// Columns: panel,family,m,m1,mu,alpha,n,reps,procedure,fdr_hat,se_fdr,sd_fdp,tdr_hat,se_tdr,sd_tdp,
// failures,fdr_lower,fdr_upper
void write_panel_csv(std::ostream& out, const Panel& panel, const std::vector<CellResult>& cells);

// fig1 helpers: the rule-of-thumb boundary rows for one k, followed by the application-scale point.
inline constexpr double kStarN = 2.3e6;
inline constexpr double kStarM = 3.3e6;
std::vector<PhasePoint> phase_panel(double alpha, std::size_t k, const std::vector<double>& m_grid);
std::vector<double> default_phase_m_grid();

}  // namespace ssmt::cli
