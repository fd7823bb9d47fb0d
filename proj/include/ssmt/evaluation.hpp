// FDP/TDP, Monte-Carlo estimation of FDR/TDR, and the power-comparison estimands.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <functional>
#include <vector>

#include "ssmt/datagen.hpp"
#include "ssmt/procedures.hpp"

namespace ssmt {

// false rejections / max(1, |R|)
double fdp(const RejectionSet& r, const std::vector<bool>& h0_mask);
// true rejections / max(1, m1)
double tdp(const RejectionSet& r, const std::vector<bool>& h0_mask);

enum class ProcedureId { SsBh, OracleBh, NaiveBh, By, SplitBh, BlackboxBh, RandomizedBh, Locfdr };

std::string to_string(ProcedureId id);
ProcedureId parse_procedure(const std::string& name);

struct ReplicateOutcome {
    std::uint64_t replicate = 0;
    ProcedureId procedure = ProcedureId::SsBh;
    double fdp = 0.0;
    double tdp = 0.0;
    std::size_t rejections = 0;
    bool contained = false;   // oracle BH at alpha (1 - eta) is a subset of this procedure's set
    double oracle_tdp = 0.0;  // TDP of oracle BH at alpha (1 - eta)
};

struct ProcedureSummary {
    ProcedureId procedure = ProcedureId::SsBh;
    double fdr_hat = 0.0;
    double tdr_hat = 0.0;
    double sd_fdp = 0.0;
    double sd_tdp = 0.0;
    double se_fdr = 0.0;  // sd_fdp / sqrt(reps)
    double se_tdr = 0.0;
    std::size_t reps = 0;      // replicates that produced an outcome
    std::size_t failures = 0;  // replicates where the procedure raised an error
};

struct MetricsSummary {
    std::vector<ProcedureSummary> procedures;
    std::size_t excluded_replicates = 0;  // data generation failures

    const ProcedureSummary& at(ProcedureId id) const;
};

struct MonteCarloOptions {
    std::size_t threads = 1;      // 0 = hardware concurrency
    bool keep_outcomes = false;
    std::size_t block_size = 1 << 14;
};

struct MonteCarloResult {
    MetricsSummary summary;
    std::vector<ReplicateOutcome> outcomes;  // ordered by (replicate, procedure); empty unless kept
};

// Runs every requested procedure on `reps` seeded replicates of spec. The oracle BH at
// alpha is always included. Aggregation is an ordered fold over replicate indices, so
// results do not depend on the thread count.
MonteCarloResult monte_carlo(const ScenarioSpec& spec, std::span<const ProcedureId> procedures, std::size_t reps,
                             double eta = 0.0, const MonteCarloOptions& options = {});

// Frequency of oracle-containment among the outcomes of one procedure.
double containment_frequency(std::span<const ReplicateOutcome> outcomes, ProcedureId procedure = ProcedureId::SsBh);
// Frequency of oracle TDP strictly exceeding the procedure's TDP.
double tdp_dominance_frequency(std::span<const ReplicateOutcome> outcomes,
                               ProcedureId procedure = ProcedureId::SsBh);

// Standard error of an empirical frequency.
double binomial_se(double freq, std::size_t count);

// Largest k in [0, m1] such that the empirical frequency of
// {|H1 and oracle BH at alpha/2| <= k - 1} is at most beta.
std::size_t detectability_k(const ScenarioSpec& spec, double beta, std::size_t reps,
                            const MonteCarloOptions& options = {});

// Columns: replicate,procedure,fdp,tdp,rejections,contained,oracle_tdp
void write_outcomes_csv(std::ostream& out, std::span<const ReplicateOutcome> outcomes);
// Columns: procedure,fdr_hat,se_fdr,sd_fdp,tdr_hat,se_tdr,sd_tdp,reps
void write_summary_csv(std::ostream& out, const MetricsSummary& summary);

// Runs fn(i) for i in [0, count) on `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace ssmt
