#include "ssmt/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "ssmt/csv.hpp"
#include "ssmt/error.hpp"
#include "ssmt/rng.hpp"

namespace ssmt {

namespace {

struct RunningStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
    }
    double sd() const { return count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0; }
};

struct ReplicateRecord {
    std::vector<std::optional<ReplicateOutcome>> per_procedure;
    bool excluded = false;
};

std::uint64_t procedure_seed(std::uint64_t master, std::uint64_t replicate, ProcedureId id) {
    return splitmix64(child_seed(master, replicate) + 0x1000 + static_cast<std::uint64_t>(id));
}

void check_supported(const ScenarioSpec& spec, ProcedureId id) {
    switch (id) {
        case ProcedureId::RandomizedBh:
            if (spec.family != Family::GaussianNegEquicorr) {
                throw UnsupportedConfigurationError("randomized_bh needs the GaussianNegEquicorr family");
            }
            break;
        case ProcedureId::Locfdr:
            if (spec.family != Family::GaussianIid && spec.family != Family::LrtTwoGroup) {
                throw UnsupportedConfigurationError("locfdr needs the GaussianIid or LrtTwoGroup family");
            }
            break;
        default: break;
    }
}

RejectionSet run_procedure(ProcedureId id, const ScenarioSpec& spec, const Dataset& data,
                           const std::vector<double>& raw_t, const PValues& oracle_p, std::uint64_t replicate) {
    const double alpha = spec.alpha;
    switch (id) {
        case ProcedureId::SsBh: return ss_bh(data.x, data.nts(), alpha).rejections;
        case ProcedureId::OracleBh: return bh_stepup(oracle_p, alpha);
        case ProcedureId::NaiveBh: return bh_stepup(naive_empirical_pvalues(data.x, data.nts()), alpha);
        case ProcedureId::By: return by_procedure(data.x, data.nts(), alpha);
        case ProcedureId::SplitBh: return split_bh(data.x, data.nts(), alpha);
        case ProcedureId::BlackboxBh:
            return blackbox_bh(data.x, Fraction::approximate(alpha), null_sampler(spec),
                               procedure_seed(spec.seed, replicate, id))
                .result.rejections;
        case ProcedureId::RandomizedBh: {
            const double rho = -1.0 / static_cast<double>(spec.n + spec.m - 1);
            Rng noise = make_rng(procedure_seed(spec.seed, replicate, id));
            return randomized_bh(data.x, EquicorrSpec{rho, spec.m}, alpha, noise).result.rejections;
        }
        case ProcedureId::Locfdr: {
            const double mu = spec.effect;
            const Density g0 = [](double t) { return gaussian_density(t); };
            const Density g1 = [mu](double t) { return gaussian_density(t, mu); };
            if (spec.family == Family::LrtTwoGroup) return locfdr_oracle(raw_t, g0, g1, spec.effective_pi0(), alpha);
            return locfdr_oracle(data.x.values(), g0, g1, spec.effective_pi0(), alpha);
        }
    }
    throw ParameterError("unknown procedure");
}

bool is_subset(const RejectionSet& small, const RejectionSet& big) {
    return std::includes(big.indices.begin(), big.indices.end(), small.indices.begin(), small.indices.end());
}

}  // namespace

double fdp(const RejectionSet& r, const std::vector<bool>& h0_mask) {
    std::size_t false_rejections = 0;
    for (const std::size_t i : r.indices) false_rejections += h0_mask.at(i) ? 1 : 0;
    return static_cast<double>(false_rejections) / static_cast<double>(std::max<std::size_t>(1, r.indices.size()));
}

double tdp(const RejectionSet& r, const std::vector<bool>& h0_mask) {
    std::size_t true_rejections = 0;
    for (const std::size_t i : r.indices) true_rejections += h0_mask.at(i) ? 0 : 1;
    const auto m1 = static_cast<std::size_t>(std::count(h0_mask.begin(), h0_mask.end(), false));
    return static_cast<double>(true_rejections) / static_cast<double>(std::max<std::size_t>(1, m1));
}

std::string to_string(ProcedureId id) {
    switch (id) {
        case ProcedureId::SsBh: return "ss_bh";
        case ProcedureId::OracleBh: return "oracle_bh";
        case ProcedureId::NaiveBh: return "naive_bh";
        case ProcedureId::By: return "by";
        case ProcedureId::SplitBh: return "split_bh";
        case ProcedureId::BlackboxBh: return "blackbox_bh";
        case ProcedureId::RandomizedBh: return "randomized_bh";
        case ProcedureId::Locfdr: return "locfdr";
    }
    return "unknown";
}

ProcedureId parse_procedure(const std::string& name) {
    for (const auto id : {ProcedureId::SsBh, ProcedureId::OracleBh, ProcedureId::NaiveBh, ProcedureId::By,
                          ProcedureId::SplitBh, ProcedureId::BlackboxBh, ProcedureId::RandomizedBh,
                          ProcedureId::Locfdr}) {
        if (to_string(id) == name) return id;
    }
    throw ParameterError("unknown procedure '" + name + "'");
}

const ProcedureSummary& MetricsSummary::at(ProcedureId id) const {
    for (const auto& p : procedures) {
        if (p.procedure == id) return p;
    }
    throw ParameterError("procedure " + to_string(id) + " was not run");
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

MonteCarloResult monte_carlo(const ScenarioSpec& spec, std::span<const ProcedureId> procedures, std::size_t reps,
                             double eta, const MonteCarloOptions& options) {
    spec.validate();
    if (reps == 0) throw ParameterError("monte_carlo needs reps >= 1");
    if (!(eta >= 0.0 && eta < 1.0)) throw ParameterError("eta must lie in [0,1)");

    std::vector<ProcedureId> ids(procedures.begin(), procedures.end());
    if (std::find(ids.begin(), ids.end(), ProcedureId::OracleBh) == ids.end()) ids.push_back(ProcedureId::OracleBh);
    for (const auto id : ids) check_supported(spec, id);

    const NullModel f0 = null_model(spec);
    const double oracle_level = spec.alpha * (1.0 - eta);

    std::vector<RunningStats> fdp_stats(ids.size()), tdp_stats(ids.size());
    std::vector<std::size_t> failures(ids.size(), 0);
    MonteCarloResult result;

    const std::size_t block = std::max<std::size_t>(1, options.block_size);
    std::vector<ReplicateRecord> records;
    for (std::size_t begin = 0; begin < reps; begin += block) {
        const std::size_t count = std::min(block, reps - begin);
        records.assign(count, ReplicateRecord{});
        parallel_for(count, options.threads, [&](std::size_t offset) {
            const std::uint64_t r = begin + offset;
            auto& rec = records[offset];
            rec.per_procedure.resize(ids.size());
            std::optional<Dataset> data;
            std::vector<double> raw_t;
            try {
                if (spec.family == Family::LrtTwoGroup) {
                    auto lrt = gen_lrt_two_group(spec, r);
                    raw_t = std::move(lrt.raw_t);
                    data.emplace(std::move(lrt.data));
                } else {
                    data.emplace(generate(spec, r));
                }
            } catch (const Error&) {
                rec.excluded = true;
                return;
            }
            const PValues oracle_p = oracle_pvalues(data->x, f0);
            const RejectionSet oracle_ref = bh_stepup(oracle_p, oracle_level);
            const double oracle_tdp = tdp(oracle_ref, data->h0_mask);
            for (std::size_t p = 0; p < ids.size(); ++p) {
                try {
                    const RejectionSet rs = run_procedure(ids[p], spec, *data, raw_t, oracle_p, r);
                    rec.per_procedure[p] = ReplicateOutcome{r,
                                                            ids[p],
                                                            fdp(rs, data->h0_mask),
                                                            tdp(rs, data->h0_mask),
                                                            rs.k_hat,
                                                            is_subset(oracle_ref, rs),
                                                            oracle_tdp};
                } catch (const Error&) {
                    rec.per_procedure[p].reset();
                }
            }
        });

        for (const auto& rec : records) {
            if (rec.excluded) {
                ++result.summary.excluded_replicates;
                continue;
            }
            for (std::size_t p = 0; p < ids.size(); ++p) {
                const auto& out = rec.per_procedure[p];
                if (!out) {
                    ++failures[p];
                    continue;
                }
                fdp_stats[p].push(out->fdp);
                tdp_stats[p].push(out->tdp);
                if (options.keep_outcomes) result.outcomes.push_back(*out);
            }
        }
    }

    for (std::size_t p = 0; p < ids.size(); ++p) {
        ProcedureSummary s;
        s.procedure = ids[p];
        s.reps = fdp_stats[p].count;
        s.failures = failures[p];
        if (s.reps == 0) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.fdr_hat = s.tdr_hat = s.sd_fdp = s.sd_tdp = s.se_fdr = s.se_tdr = nan;
        } else {
            const double root = std::sqrt(static_cast<double>(s.reps));
            s.fdr_hat = fdp_stats[p].mean;
            s.tdr_hat = tdp_stats[p].mean;
            s.sd_fdp = fdp_stats[p].sd();
            s.sd_tdp = tdp_stats[p].sd();
            s.se_fdr = s.sd_fdp / root;
            s.se_tdr = s.sd_tdp / root;
        }
        result.summary.procedures.push_back(s);
    }
    return result;
}

double containment_frequency(std::span<const ReplicateOutcome> outcomes, ProcedureId procedure) {
    std::size_t total = 0, hits = 0;
    for (const auto& o : outcomes) {
        if (o.procedure != procedure) continue;
        ++total;
        hits += o.contained ? 1 : 0;
    }
    return total == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(hits) / static_cast<double>(total);
}

double tdp_dominance_frequency(std::span<const ReplicateOutcome> outcomes, ProcedureId procedure) {
    std::size_t total = 0, hits = 0;
    for (const auto& o : outcomes) {
        if (o.procedure != procedure) continue;
        ++total;
        hits += (o.oracle_tdp > o.tdp) ? 1 : 0;
    }
    return total == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(hits) / static_cast<double>(total);
}

double binomial_se(double freq, std::size_t count) {
    if (count == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(freq * (1.0 - freq) / static_cast<double>(count));
}

std::size_t detectability_k(const ScenarioSpec& spec, double beta, std::size_t reps, const MonteCarloOptions& options) {
    spec.validate();
    if (reps == 0) throw ParameterError("detectability_k needs reps >= 1");
    if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0,1]");
    const std::size_t m1 = spec.m1;
    if (m1 == 0) return 0;

    const NullModel f0 = null_model(spec);
    std::vector<std::size_t> discoveries(reps);
    parallel_for(reps, options.threads, [&](std::size_t r) {
        const Dataset data = generate(spec, r);
        const RejectionSet rs = bh_stepup(oracle_pvalues(data.x, f0), spec.alpha / 2.0);
        std::size_t hits = 0;
        for (const std::size_t i : rs.indices) hits += data.h0_mask[i] ? 0 : 1;
        discoveries[r] = hits;
    });

    // histogram[d] = number of replicates with exactly d true discoveries
    std::vector<std::size_t> histogram(m1 + 1, 0);
    for (const std::size_t d : discoveries) ++histogram[d];
    std::size_t k_hat = 0;
    std::size_t at_most = 0;  // replicates with at most k - 1 discoveries
    for (std::size_t k = 1; k <= m1; ++k) {
        at_most += histogram[k - 1];
        if (static_cast<double>(at_most) / static_cast<double>(reps) <= beta) k_hat = k;
        else break;
    }
    return k_hat;
}

void write_outcomes_csv(std::ostream& out, std::span<const ReplicateOutcome> outcomes) {
    out << "replicate,procedure,fdp,tdp,rejections,contained,oracle_tdp\n";
    for (const auto& o : outcomes) {
        out << o.replicate << ',' << to_string(o.procedure) << ',' << format_double(o.fdp) << ','
            << format_double(o.tdp) << ',' << o.rejections << ',' << (o.contained ? 1 : 0) << ','
            << format_double(o.oracle_tdp) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const MetricsSummary& summary) {
    out << "procedure,fdr_hat,se_fdr,sd_fdp,tdr_hat,se_tdr,sd_tdp,reps\n";
    for (const auto& s : summary.procedures) {
        out << to_string(s.procedure) << ',' << format_double(s.fdr_hat) << ',' << format_double(s.se_fdr) << ','
            << format_double(s.sd_fdp) << ',' << format_double(s.tdr_hat) << ',' << format_double(s.se_tdr) << ','
            << format_double(s.sd_tdp) << ',' << s.reps << '\n';
    }
}

}  // namespace ssmt
