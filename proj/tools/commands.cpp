#include "commands.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <new>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "data_io.hpp"
#include "presets.hpp"
#include "ssmt/csv.hpp"
#include "ssmt/error.hpp"
#include "ssmt/procedures.hpp"
#include "ssmt/pvalues.hpp"
#include "ssmt/theory.hpp"
#include "svg.hpp"

namespace ssmt::cli {

namespace {

std::string blank_or(double v) { return std::isnan(v) ? std::string() : format_double(v); }

nlohmann::json manifest_of(const RunConfig& cfg) {
    nlohmann::json j = cfg;
    return j;
}

// A scenario describing user data: only the null law matters.
ScenarioSpec data_scenario(const RunConfig& cfg, std::size_t m, std::size_t n) {
    ScenarioSpec s;
    s.family = parse_family(cfg.family);
    s.m = m;
    s.n = n;
    s.effect = cfg.mu;
    s.df = cfg.df;
    s.alpha = cfg.level();
    s.seed = cfg.seed;
    return s;
}

struct ApplyRow {
    std::size_t index = 0;
    double x = 0.0;
    double p = std::numeric_limits<double>::quiet_NaN();
    bool rejected = false;
};

struct ApplySummary {
    std::string procedure;
    std::size_t k = 0;
    double v = std::numeric_limits<double>::quiet_NaN();
    double threshold = 0.0;
    double stop_index = std::numeric_limits<double>::quiet_NaN();
    std::size_t n_used = 0;
};

}  // namespace

void cmd_apply(const RunConfig& cfg, bool force, std::ostream& log) {
    if (cfg.x_path.empty()) throw ParameterError("apply needs --x <file>");
    const std::vector<double> xv = read_values(cfg.x_path);
    if (xv.empty()) throw ParameterError("test statistic file '" + cfg.x_path + "' holds no values");
    const std::vector<double> yv = cfg.y_path.empty() ? std::vector<double>{} : read_values(cfg.y_path);
    const double alpha = cfg.level();
    validate_alpha(alpha);
    const TestStatistics x(xv);
    const std::size_t m = xv.size();
    auto nts = [&] { return NullTrainingSample(yv); };

    OutputDir dir(cfg.out, force);
    std::ostringstream rej, sum;
    rej << "procedure,index,x,p_value,rejected\n";
    sum << "procedure,alpha,m,n,n_used,K,V,threshold_p,stop_index\n";

    for (const auto id : cfg.procedure_ids()) {
        std::vector<ApplyRow> rows(m);
        for (std::size_t i = 0; i < m; ++i) rows[i] = ApplyRow{i, xv[i]};
        ApplySummary s;
        s.procedure = to_string(id);
        s.n_used = yv.size();
        RejectionSet rs;
        auto copy_p = [&](const PValues& p) {
            for (std::size_t i = 0; i < m; ++i) rows[i].p = p.values[i];
        };
        auto take_diag = [&](const SsBhDiagnostics& d) {
            s.v = static_cast<double>(d.V);
            s.stop_index = static_cast<double>(d.stop_index);
        };
        switch (id) {
            case ProcedureId::SsBh: {
                const auto y = nts();
                const auto r = ss_bh(x, y, alpha);
                rs = r.rejections;
                take_diag(r.diagnostics);
                copy_p(conservative_empirical_pvalues(x, y));
                break;
            }
            case ProcedureId::NaiveBh: {
                const auto p = naive_empirical_pvalues(x, nts());
                rs = bh_stepup(p, alpha);
                copy_p(p);
                break;
            }
            case ProcedureId::By: {
                const auto y = nts();
                rs = by_procedure(x, y, alpha);
                copy_p(conservative_empirical_pvalues(x, y));
                break;
            }
            case ProcedureId::SplitBh: {
                const auto y = nts();
                rs = split_bh(x, y, alpha);
                const std::size_t b = y.size() / m;
                for (std::size_t i = 0; i < m; ++i) {
                    std::size_t count = 0;
                    for (std::size_t j = i * b; j < (i + 1) * b; ++j) count += y[j] >= xv[i] ? 1 : 0;
                    rows[i].p = conservative_value(count, b);
                }
                s.n_used = b * m;
                break;
            }
            case ProcedureId::OracleBh: {
                const auto p = oracle_pvalues(x, null_model(data_scenario(cfg, m, 0)));
                rs = bh_stepup(p, alpha);
                copy_p(p);
                s.n_used = 0;
                break;
            }
            case ProcedureId::BlackboxBh: {
                const auto spec = data_scenario(cfg, m, 0);
                const auto r = blackbox_bh(x, cfg.level_fraction(), null_sampler(spec), cfg.seed);
                rs = r.result.rejections;
                take_diag(r.result.diagnostics);
                s.n_used = r.n_used;
                break;
            }
            case ProcedureId::RandomizedBh: {
                if (!cfg.rho) throw ParameterError("randomized_bh needs --rho");
                Rng noise = make_rng(cfg.seed);
                const auto r = randomized_bh(x, EquicorrSpec{*cfg.rho, m}, alpha, noise);
                rs = r.result.rejections;
                take_diag(r.result.diagnostics);
                s.n_used = r.n_used;
                break;
            }
            case ProcedureId::Locfdr: {
                if (!cfg.pi0) throw ParameterError("locfdr needs --pi0");
                const double mu = cfg.mu;
                rs = locfdr_oracle(
                    xv, [](double u) { return gaussian_density(u); }, [mu](double u) { return gaussian_density(u, mu); },
                    *cfg.pi0, alpha);
                s.n_used = 0;
                break;
            }
        }
        for (const std::size_t i : rs.indices) rows[i].rejected = true;
        s.k = rs.k_hat;
        s.threshold = rs.threshold_p;
        for (const auto& row : rows) {
            rej << s.procedure << ',' << row.index + 1 << ',' << format_double(row.x) << ',' << blank_or(row.p) << ','
                << (row.rejected ? 1 : 0) << '\n';
        }
        sum << s.procedure << ',' << format_double(alpha) << ',' << m << ',' << yv.size() << ',' << s.n_used << ','
            << s.k << ',' << blank_or(s.v) << ',' << format_double(s.threshold) << ',' << blank_or(s.stop_index)
            << '\n';
        log << s.procedure << ": K = " << s.k;
        if (!std::isnan(s.v)) log << ", V = " << format_double(s.v);
        log << ", threshold = " << format_double(s.threshold) << '\n';
    }
    dir.write("rejections.csv", rej.str());
    dir.write("summary.csv", sum.str());
    dir.write_manifest(manifest_of(cfg));
}

void cmd_simulate(const RunConfig& cfg, bool force, std::ostream& log) {
    const ScenarioSpec spec = cfg.scenario();
    const auto ids = cfg.procedure_ids();
    MonteCarloOptions opt;
    opt.threads = cfg.threads;
    opt.keep_outcomes = cfg.keep_outcomes;
    OutputDir dir(cfg.out, force);
    const auto res = monte_carlo(spec, ids, cfg.reps, cfg.eta, opt);

    std::ostringstream summary;
    write_summary_csv(summary, res.summary);
    dir.write("summary.csv", summary.str());
    if (cfg.keep_outcomes) {
        std::ostringstream outcomes, estimands;
        write_outcomes_csv(outcomes, res.outcomes);
        dir.write("outcomes.csv", outcomes.str());
        estimands << "procedure,containment,containment_se,dominance,dominance_se\n";
        for (const auto& s : res.summary.procedures) {
            const double c = containment_frequency(res.outcomes, s.procedure);
            const double d = tdp_dominance_frequency(res.outcomes, s.procedure);
            estimands << to_string(s.procedure) << ',' << format_double(c) << ','
                      << format_double(binomial_se(c, s.reps)) << ',' << format_double(d) << ','
                      << format_double(binomial_se(d, s.reps)) << '\n';
        }
        dir.write("estimands.csv", estimands.str());
    }
    for (const auto& s : res.summary.procedures) {
        log << to_string(s.procedure) << ": FDR = " << format_double(s.fdr_hat) << " (se " << format_double(s.se_fdr)
            << "), TDR = " << format_double(s.tdr_hat) << " (se " << format_double(s.se_tdr) << "), reps = " << s.reps
            << ", failures = " << s.failures << '\n';
    }
    if (spec.n > 0) {
        const auto b = fdr_bounds(spec.alpha, spec.n, spec.m, spec.m0());
        log << "FDR bounds for ss_bh: [" << format_double(b.lower) << ", " << format_double(b.upper) << "]"
            << (b.exact ? " (exact)" : "") << '\n';
    }
    if (res.summary.excluded_replicates > 0) log << "excluded replicates: " << res.summary.excluded_replicates << '\n';
    dir.write_manifest(manifest_of(cfg));
}

void cmd_sweep(const RunConfig& cfg, bool force, std::ostream& log) {
    if (cfg.n_grid.empty()) throw ParameterError("sweep needs --n-grid");
    const ScenarioSpec base = cfg.scenario();
    Panel panel;
    panel.name = "sweep";
    panel.family = base.family;
    panel.m = base.m;
    panel.m1 = base.m1;
    panel.mu = base.effect;
    panel.alpha = base.alpha;
    panel.df = base.df;
    panel.n_values = cfg.n_grid;
    panel.reps = cfg.reps;
    panel.procedures = cfg.procedure_ids();
    panel.power = base.m1 > 0;

    OutputDir dir(cfg.out, force);
    const auto cells = run_panel(panel, cfg.budget, cfg.seed, 0, cfg.threads);
    std::ostringstream csv;
    write_panel_csv(csv, panel, cells);
    dir.write("sweep.csv", csv.str());
    if (cfg.emit_svg) {
        dir.write("sweep_fdr.svg", panel_chart_svg(csv.str(), "fdr"));
        if (panel.power) dir.write("sweep_tdr.svg", panel_chart_svg(csv.str(), "tdr"));
    }
    log << "sweep: " << cells.size() << " cells written to " << dir.path("sweep.csv").string() << '\n';
    dir.write_manifest(manifest_of(cfg));
}

void cmd_boundary(const RunConfig& cfg, bool force, std::ostream& log) {
    const double alpha = cfg.level();
    validate_alpha(alpha);
    if (cfg.k_values.empty()) throw ParameterError("boundary needs at least one k");
    const std::vector<double> m_grid = cfg.m_grid.empty() ? default_phase_m_grid() : cfg.m_grid;
    const double eta = cfg.eta > 0.0 ? cfg.eta : 0.5;

    OutputDir dir(cfg.out, force);
    nlohmann::json constants;
    constants["alpha"] = alpha;
    constants["eta"] = eta;
    constants["gamma_star"] = gamma_star(alpha, eta);
    if (alpha < 0.25) constants["gamma_lower_star"] = gamma_lower_star(alpha, eta);
    const double gamma = static_cast<double>(cfg.n) / static_cast<double>(cfg.m);
    constants["n"] = cfg.n;
    constants["m"] = cfg.m;
    constants["power_guarantee_prob"] = power_guarantee_prob(gamma, alpha, eta);

    std::vector<std::size_t> ks = cfg.k_values;
    if (cfg.m1 > 0) {
        ScenarioSpec spec = data_scenario(cfg, cfg.m, 0);
        spec.m1 = cfg.m1;
        spec.pi0 = cfg.pi0;
        MonteCarloOptions opt;
        opt.threads = cfg.threads;
        const double beta = cfg.beta;
        const std::size_t k_hat = detectability_k(spec, beta, cfg.reps, opt);
        constants["detectability_beta"] = beta;
        constants["detectable_k"] = k_hat;
        log << "estimated detectable alternatives k = " << k_hat << '\n';
        if (std::find(ks.begin(), ks.end(), k_hat) == ks.end()) ks.push_back(k_hat);
    }

    nlohmann::json points = nlohmann::json::array();
    for (const std::size_t k : ks) {
        auto rows = phase_diagram(m_grid, alpha, std::vector<std::size_t>{k}, eta);
        const PhasePoint here = classify_phase(static_cast<double>(cfg.n), static_cast<double>(cfg.m), alpha, k, eta);
        rows.push_back(here);
        std::ostringstream csv;
        write_phase_csv(csv, rows);
        const std::string stem = "phase_k" + std::to_string(k);
        dir.write(stem + ".csv", csv.str());
        if (cfg.emit_svg) dir.write(stem + ".svg", phase_chart_svg(csv.str()));
        points.push_back({{"k", k}, {"region", to_string(here.region)}, {"rule_of_thumb_n", here.rule_of_thumb_n}});
        log << "n = " << cfg.n << ", m = " << cfg.m << ", k = " << k << ": " << to_string(here.region)
            << " (rule-of-thumb n = " << format_double(here.rule_of_thumb_n) << ")\n";
    }
    constants["points"] = points;
    if (!cfg.n_grid.empty()) {
        std::vector<double> n_grid(cfg.n_grid.begin(), cfg.n_grid.end());
        std::ostringstream csv;
        write_phase_csv(csv, phase_diagram(m_grid, alpha, ks, n_grid, eta));
        dir.write("phase_map.csv", csv.str());
    }
    dir.write("constants.json", constants.dump(2) + "\n");
    dir.write_manifest(manifest_of(cfg));
}

void cmd_reproduce(const RunConfig& cfg, bool force, std::ostream& log) {
    if (cfg.preset.empty()) throw ParameterError("reproduce needs a preset (fig1..fig6)");
    const FigurePreset& preset = figure_preset(cfg.preset);
    scaled_reps(1, cfg.budget);  // validates the budget before any work
    OutputDir dir(cfg.out, force);
    log << preset.id << ": " << preset.title << '\n';

    if (preset.phase) {
        const double alpha = 0.2;
        for (const std::size_t k : {std::size_t{3}, std::size_t{100}}) {
            const auto rows = phase_panel(alpha, k, default_phase_m_grid());
            std::ostringstream csv;
            write_phase_csv(csv, rows);
            const std::string stem = "fig1_k" + std::to_string(k);
            dir.write(stem + ".csv", csv.str());
            if (cfg.emit_svg) dir.write(stem + ".svg", phase_chart_svg(csv.str()));
            log << "  k = " << k << ": (n, m) = (2.3e6, 3.3e6) is " << to_string(rows.back().region) << '\n';
        }
    } else {
        for (std::size_t i = 0; i < preset.panels.size(); ++i) {
            const Panel& panel = preset.panels[i];
            const auto cells = run_panel(panel, cfg.budget, cfg.seed, i, cfg.threads);
            std::ostringstream csv;
            write_panel_csv(csv, panel, cells);
            dir.write(panel.name + ".csv", csv.str());
            if (cfg.emit_svg) {
                dir.write(panel.name + "_fdr.svg", panel_chart_svg(csv.str(), "fdr"));
                if (panel.power) dir.write(panel.name + "_tdr.svg", panel_chart_svg(csv.str(), "tdr"));
            }
            log << "  " << panel.name << ": " << cells.size() << " cells\n";
        }
    }
    dir.write_manifest(manifest_of(cfg));
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

long peak_rss_kb() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return usage.ru_maxrss;
}

struct BenchRow {
    std::size_t n, m;
    double pvalue_seconds, ss_bh_seconds;
    std::size_t K, V;
};

BenchRow bench_once(std::size_t n, std::size_t m, double alpha, std::size_t runs, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> yv(n), xv(m);
    for (auto& v : yv) v = normal(rng);
    for (auto& v : xv) v = normal(rng);
    const TestStatistics x(std::move(xv));
    const NullTrainingSample y(std::move(yv));

    using clock = std::chrono::steady_clock;
    std::vector<double> tp, ts;
    BenchRow row{n, m, 0.0, 0.0, 0, 0};
    for (std::size_t r = 0; r < runs; ++r) {
        auto t0 = clock::now();
        const auto p = conservative_empirical_pvalues(x, y);
        auto t1 = clock::now();
        const auto res = ss_bh(x, y, alpha);
        auto t2 = clock::now();
        tp.push_back(std::chrono::duration<double>(t1 - t0).count());
        ts.push_back(std::chrono::duration<double>(t2 - t1).count());
        if (r == 0) {
            row.K = res.diagnostics.K;
            row.V = res.diagnostics.V;
        } else if (row.K != res.diagnostics.K || row.V != res.diagnostics.V || p.values.size() != m) {
            throw NumericalError("ss_bh is not reproducible across runs");
        }
    }
    row.pvalue_seconds = median(tp);
    row.ss_bh_seconds = median(ts);
    return row;
}

}  // namespace

void cmd_bench(const RunConfig& cfg, bool force, std::ostream& log) {
    if (cfg.n == 0 || cfg.m == 0) throw ParameterError("bench needs n, m >= 1");
    if (cfg.runs < 5) throw ParameterError("bench needs --runs >= 5");
    const double alpha = cfg.level();
    validate_alpha(alpha);
    OutputDir dir(cfg.out, force);

    std::vector<std::pair<std::size_t, std::size_t>> sizes{{cfg.n, cfg.m}};
    if (cfg.doubling) sizes.emplace_back(2 * cfg.n, 2 * cfg.m);
    std::ostringstream csv;
    csv << "n,m,alpha,runs,pvalues_median_s,ss_bh_median_s,peak_rss_kb,K,V\n";
    std::vector<BenchRow> rows;
    for (const auto& [n, m] : sizes) {
        BenchRow row{};
        try {
            row = bench_once(n, m, alpha, cfg.runs, cfg.seed);
        } catch (const std::bad_alloc&) {
            throw NumericalError("allocation failed for n = " + std::to_string(n) + ", m = " + std::to_string(m));
        }
        rows.push_back(row);
        csv << n << ',' << m << ',' << format_double(alpha) << ',' << cfg.runs << ','
            << format_double(row.pvalue_seconds) << ',' << format_double(row.ss_bh_seconds) << ',' << peak_rss_kb()
            << ',' << row.K << ',' << row.V << '\n';
        log << "n = " << n << ", m = " << m << ": p-values " << format_double(row.pvalue_seconds) << " s, ss_bh "
            << format_double(row.ss_bh_seconds) << " s (median of " << cfg.runs << "), K = " << row.K
            << ", V = " << row.V << ", peak RSS " << peak_rss_kb() << " kB\n";
    }
    if (rows.size() == 2 && rows[0].ss_bh_seconds > 0.0) {
        log << "doubling exponent: " << format_double(std::log2(rows[1].ss_bh_seconds / rows[0].ss_bh_seconds))
            << '\n';
    }
    dir.write("bench.csv", csv.str());
    dir.write_manifest(manifest_of(cfg));
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semi-supervised multiple testing: empirical-null BH procedures and simulations", "ssmt"};
    RunConfig flags;
    std::string config_path;
    bool force = false;
    std::string alpha_frac;
    double rho = 0.0, pi0 = 0.0;

    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
    auto bind = [&](CLI::Option* opt, std::function<void(RunConfig&)> apply) { overrides.emplace_back(opt, std::move(apply)); };

    bind(app.add_option("command", flags.command, "apply | simulate | sweep | boundary | reproduce | bench"),
         [&](RunConfig& c) { c.command = flags.command; });
    app.add_option("--config", config_path, "JSON run configuration (a manifest.json works)");
    bind(app.add_option("preset,--preset", flags.preset, "figure preset for reproduce (fig1..fig6)"), [&](RunConfig& c) { c.preset = flags.preset; });
    bind(app.add_option("--x", flags.x_path, "test statistics, one value per line"), [&](RunConfig& c) { c.x_path = flags.x_path; });
    bind(app.add_option("--y", flags.y_path, "null training sample, one value per line"),
         [&](RunConfig& c) { c.y_path = flags.y_path; });
    bind(app.add_option("--out", flags.out, "output directory"), [&](RunConfig& c) { c.out = flags.out; });
    bind(app.add_option("--alpha", flags.alpha, "nominal level"), [&](RunConfig& c) {
        c.alpha = flags.alpha;
        c.alpha_frac.reset();
    });
    bind(app.add_option("--alpha-frac", alpha_frac, "nominal level as a fraction a/b"),
         [&](RunConfig& c) { c.alpha_frac = alpha_frac; });
    bind(app.add_option("--m", flags.m, "number of tests"), [&](RunConfig& c) { c.m = flags.m; });
    bind(app.add_option("--n", flags.n, "null training sample size"), [&](RunConfig& c) { c.n = flags.n; });
    bind(app.add_option("--m1", flags.m1, "number of alternatives"), [&](RunConfig& c) { c.m1 = flags.m1; });
    bind(app.add_option("--mu", flags.mu, "alternative shift"), [&](RunConfig& c) { c.mu = flags.mu; });
    bind(app.add_option("--family", flags.family, "GaussianIid | GaussianNegEquicorr | StudentIid | LrtTwoGroup"),
         [&](RunConfig& c) { c.family = flags.family; });
    bind(app.add_option("--rho", rho, "equicorrelation for randomized_bh"), [&](RunConfig& c) { c.rho = rho; });
    bind(app.add_option("--df", flags.df, "Student degrees of freedom"), [&](RunConfig& c) { c.df = flags.df; });
    bind(app.add_option("--pi0", pi0, "null proportion"), [&](RunConfig& c) { c.pi0 = pi0; });
    bind(app.add_flag("--equicorr-alternatives", flags.equicorr_alternatives, "allow shifts in equicorrelated scenarios"),
         [&](RunConfig& c) { c.equicorr_alternatives = flags.equicorr_alternatives; });
    bind(app.add_option("--procedures", flags.procedures, "comma-separated procedure names")->delimiter(','),
         [&](RunConfig& c) { c.procedures = flags.procedures; });
    bind(app.add_option("--reps", flags.reps, "Monte-Carlo replicates"), [&](RunConfig& c) { c.reps = flags.reps; });
    bind(app.add_option("--eta", flags.eta, "oracle level slack for containment"), [&](RunConfig& c) { c.eta = flags.eta; });
    bind(app.add_option("--seed", flags.seed, "master seed"), [&](RunConfig& c) { c.seed = flags.seed; });
    bind(app.add_option("--budget", flags.budget, "replicate multiplier for presets and sweeps"),
         [&](RunConfig& c) { c.budget = flags.budget; });
    bind(app.add_option("--threads", flags.threads, "worker threads (0 = all cores)"),
         [&](RunConfig& c) { c.threads = flags.threads; });
    bind(app.add_flag("--emit-svg", flags.emit_svg, "also write SVG charts"), [&](RunConfig& c) { c.emit_svg = flags.emit_svg; });
    bind(app.add_flag("--outcomes", flags.keep_outcomes, "keep per-replicate outcomes"),
         [&](RunConfig& c) { c.keep_outcomes = flags.keep_outcomes; });
    bind(app.add_option("--n-grid", flags.n_grid, "comma-separated n values")->delimiter(','),
         [&](RunConfig& c) { c.n_grid = flags.n_grid; });
    bind(app.add_option("--m-grid", flags.m_grid, "comma-separated m values for boundary")->delimiter(','),
         [&](RunConfig& c) { c.m_grid = flags.m_grid; });
    bind(app.add_option("--k", flags.k_values, "comma-separated detectable-alternative counts")->delimiter(','),
         [&](RunConfig& c) { c.k_values = flags.k_values; });
    bind(app.add_flag("--doubling", flags.doubling, "bench: also time doubled n and m"),
         [&](RunConfig& c) { c.doubling = flags.doubling; });
    bind(app.add_option("--beta", flags.beta, "boundary: detectability tolerance"), [&](RunConfig& c) { c.beta = flags.beta; });
    bind(app.add_option("--runs", flags.runs, "bench repetitions (>= 5)"), [&](RunConfig& c) { c.runs = flags.runs; });
    app.add_flag("--force", force, "overwrite an existing run directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_code_for(ErrorKind::Usage);
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& [opt, apply] : overrides) {
            if (opt->count() > 0) apply(cfg);
        }
        if (cfg.command.empty()) throw ParameterError("no command given; see --help");
        if (cfg.command == "apply") cmd_apply(cfg, force, out);
        else if (cfg.command == "simulate") cmd_simulate(cfg, force, out);
        else if (cfg.command == "sweep") cmd_sweep(cfg, force, out);
        else if (cfg.command == "boundary") cmd_boundary(cfg, force, out);
        else if (cfg.command == "reproduce") cmd_reproduce(cfg, force, out);
        else if (cfg.command == "bench") cmd_bench(cfg, force, out);
        else throw ParameterError("unknown command '" + cfg.command + "'");
        return 0;
    } catch (const Error& e) {
        err << "ssmt: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::bad_alloc&) {
        err << "ssmt: out of memory\n";
        return exit_code_for(ErrorKind::Numerical);
    } catch (const std::exception& e) {
        err << "ssmt: " << e.what() << '\n';
        return exit_code_for(ErrorKind::Numerical);
    }
}

}  // namespace ssmt::cli
