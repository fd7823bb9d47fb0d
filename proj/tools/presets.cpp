#include "presets.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "ssmt/csv.hpp"
#include "ssmt/error.hpp"
#include "ssmt/rng.hpp"

namespace ssmt::cli {

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t n = lo; n <= hi; ++n) v.push_back(n);
    return v;
}

std::vector<std::size_t> with_tail(std::vector<std::size_t> v, std::initializer_list<std::size_t> tail) {
    v.insert(v.end(), tail);
    return v;
}

Panel fdr_panel(std::string name, Family family, std::size_t m, std::vector<std::size_t> n_values, std::size_t reps,
                std::vector<ProcedureId> procs) {
    Panel p;
    p.name = std::move(name);
    p.family = family;
    p.m = m;
    p.alpha = 0.5;
    p.n_values = std::move(n_values);
    p.reps = reps;
    p.procedures = std::move(procs);
    return p;
}

Panel power_panel(std::string name, std::size_t m, std::size_t m1, double mu, double alpha,
                  std::vector<std::size_t> n_values, std::size_t reps) {
    Panel p;
    p.name = std::move(name);
    p.family = Family::GaussianIid;
    p.m = m;
    p.m1 = m1;
    p.mu = mu;
    p.alpha = alpha;
    p.n_values = std::move(n_values);
    p.reps = reps;
    p.power = true;
    return p;
}

std::map<std::string, FigurePreset> build_presets() {
    std::map<std::string, FigurePreset> out;

    FigurePreset fig1;
    fig1.id = "fig1";
    fig1.title = "phase diagram, alpha = 0.2, k in {3, 100}";
    fig1.phase = true;
    out[fig1.id] = fig1;

    FigurePreset fig2;
    fig2.id = "fig2";
    fig2.title = "full-null FDR under maximal negative equicorrelation, m = 2";
    fig2.panels.push_back(fdr_panel("fig2", Family::GaussianNegEquicorr, 2, range(0, 20), 1'000'000, {ProcedureId::SsBh}));
    out[fig2.id] = fig2;

    FigurePreset fig3;
    fig3.id = "fig3";
    fig3.title = "full-null FDR, i.i.d. and negatively equicorrelated";
    const std::vector<ProcedureId> fig3_procs{ProcedureId::SsBh, ProcedureId::NaiveBh};
    fig3.panels.push_back(fdr_panel("fig3_m2_iid", Family::GaussianIid, 2, range(1, 20), 100'000, fig3_procs));
    fig3.panels.push_back(fdr_panel("fig3_m2_equicorr", Family::GaussianNegEquicorr, 2, range(1, 20), 100'000, fig3_procs));
    fig3.panels.push_back(fdr_panel("fig3_m10_iid", Family::GaussianIid, 10, range(1, 60), 10'000, fig3_procs));
    fig3.panels.push_back(
        fdr_panel("fig3_m10_equicorr", Family::GaussianNegEquicorr, 10, range(1, 60), 10'000, fig3_procs));
    out[fig3.id] = fig3;

    const auto grid4 = with_tail(range(1, 20), {25, 30, 40, 50, 60, 80, 100, 150, 200});
    const auto grid5 = with_tail(grid4, {300, 400});

    FigurePreset fig4;
    fig4.id = "fig4";
    fig4.title = "dense case, m1 = m/2, alpha = 0.5";
    fig4.panels.push_back(power_panel("fig4_m10_mu1", 10, 5, 1.0, 0.5, grid4, 10'000));
    fig4.panels.push_back(power_panel("fig4_m10_mu2", 10, 5, 2.0, 0.5, grid4, 10'000));
    fig4.panels.push_back(power_panel("fig4_m100_mu1", 100, 50, 1.0, 0.5, grid4, 1'000));
    fig4.panels.push_back(power_panel("fig4_m100_mu2", 100, 50, 2.0, 0.5, grid4, 1'000));
    out[fig4.id] = fig4;

    FigurePreset fig5;
    fig5.id = "fig5";
    fig5.title = "sparse case, m1 = 1, alpha = 0.5";
    fig5.panels.push_back(power_panel("fig5_m10_mu1", 10, 1, 1.0, 0.5, grid5, 10'000));
    fig5.panels.push_back(power_panel("fig5_m10_mu3", 10, 1, 3.0, 0.5, grid5, 10'000));
    fig5.panels.push_back(power_panel("fig5_m100_mu1", 100, 1, 1.0, 0.5, grid5, 1'000));
    fig5.panels.push_back(power_panel("fig5_m100_mu3", 100, 1, 3.0, 0.5, grid5, 1'000));
    out[fig5.id] = fig5;

    FigurePreset fig6;
    fig6.id = "fig6";
    fig6.title = "m = 1000, alpha = 0.2";
    const double amp = std::sqrt(2.0 * std::log(1000.0));
    const std::vector<std::size_t> grid6{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000};
    for (auto [name, m1, mu] : {std::tuple{"fig6_dense", std::size_t{500}, 0.5 * amp},
                                std::tuple{"fig6_sparse", std::size_t{10}, amp}}) {
        Panel p = power_panel(name, 1000, m1, mu, 0.2, grid6, 1'000);
        p.reps_large = 100;
        p.large_from = 1000;
        fig6.panels.push_back(p);
    }
    out[fig6.id] = fig6;
    return out;
}

const std::map<std::string, FigurePreset>& presets() {
    static const auto table = build_presets();
    return table;
}

}  // namespace

std::vector<std::string> preset_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : presets()) ids.push_back(id);
    return ids;
}

const FigurePreset& figure_preset(const std::string& id) {
    const auto it = presets().find(id);
    if (it == presets().end()) throw ParameterError("unknown preset '" + id + "' (expected fig1..fig6)");
    return it->second;
}

std::size_t scaled_reps(std::size_t base, double budget) {
    if (!(budget > 0.0) || !std::isfinite(budget)) throw ParameterError("budget must be a positive number");
    const double r = std::round(static_cast<double>(base) * budget);
    return r < 1.0 ? 1 : static_cast<std::size_t>(r);
}

std::vector<CellResult> run_panel(const Panel& panel, double budget, std::uint64_t seed, std::size_t panel_index,
                                  std::size_t threads, std::optional<std::size_t> reps_override) {
    std::vector<CellResult> cells;
    const std::uint64_t panel_seed = child_seed(seed, panel_index + 1);
    for (const std::size_t n : panel.n_values) {
        CellResult cell;
        cell.spec.family = panel.family;
        cell.spec.m = panel.m;
        cell.spec.m1 = panel.m1;
        cell.spec.n = n;
        cell.spec.effect = panel.mu;
        cell.spec.alpha = panel.alpha;
        cell.spec.df = panel.df;
        cell.spec.seed = child_seed(panel_seed, n);
        const std::size_t base = n >= panel.large_from ? panel.reps_large : panel.reps;
        cell.reps = reps_override ? *reps_override : scaled_reps(base, budget);
        MonteCarloOptions opt;
        opt.threads = threads;
        cell.summary = monte_carlo(cell.spec, panel.procedures, cell.reps, 0.0, opt).summary;
        if (n > 0) cell.bounds = fdr_bounds(panel.alpha, n, panel.m, panel.m - panel.m1);
        cells.push_back(std::move(cell));
    }
    return cells;
}

void write_panel_csv(std::ostream& out, const Panel& panel, const std::vector<CellResult>& cells) {
    out << "panel,family,m,m1,mu,alpha,n,reps,procedure,fdr_hat,se_fdr,sd_fdp,tdr_hat,se_tdr,sd_tdp,failures,"
           "fdr_lower,fdr_upper\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& cell : cells) {
        for (const auto& s : cell.summary.procedures) {
            out << panel.name << ',' << to_string(cell.spec.family) << ',' << cell.spec.m << ',' << cell.spec.m1 << ','
                << format_double(cell.spec.effect) << ',' << format_double(cell.spec.alpha) << ',' << cell.spec.n
                << ',' << cell.reps << ',' << to_string(s.procedure) << ',' << format_double(s.fdr_hat) << ','
                << format_double(s.se_fdr) << ',' << format_double(s.sd_fdp) << ',' << format_double(s.tdr_hat)
                << ',' << format_double(s.se_tdr) << ',' << format_double(s.sd_tdp) << ',' << s.failures << ','
                << format_double(cell.bounds ? cell.bounds->lower : nan) << ','
                << format_double(cell.bounds ? cell.bounds->upper : nan) << '\n';
        }
    }
}

std::vector<double> default_phase_m_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 32; ++i) grid.push_back(std::pow(10.0, i / 4.0));
    return grid;
}

std::vector<PhasePoint> phase_panel(double alpha, std::size_t k, const std::vector<double>& m_grid) {
    const std::vector<std::size_t> ks{k};
    auto rows = phase_diagram(m_grid, alpha, ks);
    rows.push_back(classify_phase(kStarN, kStarM, alpha, k));
    return rows;
}

}  // namespace ssmt::cli
