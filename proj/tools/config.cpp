#include "config.hpp"

#include <fstream>

#include "ssmt/error.hpp"

namespace ssmt::cli {

double RunConfig::level() const { return alpha_frac ? Fraction::parse(*alpha_frac).value() : alpha; }

Fraction RunConfig::level_fraction() const {
    return alpha_frac ? Fraction::parse(*alpha_frac) : Fraction::approximate(alpha);
}

ScenarioSpec RunConfig::scenario() const {
    ScenarioSpec s;
    s.m = m;
    s.n = n;
    s.m1 = m1;
    s.family = parse_family(family);
    s.effect = mu;
    s.df = df;
    s.pi0 = pi0;
    s.alpha = level();
    s.seed = seed;
    s.equicorr_alternatives = equicorr_alternatives;
    s.validate();
    return s;
}

std::vector<ProcedureId> RunConfig::procedure_ids() const {
    std::vector<ProcedureId> ids;
    for (const auto& name : procedures) ids.push_back(parse_procedure(name));
    return ids;
}

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", c.command},
                       {"x_path", c.x_path},
                       {"y_path", c.y_path},
                       {"out", c.out},
                       {"preset", c.preset},
                       {"alpha", c.alpha},
                       {"m", c.m},
                       {"n", c.n},
                       {"m1", c.m1},
                       {"mu", c.mu},
                       {"family", c.family},
                       {"df", c.df},
                       {"equicorr_alternatives", c.equicorr_alternatives},
                       {"procedures", c.procedures},
                       {"reps", c.reps},
                       {"eta", c.eta},
                       {"seed", c.seed},
                       {"budget", c.budget},
                       {"threads", c.threads},
                       {"emit_svg", c.emit_svg},
                       {"keep_outcomes", c.keep_outcomes},
                       {"n_grid", c.n_grid},
                       {"m_grid", c.m_grid},
                       {"k_values", c.k_values},
                       {"runs", c.runs},
                       {"doubling", c.doubling},
                       {"beta", c.beta}};
    j["alpha_frac"] = c.alpha_frac ? nlohmann::json(*c.alpha_frac) : nlohmann::json(nullptr);
    j["rho"] = c.rho ? nlohmann::json(*c.rho) : nlohmann::json(nullptr);
    j["pi0"] = c.pi0 ? nlohmann::json(*c.pi0) : nlohmann::json(nullptr);
}

namespace {

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

}  // namespace

void from_json(const nlohmann::json& j, RunConfig& c) {
    try {
        c.command = j.value("command", c.command);
        c.x_path = j.value("x_path", c.x_path);
        c.y_path = j.value("y_path", c.y_path);
        c.out = j.value("out", c.out);
        c.preset = j.value("preset", c.preset);
        c.alpha = j.value("alpha", c.alpha);
        read_optional(j, "alpha_frac", c.alpha_frac);
        c.m = j.value("m", c.m);
        c.n = j.value("n", c.n);
        c.m1 = j.value("m1", c.m1);
        c.mu = j.value("mu", c.mu);
        c.family = j.value("family", c.family);
        read_optional(j, "rho", c.rho);
        c.df = j.value("df", c.df);
        read_optional(j, "pi0", c.pi0);
        c.equicorr_alternatives = j.value("equicorr_alternatives", c.equicorr_alternatives);
        c.procedures = j.value("procedures", c.procedures);
        c.reps = j.value("reps", c.reps);
        c.eta = j.value("eta", c.eta);
        c.seed = j.value("seed", c.seed);
        c.budget = j.value("budget", c.budget);
        c.threads = j.value("threads", c.threads);
        c.emit_svg = j.value("emit_svg", c.emit_svg);
        c.keep_outcomes = j.value("keep_outcomes", c.keep_outcomes);
        c.n_grid = j.value("n_grid", c.n_grid);
        c.m_grid = j.value("m_grid", c.m_grid);
        c.k_values = j.value("k_values", c.k_values);
        c.runs = j.value("runs", c.runs);
        c.doubling = j.value("doubling", c.doubling);
        c.beta = j.value("beta", c.beta);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bad config: ") + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    RunConfig c;
    from_json(j, c);
    return c;
}

}  // namespace ssmt::cli
