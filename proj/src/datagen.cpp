#include "ssmt/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ssmt/error.hpp"
#include "ssmt/rng.hpp"

namespace ssmt {

namespace {

constexpr std::size_t kRootGrid = 4000;

std::vector<bool> make_mask(const ScenarioSpec& spec) {
    std::vector<bool> mask(spec.m, true);
    for (std::size_t i = spec.m0(); i < spec.m; ++i) mask[i] = false;
    return mask;
}

template <class Draw>
Dataset draw_iid(const ScenarioSpec& spec, std::uint64_t replicate, Draw&& draw) {
    Rng rng = make_rng(child_seed(spec.seed, replicate));
    std::vector<double> y(spec.n);
    for (auto& v : y) v = draw(rng, 0.0);
    std::vector<double> x(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) x[i] = draw(rng, i < spec.m0() ? 0.0 : spec.effect);
    std::optional<NullTrainingSample> nts;
    if (!y.empty()) nts.emplace(std::move(y));
    return Dataset{std::move(nts), TestStatistics(std::move(x)), make_mask(spec)};
}

void require_family(const ScenarioSpec& spec, Family family) {
    spec.validate();
    if (spec.family != family) {
        throw ParameterError("scenario family is " + to_string(spec.family) + ", expected " + to_string(family));
    }
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::GaussianIid: return "GaussianIid";
        case Family::GaussianNegEquicorr: return "GaussianNegEquicorr";
        case Family::StudentIid: return "StudentIid";
        case Family::LrtTwoGroup: return "LrtTwoGroup";
    }
    return "unknown";
}

Family parse_family(const std::string& name) {
    if (name == "GaussianIid" || name == "gaussian") return Family::GaussianIid;
    if (name == "GaussianNegEquicorr" || name == "equicorr") return Family::GaussianNegEquicorr;
    if (name == "StudentIid" || name == "student") return Family::StudentIid;
    if (name == "LrtTwoGroup" || name == "lrt") return Family::LrtTwoGroup;
    throw ParameterError("unknown family '" + name + "'");
}

void ScenarioSpec::validate() const {
    if (m == 0) throw ParameterError("scenario needs m >= 1");
    if (m1 > m) throw ParameterError("scenario needs m1 <= m");
    if (!std::isfinite(effect)) throw ParameterError("effect must be finite");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    if (family == Family::StudentIid && !(df > 0.0)) throw ParameterError("student family needs df > 0");
    if (family == Family::GaussianNegEquicorr) {
        if (n + m < 2) throw ParameterError("negative equicorrelation needs n + m >= 2");
        if (m1 > 0 && !equicorr_alternatives) {
            throw UnsupportedConfigurationError(
                "negative-equicorrelation scenarios are full-null only; set equicorr_alternatives to add shifts");
        }
    }
    if (pi0 && std::fabs(*pi0 - effective_pi0()) > 0.5 / static_cast<double>(m)) {
        throw ParameterError("pi0 disagrees with m0/m");
    }
}

void to_json(nlohmann::json& j, const ScenarioSpec& spec) {
    j = nlohmann::json{{"m", spec.m},
                       {"n", spec.n},
                       {"m1", spec.m1},
                       {"family", to_string(spec.family)},
                       {"effect", spec.effect},
                       {"df", spec.df},
                       {"alpha", spec.alpha},
                       {"seed", spec.seed}};
    if (spec.pi0) j["pi0"] = *spec.pi0;
    if (spec.equicorr_alternatives) j["equicorr_alternatives"] = true;
}

void from_json(const nlohmann::json& j, ScenarioSpec& spec) {
    ScenarioSpec out;
    try {
        out.m = j.value("m", out.m);
        out.n = j.value("n", out.n);
        out.m1 = j.value("m1", out.m1);
        out.family = parse_family(j.value("family", to_string(out.family)));
        out.effect = j.value("effect", out.effect);
        out.df = j.value("df", out.df);
        if (j.contains("pi0") && !j.at("pi0").is_null()) out.pi0 = j.at("pi0").get<double>();
        out.alpha = j.value("alpha", out.alpha);
        out.seed = j.value("seed", out.seed);
        out.equicorr_alternatives = j.value("equicorr_alternatives", false);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bad scenario JSON: ") + e.what());
    }
    spec = out;
}

const NullTrainingSample& Dataset::nts() const {
    if (!y) throw EmptyNullSampleError();
    return *y;
}

std::size_t Dataset::m1() const { return static_cast<std::size_t>(std::count(h0_mask.begin(), h0_mask.end(), false)); }

Dataset gen_gaussian_iid(const ScenarioSpec& spec, std::uint64_t replicate) {
    require_family(spec, Family::GaussianIid);
    std::normal_distribution<double> normal(0.0, 1.0);
    return draw_iid(spec, replicate, [&](Rng& rng, double shift) { return normal(rng) + shift; });
}

Dataset gen_gaussian_neg_equicorr(const ScenarioSpec& spec, std::uint64_t replicate) {
    require_family(spec, Family::GaussianNegEquicorr);
    const std::size_t total = spec.n + spec.m;
    Rng rng = make_rng(child_seed(spec.seed, replicate));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> w(total);
    double sum = 0.0;
    for (auto& v : w) {
        v = normal(rng);
        sum += v;
    }
    const double mean = sum / static_cast<double>(total);
    const double scale = std::sqrt(1.0 + 1.0 / static_cast<double>(total - 1));
    for (auto& v : w) v = scale * (v - mean);

    std::vector<double> y(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(spec.n));
    std::vector<double> x(w.begin() + static_cast<std::ptrdiff_t>(spec.n), w.end());
    for (std::size_t i = spec.m0(); i < spec.m; ++i) x[i] += spec.effect;
    std::optional<NullTrainingSample> nts;
    if (!y.empty()) nts.emplace(std::move(y));
    return Dataset{std::move(nts), TestStatistics(std::move(x)), make_mask(spec)};
}

Dataset gen_student_iid(const ScenarioSpec& spec, std::uint64_t replicate) {
    require_family(spec, Family::StudentIid);
    std::student_t_distribution<double> student(spec.df);
    return draw_iid(spec, replicate, [&](Rng& rng, double shift) { return student(rng) + shift; });
}

double gaussian_likelihood_ratio(double t, double mu) noexcept {
    const double log_ratio = mu * t - 0.5 * mu * mu;
    if (log_ratio >= std::log(std::numeric_limits<double>::max())) return std::numeric_limits<double>::max();
    return std::exp(log_ratio);
}

LrtDataset gen_lrt_two_group(const ScenarioSpec& spec, std::uint64_t replicate) {
    require_family(spec, Family::LrtTwoGroup);
    // Gaussian densities are handled in log space, so no draw ever needs resampling.
    Rng rng = make_rng(child_seed(spec.seed, replicate));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double mu = spec.effect;
    std::vector<double> y(spec.n);
    for (auto& v : y) v = gaussian_likelihood_ratio(normal(rng), mu);
    std::vector<double> raw(spec.m);
    std::vector<double> x(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        raw[i] = normal(rng) + (i < spec.m0() ? 0.0 : mu);
        x[i] = gaussian_likelihood_ratio(raw[i], mu);
    }
    std::optional<NullTrainingSample> nts;
    if (!y.empty()) nts.emplace(std::move(y));
    return LrtDataset{Dataset{std::move(nts), TestStatistics(std::move(x)), make_mask(spec)}, std::move(raw)};
}

Dataset generate(const ScenarioSpec& spec, std::uint64_t replicate) {
    switch (spec.family) {
        case Family::GaussianIid: return gen_gaussian_iid(spec, replicate);
        case Family::GaussianNegEquicorr: return gen_gaussian_neg_equicorr(spec, replicate);
        case Family::StudentIid: return gen_student_iid(spec, replicate);
        case Family::LrtTwoGroup: return gen_lrt_two_group(spec, replicate).data;
    }
    throw ParameterError("unknown family");
}

NullSampler lrt_blackbox_sampler(double mu) {
    return [mu](Rng& rng) {
        std::normal_distribution<double> normal(0.0, 1.0);
        return gaussian_likelihood_ratio(normal(rng), mu);
    };
}

NullSampler null_sampler(const ScenarioSpec& spec) {
    switch (spec.family) {
        case Family::GaussianIid:
        case Family::GaussianNegEquicorr:
            return [](Rng& rng) {
                std::normal_distribution<double> normal(0.0, 1.0);
                return normal(rng);
            };
        case Family::StudentIid:
            return [df = spec.df](Rng& rng) {
                std::student_t_distribution<double> student(df);
                return student(rng);
            };
        case Family::LrtTwoGroup: return lrt_blackbox_sampler(spec.effect);
    }
    throw ParameterError("unknown family");
}

NullModel null_model(const ScenarioSpec& spec) {
    switch (spec.family) {
        case Family::GaussianIid:
        case Family::GaussianNegEquicorr: return NullModel::standard_gaussian();
        case Family::StudentIid: return NullModel::student(spec.df);
        case Family::LrtTwoGroup: return NullModel::likelihood_ratio(spec.effect);
    }
    throw ParameterError("unknown family");
}

double gaussian_density(double x, double mean) noexcept {
    const double z = x - mean;
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double lrt_oracle_tail(double t, double mu) {
    if (!(t >= 0.0)) throw ParameterError("likelihood-ratio threshold must be >= 0");
    return NullModel::likelihood_ratio(mu).upper_tail(t);
}

double lrt_oracle_tail(double t, const Density& g0, const Density& g1, double lo, double hi, double abs_tol) {
    if (!(t >= 0.0)) throw ParameterError("likelihood-ratio threshold must be >= 0");
    if (!(hi > lo)) throw ParameterError("integration window must satisfy lo < hi");
    const auto inside = [&](double u) { return g1(u) > t * g0(u); };

    // Endpoints of the maximal intervals where the indicator is 1.
    std::vector<std::pair<double, double>> pieces;
    const double step = (hi - lo) / static_cast<double>(kRootGrid);
    double prev_u = lo;
    bool prev_in = inside(lo);
    double start = lo;
    const auto refine = [&](double a, double b, bool a_in) {
        for (int it = 0; it < 100 && b - a > 1e-14 * std::max(1.0, std::fabs(a)); ++it) {
            const double mid = 0.5 * (a + b);
            if (inside(mid) == a_in) a = mid; else b = mid;
        }
        return 0.5 * (a + b);
    };
    for (std::size_t i = 1; i <= kRootGrid; ++i) {
        const double u = i == kRootGrid ? hi : lo + step * static_cast<double>(i);
        const bool now_in = inside(u);
        if (now_in != prev_in) {
            const double root = refine(prev_u, u, prev_in);
            if (prev_in) pieces.emplace_back(start, root);
            else start = root;
        }
        prev_u = u;
        prev_in = now_in;
    }
    if (prev_in) pieces.emplace_back(start, hi);

    double total = 0.0;
    double total_err = 0.0;
    for (const auto& [a, b] : pieces) {
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g0, a, b, 15, 1e-13, &err);
        total_err += err;
    }
    if (total_err > abs_tol) {
        throw NumericalError("quadrature error estimate " + std::to_string(total_err) + " exceeds tolerance " +
                             std::to_string(abs_tol) + " over " + std::to_string(pieces.size()) + " pieces");
    }
    return total;
}

}  // namespace ssmt
