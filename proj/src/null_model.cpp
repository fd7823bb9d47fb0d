#include "ssmt/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "ssmt/error.hpp"

namespace ssmt {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

constexpr double kTabulatedEndpointTol = 1e-9;

}  // namespace

double gaussian_upper_tail(double t) noexcept { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

NullModel NullModel::gaussian(double mean, double sd) {
    if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
        throw ParameterError("gaussian null needs finite mean and positive sd");
    }
    return NullModel(Gaussian{mean, sd});
}

NullModel NullModel::student(double df) {
    if (!(df > 0.0)) throw ParameterError("student null needs df > 0");
    return NullModel(Student{df});
}

NullModel NullModel::likelihood_ratio(double mu) {
    if (!std::isfinite(mu)) throw ParameterError("likelihood-ratio null needs a finite mu");
    return NullModel(GaussianLikelihoodRatio{mu});
}

NullModel NullModel::tabulated(std::vector<double> t, std::vector<double> tail) {
    if (t.size() < 2 || t.size() != tail.size()) {
        throw ParameterError("tabulated null needs at least two (t, tail) points of equal length");
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(tail[i]) || tail[i] < 0.0 || tail[i] > 1.0) {
            throw ParameterError("tabulated null point " + std::to_string(i) + " is out of range");
        }
        if (i > 0 && !(t[i] > t[i - 1])) throw ParameterError("tabulated null grid must be strictly increasing");
        if (i > 0 && tail[i] > tail[i - 1]) throw ParameterError("tabulated null tail must be nonincreasing");
    }
    if (std::fabs(tail.front() - 1.0) > kTabulatedEndpointTol || std::fabs(tail.back()) > kTabulatedEndpointTol) {
        throw ParameterError("tabulated null tail must run from 1 down to 0 over the grid");
    }
    return NullModel(Tabulated{std::move(t), std::move(tail)});
}

double NullModel::upper_tail(double t) const {
    return std::visit(
        Overloaded{
            [t](const Gaussian& g) { return gaussian_upper_tail((t - g.mean) / g.sd); },
            [t](const Student& s) {
                if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
                return boost::math::cdf(boost::math::complement(boost::math::students_t(s.df), t));
            },
            [t](const GaussianLikelihoodRatio& lr) {
                // g1/g0 (T) = exp(mu T - mu^2/2), monotone in T for mu != 0.
                if (lr.mu == 0.0) return t <= 1.0 ? 1.0 : 0.0;
                if (t <= 0.0) return 1.0;
                const double cut = (std::log(t) + 0.5 * lr.mu * lr.mu) / lr.mu;
                return lr.mu > 0.0 ? gaussian_upper_tail(cut) : 1.0 - gaussian_upper_tail(cut);
            },
            [t](const Tabulated& tab) {
                if (!(t >= tab.t.front() && t <= tab.t.back())) {
                    throw OutOfSupportError("statistic " + std::to_string(t) + " outside tabulated null grid [" +
                                            std::to_string(tab.t.front()) + ", " + std::to_string(tab.t.back()) +
                                            "]");
                }
                const auto hi = std::lower_bound(tab.t.begin(), tab.t.end(), t);
                const auto j = static_cast<std::size_t>(hi - tab.t.begin());
                if (j == 0) return tab.tail.front();
                const double w = (t - tab.t[j - 1]) / (tab.t[j] - tab.t[j - 1]);
                return tab.tail[j - 1] + w * (tab.tail[j] - tab.tail[j - 1]);
            },
        },
        repr_);
}

}  // namespace ssmt
