// Null upper-tail functions F0(t) = P(X >= t) under the null.

#pragma once

#include <variant>
#include <vector>

namespace ssmt {

class NullModel {
public:
    struct Gaussian {
        double mean = 0.0;
        double sd = 1.0;
    };
    struct Student {
        double df = 3.0;
    };
    // Law of the likelihood ratio g1(T)/g0(T) with g0 = N(0,1), g1 = N(mu,1), T ~ g0.
    struct GaussianLikelihoodRatio {
        double mu = 1.0;
    };
    // Monotone piecewise-linear interpolation through (t[i], tail[i]).
    struct Tabulated {
        std::vector<double> t;
        std::vector<double> tail;
    };

    static NullModel standard_gaussian() { return NullModel(Gaussian{}); }
    static NullModel gaussian(double mean, double sd);
    static NullModel student(double df);
    static NullModel likelihood_ratio(double mu);
    // Grid must be strictly increasing in t, nonincreasing in tail, start at tail 1 and
    // end at tail 0. Evaluating outside [t.front(), t.back()] throws OutOfSupportError.
    static NullModel tabulated(std::vector<double> t, std::vector<double> tail);

    double upper_tail(double t) const;

private:
    using Repr = std::variant<Gaussian, Student, GaussianLikelihoodRatio, Tabulated>;
    explicit NullModel(Repr repr) : repr_(std::move(repr)) {}

    Repr repr_;
};

// P(Z >= t) for Z ~ N(0,1).
double gaussian_upper_tail(double t) noexcept;

}  // namespace ssmt
