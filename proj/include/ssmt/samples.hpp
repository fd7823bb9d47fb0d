// Validated input samples: the statistics under test and the null training sample.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ssmt {

// Test statistics X_1..X_m; larger values are more significant.
// Non-empty, all values finite.
class TestStatistics {
public:
    explicit TestStatistics(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

// Null training sample Y_1..Y_n drawn from the null distribution.
// Construction from an empty vector throws EmptyNullSampleError.
class NullTrainingSample {
public:
    explicit NullTrainingSample(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

}  // namespace ssmt
