#include "ssmt/samples.hpp"

#include <cmath>
#include <string>

#include "ssmt/error.hpp"

namespace ssmt {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidDataError(std::string(what) + ": non-finite value at position " +
                                   std::to_string(i + 1));
        }
    }
}

}  // namespace

TestStatistics::TestStatistics(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ParameterError("test statistics are empty (m = 0)");
    require_finite(values_, "test statistics");
}

NullTrainingSample::NullTrainingSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw EmptyNullSampleError();
    require_finite(values_, "null training sample");
}

}  // namespace ssmt
