// Error types shared by the library and the command-line runner.

#pragma once

#include <stdexcept>
#include <string>

namespace ssmt {

// Coarse classification used to map failures onto process exit codes.
enum class ErrorKind {
    Usage,      // bad parameters or configuration
    Data,       // malformed or unsupported input data
    Numerical,  // quadrature failure, inadmissible covariance, ...
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

struct EmptyNullSampleError : Error {
    EmptyNullSampleError() : Error(ErrorKind::Usage, "null training sample is empty (n = 0)") {}
};

struct InsufficientNullSampleError : Error {
    explicit InsufficientNullSampleError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

struct UnsupportedConfigurationError : Error {
    explicit UnsupportedConfigurationError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

struct InvalidDataError : Error {
    explicit InvalidDataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct OutOfSupportError : Error {
    explicit OutOfSupportError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct UndefinedLfdrError : Error {
    explicit UndefinedLfdrError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

struct AdmissibilityError : Error {
    explicit AdmissibilityError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

// Process exit code for an error kind: 1 usage, 2 data, 3 numerical.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace ssmt
