#pragma once

#include <stdexcept>
#include <string>

namespace ipls {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct DivisionByZeroInterval : Error {
    DivisionByZeroInterval() : Error("division by an interval containing zero") {}
};

struct ZeroInRange : Error {
    ZeroInRange() : Error("zero contained in the range of the divisor form") {}
};

struct EmptySet : Error {
    EmptySet() : Error("hull of an empty set") {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error("index out of range: " + msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg = "matrix is numerically singular") : Error(msg) {}
};

struct SingularMidpoint : SingularMatrix {
    explicit SingularMidpoint(const std::string& msg = "midpoint matrix is numerically singular")
        : SingularMatrix(msg) {}
};

struct ZeroPivot : Error {
    explicit ZeroPivot(int k) : Error("zero pivot at position " + std::to_string(k)) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error("convergence failure: " + msg) {}
};

struct NotStronglyRegular : Error {
    explicit NotStronglyRegular(double rho)
        : Error("system is not strongly regular under the requested preconditioning (rho = " +
                std::to_string(rho) + ")"),
          rho(rho) {}
    double rho;
};

struct NotClassOne : Error {
    // k is 1-based
    explicit NotClassOne(int k) : Error("parameter " + std::to_string(k) + " is not of class one") {}
};

struct NotNested : Error {
    explicit NotNested(const std::string& msg = "overestimation requires nested intervals")
        : Error(msg) {}
};

struct ZeroWidthReference : Error {
    explicit ZeroWidthReference(
        const std::string& msg = "overestimation against a zero-width reference interval")
        : Error(msg) {}
};

struct ParseError : Error {
    ParseError(std::size_t pos, const std::string& msg)
        : Error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
    std::size_t position;
};

struct UnknownParameter : Error {
    explicit UnknownParameter(const std::string& name) : Error("unknown parameter: " + name) {}
};

struct UnknownExample : Error {
    explicit UnknownExample(const std::string& id) : Error("unknown example: " + id) {}
};

struct DependentColumns : Error {
    explicit DependentColumns(const std::string& msg = "strategy vectors are linearly dependent")
        : Error(msg) {}
};

struct AllSamplesSingular : Error {
    explicit AllSamplesSingular(const std::string& msg = "every sampled system was singular")
        : Error(msg) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace ipls
