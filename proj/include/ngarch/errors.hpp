#pragma once

#include <stdexcept>
#include <string>

namespace ngarch {

// Base for everything this library throws on its own behalf. CLI maps these
// to exit code 3 (numeric failure) unless they derive from ConfigError.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

// timeseries
struct FileNotFound : Error {
    explicit FileNotFound(const std::string& path) : Error("file not found: " + path) {}
};
struct ParseError : Error {
    long line;
    ParseError(const std::string& what, long line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};
struct NonPositivePrice : Error {
    std::string date;
    explicit NonPositivePrice(const std::string& d)
        : Error("non-positive price at " + d), date(d) {}
};
struct NoOverlap : Error {
    NoOverlap() : Error("fewer than 2 common dates across series") {}
};
struct SeriesTooShort : Error {
    explicit SeriesTooShort(const std::string& what = "series too short") : Error(what) {}
};

// linalg
struct NotPositiveDefinite : Error {
    int pivot;
    explicit NotPositiveDefinite(int pivot_index, const std::string& ctx = "")
        : Error("matrix not positive definite (pivot " + std::to_string(pivot_index) + ")" +
                (ctx.empty() ? "" : " " + ctx)),
          pivot(pivot_index) {}
};

// autodiff
struct ShapeMismatch : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NonScalarLoss : Error {
    NonScalarLoss() : Error("backward requires a scalar loss") {}
};

// likelihoods / fitting
struct InvalidParams : Error {
    using Error::Error;
};
struct NonPositiveVariance : Error {
    explicit NonPositiveVariance(const std::string& what = "non-positive variance") : Error(what) {}
};
struct DegreesOfFreedomTooSmall : Error {
    explicit DegreesOfFreedomTooSmall(double nu)
        : Error("degrees of freedom must exceed 2, got " + std::to_string(nu)) {}
};
struct OptimizerDiverged : Error {
    explicit OptimizerDiverged(const std::string& what = "all optimizer starts failed") : Error(what) {}
};
struct NonFiniteLoss : Error {
    int epoch;
    explicit NonFiniteLoss(int at_epoch, const std::string& detail = "")
        : Error("loss became non-finite at epoch " + std::to_string(at_epoch) +
                (detail.empty() ? "" : ": " + detail)),
          epoch(at_epoch) {}
};

// evaluation
struct TooFewDatasets : Error {
    TooFewDatasets() : Error("need at least 3 datasets") {}
};
struct TooFewPairs : Error {
    TooFewPairs() : Error("need at least 5 non-zero paired differences") {}
};
struct AllZeroDifferences : Error {
    AllZeroDifferences() : Error("all paired differences are zero") {}
};

// cli / prediction
struct DimensionMismatch : Error {
    using Error::Error;
};

}  // namespace ngarch
