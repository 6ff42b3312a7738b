#pragma once

#include <stdexcept>
#include <string>

namespace nklab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input does not lie in the required domain (not unit-length, not tangent, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Near-parallel / near-degenerate input where a construction needs transversality.
struct DegenerateInputError : Error {
    explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

/// A documented precondition of an operation is violated (e.g. surface not minimal).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// Internally inconsistent readings that signal the modelling assumptions fail.
struct ModelViolationError : Error {
    explicit ModelViolationError(const std::string& msg) : Error(msg) {}
};

/// Numerical differentiation could not produce a consistent jet.
struct JetError : Error {
    explicit JetError(const std::string& msg) : Error(msg) {}
};

/// Requested accuracy cannot be certified (winding not near-integer, ...).
struct AccuracyError : Error {
    explicit AccuracyError(const std::string& msg) : Error(msg) {}
};

/// Sampling / discretisation input invalid (bad node counts, empty grids, ...).
struct SamplingError : Error {
    explicit SamplingError(const std::string& msg) : Error(msg) {}
};

/// Frame construction failed (degenerate seeds, discontinuity across samples).
struct FrameError : Error {
    explicit FrameError(const std::string& msg) : Error(msg) {}
};

/// Command line / configuration usage error.
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

}  // namespace nklab
