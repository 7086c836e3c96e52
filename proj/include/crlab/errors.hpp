#ifndef CRLAB_ERRORS_HPP
#define CRLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crlab {

// Base class for all failures raised by the library. Tasks map these to
// exit code 3 (numerical failure) unless noted otherwise.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration / input text problems (exit code 2).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Geometry construction failures.
struct NotRegular : Error {
    explicit NotRegular(const std::string& msg) : Error(msg) {}
};
struct NotPseudoconvex : Error {
    explicit NotPseudoconvex(const std::string& msg) : Error(msg) {}
};
struct RadialProjectionFailed : Error {
    explicit RadialProjectionFailed(const std::string& msg) : Error(msg) {}
};
struct DegenerateContact : Error {
    explicit DegenerateContact(const std::string& msg) : Error(msg) {}
};
struct FitResidualTooLarge : Error {
    explicit FitResidualTooLarge(const std::string& msg) : Error(msg) {}
};

// Discretization / linear algebra failures.
struct RankCollapse : Error {
    explicit RankCollapse(const std::string& msg) : Error(msg) {}
};
struct DimensionUnsupported : Error {
    explicit DimensionUnsupported(const std::string& msg) : Error(msg) {}
};
struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error(msg) {}
};
struct AllKernel : Error {
    explicit AllKernel(const std::string& msg) : Error(msg) {}
};

// Ambient metric / solver failures.
struct DegenerateMetric : Error {
    explicit DegenerateMetric(const std::string& msg) : Error(msg) {}
};
struct LinearizationSingular : Error {
    explicit LinearizationSingular(const std::string& msg) : Error(msg) {}
};
struct NoDescent : Error {
    explicit NoDescent(const std::string& msg) : Error(msg) {}
};
struct ResidualAboveTolerance : Error {
    explicit ResidualAboveTolerance(const std::string& msg) : Error(msg) {}
};

} // namespace crlab

#endif
