#pragma once

#include <stdexcept>
#include <string>

namespace mtgv {

/// Malformed mesh file content (bad record, non-triangle face, ...).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mesh violates a structural invariant (degenerate face, non-manifold edge, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field sizes or channel counts that do not match the mesh they are used with.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Linear solve failed to reach its tolerance within the iteration budget.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace mtgv
