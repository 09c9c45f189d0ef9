#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdplab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model violates one of its structural invariants (row sums, ranges, shapes).
class ModelError : public Error {
public:
    using Error::Error;
};

/// The linear system Q = r + gamma P Pi Q has no unique solution.
class NoFixedPointError : public Error {
public:
    using Error::Error;
};

/// Iterates of pseudo-MDP value iteration left the representable range.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Anchor features do not span the feature row space.
class RepresentationError : public Error {
public:
    explicit RepresentationError(const std::string& what, double worst_residual)
        : Error(what), worst_residual_(worst_residual) {}
    double worst_residual() const { return worst_residual_; }

private:
    double worst_residual_;
};

/// A requested enumeration or construction exceeds its configured budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration; `field` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

inline double sup_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

} // namespace mdplab
