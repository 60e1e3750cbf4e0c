#pragma once

#include <stdexcept>
#include <string>

namespace uavcov {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed config document, unknown/missing key, or violated invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Rectenna target output above rectify(P_sat).
class UnreachableError : public Error {
public:
    using Error::Error;
};

/// Polynomial fit rejected (underdetermined or non-monotone output).
class FitError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature hit its subdivision budget before meeting tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double worst_lo, double worst_hi, double worst_err)
        : Error(what), worst_lo_(worst_lo), worst_hi_(worst_hi), worst_err_(worst_err) {}

    double worst_lo() const { return worst_lo_; }
    double worst_hi() const { return worst_hi_; }
    double worst_error() const { return worst_err_; }

private:
    double worst_lo_;
    double worst_hi_;
    double worst_err_;
};

}  // namespace uavcov
