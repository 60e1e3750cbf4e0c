#pragma once

#include <functional>

namespace uavcov {

struct QuadratureOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    int max_intervals = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]: the interval with the
/// largest error estimate is bisected until the total estimate is below
/// max(abs_tol, rel_tol * |value|). Throws QuadratureError naming the worst
/// interval when max_intervals is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace uavcov
