#pragma once

#include <functional>
#include <span>

namespace zcsync {

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_intervals = 4000;
};

struct QuadratureResult {
    double value;
    double error;
    int evaluations;
    bool converged;
};

// Globally adaptive 15-point Gauss-Kronrod integration over [a, b]. Interior
// breakpoints seed the initial partition (points outside [a, b] are ignored);
// the interval with the largest error estimate is bisected until the total
// estimate meets max(abs_tol, rel_tol * |value|). Deterministic for a given input.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints = {},
                                    const QuadratureOptions& options = {});

} // namespace zcsync
