#pragma once

#include <functional>

namespace ffsim::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

struct Options {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_depth = 40;
    // If true, throw NumericsError when the tolerance is not met; otherwise
    // return the best estimate with its error.
    bool throw_on_failure = true;
};

using Fn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval [a, b].
Result integrate(const Fn& f, double a, double b, const Options& opt = {});

/// Integral over [a, inf). `scale` sets the substitution pivot
/// x = a + scale*u/(1-u); pick it near the integrand's decay length.
Result integrate_to_inf(const Fn& f, double a, double scale, const Options& opt = {});

}  // namespace ffsim::quad
