#pragma once

#include <cmath>
#include <cstddef>

#include "ffs/errors.hpp"

namespace ffsim {

/// Monte Carlo point estimate with a confidence half-width (normal
/// approximation with sample variance).
struct McEstimate {
    double mean = 0.0;
    double half_width = 0.0;
    std::size_t trials_used = 0;
};

// Two-sided normal quantile via Acklam's rational approximation of the
// inverse error function; good to ~1e-9 over the confidence levels we use.
inline double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p <= 1 - plow) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

/// Streaming mean/variance accumulator (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

    McEstimate estimate(double confidence = 0.95) const {
        if (n_ == 0) throw NoSamples("no samples accumulated");
        double z = normal_quantile(0.5 + confidence / 2.0);
        double hw = n_ > 1 ? z * std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
        return {mean_, hw, n_};
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Binomial proportion estimate from success counts.
inline McEstimate proportion_estimate(std::size_t successes, std::size_t trials,
                                      double confidence = 0.95) {
    if (trials == 0) throw NoSamples("no trials");
    double p = static_cast<double>(successes) / static_cast<double>(trials);
    double z = normal_quantile(0.5 + confidence / 2.0);
    double hw = z * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {p, hw, trials};
}

}  // namespace ffsim
