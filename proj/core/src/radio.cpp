#include "ffs/radio.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "ffs/errors.hpp"
#include "ffs/quadrature.hpp"

namespace ffsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// All coverage integrals work in the dimensionless radius z = r * sqrt(pi*L),
// which makes the ordered-distance kernels O(1):
//   nearest pdf        -> 2 z exp(-z^2)
//   ordered pair pdf   -> 4 z1 z2 exp(-z2^2)
// and the Laplace exponent becomes z_R^2 * I(t0) with
//   I(t0) = \int_1^inf du / (1 + t0 u^{alpha/2}),   t0 = mu R^alpha / s.

double laplace_profile(double t0, double alpha) {
    if (!std::isfinite(t0)) return 0.0;
    if (alpha == 4.0) {
        // \int_1^inf du / (1 + t0 u^2) = atan(1/sqrt(t0)) / sqrt(t0)
        double s = std::sqrt(t0);
        return std::atan(1.0 / s) / s;
    }
    quad::Options opt;
    opt.abs_tol = 1e-11;
    auto f = [&](double u) { return 1.0 / (1.0 + t0 * std::pow(u, alpha / 2.0)); };
    double scale = std::max(1.0, std::pow(t0, -2.0 / alpha));
    return quad::integrate_to_inf(f, 1.0, scale, opt).value;
}

struct QueryContext {
    double alpha;
    double big_b;       // B(gamma) = gamma^{1/alpha}
    double noise_coef;  // (1/fading_mean) * T * d0^alpha * sigma_tilde^2
    double threshold;   // T
    double i_self;      // I(1/T): exponent profile when exclusion = signal radius
    double i_dm;        // I(gamma/T): exclusion at B r1 given the empty annulus
};

QueryContext make_context(const CoverageQuery& q) {
    q.model.validate();
    if (!(q.gamma_linear >= 1.0)) throw InvalidThreshold("gamma must be >= 1");
    if (!(q.sinr_threshold_linear > 0.0)) throw InvalidThreshold("T must be positive");
    const double alpha = q.model.pathloss_exponent;
    const double d0 = 1.0 / std::sqrt(kPi * q.model.du_density);
    QueryContext ctx;
    ctx.alpha = alpha;
    ctx.big_b = std::pow(q.gamma_linear, 1.0 / alpha);
    ctx.threshold = q.sinr_threshold_linear;
    ctx.noise_coef = q.sinr_threshold_linear * std::pow(d0, alpha) *
                     q.model.normalized_noise() / q.model.fading_mean;
    ctx.i_self = laplace_profile(1.0 / q.sinr_threshold_linear, alpha);
    ctx.i_dm = laplace_profile(q.gamma_linear / q.sinr_threshold_linear, alpha);
    return ctx;
}

// exp(-mu T r1^alpha sigma^2) in z coordinates.
double noise_term(const QueryContext& ctx, double z) {
    return std::exp(-ctx.noise_coef * std::pow(z, ctx.alpha));
}

// DM integrand over z1. The r2 >= B r1 mass is integrated in closed form,
// and conditioning on that event empties the annulus (z, B z), so the
// interference field starts at B z: its exponent is (B z)^2 I(gamma / T).
double dm_kernel(const QueryContext& ctx, double z) {
    double b2 = ctx.big_b * ctx.big_b;
    double exponent = b2 * (1.0 + ctx.i_dm) * z * z;
    return 2.0 * z * std::exp(-exponent) * noise_term(ctx, z);
}

// CM success probability for serving pair (z1, z2), interference beyond z2.
double cm_bracket(const QueryContext& ctx, double z1, double z2) {
    auto joint_term = [&](double z) {
        // exclusion fixed at z2, signal radius z
        double t0 = std::pow(z2 / z, ctx.alpha) / ctx.threshold;
        return noise_term(ctx, z) * std::exp(-z2 * z2 * laplace_profile(t0, ctx.alpha));
    };
    double w = std::pow(z2 / z1, ctx.alpha) - 1.0;
    if (w < 1e-6) {
        // Removable nu-singularity at z2 = z1: bracket -> F(z1) - (z1/alpha) F'(z1).
        double h = 1e-4 * z1;
        double deriv = (joint_term(z1 + h) - joint_term(z1 - h)) / (2.0 * h);
        return joint_term(z1) - z1 / ctx.alpha * deriv;
    }
    double nu = 1.0 / w;
    double second = noise_term(ctx, z2) * std::exp(-z2 * z2 * ctx.i_self);
    return (1.0 + nu) * joint_term(z1) - nu * second;
}

double cm_inner(const QueryContext& ctx, double z1) {
    if (ctx.big_b <= 1.0) return 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-10;
    auto f = [&](double z2) {
        return cm_bracket(ctx, z1, z2) * 4.0 * z1 * z2 * std::exp(-z2 * z2);
    };
    return quad::integrate(f, z1, ctx.big_b * z1, opt).value;
}

double outer_integral(const quad::Fn& f) {
    quad::Options opt;
    opt.abs_tol = 1e-8;
    return quad::integrate_to_inf(f, 0.0, 1.0, opt).value;
}

}  // namespace

double sinr_sample(const ServingSet& serving, std::span<const double> all_distances_m,
                   std::span<const double> fading_draws, const NetworkModel& model) {
    if (serving.du_indices.empty()) throw EmptyServingSet("serving set is empty");
    if (all_distances_m.size() != fading_draws.size())
        throw InvalidModel("distance/fading size mismatch");
    const double alpha = model.pathloss_exponent;
    const double r_edge = serving.distances_m.back();

    double signal = 0.0;
    for (std::size_t k = 0; k < serving.du_indices.size(); ++k) {
        auto i = static_cast<std::size_t>(serving.du_indices[k]);
        signal += fading_draws[i] * std::pow(all_distances_m[i], -alpha);
    }
    double interference = 0.0;
    for (std::size_t i = 0; i < all_distances_m.size(); ++i) {
        bool is_serving = std::find(serving.du_indices.begin(), serving.du_indices.end(),
                                    static_cast<int>(i)) != serving.du_indices.end();
        if (!is_serving && all_distances_m[i] > r_edge)
            interference += fading_draws[i] * std::pow(all_distances_m[i], -alpha);
    }
    return signal / (interference + model.normalized_noise());
}

double interference_laplace(double s, double exclusion_radius_m, const NetworkModel& model) {
    model.validate();
    if (s < 0.0) throw InvalidModel("s must be nonnegative");
    if (!(exclusion_radius_m > 0.0)) throw InvalidModel("exclusion radius must be positive");
    if (s == 0.0) return 1.0;
    const double mu = 1.0 / model.fading_mean;  // exponential rate
    const double alpha = model.pathloss_exponent;
    double t0 = mu * std::pow(exclusion_radius_m, alpha) / s;
    double zr2 = kPi * model.du_density * exclusion_radius_m * exclusion_radius_m;
    return std::exp(-zr2 * laplace_profile(t0, alpha));
}

double coverage_dm(const CoverageQuery& query) {
    QueryContext ctx = make_context(query);
    return outer_integral([&](double z) { return dm_kernel(ctx, z); });
}

double coverage_cm(const CoverageQuery& query) {
    QueryContext ctx = make_context(query);
    if (ctx.big_b <= 1.0) return 0.0;
    return outer_integral([&](double z1) { return cm_inner(ctx, z1); });
}

double total_coverage(const CoverageQuery& query) {
    QueryContext ctx = make_context(query);
    return outer_integral([&](double z1) { return dm_kernel(ctx, z1) + cm_inner(ctx, z1); });
}

double g_function(double x, double sinr_threshold, double alpha, double mu) {
    if (x < 0.0) throw InvalidModel("x must be nonnegative");
    if (x == 0.0) return 0.0;  // lower-incomplete-gamma continuation
    const double a = 2.0 / alpha;
    // Gamma(-a, y) - Gamma(-a) = (gamma_lower(1-a, y) + y^-a e^-y) / a
    auto gamma_diff = [&](double y) {
        return (boost::math::tgamma_lower(1.0 - a, y) + std::pow(y, -a) * std::exp(-y)) / a;
    };
    quad::Options opt;
    opt.abs_tol = 1e-10;
    auto f = [&](double h) {
        if (h <= 0.0) return 0.0;
        double y = mu * sinr_threshold * h * x;
        return std::pow(h, a) * gamma_diff(y) * mu * std::exp(-mu * h);
    };
    double integral = quad::integrate_to_inf(f, 0.0, 1.0 / mu, opt).value;
    return 2.0 * std::pow(mu * sinr_threshold, a) / alpha * integral;
}

RateResult ergodic_rate(double gamma_linear, const NetworkModel& model) {
    model.validate();
    if (!(gamma_linear >= 1.0)) throw InvalidThreshold("gamma must be >= 1");

    auto coverage_at = [&](double theta) {
        CoverageQuery q;
        q.sinr_threshold_linear = theta;
        q.gamma_linear = gamma_linear;
        q.model = model;
        return total_coverage(q);
    };
    // Integrate over xi = ln(1+theta): R = \int_0^inf P(e^xi - 1) dxi. The
    // integrand decays like exp(-2 xi / alpha); grow the cutoff until the
    // geometric tail bound is negligible.
    const double alpha = model.pathloss_exponent;
    double xi_max = 16.0;
    double tail = coverage_at(std::expm1(xi_max)) * alpha / 2.0;
    while (tail > 1e-7 && xi_max < 256.0) {
        xi_max *= 2.0;
        tail = coverage_at(std::expm1(xi_max)) * alpha / 2.0;
    }
    quad::Options opt;
    opt.abs_tol = 1e-5;
    opt.max_depth = 12;
    opt.throw_on_failure = true;
    auto integrand = [&](double xi) {
        return xi <= 0.0 ? 1.0 : coverage_at(std::expm1(xi));
    };
    quad::Result r = quad::integrate(integrand, 0.0, xi_max, opt);
    RateResult out;
    out.rate_nats = r.value + tail;  // tail estimate added back
    out.rate_bits = out.rate_nats / std::log(2.0);
    out.quadrature_error_estimate = r.error + tail;
    return out;
}

}  // namespace ffsim
