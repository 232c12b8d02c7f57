#include <cmath>

#include <doctest.h>

#include "ffs/errors.hpp"
#include "ffs/quadrature.hpp"

using namespace ffsim;

TEST_CASE("polynomial is exact") {
    auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r.error <= 1e-9);
}

TEST_CASE("oscillatory integrand") {
    auto r = quad::integrate([](double x) { return std::sin(10.0 * x); }, 0.0, 3.14159265358979);
    double expected = (1.0 - std::cos(10.0 * 3.14159265358979)) / 10.0;
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("integrable endpoint singularity") {
    auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("semi-infinite exponential") {
    auto r = quad::integrate_to_inf([](double x) { return std::exp(-x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("semi-infinite gaussian with offset") {
    auto r = quad::integrate_to_inf([](double x) { return x * std::exp(-x * x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("heavy tail with scale hint") {
    // \int_1^inf dx / x^2 = 1
    auto r = quad::integrate_to_inf([](double x) { return 1.0 / (x * x); }, 1.0, 10.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("tolerance failure throws NumericsError with estimate") {
    quad::Options opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-14;
    opt.max_depth = 2;
    bool threw = false;
    try {
        quad::integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.37) + 1e-9); },
                        0.0, 1.0, opt);
    } catch (const NumericsError& e) {
        threw = true;
        CHECK(e.error_estimate() > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("non-throwing mode returns best estimate") {
    quad::Options opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-14;
    opt.max_depth = 2;
    opt.throw_on_failure = false;
    auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.37) + 1e-9); },
                             0.0, 1.0, opt);
    CHECK(std::isfinite(r.value));
    CHECK(r.error > 0.0);
}
