#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "degen/numerics.hpp"
#include "doctest.h"

using namespace degen;

TEST_CASE("quadrature on smooth integrands") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return x * x; }, -1.0, 2.0, 1e-12).value ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("quadrature with endpoint singularity") {
    const double v =
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10).value;
    CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("quadrature on infinite intervals") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -inf, inf, 1e-11).value ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, inf, 1e-11).value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("monotone root finding") {
    std::function<double(double)> f = [](double x) { return std::cos(x) - x; };
    const double root = find_root_monotone(f, 0.0, 1.0, 1e-14);
    CHECK(root == doctest::Approx(0.7390851332151607).epsilon(1e-12));

    std::function<double(double)> df = [](double x) { return -std::sin(x) - 1.0; };
    CHECK(find_root_monotone(f, 0.0, 1.0, 1e-14, &df) ==
          doctest::Approx(0.7390851332151607).epsilon(1e-13));

    std::function<double(double)> g = [](double x) { return x + 2.0; };
    CHECK_THROWS(find_root_monotone(g, 0.0, 1.0, 1e-12));  // no sign change
}

TEST_CASE("discrete Lq norms") {
    const std::vector<double> v{0.0, 3.0, -4.0, 0.0};
    CHECK(grid_lq_norm(v, 0.5, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(4.0));
    CHECK(grid_lq_norm(v, 0.5, 2.0) == doctest::Approx(std::sqrt(12.5)));
    CHECK(grid_lq_norm(v, 0.5, 1.0) == doctest::Approx(3.5));
}

TEST_CASE("power-law decay fit") {
    TimeSeries ts;
    for (double t : geometric_times(1.0, 1e3)) ts.push(t, 3.0 * std::pow(t, -1.5));
    const DecayFit fit = fit_decay(ts, 1.0, 1e3);
    CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.points >= 31);
}

TEST_CASE("decay fit rejects degenerate input") {
    TimeSeries ts;
    ts.push(1.0, 1.0);
    ts.push(2.0, 0.5);
    CHECK_THROWS(fit_decay(ts, 1.0, 2.0));  // fewer than 5 points
    TimeSeries bad;
    for (double t : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) bad.push(t, t < 10 ? 1.0 : -1.0);
    CHECK_THROWS(fit_decay(bad, 1.0, 32.0));  // nonpositive values
}

TEST_CASE("geometric sample times") {
    const auto ts = geometric_times(1.0, 100.0);
    CHECK(ts.front() == doctest::Approx(1.0));
    CHECK(ts.back() == doctest::Approx(100.0));
    CHECK(ts.size() >= 21);  // at least 10 points per decade
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
}

TEST_CASE("time series requires increasing t") {
    TimeSeries ts;
    ts.push(1.0, 1.0);
    CHECK_THROWS(ts.push(1.0, 2.0));
}
