#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "degen/flux.hpp"
#include "degen/numerics.hpp"
#include "doctest.h"

using namespace degen;

TEST_CASE("builtin flux values and derivatives") {
    const FluxSpec fl = builtin_degenerate_burgers();
    CHECK(fl.f(-1.0) == 0.0);
    CHECK(fl.f(0.0) == 0.0);
    CHECK(fl.f(2.0) == doctest::Approx(2.0));
    CHECK(fl.df(-0.5) == 0.0);
    CHECK(fl.df(2.0) == doctest::Approx(2.0));
    CHECK(fl.d2f(-1e-9) == 0.0);
    CHECK(fl.d2f(0.0) == 1.0);  // one-sided limit from the convex branch
    CHECK(fl.d2f(3.0) == 1.0);
    CHECK(fl.d3f(5.0) == 0.0);
    CHECK(fl.eval(2.0, 1) == doctest::Approx(2.0));
}

TEST_CASE("builtin flux passes the structural audit") {
    const ValidationReport rep = validate(builtin_degenerate_burgers(), -2.0, 3.0, 1001);
    CHECK(rep.ok());
}

TEST_CASE("audit flags a non-degenerate flux") {
    FluxSpec bad;
    bad.a = -std::numeric_limits<double>::infinity();
    bad.b = 0.0;  // claims flatness on (-inf, 0), but is strictly convex there
    bad.f = [](double u) { return u * u; };
    bad.df = [](double u) { return 2.0 * u; };
    bad.d2f = [](double) { return 2.0; };
    const ValidationReport rep = validate(bad, -2.0, 2.0, 101);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("audit flags a C1 break at the junction") {
    FluxSpec bad;
    bad.a = -std::numeric_limits<double>::infinity();
    bad.b = 0.0;
    bad.f = [](double u) { return u > 0.0 ? u + u * u / 2.0 : 0.0; };  // kink at 0
    bad.df = [](double u) { return u > 0.0 ? 1.0 + u : 0.0; };
    bad.d2f = [](double u) { return u >= 0.0 ? 1.0 : 0.0; };
    CHECK_FALSE(validate(bad, -1.0, 1.0, 101).ok());
}

TEST_CASE("mollifier bump has unit mass") {
    for (double delta : {0.05, 0.3}) {
        const double m = integrate([delta](double x) { return mollifier_bump(x, delta); },
                                   -delta, delta, 1e-11)
                             .value;
        CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("mollified flux stays near the original away from the junction") {
    const FluxSpec fm = mollify(builtin_degenerate_burgers(), 0.1);
    CHECK(fm.f(2.0) > 1.995);
    CHECK(fm.f(2.0) < 2.005);
    CHECK(fm.f(-1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fm.df(2.0) == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("mollified flux is smooth across the junction") {
    const FluxSpec fm = mollify(builtin_degenerate_burgers(), 0.1);
    // Value at the junction is a small positive average of the convex branch.
    CHECK(fm.f(0.0) > 0.0);
    CHECK(fm.f(0.0) < 1e-3);
    // Second derivative interpolates between the branch values 0 and 1.
    const double d2 = fm.d2f(0.0);
    CHECK(d2 > 0.0);
    CHECK(d2 < 1.0);
    // Central-difference consistency of df.
    const double h = 1e-5;
    CHECK(fm.df(0.03) ==
          doctest::Approx((fm.f(0.03 + h) - fm.f(0.03 - h)) / (2 * h)).epsilon(1e-5));
}
