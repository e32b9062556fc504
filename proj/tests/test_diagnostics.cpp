#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "degen/diagnostics.hpp"
#include "doctest.h"

using namespace degen;

namespace {

const FluxSpec kFlux = builtin_degenerate_burgers();

Field sampled_composite(const Grid1D& g, const CompositeWave& c, double t) {
    Field f{g, std::vector<double>(g.nodes())};
    for (int i = 0; i < g.nodes(); ++i) f.values[i] = composite_eval(c, t, g.x(i));
    return f;
}

Field gaussian_field(const Grid1D& g, double a, double c0, double w) {
    Field f{g, std::vector<double>(g.nodes())};
    for (int i = 0; i < g.nodes(); ++i) {
        const double z = (g.x(i) - c0) / w;
        f.values[i] = a * std::exp(-z * z);
    }
    return f;
}

}  // namespace

TEST_CASE("deviation_sup") {
    const Grid1D g = make_grid(-30.0, 40.0, 700);
    const CompositeWave c = make_composite(2.0, 1.0, -1.0, 1.0, kFlux);
    Field f = sampled_composite(g, c, 2.0);
    CHECK(deviation_sup(f, c, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    const Field bump = gaussian_field(g, 0.2, 1.0, 1.0);
    for (int i = 0; i < g.nodes(); ++i) f.values[i] += bump.values[i];
    CHECK(deviation_sup(f, c, 2.0) == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("energy functional") {
    const Grid1D g = make_grid(-30.0, 40.0, 1400);

    // phi = 0: every region integrand vanishes.
    const CompositeWave c = make_composite(2.0, 1.0, -1.0, 1.0, kFlux);
    CHECK(energy_G(sampled_composite(g, c, 2.0), c, 2.0) ==
          doctest::Approx(0.0).epsilon(1e-14));

    // Nonnegative multiwave (u- = 0) with phi = 0.1: only the first region
    // contributes, giving 0.01 * (u+ - u-).
    const CompositeWave cp = make_composite(2.0, 1.0, 0.0, 1.0, kFlux);
    Field f = sampled_composite(g, cp, 2.0);
    for (double& v : f.values) v += 0.1;
    CHECK(energy_G(f, cp, 2.0) == doctest::Approx(0.01).epsilon(0.02));

    // Nonnegativity for random perturbations.
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        Field r = sampled_composite(g, c, 2.0);
        for (int j = 0; j < 4; ++j) {
            const Field b = gaussian_field(g, U(rng), 10.0 * U(rng), 0.5 + std::abs(U(rng)));
            for (int i = 0; i < g.nodes(); ++i) r.values[i] += b.values[i];
        }
        CHECK(energy_G(r, c, 2.0) >= -1e-12);
    }
}

TEST_CASE("sign-change point") {
    const CompositeWave c = make_composite(2.0, 1.0, -1.0, 1.0, kFlux);
    for (double t : {0.5, 3.0, 50.0}) {
        const double X = sign_change_X(c, t);
        CHECK(std::abs(composite_eval(c, t, X)) <= 1e-10);
    }

    // Drift window of the zero at large time.
    const double edge = std::sqrt(c.contact.A / c.contact.B);
    const double t = 1000.0;
    const double X = sign_change_X(c, t);
    const double scaled = X / std::pow(1.0 + t, 1.0 / 3.0);
    CHECK(scaled < edge);
    CHECK(scaled > edge - 0.5);

    // Strictly increasing in t.
    double prev = sign_change_X(c, 1.0);
    for (double tt : {2.0, 5.0, 15.0, 40.0, 120.0}) {
        const double cur = sign_change_X(c, tt);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("interaction integrals are nonnegative and decay") {
    const CompositeWave c = make_composite(2.0, 1.0, -1.0, 1.0, kFlux);
    const InteractionIntegrals a = interaction_integrals(c, kFlux, 100.0);
    const InteractionIntegrals b = interaction_integrals(c, kFlux, 1000.0);
    CHECK(a.I11 >= 0.0);
    CHECK(a.I12 > 0.0);
    CHECK(a.I21 > 0.0);
    // Expected decay is about (1+t)^(-4/3): a decade should shrink both by
    // more than a factor 10.
    CHECK(b.I12 < a.I12 / 10.0);
    CHECK(b.I21 < a.I21 / 10.0);
}

TEST_CASE("remainder L1 is finite and shrinking") {
    const CompositeWave c = make_composite(2.0, 1.0, -1.0, 1.0, kFlux);
    const double r1 = remainder_l1(c, kFlux, 1.0);
    const double r2 = remainder_l1(c, kFlux, 100.0);
    CHECK(r1 > 0.0);
    CHECK(r2 < r1);
}

TEST_CASE("Sobolev-type inequality checker") {
    const Grid1D g = make_grid(-20.0, 20.0, 2000);
    const Field f = gaussian_field(g, 1.0, 0.0, 1.0);
    const InequalityReport rep = check_sobolev(f, 2.0);
    CHECK(rep.trials == 1);
    CHECK(rep.pass);
    CHECK(rep.max_ratio < 1.0);

    Field scaled = f;
    for (double& v : scaled.values) v *= 3.0;
    CHECK(check_sobolev(scaled, 2.0).max_ratio ==
          doctest::Approx(rep.max_ratio).epsilon(1e-12));

    const Field shifted = gaussian_field(g, 1.0, 2.0, 1.0);
    CHECK(check_sobolev(shifted, 2.0).max_ratio ==
          doctest::Approx(rep.max_ratio).epsilon(1e-10));

    const Field zero = gaussian_field(g, 0.0, 0.0, 1.0);
    CHECK(check_sobolev(zero, 2.0).trials == 0);
}

TEST_CASE("interpolation ratio is scaling invariant") {
    const Grid1D g = make_grid(-20.0, 20.0, 2000);
    const Field f = gaussian_field(g, 1.0, 0.0, 1.5);
    const InequalityReport rep = check_interpolation_L36(f, 2.0, 3.0);
    CHECK(rep.trials == 4);
    CHECK(rep.pass);
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-8));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0.2, 1.0);
    for (int k = 0; k < 20; ++k) {
        const Field b = gaussian_field(g, U(rng), 8.0 * U(rng) - 4.0, 0.4 + U(rng));
        CHECK(check_interpolation_L36(b, 2.0, 3.0).pass);
    }
    CHECK_THROWS(check_interpolation_L36(f, 2.0, 0.5));  // q must exceed p-1
}

TEST_CASE("boundary-zero interpolation checker") {
    const Grid1D g = make_grid(-20.0, 20.0, 2000);

    // Monotone increasing field: no decreasing region, trial excluded.
    Field mono{g, std::vector<double>(g.nodes())};
    for (int i = 0; i < g.nodes(); ++i) mono.values[i] = std::tanh(g.x(i));
    CHECK(check_boundary_interp_L52(mono, 2.0).trials == 0);

    // A downward dip has a decreasing region and satisfies the bound.
    const Field dip = gaussian_field(g, -1.0, 0.0, 1.2);
    const InequalityReport rep = check_boundary_interp_L52(dip, 2.0);
    CHECK(rep.trials == 1);
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= 1.05);

    // Scaling u -> 2u leaves pass/fail unchanged (degree p+2 on both sides).
    Field dip2 = dip;
    for (double& v : dip2.values) v *= 2.0;
    CHECK(check_boundary_interp_L52(dip2, 2.0).pass == rep.pass);
    CHECK(check_boundary_interp_L52(dip2, 2.0).max_ratio ==
          doctest::Approx(rep.max_ratio).epsilon(1e-10));
}

TEST_CASE("maximum-principle bound") {
    const Grid1D g = make_grid(-5.0, 5.0, 100);
    Field zero{g, std::vector<double>(g.nodes(), 0.0)};
    CHECK(max_principle_bound(zero, -1.0, 1.0) == doctest::Approx(4.0));
    Field half = zero;
    half.values[50] = 0.5;
    CHECK(max_principle_bound(half, 0.0, 0.0) == doctest::Approx(0.5));
    CHECK(max_principle_bound(half, -0.3, 0.2) >= 0.0);
}

TEST_CASE("time series CSV export") {
    TimeSeries ts;
    ts.push(1.0, 0.5);
    ts.push(2.0, 0.25);
    const std::string path = "series_test.csv";
    write_series_csv(path, "decay", ts);
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str() == "t,value,series_name\n1,0.5,decay\n2,0.25,decay\n");
    std::remove(path.c_str());
}
