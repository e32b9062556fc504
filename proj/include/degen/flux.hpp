#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace degen {

// Scalar flux with a degenerate (flat) interval (a, b) and convex branches
// outside it. Evaluators are total on the real line; second derivatives at a
// branch junction report the one-sided limit from the convex side.
struct FluxSpec {
    enum class Kind { builtin_degenerate_burgers, custom };

    Kind kind = Kind::custom;
    double a = -std::numeric_limits<double>::infinity();
    double b = 0.0;
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    // Optional third derivative; used by analytic second derivatives of the
    // rarefaction profile. Absent means identically zero (true for the
    // builtin's quadratic branch).
    std::function<double(double)> d3f;

    double eval(double u, int order) const;
};

struct FluxViolation {
    double u;
    std::string what;
};

struct ValidationReport {
    std::vector<FluxViolation> violations;
    bool ok() const { return violations.empty(); }
};

// f(u) = u^2/2 on [0, inf), 0 on (-inf, 0); a = -inf, b = 0.
FluxSpec builtin_degenerate_burgers();

// Sampling-based structural audit: convexity outside [a,b], flatness inside,
// C^0/C^1 continuity at finite junctions (tolerance 1e-10).
ValidationReport validate(const FluxSpec& flux, double u_lo, double u_hi,
                          int n_samples);

// Friedrichs mollification (rho_delta * f) with the standard C-infinity bump
// of support [-delta, delta] and unit mass; evaluators run adaptive
// quadrature at quad_tol per call.
FluxSpec mollify(const FluxSpec& flux, double delta, double quad_tol = 1e-10);

// The normalized bump rho_delta(x); exposed for tests of the unit-mass
// property.
double mollifier_bump(double x, double delta);

}  // namespace degen
