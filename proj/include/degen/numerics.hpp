#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace degen {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod quadrature on [lo, hi]. Infinite endpoints are
// mapped to a finite interval first. Integrable endpoint singularities are
// resolved by the adaptive bisection refining geometrically toward the edge.
QuadratureResult integrate(const std::function<double(double)>& fn,
                           double lo, double hi, double tol);

// Bisection with optional Newton polish. Requires a sign change on [lo, hi]
// and a monotone fn; the result never leaves the initial bracket.
double find_root_monotone(const std::function<double(double)>& fn,
                          double lo, double hi, double tol,
                          const std::function<double(double)>* dfn = nullptr);

// Discrete Lq norm of node-centered samples on a uniform grid.
// q may be infinity.
double grid_lq_norm(std::span<const double> values, double dx, double q);

struct TimeSeries {
    struct Entry {
        double t;
        double value;
    };
    std::vector<Entry> entries;

    void push(double t, double value);
};

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 0;
};

// Least-squares line through (log t, log value) restricted to [t_min, t_max].
// All selected values must be positive; needs at least 5 points.
DecayFit fit_decay(const TimeSeries& series, double t_min, double t_max);

// Geometric sample times with at least 10 points per decade.
std::vector<double> geometric_times(double t_min, double t_max);

}  // namespace degen
