#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "degen/flux.hpp"
#include "degen/waves.hpp"

namespace degen {

// Uniform node-centered grid on [x_left, x_right] with n cells and n+1 nodes.
struct Grid1D {
    double x_left;
    double x_right;
    int n;

    double dx() const { return (x_right - x_left) / n; }
    double x(int i) const { return x_left + i * dx(); }
    int nodes() const { return n + 1; }
};

Grid1D make_grid(double x_left, double x_right, int n);

struct Field {
    Grid1D grid;
    std::vector<double> values;  // length grid.n + 1
};

struct SolverConfig {
    double p = 2.0;
    double mu = 1.0;
    double epsilon = 1e-6;
    FluxSpec flux = builtin_degenerate_burgers();
    double u_minus = 0.0;
    double u_plus = 1.0;
    double cfl_advective = 0.4;
    double cfl_diffusive = 0.4;
    double dt_max = 0.01;
    double t_end = 1.0;
    std::vector<double> checkpoint_times;
};

// Samples the composite wave at t = 0 plus an optional perturbation field.
// The perturbation must already be negligible (< 1e-8) at both grid ends.
Field init_from_wave(const Grid1D& grid, const CompositeWave& c,
                     const Field* perturbation = nullptr);

// Explicit-stability time step: the smaller of the advective bound
// cfl_advective * dx / max|f'| and the diffusive bound
// cfl_diffusive * dx^2 / (mu p max(D^2+eps)^((p-1)/2)), capped at dt_max.
double stable_dt(const Field& state, const SolverConfig& cfg);

// One conservative forward-Euler update. Left-upwind advective flux f(u_i)
// (valid because the reduced flux has f' >= 0), diffusive flux
// mu (D^2+eps)^((p-1)/2) D with D the forward slope. Boundary nodes stay
// pinned at u_minus / u_plus.
Field step(const Field& state, const SolverConfig& cfg, double dt);

using Observer = std::function<void(double, const Field&)>;

// Advances with dt = stable_dt, clipping dt so the trajectory lands exactly
// on each checkpoint time; returns the checkpointed fields and invokes every
// observer at each checkpoint.
std::vector<std::pair<double, Field>> run(const SolverConfig& cfg,
                                          const Grid1D& grid, const Field& u0,
                                          const std::vector<Observer>& observers = {});

}  // namespace degen
