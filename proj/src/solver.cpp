#include "degen/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace degen {

namespace {

constexpr double kTiny = 1e-300;

double diffusivity(double D, double eps, double p) {
    const double s = D * D + eps;
    if (p == 2.0) return std::sqrt(s);
    if (p == 3.0) return s;
    return std::pow(s, (p - 1.0) / 2.0);
}

void validate_cfg(const SolverConfig& cfg) {
    if (!(cfg.p > 1.0)) throw std::invalid_argument("solver: p must exceed 1");
    if (!(cfg.mu > 0.0)) throw std::invalid_argument("solver: mu must be > 0");
    if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("solver: epsilon must be >= 0");
    if (!(cfg.cfl_advective > 0.0 && cfg.cfl_advective <= 1.0))
        throw std::invalid_argument("solver: cfl_advective must be in (0, 1]");
    if (!(cfg.cfl_diffusive > 0.0 && cfg.cfl_diffusive <= 0.5))
        throw std::invalid_argument("solver: cfl_diffusive must be in (0, 0.5]");
    if (!(cfg.dt_max > 0.0)) throw std::invalid_argument("solver: dt_max must be > 0");
}

}  // namespace

Grid1D make_grid(double x_left, double x_right, int n) {
    if (!(x_left < x_right))
        throw std::invalid_argument("make_grid: x_left must be < x_right");
    if (n < 8) throw std::invalid_argument("make_grid: n must be >= 8");
    return Grid1D{x_left, x_right, n};
}

Field init_from_wave(const Grid1D& grid, const CompositeWave& c,
                     const Field* perturbation) {
    Field out{grid, std::vector<double>(grid.nodes())};
    for (int i = 0; i < grid.nodes(); ++i)
        out.values[i] = composite_eval(c, 0.0, grid.x(i));
    if (perturbation) {
        if (static_cast<int>(perturbation->values.size()) != grid.nodes())
            throw std::invalid_argument("init_from_wave: perturbation grid mismatch");
        if (std::abs(perturbation->values.front()) >= 1e-8 ||
            std::abs(perturbation->values.back()) >= 1e-8)
            throw std::invalid_argument(
                "init_from_wave: perturbation must vanish (< 1e-8) at grid ends");
        for (int i = 0; i < grid.nodes(); ++i)
            out.values[i] += perturbation->values[i];
    }
    return out;
}

double stable_dt(const Field& state, const SolverConfig& cfg) {
    validate_cfg(cfg);
    const double dx = state.grid.dx();
    double max_speed = 0.0;
    double max_diff = 0.0;
    const int m = static_cast<int>(state.values.size());
    for (int i = 0; i < m; ++i) {
        const double u = state.values[i];
        if (!std::isfinite(u))
            throw std::runtime_error("stable_dt: non-finite value at node " +
                                     std::to_string(i));
        max_speed = std::max(max_speed, std::abs(cfg.flux.df(u)));
        if (i + 1 < m) {
            const double D = (state.values[i + 1] - u) / dx;
            max_diff = std::max(max_diff, diffusivity(D, cfg.epsilon, cfg.p));
        }
    }
    const double adv = cfg.cfl_advective * dx / std::max(max_speed, kTiny);
    const double diff =
        cfg.cfl_diffusive * dx * dx / (cfg.mu * cfg.p * std::max(max_diff, kTiny));
    return std::min({adv, diff, cfg.dt_max});
}

Field step(const Field& state, const SolverConfig& cfg, double dt) {
    if (dt > stable_dt(state, cfg) * (1.0 + 1e-12))
        throw std::invalid_argument("step: dt exceeds the stability bound");
    const double dx = state.grid.dx();
    const int m = static_cast<int>(state.values.size());
    Field out = state;
    const auto& u = state.values;

    auto G = [&](int i) {  // diffusive flux at interface i+1/2
        const double D = (u[i + 1] - u[i]) / dx;
        return cfg.mu * diffusivity(D, cfg.epsilon, cfg.p) * D;
    };

    double Fm = cfg.flux.f(u[0]);
    double Gm = G(0);
    for (int i = 1; i + 1 < m; ++i) {
        const double Fp = cfg.flux.f(u[i]);
        const double Gp = G(i);
        out.values[i] = u[i] - (dt / dx) * (Fp - Fm) + (dt / dx) * (Gp - Gm);
        if (!std::isfinite(out.values[i]))
            throw std::runtime_error("step: non-finite update at node " +
                                     std::to_string(i) + ", x = " +
                                     std::to_string(state.grid.x(i)));
        Fm = Fp;
        Gm = Gp;
    }
    out.values.front() = cfg.u_minus;
    out.values.back() = cfg.u_plus;
    return out;
}

std::vector<std::pair<double, Field>> run(const SolverConfig& cfg,
                                          const Grid1D& grid, const Field& u0,
                                          const std::vector<Observer>& observers) {
    validate_cfg(cfg);
    if (static_cast<int>(u0.values.size()) != grid.nodes())
        throw std::invalid_argument("run: initial field grid mismatch");
    std::vector<double> checkpoints = cfg.checkpoint_times;
    std::sort(checkpoints.begin(), checkpoints.end());
    for (double tc : checkpoints)
        if (!(tc >= 0.0 && tc <= cfg.t_end))
            throw std::invalid_argument("run: checkpoint outside [0, t_end]");
    if (checkpoints.empty() || checkpoints.back() < cfg.t_end)
        checkpoints.push_back(cfg.t_end);

    std::vector<std::pair<double, Field>> out;
    auto emit = [&](double t, const Field& f) {
        out.emplace_back(t, f);
        for (const auto& obs : observers) obs(t, f);
    };

    Field state = u0;
    double t = 0.0;
    std::size_t next = 0;
    while (next < checkpoints.size() && checkpoints[next] <= 0.0) {
        emit(checkpoints[next], state);
        ++next;
    }
    while (next < checkpoints.size()) {
        const double target = checkpoints[next];
        while (t < target) {
            double dt = stable_dt(state, cfg);
            if (t + dt >= target) dt = target - t;
            state = step(state, cfg, dt);
            t += dt;
        }
        t = target;
        emit(target, state);
        ++next;
    }
    return out;
}

}  // namespace degen
