#include "degen/flux.hpp"

#include <cmath>
#include <stdexcept>

#include "degen/numerics.hpp"

namespace degen {

namespace {

// Normalization of exp(-1/(1-x^2)) on (-1, 1), computed once.
double bump_norm() {
    static const double c = [] {
        auto raw = [](double x) {
            const double d = 1.0 - x * x;
            return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
        };
        return integrate(raw, -1.0, 1.0, 1e-14).value;
    }();
    return c;
}

double bump(double x) {
    const double d = 1.0 - x * x;
    if (d <= 0.0) return 0.0;
    return std::exp(-1.0 / d) / bump_norm();
}

double bump_deriv(double x) {
    const double d = 1.0 - x * x;
    if (d <= 0.0) return 0.0;
    return std::exp(-1.0 / d) * (-2.0 * x / (d * d)) / bump_norm();
}

}  // namespace

double FluxSpec::eval(double u, int order) const {
    if (!std::isfinite(u)) throw std::invalid_argument("FluxSpec::eval: non-finite u");
    switch (order) {
        case 0: return f(u);
        case 1: return df(u);
        case 2: return d2f(u);
        default: throw std::invalid_argument("FluxSpec::eval: order must be 0, 1 or 2");
    }
}

FluxSpec builtin_degenerate_burgers() {
    FluxSpec s;
    s.kind = FluxSpec::Kind::builtin_degenerate_burgers;
    s.a = -std::numeric_limits<double>::infinity();
    s.b = 0.0;
    s.f = [](double u) { return u > 0.0 ? 0.5 * u * u : 0.0; };
    s.df = [](double u) { return u > 0.0 ? u : 0.0; };
    // One-sided convex limit at the junction u = 0.
    s.d2f = [](double u) { return u >= 0.0 ? 1.0 : 0.0; };
    s.d3f = [](double) { return 0.0; };
    return s;
}

ValidationReport validate(const FluxSpec& flux, double u_lo, double u_hi,
                          int n_samples) {
    if (!(u_lo < u_hi)) throw std::invalid_argument("validate: u_lo must be < u_hi");
    if (n_samples < 3) throw std::invalid_argument("validate: n_samples must be >= 3");
    constexpr double kTol = 1e-10;
    ValidationReport report;

    const double h = (u_hi - u_lo) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        const double u = u_lo + i * h;
        const bool inside = u > flux.a && u < flux.b;
        const double d2 = flux.eval(u, 2);
        if (inside) {
            if (std::abs(d2) > 1e-12)
                report.violations.push_back({u, "f'' nonzero inside degenerate interval"});
            if (std::abs(flux.eval(u, 1)) > kTol)
                report.violations.push_back({u, "f' nonzero inside degenerate interval"});
        } else if (u < flux.a || u > flux.b) {
            if (!(d2 > 0.0))
                report.violations.push_back({u, "f'' not positive on convex branch"});
        }
    }

    // Continuity of f and f' across finite junctions.
    for (double j : {flux.a, flux.b}) {
        if (!std::isfinite(j) || j < u_lo || j > u_hi) continue;
        const double eps = 1e-7 * std::max(1.0, std::abs(j));
        for (int order : {0, 1}) {
            const double left = flux.eval(j - eps, order);
            const double right = flux.eval(j + eps, order);
            // A continuous quantity may still move by O(eps) times the slope
            // of the next derivative across the probe points.
            const double slope = std::max(std::abs(flux.eval(j - eps, order + 1)),
                                          std::abs(flux.eval(j + eps, order + 1)));
            if (std::abs(left - right) > kTol + 3.0 * eps * (slope + 1.0))
                report.violations.push_back(
                    {j, order == 0 ? "f discontinuous at junction"
                                   : "f' discontinuous at junction"});
        }
    }
    return report;
}

double mollifier_bump(double x, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("mollifier_bump: delta must be > 0");
    return bump(x / delta) / delta;
}

FluxSpec mollify(const FluxSpec& flux, double delta, double quad_tol) {
    if (!(delta > 0.0)) throw std::invalid_argument("mollify: delta must be > 0");
    if (!(quad_tol > 0.0)) throw std::invalid_argument("mollify: quad_tol must be > 0");

    auto convolve = [delta, quad_tol](const std::function<double(double)>& g,
                                      bool with_deriv_kernel, double u) {
        auto integrand = [&](double y) {
            const double k = with_deriv_kernel
                                 ? bump_deriv(y / delta) / (delta * delta)
                                 : bump(y / delta) / delta;
            return k * g(u - y);
        };
        try {
            return integrate(integrand, -delta, delta, quad_tol).value;
        } catch (const std::runtime_error&) {
            throw std::runtime_error("mollify: quadrature failed at u=" +
                                     std::to_string(u));
        }
    };

    FluxSpec out;
    out.kind = FluxSpec::Kind::custom;
    out.a = flux.a;
    out.b = flux.b;
    const auto f = flux.f;
    const auto df = flux.df;
    out.f = [convolve, f](double u) { return convolve(f, false, u); };
    // f is C^1, so derivatives of the convolution pass onto f' and then onto
    // the kernel.
    out.df = [convolve, df](double u) { return convolve(df, false, u); };
    out.d2f = [convolve, df](double u) { return convolve(df, true, u); };
    return out;
}

}  // namespace degen
