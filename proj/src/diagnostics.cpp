#include "degen/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace degen {

namespace {

// Central-difference derivative, one-sided at the ends.
std::vector<double> central_diff(const std::vector<double>& v, double dx) {
    const int m = static_cast<int>(v.size());
    std::vector<double> d(m);
    d[0] = (v[1] - v[0]) / dx;
    for (int i = 1; i + 1 < m; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * dx);
    d[m - 1] = (v[m - 1] - v[m - 2]) / dx;
    return d;
}

}  // namespace

double deviation_sup(const Field& field, const CompositeWave& c, double t) {
    double m = 0.0;
    for (int i = 0; i < field.grid.nodes(); ++i)
        m = std::max(m, std::abs(field.values[i] - composite_eval(c, t, field.grid.x(i))));
    return m;
}

double energy_G(const Field& field, const CompositeWave& c, double t) {
    const double dx = field.grid.dx();
    double total = 0.0;
    for (int i = 0; i < field.grid.nodes(); ++i) {
        const double x = field.grid.x(i);
        const double U = composite_eval(c, t, x);
        const double dU = composite_dux(c, t, x);
        const double phi = field.values[i] - U;
        double g = 0.0;
        if (U >= 0.0) g += phi * phi * dU;
        if (U + phi >= 0.0 && U < 0.0) g += (U + phi) * (U + phi) * dU;
        if (U + phi < 0.0 && U >= 0.0) {
            const double w = U + std::abs(phi);
            g += w * w * dU;
        }
        total += g * dx;
    }
    return total;
}

double sign_change_X(const CompositeWave& c, double t) {
    if (!(c.contact.u_minus < 0.0 && c.rarefaction.u_plus > 0.0))
        throw std::invalid_argument("sign_change_X: far fields must straddle 0");
    const double hw = support_halfwidth(c.contact, t);
    double lo = 0.0;
    double hi = 2.0 * hw + c.rarefaction.lambda_plus * t + 1.0;
    std::function<double(double)> fn = [&c, t](double x) {
        return composite_eval(c, t, x);
    };
    double flo = fn(lo);
    if (flo == 0.0) return lo;
    int widen = 0;
    while (flo > 0.0) {  // fallback: widen leftward if the zero sits left of 0
        if (++widen > 60) throw std::runtime_error("sign_change_X: bracket failure");
        hi = lo;
        lo -= std::max(1.0, hw);
        flo = fn(lo);
    }
    std::function<double(double)> dfn = [&c, t](double x) {
        return composite_dux(c, t, x);
    };
    const double X = find_root_monotone(fn, lo, hi, 1e-14, &dfn);
    if (std::abs(fn(X)) > 1e-10)
        throw std::runtime_error("sign_change_X: residual above 1e-10");
    return X;
}

InteractionIntegrals interaction_integrals(const CompositeWave& c,
                                           const FluxSpec& flux, double t) {
    const double X = sign_change_X(c, t);
    const double hw = support_halfwidth(c.contact, t);
    const double lm = c.rarefaction.lambda_minus;
    const double lp = c.rarefaction.lambda_plus;
    const double x_lo = std::min(-hw, lm * t) - 40.0;
    const double x_hi = std::max(hw, lp * t) + 40.0;

    auto f1 = [&](double x) {
        const double U = contact_u(c.contact, t, x);
        const double Ur = smooth_rarefaction_eval(c.rarefaction, t, x);
        return std::abs(flux.df(U + Ur) - flux.df(Ur)) *
               smooth_rarefaction_dux(c.rarefaction, t, x);
    };
    auto f2 = [&](double x) {
        const double U = contact_u(c.contact, t, x);
        const double Ur = smooth_rarefaction_eval(c.rarefaction, t, x);
        return flux.df(U + Ur) * contact_dux(c.contact, t, x);
    };

    InteractionIntegrals out{};
    // Split the first integral at the left support edge of the contact
    // profile, where the integrand has a kink.
    out.I11 = integrate(f1, x_lo, std::max(x_lo, -hw), 1e-11).value +
              integrate(f1, std::max(x_lo, -hw), X, 1e-11).value;
    // Beyond the right support edge the contact profile is identically
    // zero, so the integrands vanish exactly; truncate there instead of
    // handing the quadrature a huge interval whose coarse initial sample
    // can miss the narrow band (X, hw) entirely.
    out.I12 = X >= hw ? 0.0 : integrate(f1, X, hw, 1e-11).value;
    out.I21 = X >= hw ? 0.0 : integrate(f2, X, hw, 1e-11).value;
    return out;
}

double remainder_l1(const CompositeWave& c, const FluxSpec& flux, double t) {
    const double hw = support_halfwidth(c.contact, t);
    const double lm = c.rarefaction.lambda_minus;
    const double lp = c.rarefaction.lambda_plus;
    const double x_lo = std::min(-hw, lm * t) - 40.0;
    const double x_hi = std::max(hw, lp * t) + 40.0;
    auto g = [&](double x) { return std::abs(remainder_Fp(c, t, x, flux)); };
    // Split at the support edges where the integrand has kinks.
    double total = 0.0;
    double cuts[4] = {x_lo, -hw, hw, x_hi};
    for (int k = 0; k + 1 < 4; ++k)
        if (cuts[k] < cuts[k + 1])
            total += integrate(g, cuts[k], cuts[k + 1], 1e-10).value;
    return total;
}

InequalityReport check_sobolev(const Field& phi, double p) {
    InequalityReport rep;
    rep.name = "sobolev_interpolation";
    rep.slack = 0.02;
    if (std::abs(phi.values.front()) >= 1e-8 || std::abs(phi.values.back()) >= 1e-8)
        throw std::invalid_argument("check_sobolev: field must decay at grid ends");
    const double dx = phi.grid.dx();
    const double linf = grid_lq_norm(phi.values, dx, std::numeric_limits<double>::infinity());
    if (linf == 0.0) return rep;  // zero field: trial excluded
    const double l2 = grid_lq_norm(phi.values, dx, 2.0);
    const double dnorm = grid_lq_norm(central_diff(phi.values, dx), dx, p + 1.0);
    const double C = std::pow((3.0 * p + 1.0) / (p + 1.0), (p + 1.0) / (3.0 * p + 1.0));
    const double rhs = C * std::pow(l2, 2.0 * p / (3.0 * p + 1.0)) *
                       std::pow(dnorm, (p + 1.0) / (3.0 * p + 1.0));
    rep.max_ratio = linf / rhs;
    rep.trials = 1;
    rep.pass = rep.max_ratio <= 1.0 + rep.slack;
    return rep;
}

InequalityReport check_interpolation_L36(const Field& v, double p, double q) {
    if (!(q > p - 1.0))
        throw std::invalid_argument("check_interpolation_L36: requires q > p - 1");
    InequalityReport rep;
    rep.name = "interpolation_homogeneity";
    rep.slack = 1e-8;

    auto ratio = [p, q](const std::vector<double>& vals, double dx) {
        const int m = static_cast<int>(vals.size());
        double linf = 0.0, int1 = 0.0, int2 = 0.0;
        const auto d = central_diff(vals, dx);
        for (int i = 0; i < m; ++i) {
            const double a = std::abs(vals[i]);
            linf = std::max(linf, a);
            int1 += std::pow(a, 2.0 * (q - p + 1.0)) * dx;
            int2 += std::pow(a, 2.0 * (p - 1.0)) * d[i] * d[i] * dx;
        }
        if (int1 <= 0.0 || int2 <= 0.0)
            throw std::invalid_argument("check_interpolation_L36: degenerate field");
        const double e = 1.0 / (2.0 * (q + 1.0));
        return linf / (std::pow(int1, e) * std::pow(int2, e));
    };

    const double base = ratio(v.values, v.grid.dx());
    for (double lambda : {0.5, 2.0})
        for (double sigma : {0.5, 2.0}) {
            std::vector<double> scaled(v.values);
            for (double& s : scaled) s *= lambda;
            const double r = ratio(scaled, v.grid.dx() / sigma);
            rep.max_ratio = std::max(rep.max_ratio, r / base);
            ++rep.trials;
        }
    rep.pass = std::abs(rep.max_ratio - 1.0) <= rep.slack;
    return rep;
}

InequalityReport check_boundary_interp_L52(const Field& u_field, double p) {
    InequalityReport rep;
    rep.name = "boundary_zero_interpolation";
    rep.slack = 0.05;
    const double dx = u_field.grid.dx();
    const auto& u = u_field.values;
    const int m = static_cast<int>(u.size());
    double lhs = 0.0, int1 = 0.0, int2 = 0.0;
    bool any = false;
    for (int i = 1; i + 1 < m; ++i) {
        const double s = (u[i + 1] - u[i]) / dx;  // forward slope
        if (!(s < 0.0)) continue;
        any = true;
        const double a = -s;
        const double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        lhs += std::pow(a, p + 2.0) * dx;
        int1 += std::pow(a, 2.0 * (p - 1.0)) * d2 * d2 * dx;
        int2 += std::pow(a, p + 1.0) * dx;
    }
    if (!any) return rep;  // empty region: trial excluded
    const double Cp = std::pow((3.0 * p + 2.0) / 2.0, 2.0 / (3.0 * p + 2.0));
    const double rhs = Cp * std::pow(int1, 1.0 / (3.0 * p + 1.0)) *
                       std::pow(int2, (3.0 * p + 2.0) / (3.0 * p + 1.0));
    rep.max_ratio = lhs / rhs;
    rep.trials = 1;
    rep.pass = rep.max_ratio <= 1.0 + rep.slack;
    return rep;
}

double max_principle_bound(const Field& phi0, double u_minus, double u_plus) {
    const double m = grid_lq_norm(phi0.values, phi0.grid.dx(),
                                  std::numeric_limits<double>::infinity());
    return m + 2.0 * std::abs(u_minus) + 2.0 * std::abs(u_plus);
}

void write_series_csv(const std::string& path, const std::string& series_name,
                      const TimeSeries& series) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_series_csv: cannot open " + path);
    std::fputs("t,value,series_name\n", f);
    for (const auto& e : series.entries)
        std::fprintf(f, "%.17g,%.17g,%s\n", e.t, e.value, series_name.c_str());
    std::fclose(f);
}

}  // namespace degen
