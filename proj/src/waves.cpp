#include "degen/waves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "degen/numerics.hpp"

namespace degen {

namespace {

double sin_power_integral(double exponent) {
    return integrate([exponent](double th) { return std::pow(std::sin(th), exponent); },
                     0.0, M_PI / 2.0, 1e-13)
        .value;
}

double density_xi(const BarenblattWave& w, double xi) {
    const double s = w.A - w.B * xi * xi;
    return s > 0.0 ? std::pow(s, 1.0 / (w.p - 1.0)) : 0.0;
}

double tau_of(const BarenblattWave& w, double t) {
    const double tau = t + w.t_shift;
    if (!(tau > 0.0))
        throw std::invalid_argument("contact wave: t + t_shift must be > 0");
    return tau;
}

// lambda^{-1} on the convex branch [u_minus, u_plus].
double lambda_inverse(const SmoothRarefaction& sr, double wv) {
    if (wv <= sr.lambda_minus) return sr.u_minus;
    if (wv >= sr.lambda_plus) return sr.u_plus;
    if (sr.flux.kind == FluxSpec::Kind::builtin_degenerate_burgers)
        return wv;  // f'(u) = u on the convex branch
    auto g = [&sr, wv](double u) { return sr.flux.df(u) - wv; };
    auto dg = [&sr](double u) { return sr.flux.d2f(u); };
    std::function<double(double)> fn = g;
    std::function<double(double)> dfn = dg;
    return find_root_monotone(fn, sr.u_minus, sr.u_plus, 1e-13, &dfn);
}

double w0_of(const SmoothRarefaction& sr, double x0) {
    return 0.5 * (sr.lambda_minus + sr.lambda_plus) +
           0.5 * (sr.lambda_plus - sr.lambda_minus) * std::tanh(x0);
}

double w0_prime(const SmoothRarefaction& sr, double x0) {
    const double s = 1.0 / std::cosh(x0);
    return 0.5 * (sr.lambda_plus - sr.lambda_minus) * s * s;
}

double w0_second(const SmoothRarefaction& sr, double x0) {
    const double s = 1.0 / std::cosh(x0);
    return -(sr.lambda_plus - sr.lambda_minus) * s * s * std::tanh(x0);
}

// Solve x = x0 + w0(x0) t for the characteristic foot x0. The map is
// strictly increasing in x0 for t >= 0.
double characteristic_foot(const SmoothRarefaction& sr, double t, double x) {
    if (!(t >= 0.0)) throw std::invalid_argument("smooth rarefaction: t must be >= 0");
    double lo = x - sr.lambda_plus * t - 1.0;
    double hi = x - sr.lambda_minus * t + 1.0;
    double x0 = x - 0.5 * (sr.lambda_minus + sr.lambda_plus) * t;
    for (int iter = 0; iter < 100; ++iter) {
        const double r = x0 + w0_of(sr, x0) * t - x;
        if (std::abs(r) <= 1e-12 * std::max(1.0, std::abs(x))) return x0;
        if (r > 0.0) hi = std::min(hi, x0); else lo = std::max(lo, x0);
        const double d = 1.0 + w0_prime(sr, x0) * t;
        double next = x0 - r / d;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x0 = next;
    }
    // Bisection fallback to full convergence.
    std::function<double(double)> fn = [&sr, t, x](double y) {
        return y + w0_of(sr, y) * t - x;
    };
    return find_root_monotone(fn, lo, hi, 1e-12);
}

}  // namespace

BarenblattWave barenblatt_constants(double p, double mu, double u_minus,
                                    double u_plus, double t_shift) {
    if (!(p > 1.0)) throw std::invalid_argument("barenblatt_constants: p must exceed 1");
    if (!(mu > 0.0)) throw std::invalid_argument("barenblatt_constants: mu must be > 0");
    if (!(u_minus <= u_plus))
        throw std::invalid_argument("barenblatt_constants: u_minus must be <= u_plus");
    if (!(t_shift >= 0.0))
        throw std::invalid_argument("barenblatt_constants: t_shift must be >= 0");

    BarenblattWave w;
    w.p = p;
    w.mu = mu;
    w.u_minus = u_minus;
    w.u_plus = u_plus;
    w.t_shift = t_shift;
    w.B = (p - 1.0) / (2.0 * mu * p * (p + 1.0));

    const double mass = u_plus - u_minus;
    if (mass == 0.0) {
        w.A = 0.0;
        return w;
    }
    const double Ip = sin_power_integral((p + 1.0) / (p - 1.0));
    // Mass identity: 2 A^((p+1)/(2(p-1))) B^(-1/2) Ip = mass.
    w.A = std::pow(mass * std::sqrt(w.B) / (2.0 * Ip),
                   2.0 * (p - 1.0) / (p + 1.0));

    // Cross-check against direct quadrature of the density.
    const double edge = std::sqrt(w.A / w.B);
    const double got =
        integrate([&w](double xi) { return density_xi(w, xi); }, -edge, edge,
                  1e-12 * std::max(1.0, mass))
            .value;
    if (std::abs(got - mass) > 1e-8 * std::abs(mass))
        throw std::runtime_error(
            "barenblatt_constants: amplitude/mass cross-check failed, relative "
            "error " +
            std::to_string(std::abs(got - mass) / std::abs(mass)));
    return w;
}

double support_halfwidth(const BarenblattWave& w, double t) {
    if (w.A == 0.0) return 0.0;
    return std::sqrt(w.A / w.B) * std::pow(tau_of(w, t), 1.0 / (w.p + 1.0));
}

double contact_dux(const BarenblattWave& w, double t, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("contact_dux: non-finite x");
    const double tau = tau_of(w, t);
    const double scale = std::pow(tau, 1.0 / (w.p + 1.0));
    return density_xi(w, x / scale) / scale;
}

double contact_u(const BarenblattWave& w, double t, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("contact_u: non-finite x");
    if (w.A == 0.0) return w.u_minus;
    const double tau = tau_of(w, t);
    const double xi = x / std::pow(tau, 1.0 / (w.p + 1.0));
    const double edge = std::sqrt(w.A / w.B);
    if (xi <= -edge) return w.u_minus;
    if (xi >= edge) return w.u_plus;
    if (w.p == 2.0) {
        // Quadratic density integrates in closed form.
        auto F = [&w](double s) { return w.A * s - w.B * s * s * s / 3.0; };
        return w.u_minus + F(xi) - F(-edge);
    }
    const double mass = w.u_plus - w.u_minus;
    const double part =
        integrate([&w](double s) { return density_xi(w, s); }, -edge, xi,
                  1e-11 * std::max(1.0, mass))
            .value;
    return w.u_minus + part;
}

double contact_d2ux(const BarenblattWave& w, double t, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("contact_d2ux: non-finite x");
    const double tau = tau_of(w, t);
    const double xi = x / std::pow(tau, 1.0 / (w.p + 1.0));
    const double edge = w.A > 0.0 ? std::sqrt(w.A / w.B) : 0.0;
    if (!(std::abs(xi) < edge))
        throw std::domain_error("contact_d2ux: outside the open support");
    const double s = w.A - w.B * xi * xi;
    return -(2.0 * w.B * xi / (w.p - 1.0)) *
           std::pow(tau, -2.0 / (w.p + 1.0)) *
           std::pow(s, (2.0 - w.p) / (w.p - 1.0));
}

ContactNorm contact_norm(const BarenblattWave& w, double t, double q,
                         int deriv_order) {
    if (!(q >= 1.0)) throw std::invalid_argument("contact_norm: q must be >= 1");
    if (deriv_order != 1 && deriv_order != 2)
        throw std::invalid_argument("contact_norm: deriv_order must be 1 or 2");
    const double p = w.p;
    if (deriv_order == 2 && p > 2.0 && !std::isinf(q) &&
        !(q < (p - 1.0) / (p - 2.0)))
        throw std::invalid_argument("contact_norm: q out of integrability range");
    if (deriv_order == 2 && p > 2.0 && std::isinf(q))
        throw std::invalid_argument("contact_norm: L-infinity norm of d2 unbounded for p > 2");

    const double tau = tau_of(w, t);
    const double edge = w.A > 0.0 ? std::sqrt(w.A / w.B) : 0.0;
    ContactNorm out{0.0, 0.0, 0.0};

    auto dvdxi_abs = [&w](double xi) {
        const double s = w.A - w.B * xi * xi;
        if (!(s > 0.0)) return 0.0;
        return (2.0 * w.B * std::abs(xi) / (w.p - 1.0)) *
               std::pow(s, (2.0 - w.p) / (w.p - 1.0));
    };

    if (deriv_order == 1) {
        out.rate = std::isinf(q) ? 1.0 / (p + 1.0)
                                 : (q - 1.0) / ((p + 1.0) * q);
        if (std::isinf(q)) {
            // Grid max of the density over the support.
            double m = 0.0;
            for (int i = 0; i <= 20000; ++i)
                m = std::max(m, density_xi(w, -edge + 2.0 * edge * i / 20000.0));
            out.measured = m * std::pow(tau, -1.0 / (p + 1.0));
            out.reference_predicted =
                std::pow(2.0 * w.A, 1.0 / (p - 1.0)) * std::pow(tau, -1.0 / (p + 1.0));
        } else {
            const double I = w.A > 0.0
                                 ? integrate([&](double xi) {
                                       return std::pow(density_xi(w, xi), q);
                                   },
                                             -edge, edge, 1e-12)
                                       .value
                                 : 0.0;
            out.measured = std::pow(I, 1.0 / q) * std::pow(tau, -out.rate);
            // Printed C1 from the closed-form lemma (see README note on the
            // q = 1 normalization).
            const double C1 = std::pow(
                2.0 * std::pow(w.A, (p + 2.0 * q - 1.0) / (2.0 * (p - 1.0))) /
                    std::sqrt(w.B) * sin_power_integral(q / (p - 1.0)),
                1.0 / q);
            out.reference_predicted = C1 * std::pow(tau, -out.rate);
        }
    } else {
        out.rate = std::isinf(q) ? 2.0 / (p + 1.0)
                                 : (2.0 * q - 1.0) / ((p + 1.0) * q);
        if (std::isinf(q)) {
            double m = 0.0;
            for (int i = 0; i <= 20000; ++i)
                m = std::max(m, dvdxi_abs(-edge + 2.0 * edge * i / 20000.0));
            out.measured = m * std::pow(tau, -2.0 / (p + 1.0));
            out.reference_predicted =
                2.0 * std::pow(w.A, std::abs(p - 2.0) / (p - 1.0)) * w.B /
                (p - 1.0) * std::sqrt(w.A / w.B) *
                std::pow(tau, -2.0 / (p + 1.0));
        } else {
            // The integrand blows up like dist^(q(2-p)/(p-1)) at the support
            // edge when p > 2. Integrate in s = A - B xi^2 with s = A r^k,
            // which flattens the endpoint for any integrable q.
            const double alpha = q * (2.0 - p) / (p - 1.0);
            const double k =
                alpha >= 0.0 ? 1.0 : std::ceil(2.0 / (1.0 + alpha));
            const double I =
                w.A > 0.0
                    ? 2.0 *
                          integrate(
                              [&](double r) {
                                  const double rk = std::pow(r, k);
                                  const double s = w.A * rk;
                                  const double xi =
                                      std::sqrt(w.A * (1.0 - rk) / w.B);
                                  return std::pow(2.0 * w.B * xi, q - 1.0) *
                                         std::pow(p - 1.0, -q) *
                                         std::pow(w.A, alpha + 1.0) * k *
                                         std::pow(r, k * alpha + k - 1.0) *
                                         (s >= 0.0 ? 1.0 : 0.0);
                              },
                              0.0, 1.0, 1e-12)
                              .value
                    : 0.0;
            out.measured = std::pow(I, 1.0 / q) * std::pow(tau, -out.rate);
            const double C2q =
                2.0 *
                std::pow(2.0 * std::pow(w.A, -(p - 2.0) / (p - 1.0)) * w.B /
                             (p - 1.0),
                         q) *
                std::pow(w.B / w.A, -(q + 1.0) / 2.0) *
                integrate(
                    [&](double th) {
                        return std::pow(std::sin(th),
                                        -2.0 * (p - 2.0) * q / (p - 1.0) + 1.0) *
                               std::pow(std::cos(th), q);
                    },
                    0.0, M_PI / 2.0, 1e-12)
                    .value;
            out.reference_predicted = std::pow(C2q, 1.0 / q) * std::pow(tau, -out.rate);
        }
    }
    return out;
}

SmoothRarefaction make_smooth_rarefaction(const FluxSpec& flux, double u_minus,
                                          double u_plus) {
    if (!(u_minus < u_plus))
        throw std::invalid_argument("make_smooth_rarefaction: u_minus must be < u_plus");
    SmoothRarefaction sr;
    sr.flux = flux;
    sr.u_minus = u_minus;
    sr.u_plus = u_plus;
    sr.lambda_minus = flux.df(u_minus);
    sr.lambda_plus = flux.df(u_plus);
    if (!(sr.lambda_minus < sr.lambda_plus))
        throw std::invalid_argument(
            "make_smooth_rarefaction: states must lie on the convex branch");
    return sr;
}

double rarefaction_exact(const FluxSpec& flux, double u_minus, double u_plus,
                         double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("rarefaction_exact: t must be > 0");
    if (!(u_minus < u_plus))
        throw std::invalid_argument("rarefaction_exact: u_minus must be < u_plus");
    const double lm = flux.df(u_minus);
    const double lp = flux.df(u_plus);
    const double s = x / t;
    if (s <= lm) return u_minus;
    if (s >= lp) return u_plus;
    SmoothRarefaction sr;
    sr.flux = flux;
    sr.u_minus = u_minus;
    sr.u_plus = u_plus;
    sr.lambda_minus = lm;
    sr.lambda_plus = lp;
    return lambda_inverse(sr, s);
}

double smooth_rarefaction_eval(const SmoothRarefaction& sr, double t, double x) {
    const double x0 = characteristic_foot(sr, t, x);
    return lambda_inverse(sr, w0_of(sr, x0));
}

double smooth_rarefaction_dux(const SmoothRarefaction& sr, double t, double x) {
    const double x0 = characteristic_foot(sr, t, x);
    const double g = w0_prime(sr, x0);
    const double dw = g / (1.0 + g * t);
    const double u = lambda_inverse(sr, w0_of(sr, x0));
    return dw / sr.flux.d2f(u);
}

double smooth_rarefaction_d2ux(const SmoothRarefaction& sr, double t, double x) {
    const double x0 = characteristic_foot(sr, t, x);
    const double g = w0_prime(sr, x0);
    const double denom = 1.0 + g * t;
    const double dw = g / denom;
    const double d2w = w0_second(sr, x0) / (denom * denom * denom);
    const double u = lambda_inverse(sr, w0_of(sr, x0));
    const double lam1 = sr.flux.d2f(u);
    const double lam2 = sr.flux.d3f ? sr.flux.d3f(u) : 0.0;
    return d2w / lam1 - dw * dw * lam2 / (lam1 * lam1 * lam1);
}

CompositeWave make_composite(double p, double mu, double u_minus,
                             double u_plus, const FluxSpec& flux) {
    if (!(u_minus <= 0.0 && 0.0 <= u_plus))
        throw std::invalid_argument("make_composite: requires u_minus <= 0 <= u_plus");
    CompositeWave c{barenblatt_constants(p, mu, u_minus, 0.0, /*t_shift=*/1.0),
                    make_smooth_rarefaction(flux, 0.0, u_plus)};
    return c;
}

double composite_eval(const CompositeWave& c, double t, double x) {
    return contact_u(c.contact, t, x) + smooth_rarefaction_eval(c.rarefaction, t, x);
}

double composite_dux(const CompositeWave& c, double t, double x) {
    return contact_dux(c.contact, t, x) +
           smooth_rarefaction_dux(c.rarefaction, t, x);
}

double composite_d2ux(const CompositeWave& c, double t, double x) {
    const double rar = smooth_rarefaction_d2ux(c.rarefaction, t, x);
    const double hw = support_halfwidth(c.contact, t);
    if (std::abs(x) > hw || hw == 0.0) return rar;
    if (std::abs(x) == hw) {
        if (c.contact.p > 2.0)
            throw std::domain_error("composite_d2ux: contact support edge, p > 2");
        if (c.contact.p == 2.0) {
            // One-sided limit from inside the support.
            const double tau = t + c.contact.t_shift;
            const double xi = x / std::pow(tau, 1.0 / (c.contact.p + 1.0));
            return rar - 2.0 * c.contact.B * xi *
                             std::pow(tau, -2.0 / (c.contact.p + 1.0));
        }
        return rar;  // p < 2: contact second derivative vanishes at the edge
    }
    return rar + contact_d2ux(c.contact, t, x);
}

double remainder_Fp(const CompositeWave& c, double t, double x,
                    const FluxSpec& flux) {
    const double U = contact_u(c.contact, t, x);
    const double Ur = smooth_rarefaction_eval(c.rarefaction, t, x);
    const double dU = contact_dux(c.contact, t, x);
    const double dUr = smooth_rarefaction_dux(c.rarefaction, t, x);

    const double interaction = -(flux.df(U + Ur) - flux.df(Ur)) * dUr -
                               flux.df(U + Ur) * dU;

    // d_x(|s|^{p-1} s - |v|^{p-1} v) = p (|s|^{p-1} s' - |v|^{p-1} v')
    const double p = c.contact.p;
    const double hw = support_halfwidth(c.contact, t);
    double d2U = 0.0;
    if (std::abs(x) < hw) {
        d2U = contact_d2ux(c.contact, t, x);
    } else if (std::abs(x) == hw && hw > 0.0) {
        if (p > 2.0)
            throw std::domain_error("remainder_Fp: contact support edge, p > 2");
        if (p == 2.0) {
            const double tau = t + c.contact.t_shift;
            d2U = -2.0 * c.contact.B * (x / std::pow(tau, 1.0 / (p + 1.0))) *
                  std::pow(tau, -2.0 / (p + 1.0));
        }
    }
    const double d2Ur = smooth_rarefaction_d2ux(c.rarefaction, t, x);
    const double s = dU + dUr;
    const double cross = c.contact.mu * p *
                         (std::pow(std::abs(s), p - 1.0) * (d2U + d2Ur) -
                          std::pow(std::abs(dU), p - 1.0) * d2U);
    return interaction + cross;
}

}  // namespace degen
