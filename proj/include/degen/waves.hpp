#pragma once

#include "degen/flux.hpp"

namespace degen {

// Self-similar compactly supported contact-wave profile for p-Laplacian type
// viscosity. The profile density is
//   v(tau, x) = tau^(-1/(p+1)) * ((A - B xi^2) v 0)^(1/(p-1)),
//   xi = x / tau^(1/(p+1)),  tau = t + t_shift,
// and the wave itself is u_minus + the running integral of v.
struct BarenblattWave {
    double p;
    double mu;
    double u_minus;
    double u_plus;
    double A;
    double B;
    double t_shift = 0.0;
};

// Width constant B = (p-1)/(2 mu p (p+1)); amplitude A solved from the mass
// identity 2 A^((p+1)/(2(p-1))) B^(-1/2) Ip = u_plus - u_minus, with
// Ip = int_0^(pi/2) sin^((p+1)/(p-1)). The construction cross-checks A by
// quadrature of the density and fails beyond 1e-8 relative.
BarenblattWave barenblatt_constants(double p, double mu, double u_minus,
                                    double u_plus, double t_shift = 0.0);

double support_halfwidth(const BarenblattWave& w, double t);
double contact_u(const BarenblattWave& w, double t, double x);
double contact_dux(const BarenblattWave& w, double t, double x);
// Analytic x-derivative of contact_dux; only defined strictly inside the
// open support (throws std::domain_error at or outside the edge).
double contact_d2ux(const BarenblattWave& w, double t, double x);

struct ContactNorm {
    double measured;         // quadrature / grid-max of the closed form
    double reference_predicted;  // the textbook prefactor times t^-rate
    double rate;             // decay exponent in t
};

// Lq norm of d_x U (deriv_order 1) or d_x^2 U (deriv_order 2) at time t.
// q may be infinity. For deriv_order 2 and p > 2, q must be below
// (p-1)/(p-2).
ContactNorm contact_norm(const BarenblattWave& w, double t, double q,
                         int deriv_order);

// Characteristic-based smooth approximation of the rarefaction wave:
// U^r = lambda^{-1}(w) with w the classical Burgers solution started from a
// tanh profile between lambda(u_minus) and lambda(u_plus).
struct SmoothRarefaction {
    FluxSpec flux;
    double u_minus;
    double u_plus;
    double lambda_minus;
    double lambda_plus;
};

SmoothRarefaction make_smooth_rarefaction(const FluxSpec& flux, double u_minus,
                                          double u_plus);

// The non-viscous weak solution: u_minus / lambda^{-1}(x/t) / u_plus.
double rarefaction_exact(const FluxSpec& flux, double u_minus, double u_plus,
                         double t, double x);

double smooth_rarefaction_eval(const SmoothRarefaction& sr, double t, double x);
double smooth_rarefaction_dux(const SmoothRarefaction& sr, double t, double x);
double smooth_rarefaction_d2ux(const SmoothRarefaction& sr, double t, double x);

// Composite asymptotic state: contact wave from u_minus to 0 (evaluated at
// time 1 + t) plus smooth rarefaction from 0 to u_plus.
struct CompositeWave {
    BarenblattWave contact;
    SmoothRarefaction rarefaction;
};

CompositeWave make_composite(double p, double mu, double u_minus,
                             double u_plus, const FluxSpec& flux);

double composite_eval(const CompositeWave& c, double t, double x);
double composite_dux(const CompositeWave& c, double t, double x);
// Outside the contact support this is the rarefaction part alone; at the
// exact support edge with p > 2 it throws std::domain_error.
double composite_d2ux(const CompositeWave& c, double t, double x);

// The remainder F_p(U, U^r) by which the composite fails to solve the
// viscous conservation law: interaction terms plus the viscous cross term.
double remainder_Fp(const CompositeWave& c, double t, double x,
                    const FluxSpec& flux);

}  // namespace degen
