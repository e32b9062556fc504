#pragma once

#include <string>

#include "degen/numerics.hpp"
#include "degen/solver.hpp"
#include "degen/waves.hpp"

namespace degen {

struct InequalityReport {
    std::string name;
    double max_ratio = 0.0;  // worst LHS/RHS over all trials
    int trials = 0;
    double slack = 1e-9;  // pass when max_ratio <= 1 + slack
    bool pass = false;
};

// sup_i |u_i - composite(t, x_i)|.
double deviation_sup(const Field& field, const CompositeWave& c, double t);

// Region-split energy functional: with phi = u - composite,
//   int_{U~>=0} phi^2 dxU~ + int_{U~+phi>=0, U~<0} (U~+phi)^2 dxU~
//   + int_{U~+phi<0, U~>=0} (U~+|phi|)^2 dxU~,
// by node-wise classification and grid quadrature.
double energy_G(const Field& field, const CompositeWave& c, double t);

// The unique zero of x -> composite(t, x); requires far fields straddling 0.
double sign_change_X(const CompositeWave& c, double t);

struct InteractionIntegrals {
    double I11;  // int_{-inf}^{X} |f'(U+U^r) - f'(U^r)| dxU^r
    double I12;  // same integrand on (X, inf)
    double I21;  // int_X^inf f'(U+U^r) dxU
};

InteractionIntegrals interaction_integrals(const CompositeWave& c,
                                           const FluxSpec& flux, double t);

// int |F_p| dx over the line (truncated to the active region), F_p the
// composite-wave remainder.
double remainder_l1(const CompositeWave& c, const FluxSpec& flux, double t);

// Gagliardo-Nirenberg style bound
//   |phi|_inf <= ((3p+1)/(p+1))^((p+1)/(3p+1)) |phi|_2^(2p/(3p+1))
//               |dx phi|_{p+1}^((p+1)/(3p+1))
// with discrete norms and central differences; slack 0.02.
InequalityReport check_sobolev(const Field& phi, double p);

// Interpolation ratio with unspecified constant, restated as exact
// homogeneity: R(lambda v(sigma .)) = R(v) for lambda, sigma in {1/2, 2},
// asserted to 1e-8 relative.
InequalityReport check_interpolation_L36(const Field& v, double p, double q);

// Boundary-zero interpolation on the decreasing-slope region with the
// explicit constant ((3p+2)/2)^(2/(3p+2)); slack 0.05.
InequalityReport check_boundary_interp_L52(const Field& u_field, double p);

double max_principle_bound(const Field& phi0, double u_minus, double u_plus);

// CSV export, columns t,value,series_name, '.'-decimal, LF endings.
void write_series_csv(const std::string& path, const std::string& series_name,
                      const TimeSeries& series);

}  // namespace degen
