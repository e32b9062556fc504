#include "degen/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "degen/diagnostics.hpp"
#include "degen/numerics.hpp"
#include "degen/scenario.hpp"
#include "degen/solver.hpp"
#include "degen/waves.hpp"

namespace degen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Analytic checks
// ---------------------------------------------------------------------------

CheckResult mass_identity_check() {
    CheckResult r;
    r.name = "01_barenblatt_mass_identity";
    r.threshold = 1e-8;
    double worst = 0.0;
    std::string worst_at;
    for (double p : {1.5, 2.0, 3.0})
        for (double mu : {0.5, 1.0})
            for (double mass : {0.5, 1.0, 2.0}) {
                const BarenblattWave w = barenblatt_constants(p, mu, 0.0, mass);
                const double t = 2.0;
                const double hw = support_halfwidth(w, t);
                const double got =
                    integrate([&](double x) { return contact_dux(w, t, x); },
                              -hw, hw, 1e-11 * mass)
                        .value;
                const double rel = std::abs(got - mass) / mass;
                if (rel > worst) {
                    worst = rel;
                    worst_at = "p=" + fmt(p) + ",mu=" + fmt(mu) + ",mass=" + fmt(mass);
                }
            }
    r.measured = worst;
    r.pass = worst <= r.threshold;
    r.note = "worst relative mass error at " + worst_at;
    return r;
}

CheckResult contact_lq_rates_check() {
    CheckResult r;
    r.name = "02_contact_gradient_lq_rates";
    r.threshold = 0.02;
    double worst = 0.0;
    double worst_const_ratio = 1.0;
    std::string worst_at;
    const auto times = geometric_times(1.0, 1e4);
    for (double p : {1.5, 2.0, 3.0})
        for (double q : {2.0, kInf}) {
            const BarenblattWave w = barenblatt_constants(p, 1.0, 0.0, 1.0);
            TimeSeries ts;
            double cr = 1.0;
            for (double t : times) {
                const ContactNorm cn = contact_norm(w, t, q, 1);
                ts.push(t, cn.measured);
                cr = cn.measured / cn.reference_predicted;
            }
            const DecayFit fit = fit_decay(ts, times.front(), times.back());
            const double target = std::isinf(q) ? -1.0 / (p + 1.0)
                                                : -(q - 1.0) / ((p + 1.0) * q);
            const double dev = std::abs(fit.slope - target);
            if (dev > worst) {
                worst = dev;
                worst_at = "p=" + fmt(p) + ",q=" + (std::isinf(q) ? "inf" : fmt(q));
            }
            if (std::abs(cr - 1.0) > std::abs(worst_const_ratio - 1.0))
                worst_const_ratio = cr;
        }
    r.measured = worst;
    r.pass = worst <= r.threshold;
    r.note = "worst |slope - target| at " + worst_at +
             "; measured/printed-constant ratio (reported only): " +
             fmt(worst_const_ratio);
    return r;
}

CheckResult contact_d2_rate_check() {
    CheckResult r;
    r.name = "03_contact_second_derivative_rate";
    r.threshold = 0.02;
    const BarenblattWave w = barenblatt_constants(2.0, 1.0, 0.0, 1.0);
    const auto times = geometric_times(1.0, 1e4);
    TimeSeries ts;
    for (double t : times) ts.push(t, contact_norm(w, t, 2.0, 2).measured);
    const DecayFit fit = fit_decay(ts, times.front(), times.back());
    r.measured = std::abs(fit.slope + 0.5);
    r.pass = r.measured <= r.threshold;
    r.note = "fitted slope " + fmt(fit.slope) + ", target -0.5";
    return r;
}

CheckResult rarefaction_decay_check() {
    CheckResult r;
    r.name = "04_rarefaction_decay_rates";
    r.threshold = 0.0;  // composite pass; measured is the worse excess
    const FluxSpec flux = builtin_degenerate_burgers();
    const SmoothRarefaction sr = make_smooth_rarefaction(flux, 0.0, 2.0);
    const auto times = geometric_times(1.0, 1e3);
    TimeSeries d1, d2;
    for (double t : times) {
        const double lo = sr.lambda_minus * t - 30.0;
        const double hi = sr.lambda_plus * t + 30.0;
        double m1 = 0.0, m2 = 0.0;
        const int n = 8000;
        for (int i = 0; i <= n; ++i) {
            const double x = lo + (hi - lo) * i / n;
            m1 = std::max(m1, std::abs(smooth_rarefaction_dux(sr, t, x)));
            m2 = std::max(m2, std::abs(smooth_rarefaction_d2ux(sr, t, x)));
        }
        d1.push(1.0 + t, m1);
        d2.push(1.0 + t, m2);
    }
    const DecayFit f1 = fit_decay(d1, 1.0 + times.front(), 1.0 + times.back());
    const DecayFit f2 = fit_decay(d2, 1.0 + times.front(), 1.0 + times.back());
    const double e1 = std::abs(f1.slope + 1.0) - 0.05;
    const double e2 = std::abs(f2.slope + 1.0) - 0.10;
    r.measured = std::max(e1, e2);
    r.pass = r.measured <= r.threshold;
    r.note = "slopes: gradient " + fmt(f1.slope) + " (target -1 +/- 0.05), second " +
             fmt(f2.slope) + " (target -1 +/- 0.1); measured is worst excess";
    return r;
}

CheckResult sign_change_rate_check() {
    CheckResult r;
    r.name = "05_sign_change_drift_rate";
    r.threshold = 0.05;
    const FluxSpec flux = builtin_degenerate_burgers();
    const auto times = geometric_times(1e2, 1e5);
    double worst = -kInf;
    std::string detail;
    for (double p : {2.0, 3.0}) {
        const CompositeWave c = make_composite(p, 1.0, -1.0, 1.0, flux);
        const double edge = std::sqrt(c.contact.A / c.contact.B);
        TimeSeries ts;
        for (double t : times) {
            const double X = sign_change_X(c, t);
            ts.push(1.0 + t, std::abs(edge - X / std::pow(1.0 + t, 1.0 / (p + 1.0))));
        }
        const DecayFit fit = fit_decay(ts, 1.0 + times.front(), 1.0 + times.back());
        const double target = -(p - 1.0) / (p + 1.0);
        worst = std::max(worst, fit.slope - target);
        detail += (detail.empty() ? "" : "; ") + ("p=" + fmt(p) + " slope " + fmt(fit.slope) +
                  " (bound " + fmt(target) + "+0.05)");
    }
    r.measured = worst;
    r.pass = worst <= r.threshold;
    r.note = "excess over the rate bound; " + detail;
    return r;
}

Field random_bump_field(const Grid1D& grid, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0), ctr(-5.0, 5.0),
        wid(0.3, 3.0);
    struct Gp {
        double a, c, w;
    };
    Gp g[3];
    for (auto& gi : g) gi = {amp(rng), ctr(rng), wid(rng)};
    Field f{grid, std::vector<double>(grid.nodes())};
    for (int i = 0; i < grid.nodes(); ++i) {
        const double x = grid.x(i);
        double v = 0.0;
        for (const auto& gi : g) {
            const double z = (x - gi.c) / gi.w;
            v += gi.a * std::exp(-z * z);
        }
        f.values[i] = v;
    }
    return f;
}

CheckResult sobolev_check() {
    CheckResult r;
    r.name = "09_sobolev_inequality";
    r.threshold = 1.02;
    const Grid1D grid = make_grid(-20.0, 20.0, 2000);
    std::mt19937 rng(12345);
    double worst = 0.0;
    std::string worst_at;
    for (double p : {1.5, 2.0, 3.0})
        for (int k = 0; k < 100; ++k) {
            const Field f = random_bump_field(grid, rng);
            const InequalityReport rep = check_sobolev(f, p);
            if (rep.trials == 0) continue;
            if (rep.max_ratio > worst) {
                worst = rep.max_ratio;
                worst_at = "p=" + fmt(p) + ",trial=" + std::to_string(k);
            }
        }
    // Scale and translation invariance of the ratio on a reference bump.
    Field base{grid, std::vector<double>(grid.nodes())};
    Field shifted = base;
    for (int i = 0; i < grid.nodes(); ++i) {
        const double x = grid.x(i);
        base.values[i] = std::exp(-x * x);
        shifted.values[i] = std::exp(-(x - 2.0) * (x - 2.0));
    }
    Field scaled = base;
    for (double& v : scaled.values) v *= 3.0;
    const double r0 = check_sobolev(base, 2.0).max_ratio;
    const double inv = std::max(std::abs(check_sobolev(scaled, 2.0).max_ratio / r0 - 1.0),
                                std::abs(check_sobolev(shifted, 2.0).max_ratio / r0 - 1.0));
    r.measured = worst;
    r.pass = worst <= r.threshold && inv <= 1e-10;
    r.note = "worst ratio at " + worst_at + "; scale/translation invariance deviation " +
             fmt(inv) + " (must be <= 1e-10)";
    return r;
}

CheckResult boundary_interp_check() {
    CheckResult r;
    r.name = "10_boundary_interpolation";
    r.threshold = 1.05;
    const Grid1D grid = make_grid(-20.0, 20.0, 2000);
    std::mt19937 rng(67890);
    double worst = 0.0;
    int used = 0;
    for (int k = 0; k < 50; ++k) {
        const Field f = random_bump_field(grid, rng);
        const InequalityReport rep = check_boundary_interp_L52(f, 2.0);
        if (rep.trials == 0) continue;
        ++used;
        worst = std::max(worst, rep.max_ratio);
    }
    r.measured = worst;
    r.pass = worst <= r.threshold && used > 0;
    r.note = std::to_string(used) + "/50 trials had decreasing regions";
    return r;
}

CheckResult interaction_check() {
    CheckResult r;
    r.name = "11_interaction_integrability";
    r.threshold = 0.05;
    const double p = 2.0;
    const FluxSpec flux = builtin_degenerate_burgers();
    const CompositeWave c = make_composite(p, 1.0, -1.0, 1.0, flux);

    const auto times = geometric_times(1e2, 1e5);
    TimeSeries s12, s21;
    for (double t : times) {
        const InteractionIntegrals ii = interaction_integrals(c, flux, t);
        s12.push(1.0 + t, ii.I12);
        s21.push(1.0 + t, ii.I21);
    }
    const DecayFit f12 = fit_decay(s12, 1.0 + times.front(), 1.0 + times.back());
    const DecayFit f21 = fit_decay(s21, 1.0 + times.front(), 1.0 + times.back());
    const double bound = -1.0 - (p - 1.0) / (p + 1.0);  // -4/3 for p = 2

    // Running integral of (L1 of the composite remainder)^((3p+1)/(3p)).
    const auto rt = geometric_times(0.01, 1e4);
    const double expo = (3.0 * p + 1.0) / (3.0 * p);
    double total = 0.0, before_last_quarter = 0.0;
    double prev_t = 0.0, prev_v = std::pow(remainder_l1(c, flux, 0.0), expo);
    for (double t : rt) {
        const double v = std::pow(remainder_l1(c, flux, t), expo);
        total += 0.5 * (prev_v + v) * (t - prev_t);
        if (t <= 0.75 * rt.back()) before_last_quarter = total;
        prev_t = t;
        prev_v = v;
    }
    const double growth = (total - before_last_quarter) / total;

    const double excess = std::max(f12.slope - bound, f21.slope - bound);
    r.measured = excess;
    r.pass = excess <= r.threshold && growth < 0.10;
    r.note = "I12 slope " + fmt(f12.slope) + ", I21 slope " + fmt(f21.slope) +
             " (bound " + fmt(bound) + "+0.05); remainder-integral final-quarter growth " +
             fmt(growth) + " (must be < 0.10)";
    return r;
}

// ---------------------------------------------------------------------------
// Solver scenario checks
// ---------------------------------------------------------------------------

struct RunData {
    TimeSeries dev;        // sup |u - multiwave|
    TimeSeries energy;     // G(t)
    TimeSeries phi_l2;     // L2 of phi
    TimeSeries diss_phi;   // |dx phi|_{p+1}^{p+1}
    TimeSeries du_norm;    // |dx u|_{p+1}
    TimeSeries mass;       // discrete integral of (u - multiwave)
    double bound = 0.0;    // maximum-principle bound
    std::string error;     // non-empty on solver failure
};

Scenario standard_scenario(double x_right) {
    Scenario s;
    s.name = "standard";
    s.grid = Grid1D{-40.0, x_right, static_cast<int>(std::lround((x_right + 40.0) / 0.05))};
    s.perturbation = {PerturbationSpec::Kind::gaussian, 0.3, 0.0, 1.0};
    SolverConfig& c = s.solver_config;
    c.p = 2.0;
    c.mu = 1.0;
    c.epsilon = 1e-6;
    c.flux = builtin_degenerate_burgers();
    c.u_minus = -1.0;
    c.u_plus = 1.0;
    c.t_end = 100.0;
    c.checkpoint_times.clear();
    for (int k = 0; k <= 40; ++k) c.checkpoint_times.push_back(2.5 * k);
    return s;
}

RunData execute_scenario(const Scenario& s) {
    RunData out;
    const CompositeWave w = scenario_wave(s);
    const Field u0 = scenario_initial_field(s, w);
    Field pert = u0;
    for (int i = 0; i < s.grid.nodes(); ++i)
        pert.values[i] = u0.values[i] - composite_eval(w, 0.0, s.grid.x(i));
    out.bound = max_principle_bound(pert, s.solver_config.u_minus,
                                    s.solver_config.u_plus);
    const double p = s.solver_config.p;
    Observer obs = [&](double t, const Field& f) {
        const double dx = f.grid.dx();
        const int m = f.grid.nodes();
        std::vector<double> phi(m), um(m);
        for (int i = 0; i < m; ++i) {
            um[i] = composite_eval(w, t, f.grid.x(i));
            phi[i] = f.values[i] - um[i];
        }
        out.dev.push(t, grid_lq_norm(phi, dx, kInf));
        out.energy.push(t, energy_G(f, w, t));
        out.phi_l2.push(t, grid_lq_norm(phi, dx, 2.0));
        auto diff = [dx, m](const std::vector<double>& v, int i) {
            if (i == 0) return (v[1] - v[0]) / dx;
            if (i == m - 1) return (v[m - 1] - v[m - 2]) / dx;
            return (v[i + 1] - v[i - 1]) / (2.0 * dx);
        };
        double dphi = 0.0, du = 0.0, mass = 0.0;
        for (int i = 0; i < m; ++i) {
            dphi += std::pow(std::abs(diff(phi, i)), p + 1.0) * dx;
            du += std::pow(std::abs(diff(f.values, i)), p + 1.0) * dx;
            const double wgt = (i == 0 || i == m - 1) ? 0.5 : 1.0;
            mass += wgt * phi[i] * dx;
        }
        out.diss_phi.push(t, dphi);
        out.du_norm.push(t, std::pow(du, 1.0 / (p + 1.0)));
        out.mass.push(t, mass);
    };
    try {
        run(s.solver_config, s.grid, u0, {obs});
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

double series_at(const TimeSeries& s, double t) {
    for (const auto& e : s.entries)
        if (std::abs(e.t - t) < 1e-9) return e.value;
    throw std::runtime_error("series value missing at t = " + fmt(t));
}

double trapezoid_growth(const TimeSeries& s, double frac_tail) {
    double total = 0.0, head = 0.0;
    const double t_cut = s.entries.back().t * (1.0 - frac_tail);
    for (std::size_t i = 1; i < s.entries.size(); ++i) {
        const auto& a = s.entries[i - 1];
        const auto& b = s.entries[i];
        total += 0.5 * (a.value + b.value) * (b.t - a.t);
        if (b.t <= t_cut + 1e-12) head = total;
    }
    return (total - head) / total;
}

std::vector<CheckResult> solver_checks(const RunData& d, bool informational,
                                       const std::string& suffix) {
    std::vector<CheckResult> out;
    if (!d.error.empty()) {
        for (const char* base :
             {"06_desk_scale_convergence", "07_maximum_principle",
              "08_uniform_estimate_monitors", "12_conservation_drift"}) {
            CheckResult r;
            r.name = std::string(base) + suffix;
            r.relation = "run";
            r.note = "solver failed: " + d.error;
            r.informational = informational;
            out.push_back(r);
        }
        return out;
    }

    {
        CheckResult r;
        r.name = "06_desk_scale_convergence" + suffix;
        r.threshold = 0.5;
        const double d5 = series_at(d.dev, 5.0), d20 = series_at(d.dev, 20.0);
        const double d50 = series_at(d.dev, 50.0), d100 = series_at(d.dev, 100.0);
        const bool monotone =
            d20 < d5 * 1.05 && d50 < d20 * 1.05 && d100 < d50 * 1.05;
        r.measured = d100 / d5;
        r.pass = monotone && r.measured < r.threshold;
        r.note = "dev at {5,20,50,100} = {" + fmt(d5) + ", " + fmt(d20) + ", " +
                 fmt(d50) + ", " + fmt(d100) + "}; adjacent decrease (5% jitter): " +
                 (monotone ? "yes" : "no");
        r.informational = informational;
        out.push_back(r);
    }
    {
        CheckResult r;
        r.name = "07_maximum_principle" + suffix;
        r.threshold = d.bound + 1e-9;
        double m = 0.0;
        for (const auto& e : d.dev.entries) m = std::max(m, e.value);
        r.measured = m;
        r.pass = m <= r.threshold;
        r.note = "max deviation over all checkpoints vs. uniform bound " + fmt(d.bound);
        r.informational = informational;
        out.push_back(r);
    }
    {
        CheckResult r;
        r.name = "08_uniform_estimate_monitors" + suffix;
        r.threshold = 1.0;
        const double gG = trapezoid_growth(d.energy, 0.25);
        const double gD = trapezoid_growth(d.diss_phi, 0.25);
        double early = 0.0, overall = 0.0;
        for (const auto& e : d.du_norm.entries) {
            if (e.t <= 0.1 * d.du_norm.entries.back().t + 1e-12)
                early = std::max(early, e.value);
            overall = std::max(overall, e.value);
        }
        const double ratio = overall / early;
        r.measured = std::max({gG / 0.10, gD / 0.10, ratio / 1.1});
        r.pass = r.measured <= r.threshold;
        r.note = "normalized worst of {energy-integral growth " + fmt(gG) +
                 "/0.10, dissipation-integral growth " + fmt(gD) +
                 "/0.10, gradient-norm ratio " + fmt(ratio) + "/1.1}";
        r.informational = informational;
        out.push_back(r);
    }
    {
        CheckResult r;
        r.name = "12_conservation_drift" + suffix;
        r.threshold = 1e-6;
        const double m0 = d.mass.entries.front().value;
        double drift = 0.0;
        for (const auto& e : d.mass.entries)
            drift = std::max(drift, std::abs(e.value - m0));
        r.measured = drift / std::abs(m0);
        r.pass = r.measured < r.threshold;
        r.note = "relative drift of the discrete integral of (u - multiwave), base " +
                 fmt(m0);
        r.informational = informational;
        out.push_back(r);
    }
    return out;
}

int thread_cap() {
    if (const char* env = std::getenv("DEGEN_WAVES_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

}  // namespace

std::vector<CheckResult> run_verification(VerifySuite suite) {
    std::vector<CheckResult> results;

    if (suite != VerifySuite::solver) {
        results.push_back(mass_identity_check());
        results.push_back(contact_lq_rates_check());
        results.push_back(contact_d2_rate_check());
        results.push_back(rarefaction_decay_check());
        results.push_back(sign_change_rate_check());
        results.push_back(sobolev_check());
        results.push_back(boundary_interp_check());
        results.push_back(interaction_check());
    }

    if (suite != VerifySuite::analytic) {
        // The gating scenario runs on the prescribed domain [-40, 60]; a
        // second, wider-domain run is reported for reference because the
        // rarefaction reaches x = 60 near t = 60 on the prescribed domain.
        const Scenario gating = standard_scenario(60.0);
        // x_right = 120 keeps the numerically smeared rarefaction head
        // (width ~ sqrt(2 f' dx t)) many widths away from the boundary
        // through t_end, so the boundary flux balance stays clean.
        const Scenario wide = standard_scenario(120.0);
        RunData gating_data, wide_data;
        if (thread_cap() >= 2) {
            std::thread a([&] { gating_data = execute_scenario(gating); });
            std::thread b([&] { wide_data = execute_scenario(wide); });
            a.join();
            b.join();
        } else {
            gating_data = execute_scenario(gating);
            wide_data = execute_scenario(wide);
        }
        for (auto& r : solver_checks(gating_data, false, "")) results.push_back(r);
        for (auto& r : solver_checks(wide_data, true, "_wide_domain_reference"))
            results.push_back(r);
    }

    std::sort(results.begin(), results.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return results;
}

void print_report(const std::vector<CheckResult>& results, std::ostream& os) {
    for (const auto& r : results) {
        const char* tag = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
        os << tag << " " << r.name << " measured=" << fmt(r.measured) << " "
           << r.relation << " threshold=" << fmt(r.threshold);
        if (!r.note.empty()) os << " | " << r.note;
        os << "\n";
    }
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.informational && !r.pass) return false;
    return true;
}

}  // namespace degen
