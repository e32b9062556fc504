#include "degen/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace degen {

namespace {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& fn, double a, double b,
                 long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = fn(c);
    double kron = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kKronrodNodes[i];
        const double f1 = fn(c - dx);
        const double f2 = fn(c + dx);
        kron += kKronrodWeights[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
    }
    evals += 15;
    const double value = kron * h;
    double err = std::abs((kron - gauss) * h);
    // Sharpen the raw Gauss/Kronrod difference the usual way.
    if (err > 0.0) err = std::pow(200.0 * err, 1.5);
    return {value, std::min(err, std::abs((kron - gauss) * h) * 200.0)};
}

struct Interval {
    double a, b, value, error;
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& fn, double lo,
                           double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
    if (!(lo <= hi)) throw std::invalid_argument("integrate: lo > hi");
    if (lo == hi) return {0.0, 0.0, 0};

    // Map infinite endpoints onto a finite interval.
    const bool inf_lo = std::isinf(lo);
    const bool inf_hi = std::isinf(hi);
    if (inf_lo || inf_hi) {
        std::function<double(double)> g;
        double a, b;
        if (inf_lo && inf_hi) {
            // x = s / (1 - s^2), s in (-1, 1)
            g = [&fn](double s) {
                const double d = 1.0 - s * s;
                return fn(s / d) * (1.0 + s * s) / (d * d);
            };
            a = -1.0;
            b = 1.0;
        } else if (inf_hi) {
            // x = lo + s / (1 - s), s in [0, 1)
            g = [&fn, lo](double s) {
                const double d = 1.0 - s;
                return fn(lo + s / d) / (d * d);
            };
            a = 0.0;
            b = 1.0;
        } else {
            g = [&fn, hi](double s) {
                const double d = 1.0 - s;
                return fn(hi - s / d) / (d * d);
            };
            a = 0.0;
            b = 1.0;
        }
        // Stay off the singular endpoint of the map itself.
        const double eps = 1e-14;
        return integrate(g, a + (a == -1.0 ? eps : 0.0), b - eps, tol);
    }

    long evals = 0;
    PanelResult whole = gk15(fn, lo, hi, evals);
    std::vector<Interval> heap{{lo, hi, whole.value, whole.error}};
    auto cmp = [](const Interval& x, const Interval& y) {
        return x.error < y.error;
    };

    double total_value = whole.value;
    double total_error = whole.error;
    const int max_intervals = 4000;
    // Refinement floor is relative to the panel's own position, so panels
    // abutting a singularity at 0 can shrink geometrically as far as needed.
    const double span_floor = std::abs(hi - lo) * 1e-30;

    while (total_error > tol && static_cast<int>(heap.size()) < max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        const double min_width =
            0x1p-46 * std::max({std::abs(worst.a), std::abs(worst.b), span_floor});
        if (worst.b - worst.a < min_width) {
            // Cannot refine further; accept this panel's estimate.
            if (worst.error > tol) {
                throw std::runtime_error(
                    "integrate: failed to converge near [" +
                    std::to_string(worst.a) + ", " + std::to_string(worst.b) +
                    "]");
            }
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        PanelResult left = gk15(fn, worst.a, mid, evals);
        PanelResult right = gk15(fn, mid, worst.b, evals);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push_back({worst.a, mid, left.value, left.error});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({mid, worst.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
    if (total_error > tol && static_cast<int>(heap.size()) >= max_intervals) {
        auto worst =
            std::max_element(heap.begin(), heap.end(), cmp);
        throw std::runtime_error("integrate: exceeded max subdivisions; worst "
                                 "subinterval [" +
                                 std::to_string(worst->a) + ", " +
                                 std::to_string(worst->b) + "]");
    }

    // Re-sum for a well-conditioned total.
    total_value = 0.0;
    total_error = 0.0;
    for (const auto& iv : heap) {
        total_value += iv.value;
        total_error += iv.error;
    }
    return {total_value, total_error, evals};
}

double find_root_monotone(const std::function<double(double)>& fn, double lo,
                          double hi, double tol,
                          const std::function<double(double)>* dfn) {
    if (!(lo <= hi)) throw std::invalid_argument("find_root_monotone: lo > hi");
    double flo = fn(lo);
    double fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("find_root_monotone: no sign change in bracket");

    double a = lo, b = hi, fa = flo;
    double x = 0.5 * (a + b);
    for (int iter = 0; iter < 200; ++iter) {
        double fx = fn(x);
        if (std::abs(fx) <= tol || 0.5 * (b - a) <= tol) {
            break;
        }
        if (fa * fx <= 0.0) {
            b = x;
        } else {
            a = x;
            fa = fx;
        }
        double next = 0.5 * (a + b);
        if (dfn) {
            const double d = (*dfn)(x);
            if (d != 0.0) {
                const double newton = x - fx / d;
                if (newton > a && newton < b) next = newton;
            }
        }
        x = next;
    }
    return std::clamp(x, lo, hi);
}

double grid_lq_norm(std::span<const double> values, double dx, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("grid_lq_norm: q must be >= 1");
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), q);
    return std::pow(s * dx, 1.0 / q);
}

void TimeSeries::push(double t, double value) {
    if (!entries.empty() && !(t > entries.back().t))
        throw std::invalid_argument("TimeSeries: t must be strictly increasing");
    entries.push_back({t, value});
}

DecayFit fit_decay(const TimeSeries& series, double t_min, double t_max) {
    if (!(t_min < t_max))
        throw std::invalid_argument("fit_decay: t_min must be < t_max");
    std::vector<double> xs, ys;
    for (const auto& e : series.entries) {
        if (e.t < t_min || e.t > t_max) continue;
        if (!(e.value > 0.0))
            throw std::invalid_argument("fit_decay: non-positive value at t=" +
                                        std::to_string(e.t));
        xs.push_back(std::log(e.t));
        ys.push_back(std::log(e.value));
    }
    const int n = static_cast<int>(xs.size());
    if (n < 5) throw std::invalid_argument("fit_decay: fewer than 5 points in window");

    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        const double dxv = xs[i] - mx, dyv = ys[i] - my;
        sxx += dxv * dxv;
        sxy += dxv * dyv;
        syy += dyv * dyv;
    }
    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.t_min = t_min;
    fit.t_max = t_max;
    fit.points = n;
    return fit;
}

std::vector<double> geometric_times(double t_min, double t_max) {
    if (!(t_min > 0.0 && t_max > t_min))
        throw std::invalid_argument("geometric_times: need 0 < t_min < t_max");
    const double decades = std::log10(t_max / t_min);
    const int n = std::max(5, static_cast<int>(std::ceil(10.0 * decades)) + 1);
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i)
        ts[i] = t_min * std::pow(t_max / t_min, double(i) / (n - 1));
    return ts;
}

}  // namespace degen
