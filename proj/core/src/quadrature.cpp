#include "logdamp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "logdamp/data.hpp"
#include "logdamp/error.hpp"

namespace logdamp {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWeightK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWeightG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEval {
    double k15 = 0.0;
    double err = 0.0;
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double k15 = kWeightK[7] * f0;
    double g7 = kWeightG[3] * f0;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double fi = f(mid + dx) + f(mid - dx);
        k15 += kWeightK[i] * fi;
        if (i % 2 == 1) g7 += kWeightG[i / 2] * fi;
    }
    PanelEval out;
    out.k15 = k15 * half;
    out.err = std::abs((k15 - g7) * half);
    return out;
}

double pairwise_sum(const std::vector<double>& xs, size_t lo, size_t hi) {
    if (hi - lo <= 4) {
        double s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    const size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

struct Accumulator {
    std::vector<double> values;
    std::vector<double> errors;
    long panels = 0;
    bool converged = true;
};

void adapt(const std::function<double(double)>& f, double a, double b, double width_total,
           const QuadratureSpec& spec, int depth, Accumulator& acc) {
    const PanelEval pe = gk15(f, a, b);
    if (!std::isfinite(pe.k15)) {
        throw NoConvergence("non-finite integrand value in [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]",
                            pe.k15, pe.err);
    }
    const double budget = spec.abs_tol * (b - a) / width_total + spec.rel_tol * std::abs(pe.k15);
    if (pe.err <= budget || depth >= spec.max_depth) {
        if (pe.err > budget) acc.converged = false;
        acc.values.push_back(pe.k15);
        acc.errors.push_back(pe.err);
        acc.panels += 1;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, width_total, spec, depth + 1, acc);
    adapt(f, mid, b, width_total, spec, depth + 1, acc);
}

void check_spec(const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || !(spec.envelope_eps > 0.0) ||
        spec.max_depth < 1 || spec.points_per_period < 8) {
        throw InvalidParameter("quadrature spec: tolerances must be positive, points_per_period >= 8");
    }
}

}  // namespace

IntegralResult integrate_radial(const std::function<double(double)>& f, double r_lo, double r_hi,
                                const QuadratureSpec& spec, double omega_hint, double scale_hint) {
    check_spec(spec);
    if (!(r_lo < r_hi) || !std::isfinite(r_lo) || !std::isfinite(r_hi)) {
        throw InvalidParameter("integration interval needs r_lo < r_hi, both finite");
    }
    const double width = r_hi - r_lo;

    // Initial breakpoints: a geometric ladder from scale_hint (so left-edge
    // concentration is sampled) then uniform panels no wider than an
    // oscillation fraction.
    std::vector<double> pts;
    pts.push_back(r_lo);
    if (scale_hint > 0.0 && scale_hint < width) {
        double step = scale_hint;
        double x = r_lo + step;
        while (x < r_hi && pts.size() < 256) {
            pts.push_back(x);
            step *= 2.0;
            x = pts.back() + step;
        }
    }
    double cap = width;
    if (omega_hint > 0.0) {
        cap = (2.0 * std::numbers::pi / omega_hint) / spec.points_per_period;
    }
    pts.push_back(r_hi);
    std::vector<double> grid;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        grid.push_back(pts[i]);
        const double seg = pts[i + 1] - pts[i];
        if (seg > cap) {
            const long m = std::min<long>(static_cast<long>(std::ceil(seg / cap)), 100000);
            for (long j = 1; j < m; ++j) grid.push_back(pts[i] + seg * static_cast<double>(j) / m);
        }
    }
    grid.push_back(r_hi);

    Accumulator acc;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        adapt(f, grid[i], grid[i + 1], width, spec, 0, acc);
    }

    IntegralResult out;
    out.value = pairwise_sum(acc.values, 0, acc.values.size());
    out.error_estimate = pairwise_sum(acc.errors, 0, acc.errors.size());
    out.panels_used = acc.panels;
    out.truncation_radius = r_hi;
    out.converged = acc.converged;
    return out;
}

double fourier_l2_norm(const std::function<double(double)>& g, int dim, double r_lo, double r_hi,
                       const QuadratureSpec& spec, double omega_hint, double scale_hint) {
    const auto f = [&g, dim](double r) {
        const double v = g(r);
        return v * v * std::pow(r, dim - 1);
    };
    const IntegralResult res = integrate_radial(f, r_lo, r_hi, spec, omega_hint, scale_hint);
    const double wn = unit_sphere_area(dim);
    const double norm = std::pow(2.0 * std::numbers::pi, -dim / 2.0) *
                        std::sqrt(wn * std::max(res.value, 0.0));
    if (!res.converged) {
        throw NoConvergence("radial L2 quadrature did not reach tolerance", norm, res.error_estimate);
    }
    return norm;
}

double truncation_radius(double mu, double t, double eps, double power) {
    if (!(mu > 0.0) || !(t >= 1.0) || !(eps > 0.0) || !(power >= 0.0)) {
        throw InvalidParameter("truncation_radius needs mu > 0, t >= 1, eps > 0, power >= 0");
    }
    if (!(mu * t > power + 1.0)) {
        throw DivergentIntegral("envelope (1+r)^{-mu t} r^power is not integrable: mu*t <= power+1");
    }
    const double log_eps = std::log(eps);
    const auto log_h = [&](double r) { return -mu * t * std::log1p(r) + power * std::log(r); };

    const double peak = power > 0.0 ? power / (mu * t - power) : 0.0;
    double hi = std::max(2.0 * peak, 1e-3);
    if (power > 0.0 && log_h(std::max(peak, 1e-300)) < log_eps) {
        return std::max(peak, 1e-3);  // already everywhere below eps
    }
    int guard = 0;
    while (log_h(hi) >= log_eps && guard++ < 2000) hi *= 2.0;
    double lo = std::max(peak, hi / 2.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_h(mid) >= log_eps) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

double tail_cut(double mu, double t, double delta, double p, double drop) {
    if (!(delta > 0.0) || !(drop > 0.0) || drop >= 1.0) {
        throw InvalidParameter("tail_cut needs delta > 0 and drop in (0,1)");
    }
    const auto log_rel = [&](double r) {
        return -mu * t * (std::log1p(r) - std::log1p(delta)) + p * (std::log(r) - std::log(delta));
    };
    const double target = std::log(drop);
    double hi = 2.0 * delta;
    int guard = 0;
    while (log_rel(hi) >= target && guard++ < 2000) hi *= 2.0;
    double lo = std::max(delta, hi / 2.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_rel(mid) >= target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

double envelope_moment(double p, double mu, double delta, double t, MomentRange range,
                       const QuadratureSpec& spec) {
    check_spec(spec);
    if (!(mu > 0.0) || !(delta > 0.0) || !(t >= 0.0)) {
        throw InvalidParameter("envelope_moment needs mu > 0, delta > 0, t >= 0");
    }
    const auto f = [&](double r) { return std::exp(-mu * t * std::log1p(r) + p * std::log(r)); };

    if (range == MomentRange::Low) {
        if (!(p > -1.0)) {
            throw DivergentIntegral("low-range moment diverges for p <= -1");
        }
        // The envelope concentrates on scale 1/(mu t); ladder from there.
        const double scale = std::min(delta, 1.0 / (mu * std::max(t, 1.0))) / 4.0;
        if (p >= 0.0) {
            const auto res = integrate_radial(f, 0.0, delta, spec, 0.0, scale);
            if (!res.converged) throw NoConvergence("low-range moment quadrature", res.value, res.error_estimate);
            return res.value;
        }
        // p in (-1, 0): the r^p endpoint is integrable but unbounded. Peel
        // a head [0, a] whose exact value is bracketed by the monotone
        // envelope, then integrate the rest adaptively.
        double a = std::min(delta * 0.5, 1.0 / (mu * std::max(t, 1.0)));
        double head_hi = std::pow(a, p + 1.0) / (p + 1.0);
        double head_width = head_hi * (-std::expm1(-mu * t * std::log1p(a)));
        int guard = 0;
        while (head_width > 0.25 * spec.abs_tol && std::pow(a, p + 1.0) / (p + 1.0) > 0.25 * spec.abs_tol &&
               guard++ < 4000) {
            a *= 0.5;
            head_hi = std::pow(a, p + 1.0) / (p + 1.0);
            head_width = head_hi * (-std::expm1(-mu * t * std::log1p(a)));
        }
        const double head_lo = head_hi * std::exp(-mu * t * std::log1p(a));
        const double scale2 = std::min(delta - a, std::max(a, scale));
        const auto res = integrate_radial(f, a, delta, spec, 0.0, scale2);
        if (!res.converged) throw NoConvergence("low-range moment quadrature", res.value, res.error_estimate);
        return res.value + 0.5 * (head_lo + head_hi);
    }

    // High range: genuine tail, truncated where the integrand has dropped
    // by envelope_eps relative to its value at delta.
    if (!(mu * t > p + 1.0)) {
        throw DivergentIntegral("high-range moment needs mu*t > p + 1");
    }
    const double R = tail_cut(mu, t, delta, p, spec.envelope_eps);
    const double scale = (1.0 + delta) / (mu * std::max(t, 1.0));
    const auto res = integrate_radial(f, delta, R, spec, 0.0, std::min(scale, (R - delta) / 2.0));
    if (!res.converged) throw NoConvergence("high-range moment quadrature", res.value, res.error_estimate);
    return res.value;
}

}  // namespace logdamp
