#include "logdamp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "logdamp/error.hpp"
#include "logdamp/model.hpp"
#include "logdamp/spectral.hpp"

namespace logdamp {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

template <class Fn>
std::vector<std::pair<double, double>> series_over(const std::vector<double>& times, Fn&& value_at) {
    std::vector<std::pair<double, double>> out(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        try {
            out[i] = {t, value_at(t)};
        } catch (const NoConvergence& e) {
            throw NoConvergence(std::string(e.what()) + " at t = " + fmt(t), e.best_estimate,
                                e.error_estimate);
        }
    });
    return out;
}

// Upper limit for the full-range norm integrals. For mu <= 2 (and the
// above-threshold part when mu > 2) the (1+r)^{-mu t} envelope controls
// the tail; for small t that envelope is not integrable against r^{n+1}
// and the catalog data's own Gaussian decay makes a fixed radius safe.
double norm_cut(double mu, double t, int dim, double eps) {
    const double power = dim + 1;
    const double t_eff = std::max(t, 1.0);
    if (mu * t_eff > power + 1.5) {
        return truncation_radius(mu, t_eff, eps, power);
    }
    return 64.0;
}

// Concentration scale of the diffusive (mu > 2) low-frequency integrands:
// exp(2 lambda_plus t) with lambda_plus ~ -r/mu near the origin.
double diffusive_scale(double mu, double t, double delta) {
    return std::min(delta, mu / std::max(t, 1.0)) / 4.0;
}

Verdict make_verdict(std::string name, double expected, double measured, double tolerance,
                     CheckMode mode, std::vector<std::pair<double, double>> series = {}) {
    Verdict v;
    v.name = std::move(name);
    v.expected = expected;
    v.measured = measured;
    v.tolerance = tolerance;
    v.mode = mode;
    switch (mode) {
        case CheckMode::TwoSided: v.pass = std::abs(measured - expected) <= tolerance; break;
        case CheckMode::UpperBound: v.pass = measured <= expected + tolerance; break;
        case CheckMode::LowerBound: v.pass = measured >= expected - tolerance; break;
    }
    v.series = std::move(series);
    return v;
}

void require_mass(const DataPair& pair) {
    if (pair.u1.p1 == 0.0) {
        throw InvalidParameter("experiment needs velocity data with nonzero mass (p1 != 0)");
    }
}

}  // namespace

std::vector<double> TimeGrid::times() const {
    if (!(t_min > 0.0) || !(t_min < t_max) || count < 5) {
        throw InvalidParameter("time grid needs 0 < t_min < t_max and count >= 5");
    }
    std::vector<double> ts(count);
    const double q = std::pow(t_max / t_min, 1.0 / (count - 1));
    double t = t_min;
    for (int k = 0; k < count; ++k) {
        ts[k] = t;
        t *= q;
    }
    ts.back() = t_max;
    return ts;
}

std::string Verdict::summary() const {
    std::string cmp = mode == CheckMode::TwoSided ? "+-"
                      : mode == CheckMode::UpperBound ? "<="
                                                      : ">=";
    return std::string(pass ? "[PASS] " : "[FAIL] ") + name + ": measured=" + fmt(measured) +
           " expected=" + fmt(expected) + " (" + cmp + " tol " + fmt(tolerance) + ")";
}

bool all_pass(const std::vector<Verdict>& verdicts) {
    for (const auto& v : verdicts) {
        if (!v.pass) return false;
    }
    return true;
}

RateFit fit_loglog(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 5) throw CannotFit("rate fit needs at least 5 points");
    const std::size_t n = series.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(series[i].second > 0.0) || !(series[i].first > 0.0)) {
            throw CannotFit("rate fit needs strictly positive (t, y); offending t = " +
                            fmt(series[i].first));
        }
        xs[i] = std::log(series[i].first);
        ys[i] = std::log(series[i].second);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        fit.max_residual = std::max(fit.max_residual, std::abs(fit.intercept + fit.slope * xs[i] - ys[i]));
    }
    return fit;
}

double solution_norm(const DataPair& pair, double mu, double t, const QuadratureSpec& spec) {
    const int n = pair.u1.dim;
    const auto w = [&](double r) { return solution_hat(pair, mu, r, t); };
    const double omega = 2.0 * std::max(t, 1.0);
    if (classify(mu) != Regime::Effective) {
        const double R = norm_cut(mu, t, n, spec.envelope_eps);
        return fourier_l2_norm(w, n, 0.0, R, spec, omega, 1.0 / (mu * std::max(t, 1.0)));
    }
    const Threshold thr = threshold_delta(mu);
    const double low = fourier_l2_norm(w, n, 0.0, thr.delta, spec, 0.0, diffusive_scale(mu, t, thr.delta));
    const double R = norm_cut(mu, t, n, spec.envelope_eps);
    double high = 0.0;
    if (R > thr.delta) {
        high = fourier_l2_norm(w, n, thr.delta, R, spec, omega, 0.0);
    }
    return std::hypot(low, high);
}

double profile_distance(const DataPair& pair, double mu, double t, const QuadratureSpec& spec) {
    const int n = pair.u1.dim;
    const double p1 = pair.u1.p1;
    const ProfileKind kind = profile_for(mu);
    const double omega = 2.0 * std::max(t, 1.0);

    if (kind == ProfileKind::NonEffective) {
        // The simplified profile carries a different phase, so the
        // difference is formed directly.
        const auto g = [&](double r) {
            return solution_hat(pair, mu, r, t) - profile(kind, p1, mu, r, t);
        };
        const double R = norm_cut(mu, t, n, spec.envelope_eps);
        return fourier_l2_norm(g, n, 0.0, R, spec, omega, 1.0 / (mu * std::max(t, 1.0)));
    }

    // Critical / effective: the profile is exactly p1 * S, so
    // w - profile = C*u0_hat + S*(u1_hat - p1), cancellation-free.
    const auto g = [&](double r) {
        const Propagators p = propagators(mu, r, t);
        if (p.underflow) return 0.0;
        return p.C * pair.u0.hat(r) + p.S * pair.u1.hat_minus_p1(r);
    };
    if (kind == ProfileKind::Critical) {
        const double R = norm_cut(mu, t, n, spec.envelope_eps);
        return fourier_l2_norm(g, n, 0.0, R, spec, omega, 1.0 / (2.0 * std::max(t, 1.0)));
    }
    const Threshold thr = threshold_delta(mu);
    return fourier_l2_norm(g, n, 0.0, thr.delta, spec, 0.0, diffusive_scale(mu, t, thr.delta));
}

double tail_norm(const DataPair& pair, double mu, double t, const QuadratureSpec& spec) {
    if (classify(mu) != Regime::Effective) {
        throw RegimeError("tail norm is defined for mu > 2 only");
    }
    const int n = pair.u1.dim;
    const Threshold thr = threshold_delta(mu);
    const double R = tail_cut(mu, std::max(t, 1.0), thr.delta, n + 1, spec.envelope_eps);
    const auto w = [&](double r) { return solution_hat(pair, mu, r, t); };
    const double scale = (1.0 + thr.delta) / (mu * std::max(t, 1.0));
    return fourier_l2_norm(w, n, thr.delta, R, spec, 2.0 * std::max(t, 1.0), scale);
}

Verdict run_profile_convergence(double mu, const DataPair& pair, const TimeGrid& grid,
                                const QuadratureSpec& spec) {
    require_mass(pair);
    const int n = pair.u1.dim;
    auto series = series_over(grid.times(), [&](double t) { return profile_distance(pair, mu, t, spec); });
    const RateFit fit = fit_loglog(series);
    return make_verdict("profile_convergence(mu=" + fmt(mu) + " n=" + fmt(n) + ")", -0.5 * n,
                        fit.slope, 0.1, CheckMode::TwoSided, std::move(series));
}

Verdict run_tail_exponential(double mu, const DataPair& pair, int count, const QuadratureSpec& spec) {
    require_mass(pair);
    if (count < 5) throw InvalidParameter("tail fit needs at least 5 points");
    const int n = pair.u1.dim;
    const Threshold thr = threshold_delta(mu);  // also enforces mu > 2

    // Window where exp(-delta * t) stays representable: the envelope
    // exponent at the threshold is exactly delta * t.
    const double t_lo = 10.0;
    const double t_hi = std::max(std::min(100.0, 600.0 / thr.delta), 2.0 * t_lo);
    std::vector<double> ts(count);
    for (int i = 0; i < count; ++i) {
        ts[i] = t_lo + (t_hi - t_lo) * static_cast<double>(i) / (count - 1);
    }
    auto series = series_over(ts, [&](double t) { return tail_norm(pair, mu, t, spec); });

    // Affine fit of log y against t (not log t).
    const int m = count;
    double sx = 0.0, sy = 0.0;
    std::vector<double> ys(m);
    for (int i = 0; i < m; ++i) {
        if (!(series[i].second > 0.0)) {
            throw CannotFit("tail norm vanished at t = " + fmt(series[i].first));
        }
        ys[i] = std::log(series[i].second);
        sx += ts[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < m; ++i) {
        sxx += (ts[i] - mx) * (ts[i] - mx);
        sxy += (ts[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double resid = 0.0, y_min = ys[0], y_max = ys[0];
    for (int i = 0; i < m; ++i) {
        resid = std::max(resid, std::abs(intercept + slope * ts[i] - ys[i]));
        y_min = std::min(y_min, ys[i]);
        y_max = std::max(y_max, ys[i]);
    }
    const double range = std::max(y_max - y_min, 1e-300);

    Verdict v = make_verdict("tail_exponential(mu=" + fmt(mu) + " n=" + fmt(n) +
                                 " slope=" + fmt(slope) + "/t)",
                             0.0, resid / range, 0.05, CheckMode::UpperBound, std::move(series));
    v.pass = v.pass && slope < 0.0;
    return v;
}

std::vector<Verdict> run_solution_norm_rates(double mu, const DataPair& pair, const TimeGrid& grid,
                                             const QuadratureSpec& spec) {
    require_mass(pair);
    const int n = pair.u1.dim;
    auto series = series_over(grid.times(), [&](double t) { return solution_norm(pair, mu, t, spec); });
    const RateFit fit = fit_loglog(series);
    const std::string tag = "(mu=" + fmt(mu) + " n=" + fmt(n) + ")";

    std::vector<Verdict> out;
    if (n == 2) {
        out.push_back(make_verdict("norm_band_slope" + tag, 0.0, fit.slope, 0.05,
                                   CheckMode::TwoSided, series));
        // Bounded band over the final decade of the window.
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& [t, y] : series) {
            if (t >= grid.t_max / 10.0) {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
        out.push_back(make_verdict("norm_band_ratio" + tag, 3.0, hi / lo, 0.0, CheckMode::UpperBound));
        return out;
    }
    out.push_back(make_verdict("norm_rate" + tag, 1.0 - 0.5 * n, fit.slope, 0.05,
                               CheckMode::TwoSided, series));
    out.push_back(make_verdict("norm_rate_residual" + tag, 0.0, fit.max_residual, 0.15,
                               CheckMode::UpperBound));
    return out;
}

Verdict run_zero_mean(int dim, double mu, const TimeGrid& grid, const QuadratureSpec& spec) {
    const DataPair pair{zero_datum(dim), zero_mean_datum(1.0, 2.0, dim)};
    auto series = series_over(grid.times(), [&](double t) { return solution_norm(pair, mu, t, spec); });
    const RateFit fit = fit_loglog(series);
    return make_verdict("zero_mean_rate(mu=" + fmt(mu) + " n=" + fmt(dim) + ")", -0.5 * dim,
                        fit.slope, 0.1, CheckMode::UpperBound, std::move(series));
}

Verdict run_root_gap_bounds(double mu, int points) {
    if (points < 2) throw InvalidParameter("root gap grid needs at least 2 points");
    const Threshold thr = threshold_delta(mu);  // enforces mu > 2

    // Constant of the low-frequency equivalence mu*log(1+r) ~ r: grid
    // minimum of log(1+r)/r over [0, delta] (the ratio is decreasing, so
    // the endpoint dominates; the grid keeps the bound honest).
    double c1 = 1.0;
    for (int i = 0; i <= 10000; ++i) {
        c1 = std::min(c1, log1p_ratio(thr.delta * i / 10000.0));
    }

    double worst = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> sample;
    for (int i = 0; i < points; ++i) {
        const double r = thr.delta1 * static_cast<double>(i) / (points - 1);
        const double L = std::log1p(r);
        const auto roots = char_roots(mu, r);
        const double gap = root_gap(mu, r).real();
        const double lam_p = roots.lambda_plus.real();
        const double lam_m = roots.lambda_minus.real();

        const double slack[6] = {
            gap - thr.c * L,                                    // gap lower bound
            thr.d * L - gap,                                    // gap upper bound
            -2.0 * lam_p - 2.0 * r / (mu * log1p_ratio(r)),     // 4r^2/(2 mu L) <= -2 lam_p
            (4.0 / (c1 * mu)) * r + 2.0 * lam_p,                // -2 lam_p <= (4/(c1 mu)) r
            2.0 * lam_m + 2.0 * mu * L,                         // -2 mu L <= 2 lam_m
            -mu * L - 2.0 * lam_m,                              // 2 lam_m <= -mu L
        };
        double local = slack[0];
        for (double s : slack) local = std::min(local, s);
        worst = std::min(worst, local);
        if (i % std::max(points / 100, 1) == 0) sample.emplace_back(r, local);
    }
    return make_verdict("root_gap_bounds(mu=" + fmt(mu) + ")", 0.0, -worst + 0.0, 1e-12,
                        CheckMode::UpperBound, std::move(sample));
}

Verdict run_regime_comparison(const std::string& data_key, int dim, const TimeGrid& grid,
                              const QuadratureSpec& spec) {
    const double mus[3] = {1.0, 2.0, 4.0};
    double slopes[3] = {};
    for (int i = 0; i < 3; ++i) {
        const DataPair pair = pair_from_key(data_key, dim);
        require_mass(pair);
        auto series =
            series_over(grid.times(), [&](double t) { return solution_norm(pair, mus[i], t, spec); });
        slopes[i] = fit_loglog(series).slope;
    }
    double spread = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            spread = std::max(spread, std::abs(slopes[i] - slopes[j]));
        }
    }
    std::vector<std::pair<double, double>> slope_rows;
    for (int i = 0; i < 3; ++i) slope_rows.emplace_back(mus[i], slopes[i]);
    return make_verdict("regime_comparison(n=" + fmt(dim) + ")", 0.0, spread, 0.1,
                        CheckMode::UpperBound, std::move(slope_rows));
}

std::vector<Verdict> run_singularity_probe(double mu, double t) {
    const Threshold thr = threshold_delta(mu);  // enforces mu > 2
    const double delta = thr.delta;

    double max_jump = 0.0;
    std::vector<std::pair<double, double>> jumps;
    for (int k = 2; k <= 7; ++k) {
        const double eps = std::pow(10.0, -k);
        const double below = propagators(mu, delta * (1.0 - eps), t).S;
        const double above = propagators(mu, delta * (1.0 + eps), t).S;
        const double jump = std::abs(below - above);
        max_jump = std::max(max_jump, jump);
        jumps.emplace_back(eps, jump);
    }

    // At the threshold the exact value collapses to t * exp(-delta * t)
    // because mu*log(1+delta) = 2*delta.
    const double exact = t * std::exp(-delta * t);
    const double near = propagators(mu, delta * (1.0 + 1e-7), t).S;
    const double deviation = std::abs(near - exact) / exact;

    const double naive = naive_effective_s(mu, delta * (1.0 + 1e-7), t);
    const double naive_err =
        std::isfinite(naive) ? std::abs(naive - propagators(mu, delta * (1.0 + 1e-7), t).S) /
                                   std::abs(propagators(mu, delta * (1.0 + 1e-7), t).S)
                             : std::numeric_limits<double>::infinity();

    const std::string tag = "(mu=" + fmt(mu) + " t=" + fmt(t) + ")";
    std::vector<Verdict> out;
    out.push_back(make_verdict("threshold_continuity" + tag, 0.0, max_jump, 1e-8,
                               CheckMode::UpperBound, std::move(jumps)));
    out.push_back(
        make_verdict("threshold_limit_agreement" + tag, 0.0, deviation, 1e-3, CheckMode::UpperBound));
    out.push_back(
        make_verdict("naive_form_failure" + tag, 1e-4, naive_err, 0.0, CheckMode::LowerBound));
    return out;
}

unsigned worker_count() {
    if (const char* env = std::getenv("LOGDAMP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(std::min<long>(v, 1024));
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace logdamp
