#include "logdamp/model.hpp"

#include <cmath>
#include <string>

#include "logdamp/error.hpp"

namespace logdamp {

namespace {

void require_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw InvalidParameter("mu must be a positive finite real, got " + std::to_string(mu));
    }
}

void require_radius(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidParameter("frequency radius must be finite and >= 0, got " + std::to_string(r));
    }
}

}  // namespace

Regime classify(double mu) {
    require_mu(mu);
    if (mu < 2.0) return Regime::NonEffective;
    if (mu == 2.0) return Regime::Critical;
    return Regime::Effective;
}

double log1p_ratio(double r) {
    if (r < 1e-4) {
        return 1.0 - r / 2.0 + r * r / 3.0 - r * r * r / 4.0;
    }
    return std::log1p(r) / r;
}

double discriminant(double mu, double r) {
    const double m = mu * std::log1p(r);
    return m * m - 4.0 * r * r;
}

CharRoots char_roots(double mu, double r) {
    require_mu(mu);
    require_radius(r);
    CharRoots out;
    if (r == 0.0) {
        return out;  // log(1) = 0: double root at the origin
    }
    const double m = mu * std::log1p(r);
    const double h = m * m - 4.0 * r * r;
    out.discriminant = h;
    if (h >= 0.0) {
        const double s = std::sqrt(h);
        // lambda_minus has no cancellation; lambda_plus through the product
        // form -2r^2/(m+s) so both roots carry full relative accuracy.
        out.lambda_minus = {-(m + s) / 2.0, 0.0};
        out.lambda_plus = {-2.0 * r * r / (m + s), 0.0};
    } else {
        const double w = std::sqrt(-h);
        out.lambda_plus = {-m / 2.0, w / 2.0};
        out.lambda_minus = {-m / 2.0, -w / 2.0};
    }
    return out;
}

std::complex<double> root_gap(double mu, double r) {
    require_mu(mu);
    require_radius(r);
    const double h = discriminant(mu, r);
    if (h >= 0.0) return {std::sqrt(h), 0.0};
    return {0.0, std::sqrt(-h)};
}

Threshold threshold_delta(double mu) {
    require_mu(mu);
    if (!(mu > 2.0)) {
        throw RegimeError("threshold requires mu > 2 (no positive root of mu*log(1+r) = 2r)");
    }
    const auto f = [mu](double r) { return mu * std::log1p(r) - 2.0 * r; };

    // f has its maximum at (mu-2)/2 and is positive there; double outward
    // until the sign flips, then bisect. Unconditionally safe.
    double lo = (mu - 2.0) / 2.0;
    double hi = std::max(2.0 * lo, 1.0);
    int guard = 0;
    while (f(hi) > 0.0 && guard++ < 200) hi *= 2.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Threshold t;
    t.delta = 0.5 * (lo + hi);
    t.delta1 = std::min(mu / 2.0 - 1.0, t.delta);
    const double one_plus = 1.0 + t.delta1;
    t.c = std::sqrt(std::max(mu * mu - 4.0 * one_plus * one_plus, 0.0));
    t.d = mu;
    return t;
}

double energy_weight(double mu, double r) {
    require_mu(mu);
    require_radius(r);
    if (r == 0.0) return 0.0;
    const double L = std::log1p(r);
    return mu * r * r * L / (r * r + mu * mu * L * L);
}

}  // namespace logdamp
