#include "logdamp/spectral.hpp"

#include <cmath>
#include <string>

#include "logdamp/error.hpp"
#include "logdamp/model.hpp"

namespace logdamp {

namespace {

// Exponent beyond which exp underflows past 1e-304.
constexpr double kExpFloor = 700.0;

double sinc_real(double y) {
    if (std::abs(y) < 1e-4) {
        const double y2 = y * y;
        return 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
    }
    return std::sin(y) / y;
}

double sinhc_real(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

void require_args(double mu, double r, double t) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidParameter("mu must be positive and finite");
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidParameter("radius must be >= 0 and finite");
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("time must be >= 0 and finite");
}

}  // namespace

std::complex<double> sinhc(std::complex<double> z) {
    if (std::abs(z) < 1e-4) {
        const std::complex<double> z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

Propagators propagators(double mu, double r, double t) {
    require_args(mu, r, t);
    const double L = std::log1p(r);
    const double x = 0.5 * mu * L * t;  // decay exponent of the envelope
    const double h = discriminant(mu, r);

    Propagators p;
    if (h <= 0.0) {
        // Complex roots: bounded oscillation under the envelope e^{-x}.
        if (x > kExpFloor) {
            p.C = p.S = 0.0;
            p.underflow = true;
            return p;
        }
        const double y = 0.5 * t * std::sqrt(-h);
        const double sc = sinc_real(y);
        const double E = std::exp(-x);
        p.S = E * t * sc;
        p.C = E * (std::cos(y) + x * sc);
        return p;
    }

    // Real roots. The slow root controls the size: lambda_plus computed in
    // product form has no cancellation.
    const double s = std::sqrt(h);
    const double z = 0.5 * t * s;
    const double lam_p = -2.0 * r * r / (mu * L + s);
    const double lam_m = -0.5 * (mu * L + s);
    if (-lam_p * t > kExpFloor) {
        p.C = p.S = 0.0;
        p.underflow = true;
        return p;
    }
    if (z <= 1.0) {
        // Near the threshold (or small t): unified sinhc form. Here
        // x <= kExpFloor + 1, so exp(-x) cannot flush while the true
        // values are representable.
        const double shc = sinhc_real(z);
        const double E = std::exp(-x);
        p.S = E * t * shc;
        p.C = E * (std::cosh(z) + x * shc);
        return p;
    }
    // Exponentials are well separated (ratio <= e^{-2}): direct evaluation
    // loses nothing and avoids cosh overflow for large z.
    const double ep = std::exp(lam_p * t);
    const double em = std::exp(lam_m * t);
    p.S = (ep - em) / s;
    p.C = (lam_p * em - lam_m * ep) / s;
    return p;
}

double solution_hat(const DataPair& pair, double mu, double r, double t) {
    const Propagators p = propagators(mu, r, t);
    if (p.underflow) return 0.0;
    return p.C * pair.u0.hat(r) + p.S * pair.u1.hat(r);
}

ProfileKind profile_for(double mu) {
    switch (classify(mu)) {
        case Regime::NonEffective: return ProfileKind::NonEffective;
        case Regime::Critical: return ProfileKind::Critical;
        case Regime::Effective: return ProfileKind::Effective;
    }
    throw InvalidParameter("unreachable");
}

double profile(ProfileKind kind, double p1, double mu, double r, double t) {
    require_args(mu, r, t);
    switch (kind) {
        case ProfileKind::NonEffective: {
            if (!(mu < 2.0)) throw RegimeError("oscillatory profile needs mu < 2");
            if (r == 0.0) return p1 * t;
            const double h = discriminant(mu, r);  // < 0 for all r > 0
            const double x = 0.5 * mu * std::log1p(r) * t;
            if (x > kExpFloor) return 0.0;
            const double gamma = 0.5 * std::sqrt(4.0 - mu * mu);
            return p1 * std::exp(-x) * 2.0 * std::sin(gamma * t * r) / std::sqrt(-h);
        }
        case ProfileKind::Critical: {
            if (mu != 2.0) throw RegimeError("critical profile needs mu = 2");
            if (r == 0.0) return p1 * t;
            const double h = discriminant(2.0, r);
            const double w = 0.5 * std::sqrt(-h);  // sqrt(r^2 - log^2(1+r))
            const double x = std::log1p(r) * t;
            if (x > kExpFloor) return 0.0;
            return p1 * std::exp(-x) * t * sinc_real(t * w);
        }
        case ProfileKind::Effective: {
            if (!(mu > 2.0)) throw RegimeError("diffusive profile needs mu > 2");
            // Below the threshold iff the discriminant is positive; the
            // profile is compared on that region only and set to 0 outside.
            if (r > 0.0 && discriminant(mu, r) <= 0.0) return 0.0;
            return p1 * propagators(mu, r, t).S;
        }
    }
    throw InvalidParameter("unreachable");
}

double rk4_mode(const DataPair& pair, double mu, double r, double t_end, double dt) {
    require_args(mu, r, t_end);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("dt must be positive");
    if (t_end / dt > 1e9) {
        throw StepOverflow("rk4_mode: " + std::to_string(t_end / dt) + " steps exceed the 1e9 budget");
    }
    const double L = std::log1p(r);
    const double k = r * r;
    double w = pair.u0.hat(r);
    double v = pair.u1.hat(r);
    const auto acc = [&](double wi, double vi) { return -k * wi - mu * L * vi; };

    const long nfull = static_cast<long>(t_end / dt);
    for (long i = 0; i <= nfull; ++i) {
        const double hstep = (i < nfull) ? dt : t_end - static_cast<double>(nfull) * dt;
        if (hstep <= 0.0) break;
        const double k1w = v, k1v = acc(w, v);
        const double k2w = v + 0.5 * hstep * k1v, k2v = acc(w + 0.5 * hstep * k1w, v + 0.5 * hstep * k1v);
        const double k3w = v + 0.5 * hstep * k2v, k3v = acc(w + 0.5 * hstep * k2w, v + 0.5 * hstep * k2v);
        const double k4w = v + hstep * k3v, k4v = acc(w + hstep * k3w, v + hstep * k3v);
        w += hstep / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        v += hstep / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return w;
}

double default_rk4_dt(double r) {
    return std::min(1e-3, 0.05 / std::max(r, 1.0));
}

double naive_effective_s(double mu, double r, double t) {
    require_args(mu, r, t);
    const double m = mu * std::log1p(r);
    const double s = std::sqrt(m * m - 4.0 * r * r);  // NaN above the threshold
    const double lam_p = 0.5 * (-m + s);
    const double lam_m = 0.5 * (-m - s);
    return (std::exp(lam_p * t) - std::exp(lam_m * t)) / (lam_p - lam_m);
}

}  // namespace logdamp
