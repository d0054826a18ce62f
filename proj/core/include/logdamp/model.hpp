#pragma once

/*
 * model.hpp — dispersion model of the log-damped wave equation
 *
 *   u_tt - Δu + mu * log(I + (-Δ)^{1/2}) u_t = 0
 *
 * Each Fourier mode of modulus r >= 0 obeys the scalar ODE
 *
 *   w'' + mu * log(1+r) * w' + r^2 w = 0,
 *
 * with characteristic polynomial  λ^2 + mu*log(1+r)*λ + r^2 = 0 and
 * discriminant  h(r) = mu^2 log^2(1+r) - 4 r^2.
 *
 * For mu <= 2 the roots are complex for every r > 0 (oscillatory modes).
 * For mu > 2 there is a unique threshold delta > 0 with
 * mu*log(1+delta) = 2*delta: roots are real on [0, delta] (diffusive)
 * and complex beyond it.
 */

#include <complex>

namespace logdamp {

enum class Regime {
    NonEffective,  // mu < 2: complex roots everywhere, oscillatory
    Critical,      // mu = 2
    Effective,     // mu > 2: real roots at low frequency, diffusive
};

struct CharRoots {
    std::complex<double> lambda_plus;   // root with the larger real part
    std::complex<double> lambda_minus;  // root with the smaller real part
    double discriminant = 0.0;          // mu^2 log^2(1+r) - 4 r^2
};

/// Threshold radius for mu > 2 together with the constants of the
/// constructive low-frequency root bounds.
struct Threshold {
    double delta = 0.0;   // unique positive root of mu*log(1+r) = 2r
    double delta1 = 0.0;  // min(mu/2 - 1, delta): window of the root bounds
    double c = 0.0;       // sqrt(mu^2 - 4(1+delta1)^2), lower gap constant
    double d = 0.0;       // mu, upper gap constant
};

Regime classify(double mu);

/// log(1+r)/r, series-expanded below r = 1e-4 so the ratio stays
/// fully accurate near 0; log1p_ratio(0) = 1.
double log1p_ratio(double r);

/// mu^2 log^2(1+r) - 4 r^2, the quantity whose sign selects the root branch.
double discriminant(double mu, double r);

CharRoots char_roots(double mu, double r);

/// lambda_plus - lambda_minus = sqrt(discriminant), evaluated directly from
/// the discriminant (real for h >= 0, positive-imaginary otherwise),
/// never as a difference of the two computed roots.
std::complex<double> root_gap(double mu, double r);

/// Requires mu > 2. Bisection bracket starts at the maximizer (mu-2)/2 of
/// f(r) = mu*log(1+r) - 2r and doubles outward until f < 0.
Threshold threshold_delta(double mu);

/// rho(r) = mu r^2 log(1+r) / (r^2 + mu^2 log^2(1+r)); rho(0) = 0.
/// Decay weight of the Fourier-side energy estimate.
double energy_weight(double mu, double r);

}  // namespace logdamp
