#pragma once

/*
 * spectral.hpp — branch-stable evaluation of the Fourier-side solution.
 *
 * Each mode solves  w'' + mu*log(1+r)*w' + r^2 w = 0.  With
 * L = log(1+r), D = sqrt(mu^2 L^2 - 4r^2) and E = exp(-mu*L*t/2) the
 * solution is
 *
 *   w(t) = C(t,r) w0 + S(t,r) w1,
 *   S = E * t * sinhc(D t / 2),
 *   C = E * [cosh(D t / 2) + (mu L t / 2) sinhc(D t / 2)],
 *
 * which is a single expression valid on both root branches: for D
 * imaginary sinhc/cosh turn into sinc/cos, and the removable singularity
 * at D = 0 (the threshold radius of the effective regime) is filled by
 * the sinhc series. The naive difference of the two exponentials is kept
 * around only as a counterexample; it breaks exactly at that threshold.
 */

#include <complex>

#include "logdamp/data.hpp"

namespace logdamp {

struct Propagators {
    double C = 1.0;  // multiplies w0
    double S = 0.0;  // multiplies w1
    /// True when the shared envelope exponent passed 700, i.e. the honest
    /// values are below ~1e-304 and were flushed to zero.
    bool underflow = false;
};

enum class ProfileKind {
    NonEffective,  // mu < 2: fixed-frequency oscillation envelope
    Critical,      // mu = 2
    Effective,     // mu > 2: two-exponential diffusion pair below delta
};

/// sinh(z)/z with the removable singularity filled by the Taylor series
/// 1 + z^2/6 + z^4/120 for |z| < 1e-4. On the imaginary axis this is
/// sin(y)/y by construction.
std::complex<double> sinhc(std::complex<double> z);

Propagators propagators(double mu, double r, double t);

/// C*û0(r) + S*û1(r); 0 when the propagators flag underflow.
double solution_hat(const DataPair& pair, double mu, double r, double t);

ProfileKind profile_for(double mu);

/// Leading term carrying the velocity mass p1.
///   NonEffective: (1+r)^{-mu t/2} * 2 sin(gamma t r)/sqrt(4r^2-mu^2L^2) * p1,
///                 gamma = sqrt(4-mu^2)/2
///   Critical:     (1+r)^{-t} * sin(t w)/w * p1,  w = sqrt(r^2 - L^2)
///   Effective:    p1 * S(t,r) for r below the threshold, 0 beyond it
/// At r = 0 all three continue to p1 * t.
double profile(ProfileKind kind, double p1, double mu, double r, double t);

/// Classical fixed-step RK4 for one mode, the independent cross-check of
/// the closed form. Global error O(dt^4). Throws StepOverflow when
/// t_end/dt exceeds 1e9 steps.
double rk4_mode(const DataPair& pair, double mu, double r, double t_end, double dt);

/// Step size resolving the oscillation period: min(1e-3, 0.05/max(r,1)).
double default_rk4_dt(double r);

/// Literal real-arithmetic two-exponential form of S,
///   (e^{λ+ t} - e^{λ- t}) / (λ+ - λ-),
/// with λ± from the plain quadratic formula. NaN above the threshold
/// radius (negative discriminant under a real sqrt): the counterexample
/// the singularity probe measures against the sinhc form.
double naive_effective_s(double mu, double r, double t);

}  // namespace logdamp
