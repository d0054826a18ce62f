#pragma once

/*
 * quadrature.hpp — adaptive radial integration.
 *
 * Gauss-Kronrod G7/K15 pairs under adaptive bisection. Callers supply an
 * oscillation frequency hint when they know the phase (the integrator
 * itself stays frequency-agnostic) and a feature-scale hint when the
 * integrand concentrates near the left endpoint, as the damping envelope
 * (1+r)^{-mu t} does for large t; the initial panels are then laid out as
 * a geometric ladder so no mass hides below the coarsest nodes.
 */

#include <functional>

namespace logdamp {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_depth = 40;
    int points_per_period = 8;   // panels resolve 1/8 of an oscillation
    double envelope_eps = 1e-16; // truncation threshold for infinite tails
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long panels_used = 0;
    double truncation_radius = 0.0;
    bool converged = true;
};

/// Adaptive integral of a nonnegative integrand over [r_lo, r_hi].
/// omega_hint > 0: angular frequency of the integrand's oscillation;
/// initial panel width is capped at (2pi/omega)/points_per_period.
/// scale_hint > 0: size of the smallest feature hugging r_lo; initial
/// panels climb geometrically from that scale.
/// Exceeding max_depth returns converged = false with the best estimate.
IntegralResult integrate_radial(const std::function<double(double)>& f, double r_lo, double r_hi,
                                const QuadratureSpec& spec = {}, double omega_hint = 0.0,
                                double scale_hint = 0.0);

/// (2pi)^{-n/2} sqrt(w_n * ∫_{r_lo}^{r_hi} g(r)^2 r^{n-1} dr): the physical
/// L^2 norm of the radial transform g via Plancherel. Throws NoConvergence
/// (best estimate attached) if the quadrature gives up.
double fourier_l2_norm(const std::function<double(double)>& g, int dim, double r_lo, double r_hi,
                       const QuadratureSpec& spec = {}, double omega_hint = 0.0,
                       double scale_hint = 0.0);

/// Smallest radius past the peak of (1+r)^{-mu t} r^power whose envelope
/// value drops below eps. Requires t >= 1 and mu*t > power + 1.
double truncation_radius(double mu, double t, double eps, double power);

/// Radius at which (1+r)^{-mu t} r^p has fallen below `drop` times its
/// value at r = delta; truncation point for tails whose absolute size is
/// itself exponentially small.
double tail_cut(double mu, double t, double delta, double p, double drop);

enum class MomentRange {
    Low,   // [0, delta]
    High,  // [delta, infinity)
};

/// ∫ (1+r)^{-mu t} r^p dr over the selected range. Low requires p > -1
/// (graded panels handle p in (-1,0)); High requires mu*t > p + 1 and is
/// truncated at tail_cut with the discarded remainder bounded into the
/// error estimate.
double envelope_moment(double p, double mu, double delta, double t, MomentRange range,
                       const QuadratureSpec& spec = {});

}  // namespace logdamp
