#pragma once

/*
 * data.hpp — catalog of radial initial data with closed-form transforms.
 *
 * Fourier convention: û(ξ) = ∫ e^{-ix·ξ} u(x) dx (no 2π in the forward
 * transform, (2π)^{-n} in Plancherel). All catalog entries are real and
 * radial, so û is a real function of r = |ξ| and û(0) equals the total
 * mass. Moments are stored in closed form; quadrature only cross-checks
 * them.
 */

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace logdamp {

struct RadialSpectralDatum {
    /// û(r), the radial transform.
    std::function<double(double)> hat;
    /// û(r) - p1 evaluated without cancellation (expm1-based); this is the
    /// A1 part of the datum once the mass is split off.
    std::function<double(double)> hat_minus_p1;
    double p1 = 0.0;   // û(0) = ∫ u dx
    double l1 = 0.0;   // ||u||_1 (certified upper bound for composite data)
    double l11 = 0.0;  // ||u||_{1,1} = ∫ (1+|x|)|u| dx (same caveat)
    double l2 = 0.0;   // ||u||_2
    int dim = 1;
};

struct DataPair {
    RadialSpectralDatum u0;  // initial displacement
    RadialSpectralDatum u1;  // initial velocity
};

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// u(x) = A exp(-a|x|^2):   û(r) = A (pi/a)^{n/2} exp(-r^2/(4a)).
RadialSpectralDatum gaussian_datum(double amplitude, double width, int dim);

/// Difference of two unit-mass Gaussians with widths a != b:
/// û(r) = exp(-r^2/(4a)) - exp(-r^2/(4b)), so the total mass vanishes.
/// l1/l11 store the sum-of-parts upper bounds; l2 is exact.
RadialSpectralDatum zero_mean_datum(double a, double b, int dim);

/// The zero datum (hat identically 0, all moments 0).
RadialSpectralDatum zero_datum(int dim);

/// sup over the grid of |û(r) - p1| / (r * l11): empirical constant of the
/// first-moment bound. Requires l11 > 0.
double moment_bound_ratio(const RadialSpectralDatum& datum, std::span<const double> r_grid);

/// Catalog keys: "gaussian:A,a" and "zeromean:a,b".
RadialSpectralDatum datum_from_key(const std::string& key, int dim);

/// "gaussian:A,a" -> (u0, u1) both equal to the Gaussian;
/// "zeromean:a,b" -> u0 = 0, u1 = the zero-mean datum.
DataPair pair_from_key(const std::string& key, int dim);

/// One usage line per catalog entry, for error messages and --help.
std::vector<std::string> catalog_keys();

}  // namespace logdamp
