#include "logdamp/data.hpp"

#include <cmath>
#include <numbers>

#include "logdamp/error.hpp"

namespace logdamp {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int n) {
    if (n < 1) throw InvalidParameter("dimension must be an integer >= 1, got " + std::to_string(n));
}

/// ∫_0^∞ r^n e^{-a r^2} dr = Gamma((n+1)/2) / (2 a^{(n+1)/2})
double radial_gaussian_moment(int n, double a) {
    return std::tgamma((n + 1) / 2.0) / (2.0 * std::pow(a, (n + 1) / 2.0));
}

}  // namespace

double unit_sphere_area(int n) {
    require_dim(n);
    return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

RadialSpectralDatum gaussian_datum(double amplitude, double width, int dim) {
    require_dim(dim);
    if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(amplitude)) {
        throw InvalidParameter("gaussian datum needs finite amplitude and width > 0");
    }
    const double a = width;
    const double amp = amplitude * std::pow(kPi / a, dim / 2.0);

    RadialSpectralDatum d;
    d.dim = dim;
    d.hat = [amp, a](double r) { return amp * std::exp(-r * r / (4.0 * a)); };
    d.hat_minus_p1 = [amp, a](double r) { return amp * std::expm1(-r * r / (4.0 * a)); };
    d.p1 = amp;
    d.l1 = std::abs(amp);
    d.l11 = d.l1 + std::abs(amplitude) * unit_sphere_area(dim) * radial_gaussian_moment(dim, a);
    d.l2 = std::abs(amplitude) * std::pow(kPi / (2.0 * a), dim / 4.0);
    return d;
}

RadialSpectralDatum zero_mean_datum(double a, double b, int dim) {
    require_dim(dim);
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidParameter("zero-mean datum needs widths a, b > 0");
    }
    if (a == b) {
        throw DegenerateDatum("zero-mean datum with a == b is identically zero");
    }

    RadialSpectralDatum d;
    d.dim = dim;
    d.hat = [a, b](double r) {
        return std::expm1(-r * r / (4.0 * a)) - std::expm1(-r * r / (4.0 * b));
    };
    d.hat_minus_p1 = d.hat;  // p1 = 0 by construction
    d.p1 = 0.0;

    // Each part is a unit-mass Gaussian (c/pi)^{n/2} e^{-c|x|^2}.
    const double half = dim / 2.0;
    const auto part_l11 = [dim, half](double c) {
        return 1.0 + unit_sphere_area(dim) * std::pow(c / kPi, half) * radial_gaussian_moment(dim, c);
    };
    d.l1 = 2.0;  // sum of the two unit masses; certified upper bound
    d.l11 = part_l11(a) + part_l11(b);

    // ||g_a - g_b||_2^2 has a closed form from the Gaussian convolution table.
    const double l2sq = std::pow(a / (2.0 * kPi), half) + std::pow(b / (2.0 * kPi), half) -
                        2.0 * std::pow(a * b / (kPi * (a + b)), half);
    d.l2 = std::sqrt(std::max(l2sq, 0.0));
    return d;
}

RadialSpectralDatum zero_datum(int dim) {
    require_dim(dim);
    RadialSpectralDatum d;
    d.dim = dim;
    d.hat = [](double) { return 0.0; };
    d.hat_minus_p1 = [](double) { return 0.0; };
    return d;
}

double moment_bound_ratio(const RadialSpectralDatum& datum, std::span<const double> r_grid) {
    if (!(datum.l11 > 0.0)) {
        throw UndefinedRatio("moment bound ratio needs l11 > 0");
    }
    double sup = 0.0;
    for (double r : r_grid) {
        if (!(r > 0.0)) continue;
        sup = std::max(sup, std::abs(datum.hat_minus_p1(r)) / (r * datum.l11));
    }
    return sup;
}

namespace {

std::pair<double, double> parse_two(const std::string& args, const std::string& key) {
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
        throw InvalidParameter("datum key '" + key + "' needs two comma-separated numbers");
    }
    try {
        size_t used = 0;
        const double x = std::stod(args.substr(0, comma), &used);
        if (used != comma) throw InvalidParameter("trailing junk in datum key '" + key + "'");
        const std::string rest = args.substr(comma + 1);
        const double y = std::stod(rest, &used);
        if (used != rest.size()) throw InvalidParameter("trailing junk in datum key '" + key + "'");
        return {x, y};
    } catch (const std::logic_error&) {
        throw InvalidParameter("cannot parse numbers in datum key '" + key + "'");
    }
}

}  // namespace

RadialSpectralDatum datum_from_key(const std::string& key, int dim) {
    const auto colon = key.find(':');
    const std::string name = key.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : key.substr(colon + 1);
    if (name == "gaussian") {
        const auto [amplitude, width] = parse_two(args, key);
        return gaussian_datum(amplitude, width, dim);
    }
    if (name == "zeromean") {
        const auto [a, b] = parse_two(args, key);
        return zero_mean_datum(a, b, dim);
    }
    std::string msg = "unknown datum key '" + key + "'; catalog:";
    for (const auto& k : catalog_keys()) msg += "\n  " + k;
    throw InvalidParameter(msg);
}

DataPair pair_from_key(const std::string& key, int dim) {
    RadialSpectralDatum d = datum_from_key(key, dim);
    if (key.rfind("zeromean", 0) == 0) {
        return {zero_datum(dim), std::move(d)};
    }
    return {d, d};
}

std::vector<std::string> catalog_keys() {
    return {
        "gaussian:A,a   u0 = u1 = A exp(-a|x|^2)",
        "zeromean:a,b   u0 = 0, u1 = difference of unit-mass Gaussians (mass 0)",
    };
}

}  // namespace logdamp
