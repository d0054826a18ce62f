#include "logdamp/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "logdamp/data.hpp"
#include "logdamp/error.hpp"

using namespace logdamp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(IntegrateRadial, ZeroIntegrand) {
    const auto res = integrate_radial([](double) { return 0.0; }, 0.0, 1.0);
    EXPECT_EQ(res.value, 0.0);
    EXPECT_TRUE(res.converged);
}

TEST(IntegrateRadial, GaussianClosedForm) {
    const auto res = integrate_radial([](double r) { return std::exp(-2.0 * r * r); }, 0.0, 20.0);
    EXPECT_NEAR(res.value, 0.62665706865775013, 1e-12);
    EXPECT_TRUE(res.converged);
    EXPECT_LE(res.error_estimate, 1e-9 * res.value + 1e-14);
}

TEST(IntegrateRadial, OscillatoryWithFrequencyHint) {
    const auto f = [](double r) {
        const double s = std::sin(100.0 * r);
        return s * s * std::exp(-r);
    };
    const auto res = integrate_radial(f, 0.0, 50.0, {}, 200.0);
    EXPECT_NEAR(res.value, 0.49998750031249219, 1e-10);
    EXPECT_TRUE(res.converged);
}

TEST(IntegrateRadial, ToleranceContract) {
    // error_estimate <= rel_tol*|value| + abs_tol on success.
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    const auto res = integrate_radial([](double r) { return 1.0 / (1.0 + r * r); }, 0.0, 10.0, spec);
    EXPECT_TRUE(res.converged);
    EXPECT_LE(res.error_estimate, spec.rel_tol * std::abs(res.value) + spec.abs_tol);
    EXPECT_NEAR(res.value, std::atan(10.0), 1e-9);
}

TEST(IntegrateRadial, PointsPerPeriodStability) {
    const auto f = [](double r) {
        const double s = std::sin(40.0 * r);
        return s * s * std::exp(-r);
    };
    QuadratureSpec a, b;
    b.points_per_period = 16;
    const double va = integrate_radial(f, 0.0, 30.0, a, 80.0).value;
    const double vb = integrate_radial(f, 0.0, 30.0, b, 80.0).value;
    EXPECT_LE(std::abs(va - vb), 10.0 * a.rel_tol * std::abs(va));
}

TEST(IntegrateRadial, ReportsNonConvergence) {
    QuadratureSpec spec;
    spec.max_depth = 2;
    spec.rel_tol = 1e-15;
    spec.abs_tol = 1e-300;
    const auto res =
        integrate_radial([](double r) { return std::sqrt(std::abs(std::sin(37.0 * r))); }, 0.0, 3.0, spec);
    EXPECT_FALSE(res.converged);
    EXPECT_GT(res.value, 0.0);  // best estimate still attached
    EXPECT_THROW(fourier_l2_norm([](double r) { return std::sqrt(std::abs(std::sin(37.0 * r))); }, 1,
                                 0.0, 3.0, spec),
                 NoConvergence);
}

TEST(IntegrateRadial, BadArguments) {
    EXPECT_THROW(integrate_radial([](double) { return 0.0; }, 1.0, 1.0), InvalidParameter);
    QuadratureSpec bad;
    bad.points_per_period = 4;
    EXPECT_THROW(integrate_radial([](double) { return 0.0; }, 0.0, 1.0, bad), InvalidParameter);
}

TEST(FourierL2Norm, FrozenValues) {
    // Gaussian transform, n = 1: must reproduce the stored datum norm.
    const auto d = gaussian_datum(1.0, 1.0, 1);
    const double norm = fourier_l2_norm(d.hat, 1, 0.0, 40.0);
    EXPECT_NEAR(norm * norm, std::sqrt(kPi / 2.0), 1e-8);
    EXPECT_NEAR(norm, d.l2, 1e-8 * d.l2);

    EXPECT_EQ(fourier_l2_norm([](double) { return 0.0; }, 2, 0.0, 1.0), 0.0);

    // Indicator of the unit disc in n = 2: (2pi)^{-1} sqrt(pi).
    const double disc = fourier_l2_norm([](double r) { return r <= 1.0 ? 1.0 : 0.0; }, 2, 0.0, 1.0);
    EXPECT_NEAR(disc, 0.28209479177387814, 1e-9);
}

TEST(TruncationRadius, RootAndMonotonicity) {
    // Frozen root of (1+R)^{-10} R^2 = 1e-16 past the peak.
    const double R = truncation_radius(1.0, 10.0, 1e-16, 2.0);
    EXPECT_NEAR(R, 98.748421684475779, 0.2 * 98.748421684475779);
    EXPECT_NEAR(R, 98.748421684475779, 1e-6 * R);  // bisection is tight, not just in-band

    EXPECT_LT(truncation_radius(1.0, 100.0, 1e-16, 2.0), truncation_radius(1.0, 10.0, 1e-16, 2.0));
    EXPECT_GT(truncation_radius(1.0, 10.0, 1e-20, 2.0), truncation_radius(1.0, 10.0, 1e-10, 2.0));
    EXPECT_THROW(truncation_radius(1.0, 0.5, 1e-16, 2.0), InvalidParameter);
    EXPECT_THROW(truncation_radius(1.0, 2.0, 1e-16, 2.0), DivergentIntegral);
}

TEST(EnvelopeMoment, LowClosedForms) {
    // p = 0, mu = 1, delta = 1: (1 - 2^{1-t})/(t-1).
    EXPECT_NEAR(envelope_moment(0.0, 1.0, 1.0, 11.0, MomentRange::Low), 0.09990234375, 1e-12);
    // No damping factor at t = 0.
    EXPECT_NEAR(envelope_moment(2.0, 1.0, 0.7, 0.0, MomentRange::Low), std::pow(0.7, 3.0) / 3.0, 1e-12);
    EXPECT_NEAR(envelope_moment(-0.5, 1.0, 1.0, 0.0, MomentRange::Low), 2.0, 1e-9);
}

TEST(EnvelopeMoment, HighClosedForm) {
    EXPECT_NEAR(envelope_moment(0.0, 1.0, 1.0, 11.0, MomentRange::High), 9.765625e-5, 1e-13);
}

TEST(EnvelopeMoment, GradedEndpointPanels) {
    // p in (-1, 0): integrable singularity at 0; frozen reference value.
    EXPECT_NEAR(envelope_moment(-0.5, 1.0, 1.0, 10.0, MomentRange::Low), 0.58247614038572620, 1e-9);
    EXPECT_NEAR(envelope_moment(-0.5, 1.0, 1.0, 11.0, MomentRange::High), 8.9374537074814847e-5, 1e-12);
}

TEST(EnvelopeMoment, ConcentratedEnvelopeResolved) {
    // At mu*t = 4e4 the mass sits in [0, ~1e-4]; the ladder must find it.
    const double t = 1e4, mu = 4.0;
    const double got = envelope_moment(0.0, mu, 1.0, t, MomentRange::Low);
    // Reference: Watson expansion Gamma(1)/(mu t) * (1 + 1/(mu t) + ...).
    const double ref = 1.0 / (mu * t) * (1.0 + 1.0 / (mu * t));
    EXPECT_NEAR(got, ref, 1e-3 * ref);
}

TEST(EnvelopeMoment, DivergenceGuards) {
    EXPECT_THROW(envelope_moment(-1.0, 1.0, 1.0, 10.0, MomentRange::Low), DivergentIntegral);
    EXPECT_THROW(envelope_moment(-1.5, 1.0, 1.0, 10.0, MomentRange::Low), DivergentIntegral);
    EXPECT_THROW(envelope_moment(2.0, 1.0, 1.0, 2.0, MomentRange::High), DivergentIntegral);
}

TEST(TailCut, RelativeDropReached) {
    const double mu = 4.0, t = 100.0, delta = 2.5128624172523786;
    const double R = tail_cut(mu, t, delta, 3.0, 1e-16);
    EXPECT_GT(R, delta);
    const auto log_h = [&](double r) { return -mu * t * std::log1p(r) + 3.0 * std::log(r); };
    EXPECT_LE(log_h(R) - log_h(delta), std::log(1e-16) + 1e-6);
}
