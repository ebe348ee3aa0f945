#include "annuli/energy.hpp"
#include "annuli/variational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace annuli;

namespace {

constexpr double kPi = std::numbers::pi;
const double kE = std::numbers::e;

// Second-order central Laplacian of one component of x -> H(|x|) x/|x|.
Vec3 fd_laplacian(const RadialProfile& h, const Vec3& x, double step) {
    auto f = [&](const Vec3& y) { return Vec3(h.value(y.norm()) * y / y.norm()); };
    Vec3 lap = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e[i] = step;
        lap += (f(x + e) - 2.0 * f(x) + f(x - e)) / (step * step);
    }
    return lap;
}

AnnulusPair moderate_pair(Rng& rng) {
    const double r = rng.uniform(0.5, 2.0), R = r * rng.uniform(1.2, 3.0);
    const double rs = rng.uniform(0.5, 2.0), Rs = rs * rng.uniform(1.2, 3.0);
    return AnnulusPair(r, R, rs, Rs);
}

}  // namespace

TEST(Residuals, VanishOnExponentialProfiles) {
    Rng rng(41);
    for (int k = 0; k < 100; ++k) {
        const RadialProfile h = RadialProfile::exponential(rng.uniform(0.1, 5.0), rng.uniform(-3.0, 3.0));
        const double t = rng.uniform(0.5, 3.0);
        const double scale = h.value(t) * h.value(t);
        EXPECT_NEAR(el_residual(h, t), 0.0, 1e-12 * scale);
        EXPECT_NEAR(weighted_harmonic_residual(h, t), 0.0, 1e-12 * h.value(t));
        EXPECT_NEAR(momentum_residual(h, t), 0.0, 1e-12);
    }
}

TEST(Residuals, NonzeroOnOtherProfiles) {
    // H = t: 2t - t + 0 = t
    const RadialProfile lin = RadialProfile::harmonic(1.0, 0.0);
    EXPECT_NEAR(el_residual(lin, 1.7), 1.7, 1e-14);
    // M = 1/t^2, 2M/t + M'/2 = 2/t^3 - 1/t^3
    EXPECT_NEAR(momentum_residual(lin, 2.0), 1.0 / 8.0, 1e-14);
}

TEST(Residuals, WeightedHarmonicIsScaledEulerLagrange) {
    Rng rng(42);
    for (int k = 0; k < 100; ++k) {
        const RadialProfile h = RadialProfile::harmonic(rng.uniform(0.1, 3.0), rng.uniform(-0.3, 3.0));
        const double t = rng.uniform(1.0, 3.0);
        const double v = h.value(t);
        if (v <= 0.0) continue;
        EXPECT_NEAR(weighted_harmonic_residual(h, t), el_residual(h, t) / (t * t * v),
                    1e-12 * (1.0 + std::abs(el_residual(h, t) / (t * t * v))));
    }
}

TEST(Residuals, LaplacianCoefficientMatchesFiniteDifferences) {
    Rng rng(43);
    const RadialProfile profiles[] = {RadialProfile::exponential(1.3, 0.7), RadialProfile::harmonic(0.4, 2.0),
                                      RadialProfile::exponential(2.0, -1.1)};
    for (const RadialProfile& h : profiles) {
        for (int i = 0; i < 20; ++i) {
            const Vec3 x = rng.uniform(1.2, 2.5) * rng.unit_vector().vec();
            const Vec3 fd = fd_laplacian(h, x, 1e-4);
            const Vec3 an = laplacian_coefficient(h, x.norm()) * x;
            EXPECT_LE((fd - an).norm(), 1e-5 * (1.0 + an.norm()));
        }
    }
}

TEST(Residuals, HarmonicProfilesHaveZeroLaplacian) {
    const RadialProfile h = RadialProfile::harmonic(0.8, -0.25);
    for (double t : {1.0, 1.5, 2.2}) EXPECT_NEAR(laplacian_coefficient(h, t), 0.0, 1e-14);
}

TEST(Residuals, SampledEndpointsRejected) {
    const AnnulusPair p(1.0, 2.0, 1.0, kE);
    const RadialGrid g = make_radial_grid(p.domain, 100, Spacing::UniformT);
    const DiscreteSolution s = minimize_reduced_energy(p, g);
    EXPECT_THROW(el_residual(s.profile, 1.0), std::domain_error);
    EXPECT_THROW(el_residual(s.profile, 2.0), std::domain_error);
    EXPECT_NO_THROW(el_residual(s.profile, 1.5));
}

TEST(DiscreteForm, CoefficientsOnUniformGrid) {
    const RadialGrid g = make_radial_grid(Annulus(1.0, 2.0), 2, Spacing::UniformT);
    const std::vector<double> c = discrete_coefficients(g);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_NEAR(c[0], 1.25 * 1.25 / 0.5, 1e-15);
    EXPECT_NEAR(c[1], 1.75 * 1.75 / 0.5, 1e-15);
    const std::vector<double> k{0.0, 0.5, 1.0};
    EXPECT_NEAR(discrete_reduced_energy(k, g), 4.0 * kPi * ((c[0] + c[1]) * 0.25 + 2.0), 1e-13);
}

TEST(DiscreteForm, GradientMatchesFiniteDifferences) {
    Rng rng(44);
    for (Spacing m : {Spacing::UniformT, Spacing::UniformInverseT}) {
        const RadialGrid g = make_radial_grid(Annulus(0.7, 2.1), 30, m);
        std::vector<double> k(g.nodes.size());
        for (double& v : k) v = rng.uniform(-1.0, 1.0);
        const std::vector<double> grad = reduced_energy_gradient(k, g);
        ASSERT_EQ(grad.size(), k.size() - 2);
        for (std::size_t j = 1; j + 1 < k.size(); ++j) {
            const double h = 1e-6;
            std::vector<double> kp = k, km = k;
            kp[j] += h;
            km[j] -= h;
            const double fd = (discrete_reduced_energy(kp, g) - discrete_reduced_energy(km, g)) / (2.0 * h);
            EXPECT_NEAR(grad[j - 1], fd, 1e-6 * (1.0 + std::abs(fd)));
        }
    }
}

TEST(DiscreteForm, PiecewiseLinearEnergyIsExactOnInverseGrids) {
    Rng rng(45);
    const RadialGrid g = make_radial_grid(Annulus(1.0, 3.0), 40, Spacing::UniformInverseT);
    std::vector<double> k(g.nodes.size());
    for (double& v : k) v = rng.uniform(-1.0, 1.0);
    EXPECT_NEAR(piecewise_linear_energy(k, g), discrete_reduced_energy(k, g), 1e-12 * discrete_reduced_energy(k, g));
}

TEST(DiscreteForm, PiecewiseLinearEnergyMatchesQuadrature) {
    // Linear K in t: reduced energy integrand t^2 K'^2 + 2 integrated by hand.
    const RadialGrid g = make_radial_grid(Annulus(1.0, 2.0), 7, Spacing::UniformT);
    std::vector<double> k;
    for (double t : g.nodes) k.push_back(0.5 * t);
    EXPECT_NEAR(piecewise_linear_energy(k, g), 4.0 * kPi * (0.25 * 7.0 / 3.0 + 2.0), 1e-13);
}

TEST(DiscreteMinimizer, ConvergesToTheClosedForm) {
    const AnnulusPair p(1.0, 2.0, 1.0, kE);
    const double fmin = analytic_min_weighted_energy(p);
    const DiscreteSolution s = minimize_reduced_energy(p, make_radial_grid(p.domain, 1000, Spacing::UniformT));
    ASSERT_TRUE(s.sup_error_vs_closed_form.has_value());
    EXPECT_LE(*s.sup_error_vs_closed_form, 1e-6);
    EXPECT_LE((s.energy - fmin) / fmin, 1e-6);
    EXPECT_GE(s.energy, fmin);
    EXPECT_TRUE(s.converged);
    EXPECT_EQ(s.profile.value(1.0), 1.0);
    EXPECT_EQ(s.profile.value(2.0), kE);
}

TEST(DiscreteMinimizer, SecondOrderOnUniformGrids) {
    const AnnulusPair p(1.0, 2.0, 1.0, kE);
    double prev_err = 0.0, prev_energy = 0.0;
    for (std::size_t n : {125u, 250u, 500u, 1000u}) {
        const DiscreteSolution s = minimize_reduced_energy(p, make_radial_grid(p.domain, n, Spacing::UniformT));
        const double err = *s.sup_error_vs_closed_form;
        if (prev_err > 0.0) {
            EXPECT_NEAR(prev_err / err, 4.0, 0.2) << "n = " << n;
            EXPECT_LE(s.energy, prev_energy);
        }
        prev_err = err;
        prev_energy = s.energy;
    }
}

TEST(DiscreteMinimizer, ExactOnInverseGrids) {
    Rng rng(46);
    for (int k = 0; k < 20; ++k) {
        const AnnulusPair p = moderate_pair(rng);
        const DiscreteSolution s =
            minimize_reduced_energy(p, make_radial_grid(p.domain, 50, Spacing::UniformInverseT));
        EXPECT_LE(*s.sup_error_vs_closed_form, 1e-12 * p.R_star());
        EXPECT_NEAR(s.energy, analytic_min_weighted_energy(p), 1e-11 * s.energy);
    }
}

TEST(DiscreteMinimizer, FlatTargetAndGridMismatch) {
    const AnnulusPair flat(1.0, 2.0, 1.5, 1.5);
    const DiscreteSolution s = minimize_reduced_energy(flat, make_radial_grid(flat.domain, 10, Spacing::UniformT));
    for (double v : s.profile.sample(make_radial_grid(flat.domain, 10, Spacing::UniformT))) EXPECT_EQ(v, 1.5);
    EXPECT_NEAR(s.energy, 8.0 * kPi, 1e-13);
    const AnnulusPair p(1.0, 2.0, 1.0, kE);
    EXPECT_THROW(minimize_reduced_energy(p, make_radial_grid(Annulus(1.0, 3.0), 10, Spacing::UniformT)),
                 std::invalid_argument);
}

TEST(GradientDescent, ZeroIterationsReportsNotConverged) {
    const AnnulusPair p(1.0, 2.0, 1.0, kE);
    const DiscreteSolution s = gradient_descent_minimize(p, make_radial_grid(p.domain, 20, Spacing::UniformT), {}, 0);
    EXPECT_FALSE(s.converged);
    EXPECT_EQ(s.iterations, 0u);
}

TEST(GradientDescent, FlatTargetIsImmediate) {
    const AnnulusPair flat(1.0, 2.0, 0.5, 0.5);
    const DiscreteSolution s = gradient_descent_minimize(flat, make_radial_grid(flat.domain, 20, Spacing::UniformT));
    EXPECT_TRUE(s.converged);
    EXPECT_EQ(s.iterations, 0u);
}

TEST(GradientDescent, AllStepRulesAgreeWithTheDirectSolve) {
    Rng rng(47);
    const StepRule rules[] = {{StepRule::Kind::ExactLineSearch, 0.0},
                              {StepRule::Kind::Armijo, 0.0},
                              {StepRule::Kind::Fixed, 0.0}};
    for (int k = 0; k < 20; ++k) {
        const AnnulusPair p = moderate_pair(rng);
        const RadialGrid g = make_radial_grid(p.domain, 50, Spacing::UniformT);
        const DiscreteSolution direct = minimize_reduced_energy(p, g);
        for (const StepRule& rule : rules) {
            const DiscreteSolution gd = gradient_descent_minimize(p, g, rule);
            ASSERT_TRUE(gd.converged);
            double worst = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
                worst = std::max(worst, std::abs(gd.log_values[i] - direct.log_values[i]));
            EXPECT_LE(worst, 1e-8);
            EXPECT_NEAR(gd.energy, direct.energy, 1e-10 * direct.energy);
        }
    }
}

TEST(Shooting, RecoversTheStationaryProfile) {
    const AnnulusPair p(1.0, 2.0, 1.0, kE);
    const ShootingResult s = shoot_el(p);
    ASSERT_TRUE(s.success) << s.message;
    EXPECT_LE(std::abs(s.boundary_miss), 1e-12);
    const RadialProfile h1 = exp_profile_from_boundary(p, Orientation::Increasing);
    // H1'(r) = r* R log(R*/r*) / ((R - r) r)
    EXPECT_NEAR(s.initial_slope, 2.0, 1e-9);
    ASSERT_TRUE(s.profile.has_value());
    for (double t = 1.0; t <= 2.0; t += 0.05) EXPECT_NEAR(s.profile->value(t), h1.value(t), 1e-9);
}

TEST(Shooting, AgreesOnRandomPairs) {
    Rng rng(48);
    for (int k = 0; k < 10; ++k) {
        const AnnulusPair p = moderate_pair(rng);
        const ShootingResult s = shoot_el(p);
        ASSERT_TRUE(s.success) << s.message;
        const RadialProfile h1 = exp_profile_from_boundary(p, Orientation::Increasing);
        const RadialGrid g = make_radial_grid(p.domain, 100, Spacing::UniformT);
        for (double t : g.nodes) EXPECT_NEAR(s.profile->value(t), h1.value(t), 1e-8 * p.R_star());
    }
}

TEST(Shooting, ReportsBracketFailure) {
    // The true initial slope is about 19 times the secant slope, outside the bracket.
    const AnnulusPair p(1.0, 20.0, 1.0, 1.1);
    const ShootingResult s = shoot_el(p);
    EXPECT_FALSE(s.success);
    EXPECT_FALSE(s.message.empty());
    EXPECT_FALSE(s.profile.has_value());
}

TEST(Shooting, FlatTarget) {
    const ShootingResult s = shoot_el(AnnulusPair(1.0, 2.0, 3.0, 3.0));
    ASSERT_TRUE(s.success);
    EXPECT_EQ(s.initial_slope, 0.0);
    EXPECT_NEAR(s.profile->value(1.5), 3.0, 1e-15);
}
