#include "annuli/geometry.hpp"
#include "annuli/quadrature.hpp"
#include "annuli/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace annuli;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Annulus, RejectsBadRadii) {
    EXPECT_THROW(Annulus(-1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(Annulus(2.0, 2.0), std::invalid_argument);
    try {
        Annulus(2.0, 1.0);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "inner radius must be less than outer");
    }
}

TEST(Annulus, ZeroInnerRadiusIsRepresentableButNotWeighted) {
    const Annulus a(0.0, 1.0);
    EXPECT_FALSE(a.strictly_positive());
    const AnnulusPair p(0.0, 1.0, 1.0, 2.0);
    EXPECT_THROW(p.require_weighted(), std::invalid_argument);
    EXPECT_NO_THROW(AnnulusPair(1.0, 2.0, 1.0, 3.0).require_weighted());
}

TEST(Annulus, FlatTargetOnly) {
    const AnnulusPair p(1.0, 2.0, 1.5, 1.5);
    EXPECT_TRUE(p.target.flat());
    EXPECT_FALSE(p.domain.flat());
    EXPECT_THROW(AnnulusPair(1.0, 1.0, 1.0, 2.0), std::invalid_argument);
}

TEST(RadialGrid, UniformInT) {
    const RadialGrid g = make_radial_grid(Annulus(1.0, 2.0), 2, Spacing::UniformT);
    ASSERT_EQ(g.nodes.size(), 3u);
    EXPECT_EQ(g.nodes[0], 1.0);
    EXPECT_DOUBLE_EQ(g.nodes[1], 1.5);
    EXPECT_EQ(g.nodes[2], 2.0);
}

TEST(RadialGrid, UniformInInverseT) {
    const RadialGrid g = make_radial_grid(Annulus(1.0, 2.0), 2, Spacing::UniformInverseT);
    ASSERT_EQ(g.nodes.size(), 3u);
    EXPECT_EQ(g.nodes[0], 1.0);
    EXPECT_NEAR(g.nodes[1], 4.0 / 3.0, 1e-15);
    EXPECT_EQ(g.nodes[2], 2.0);
}

TEST(RadialGrid, FineGridGaps) {
    const RadialGrid g = make_radial_grid(Annulus(1.0, 2.0), 1000, Spacing::UniformT);
    ASSERT_EQ(g.nodes.size(), 1001u);
    EXPECT_EQ(g.intervals(), 1000u);
    double worst = 0.0;
    for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        ASSERT_GT(g.nodes[i], g.nodes[i - 1]);
        worst = std::max(worst, g.nodes[i] - g.nodes[i - 1]);
    }
    EXPECT_NEAR(worst, 1e-3, 1e-12);
}

TEST(RadialGrid, EndpointsExactForAwkwardRadii) {
    const Annulus a(0.3, 7.1);
    for (Spacing m : {Spacing::UniformT, Spacing::UniformInverseT}) {
        const RadialGrid g = make_radial_grid(a, 37, m);
        EXPECT_EQ(g.nodes.front(), 0.3);
        EXPECT_EQ(g.nodes.back(), 7.1);
        for (std::size_t i = 1; i < g.nodes.size(); ++i) EXPECT_GT(g.nodes[i], g.nodes[i - 1]);
    }
    // inverse spacing: 1/t equispaced
    const RadialGrid g = make_radial_grid(a, 37, Spacing::UniformInverseT);
    const double du = 1.0 / g.nodes[1] - 1.0 / g.nodes[0];
    for (std::size_t i = 1; i < g.nodes.size(); ++i)
        EXPECT_NEAR(1.0 / g.nodes[i] - 1.0 / g.nodes[i - 1], du, 1e-12);
}

TEST(RadialGrid, TooFewIntervals) {
    EXPECT_THROW(make_radial_grid(Annulus(1.0, 2.0), 1, Spacing::UniformT), std::invalid_argument);
    EXPECT_THROW(make_radial_grid(Annulus(1.0, 2.0), 0, Spacing::UniformInverseT), std::invalid_argument);
}

TEST(GaussLegendre, PolynomialExactness) {
    const GaussRule g = gauss_legendre(5, 0.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += g.weights[i] * std::pow(g.nodes[i], 9);
    EXPECT_NEAR(s, 0.1, 1e-15);
    const GaussRule h = gauss_legendre(8);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(h.nodes[i], -h.nodes[7 - i], 1e-15);
    for (std::size_t i = 1; i < 8; ++i) EXPECT_GT(h.nodes[i], h.nodes[i - 1]);
}

TEST(SphereQuadrature, WeightSumForEveryOrder) {
    for (std::size_t order = 2; order <= 48; ++order) {
        const SphericalQuadrature q = make_sphere_quadrature(order);
        double sum = 0.0;
        for (double w : q.weights) {
            ASSERT_GT(w, 0.0);
            sum += w;
        }
        EXPECT_NEAR(sum, 4.0 * kPi, 1e-10) << "order " << order;
    }
}

TEST(SphereQuadrature, Examples) {
    const SphericalQuadrature q8 = make_sphere_quadrature(8);
    EXPECT_NEAR(q8.integrate([](const SpherePoint&) { return 1.0; }), 4.0 * kPi, 1e-12);
    EXPECT_NEAR(q8.integrate([](const SpherePoint& p) { return p.z() * p.z(); }), 4.0 * kPi / 3.0, 1e-12);
    const SphericalQuadrature q16 = make_sphere_quadrature(16);
    EXPECT_NEAR(q16.integrate([](const SpherePoint&) { return 1.0; }), 4.0 * kPi, 1e-12);
}

TEST(SphereQuadrature, MixedMonomial) {
    // int x^2 y^2 z^2 dS = 4 pi / 105
    const SphericalQuadrature q = make_sphere_quadrature(6);
    const double v = q.integrate([](const SpherePoint& p) {
        return p.x() * p.x() * p.y() * p.y() * p.z() * p.z();
    });
    EXPECT_NEAR(v, 4.0 * kPi / 105.0, 1e-14);
}

TEST(SphereQuadrature, DoublingPlateau) {
    // int exp(x) dS = 4 pi sinh(1)
    auto f = [](const SpherePoint& p) { return std::exp(p.x() + 0.3 * p.y()); };
    const double exact = 4.0 * kPi * std::sinh(std::hypot(1.0, 0.3)) / std::hypot(1.0, 0.3);
    const double a = make_sphere_quadrature(16).integrate(f);
    const double b = make_sphere_quadrature(32).integrate(f);
    EXPECT_NEAR(a, b, 1e-10);
    EXPECT_NEAR(b, exact, 1e-10);
}

TEST(SphereQuadrature, RejectsLowOrder) {
    EXPECT_THROW(make_sphere_quadrature(1), std::invalid_argument);
}

TEST(SpherePoint, ChecksNorm) {
    EXPECT_THROW(SpherePoint(Vec3(1.0, 1.0, 0.0)), std::invalid_argument);
    EXPECT_NO_THROW(SpherePoint(Vec3(0.0, 0.0, 1.0)));
    EXPECT_NEAR(SpherePoint::normalized(Vec3(3.0, 4.0, 0.0)).x(), 0.6, 1e-16);
}

namespace {
void expect_orthonormal(const TangentFrame& f) {
    EXPECT_NEAR(f.u.norm(), 1.0, 1e-12);
    EXPECT_NEAR(f.v.norm(), 1.0, 1e-12);
    EXPECT_NEAR(f.u.dot(f.v), 0.0, 1e-12);
    EXPECT_NEAR(f.u.dot(f.n), 0.0, 1e-12);
    EXPECT_NEAR(f.v.dot(f.n), 0.0, 1e-12);
}
}  // namespace

TEST(TangentFrame, Poles) {
    const TangentFrame north = tangent_frame(SpherePoint(Vec3(0.0, 0.0, 1.0)));
    expect_orthonormal(north);
    EXPECT_NEAR(north.u.z(), 0.0, 1e-15);
    EXPECT_NEAR(north.v.z(), 0.0, 1e-15);
    const TangentFrame south = tangent_frame(SpherePoint(Vec3(0.0, 0.0, -1.0)));
    expect_orthonormal(south);
    expect_orthonormal(tangent_frame(SpherePoint(Vec3(1.0, 0.0, 0.0))));
}

TEST(TangentFrame, RandomDirectionsAndRightHanded) {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const SpherePoint n = rng.unit_vector();
        const TangentFrame f = tangent_frame(n);
        expect_orthonormal(f);
        EXPECT_NEAR((f.u.cross(f.v) - n.vec()).norm(), 0.0, 1e-12);
        // deterministic
        const TangentFrame g = tangent_frame(n);
        EXPECT_EQ(f.u, g.u);
    }
}

TEST(Rng, ReproducibleAndInRange) {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    Rng c(5);
    for (int i = 0; i < 100; ++i) {
        const double v = c.log_uniform(0.1, 10.0);
        EXPECT_GE(v, 0.1);
        EXPECT_LE(v, 10.0);
    }
}
