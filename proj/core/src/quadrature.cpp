#include "annuli/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <algorithm>

namespace annuli {

namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const auto dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
    }
    const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

GaussRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const auto dn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

GaussRule gauss_legendre(std::size_t n, double a, double b) {
    GaussRule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

SphericalQuadrature make_sphere_quadrature(std::size_t order) {
    if (order < 2) throw std::invalid_argument("sphere quadrature order must be at least 2");
    const GaussRule polar = gauss_legendre(order);
    const std::size_t n_phi = 2 * order;
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);

    SphericalQuadrature quad;
    quad.order = order;
    quad.nodes.reserve(order * n_phi);
    quad.weights.reserve(order * n_phi);
    for (std::size_t i = 0; i < order; ++i) {
        const double z = polar.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (std::size_t j = 0; j < n_phi; ++j) {
            const double phi = dphi * static_cast<double>(j);
            quad.nodes.push_back(SpherePoint::normalized(Vec3(s * std::cos(phi), s * std::sin(phi), z)));
            quad.weights.push_back(polar.weights[i] * dphi);
        }
    }
    return quad;
}

}  // namespace annuli
