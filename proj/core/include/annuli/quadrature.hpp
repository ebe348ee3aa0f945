#pragma once

#include "annuli/geometry.hpp"

#include <cstddef>
#include <vector>

namespace annuli {

/// Nodes and weights of an n-point Gauss-Legendre rule.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree
/// 2n - 1. Nodes are ascending.
GaussRule gauss_legendre(std::size_t n);

/// The same rule affinely mapped onto [a, b].
GaussRule gauss_legendre(std::size_t n, double a, double b);

/// Product rule on the unit sphere: `order` Gauss-Legendre nodes in cos(theta)
/// times 2 * order equispaced azimuths. Integrates spherical polynomials of
/// degree up to 2 * order - 1 exactly; the weights sum to 4 pi.
struct SphericalQuadrature {
    std::vector<SpherePoint> nodes;
    std::vector<double> weights;
    std::size_t order = 0;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

SphericalQuadrature make_sphere_quadrature(std::size_t order);

}  // namespace annuli
