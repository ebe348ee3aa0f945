#include "annuli/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace annuli {

Annulus::Annulus(double inner, double outer) : inner_(inner), outer_(outer) {
    if (!std::isfinite(inner) || !std::isfinite(outer))
        throw std::invalid_argument("annulus radii must be finite");
    if (inner < 0.0) throw std::invalid_argument("inner radius must be nonnegative");
    if (!(inner < outer)) throw std::invalid_argument("inner radius must be less than outer");
}

Annulus Annulus::sphere(double radius) {
    if (!std::isfinite(radius) || radius < 0.0)
        throw std::invalid_argument("sphere radius must be finite and nonnegative");
    return Annulus(radius, Flat{});
}

AnnulusPair::AnnulusPair(double r, double R, double r_star, double R_star)
    : domain(r, R),
      target(r_star == R_star ? Annulus::sphere(r_star) : Annulus(r_star, R_star)) {}

void AnnulusPair::require_weighted() const {
    if (!(r() > 0.0) || !(r_star() > 0.0))
        throw std::invalid_argument(
            "weighted energy requires strictly positive inner radii (r > 0, r* > 0)");
}

RadialGrid make_radial_grid(const Annulus& annulus, std::size_t n, Spacing mode) {
    if (n < 2) throw std::invalid_argument("radial grid needs at least 2 intervals");
    if (annulus.flat()) throw std::invalid_argument("radial grid needs a proper annulus");
    const double r = annulus.inner();
    const double R = annulus.outer();
    std::vector<double> nodes(n + 1);
    const auto dn = static_cast<double>(n);
    if (mode == Spacing::UniformT) {
        for (std::size_t i = 0; i <= n; ++i) nodes[i] = r + (R - r) * (static_cast<double>(i) / dn);
    } else {
        if (!(r > 0.0))
            throw std::invalid_argument("uniform-in-1/t spacing needs a positive inner radius");
        const double u0 = 1.0 / r;
        const double u1 = 1.0 / R;
        for (std::size_t i = 0; i <= n; ++i)
            nodes[i] = 1.0 / (u0 + (u1 - u0) * (static_cast<double>(i) / dn));
    }
    nodes.front() = r;
    nodes.back() = R;
    return RadialGrid{annulus, std::move(nodes), mode};
}

SpherePoint::SpherePoint(const Vec3& v) : v_(v) {
    const double n = v.norm();
    if (!(std::abs(n - 1.0) <= kUnitTolerance))
        throw std::invalid_argument("sphere point must have unit norm (got |p| = " +
                                    std::to_string(n) + ")");
}

SpherePoint SpherePoint::normalized(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    return SpherePoint(v / n, Trusted{});
}

TangentFrame tangent_frame(const SpherePoint& point) {
    const Vec3& n = point.vec();
    const Vec3 a = n.cwiseAbs();
    Vec3 u;
    // u is +-(n x e_y) when z dominates, else n x e_z; either way |u| >= 1/sqrt(3).
    if (a.z() >= a.x() && a.z() >= a.y())
        u = Vec3(n.z(), 0.0, -n.x());
    else
        u = Vec3(-n.y(), n.x(), 0.0);
    u.normalize();
    Vec3 v = n.cross(u);
    v.normalize();
    return TangentFrame{u, v, n};
}

}  // namespace annuli
