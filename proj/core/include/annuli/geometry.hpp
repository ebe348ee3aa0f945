#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace annuli {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Spherical shell {x : inner < |x| < outer}. A zero inner radius is allowed
/// here; consumers of the weighted energy reject it.
class Annulus {
public:
    /// Throws std::invalid_argument unless 0 <= inner < outer.
    Annulus(double inner, double outer);

    /// Degenerate shell of zero width (a sphere). Only used as a target, for
    /// maps onto a sphere of fixed radius.
    static Annulus sphere(double radius);

    bool flat() const noexcept { return inner_ == outer_; }

    double inner() const noexcept { return inner_; }
    double outer() const noexcept { return outer_; }
    double width() const noexcept { return outer_ - inner_; }

    bool contains(double t) const noexcept { return t >= inner_ && t <= outer_; }
    bool strictly_positive() const noexcept { return inner_ > 0.0; }

    friend bool operator==(const Annulus&, const Annulus&) = default;

private:
    struct Flat {};
    Annulus(double radius, Flat) : inner_(radius), outer_(radius) {}

    double inner_;
    double outer_;
};

/// Domain annulus A(r, R) and target annulus A(r*, R*). The target may be
/// flat (r* == R*); the domain may not.
struct AnnulusPair {
    Annulus domain;
    Annulus target;

    AnnulusPair(double r, double R, double r_star, double R_star);
    AnnulusPair(Annulus d, Annulus t) : domain(d), target(t) {}

    double r() const noexcept { return domain.inner(); }
    double R() const noexcept { return domain.outer(); }
    double r_star() const noexcept { return target.inner(); }
    double R_star() const noexcept { return target.outer(); }

    /// Throws std::invalid_argument unless all four radii are positive.
    void require_weighted() const;
};

enum class Spacing { UniformT, UniformInverseT };

struct RadialGrid {
    Annulus annulus;
    std::vector<double> nodes;
    Spacing mode;

    std::size_t intervals() const noexcept { return nodes.size() - 1; }
};

/// `n` intervals, n + 1 nodes; both endpoints are copied exactly.
RadialGrid make_radial_grid(const Annulus& annulus, std::size_t n, Spacing mode);

/// Unit vector in R^3, checked on construction.
class SpherePoint {
public:
    static constexpr double kUnitTolerance = 1e-12;

    /// Throws std::invalid_argument if |v| differs from 1 by more than 1e-12.
    explicit SpherePoint(const Vec3& v);

    /// Projects a nonzero vector onto the sphere.
    static SpherePoint normalized(const Vec3& v);

    const Vec3& vec() const noexcept { return v_; }
    double x() const noexcept { return v_.x(); }
    double y() const noexcept { return v_.y(); }
    double z() const noexcept { return v_.z(); }

private:
    struct Trusted {};
    SpherePoint(const Vec3& v, Trusted) : v_(v) {}
    Vec3 v_;
};

/// Orthonormal (U, V, N) with N the base point.
struct TangentFrame {
    Vec3 u;
    Vec3 v;
    Vec3 n;
};

TangentFrame tangent_frame(const SpherePoint& n);

}  // namespace annuli
