#include "annuli/sphere_maps.hpp"

#include <cmath>
#include <stdexcept>

namespace annuli {

namespace {

struct Homogeneous {
    Complex z1;
    Complex z2;
};

// Homogeneous coordinates of p, linear in p. Both branches represent the
// same point of the Riemann sphere: (x + iy)(x - iy) = (1 - z)(1 + z).
bool upper_branch(const Vec3& p) { return p.z() > 0.0; }

Homogeneous lift(const Vec3& p) {
    if (upper_branch(p)) return {Complex(1.0 + p.z(), 0.0), Complex(p.x(), -p.y())};
    return {Complex(p.x(), p.y()), Complex(1.0 - p.z(), 0.0)};
}

Homogeneous lift_derivative(const Vec3& p, const Vec3& dp) {
    if (upper_branch(p)) return {Complex(dp.z(), 0.0), Complex(dp.x(), -dp.y())};
    return {Complex(dp.x(), dp.y()), Complex(-dp.z(), 0.0)};
}

Vec3 project(const Homogeneous& u) {
    const double n1 = std::norm(u.z1);
    const double n2 = std::norm(u.z2);
    const Complex w = 2.0 * u.z1 * std::conj(u.z2);
    const double s = n1 + n2;
    return Vec3(w.real() / s, w.imag() / s, (n1 - n2) / s);
}

Vec3 project_derivative(const Homogeneous& u, const Homogeneous& du) {
    const double n1 = std::norm(u.z1);
    const double n2 = std::norm(u.z2);
    const double s = n1 + n2;
    const Complex w = 2.0 * u.z1 * std::conj(u.z2);
    const Complex dw = 2.0 * (du.z1 * std::conj(u.z2) + u.z1 * std::conj(du.z2));
    const double dn1 = 2.0 * (std::conj(u.z1) * du.z1).real();
    const double dn2 = 2.0 * (std::conj(u.z2) * du.z2).real();
    const double ds = dn1 + dn2;
    const Vec3 q(w.real(), w.imag(), n1 - n2);
    const Vec3 dq(dw.real(), dw.imag(), dn1 - dn2);
    return dq / s - q * (ds / (s * s));
}

}  // namespace

ExtendedComplex stereographic(const SpherePoint& p) {
    const Homogeneous h = lift(p.vec());
    if (h.z2 == Complex(0.0, 0.0)) return ExtendedComplex::infinity();
    return {h.z1 / h.z2, false};
}

SpherePoint inverse_stereographic(const ExtendedComplex& w) {
    if (w.infinite) return SpherePoint(Vec3(0.0, 0.0, 1.0));
    return SpherePoint::normalized(project({w.value, Complex(1.0, 0.0)}));
}

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
    const Complex det = a * d - b * c;
    if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det)))
        throw std::invalid_argument("Mobius matrix must be nonsingular");
    const Complex s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
}

MobiusTransform MobiusTransform::identity() { return {1.0, 0.0, 0.0, 1.0}; }

SpherePoint MobiusTransform::apply(const SpherePoint& p) const {
    const Homogeneous z = lift(p.vec());
    return SpherePoint::normalized(project({a_ * z.z1 + b_ * z.z2, c_ * z.z1 + d_ * z.z2}));
}

double MobiusTransform::stretch(const SpherePoint& p) const {
    const Homogeneous z = lift(p.vec());
    const Complex u1 = a_ * z.z1 + b_ * z.z2;
    const Complex u2 = c_ * z.z1 + d_ * z.z2;
    return (std::norm(z.z1) + std::norm(z.z2)) / (std::norm(u1) + std::norm(u2));
}

Mat3 MobiusTransform::differential(const SpherePoint& p) const {
    const Homogeneous z = lift(p.vec());
    const Homogeneous u{a_ * z.z1 + b_ * z.z2, c_ * z.z1 + d_ * z.z2};
    Mat3 jac;
    for (int j = 0; j < 3; ++j) {
        const Homogeneous dz = lift_derivative(p.vec(), Vec3::Unit(j));
        const Homogeneous du{a_ * dz.z1 + b_ * dz.z2, c_ * dz.z1 + d_ * dz.z2};
        jac.col(j) = project_derivative(u, du);
    }
    return jac;
}

SpherePoint mobius_apply(const MobiusTransform& t, const SpherePoint& p) { return t.apply(p); }

MobiusTransform mobius_compose(const MobiusTransform& t1, const MobiusTransform& t2) {
    return {t1.a() * t2.a() + t1.b() * t2.c(), t1.a() * t2.b() + t1.b() * t2.d(),
            t1.c() * t2.a() + t1.d() * t2.c(), t1.c() * t2.b() + t1.d() * t2.d()};
}

MobiusTransform mobius_inverse(const MobiusTransform& t) { return {t.d(), -t.b(), -t.c(), t.a()}; }

double conformal_stretch(const MobiusTransform& t, const SpherePoint& p) { return t.stretch(p); }

double max_stretch(const MobiusTransform& t) {
    const double f = std::norm(t.a()) + std::norm(t.b()) + std::norm(t.c()) + std::norm(t.d());
    // sigma_1^2 + sigma_2^2 = f and sigma_1 sigma_2 = 1.
    return 0.5 * (f + std::sqrt(std::max(0.0, f * f - 4.0)));
}

MobiusTransform random_mobius(Rng& rng, double max_stretch_bound) {
    for (;;) {
        Complex m[4];
        for (auto& e : m) e = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const Complex det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-6) continue;
        MobiusTransform t(m[0], m[1], m[2], m[3]);
        if (max_stretch(t) <= max_stretch_bound) return t;
    }
}

SphereDifferential sphere_map_differential(const MobiusTransform& t, const Vec3& x,
                                           const TangentFrame& frame) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::invalid_argument("sphere map differential undefined at x = 0");
    const SpherePoint n = SpherePoint::normalized(x);
    const Mat3 dt = t.differential(n);
    SphereDifferential out;
    out.scale = 1.0 / r;
    out.du = dt * frame.u * out.scale;
    out.dv = dt * frame.v * out.scale;
    out.dn = Vec3::Zero();  // x/|x| is constant along rays
    return out;
}

Mat3 sphere_map_jacobian(const MobiusTransform& t, const Vec3& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::invalid_argument("sphere map Jacobian undefined at x = 0");
    const SpherePoint n = SpherePoint::normalized(x);
    const Mat3 proj = Mat3::Identity() - n.vec() * n.vec().transpose();
    return t.differential(n) * proj / r;
}

double gram_determinant(const MobiusTransform& t, const Vec3& x) {
    if (!(x.norm() > 0.0)) throw std::invalid_argument("Gram determinant undefined at x = 0");
    const SphereDifferential d =
        sphere_map_differential(t, x, tangent_frame(SpherePoint::normalized(x)));
    return d.du.cross(d.dv).norm();
}

double sphere_inequality_integral(const MobiusTransform& t, double radius,
                                  const SphericalQuadrature& quad) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    const double area = radius * radius;
    return quad.integrate([&](const SpherePoint& eta) {
        const Vec3 x = radius * eta.vec();
        const SphereDifferential d = sphere_map_differential(t, x, tangent_frame(eta));
        // ||DS||^2 - |D_N S|^2 = |D_U S|^2 + |D_V S|^2, and D_N S = 0.
        return (d.du.squaredNorm() + d.dv.squaredNorm()) * area;
    });
}

double sphere_inequality_integral(const VectorField& s, double radius,
                                  const SphericalQuadrature& quad, double fd_step) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    const double area = radius * radius;
    const double h = fd_step * radius;
    return quad.integrate([&](const SpherePoint& eta) {
        const Vec3 x = radius * eta.vec();
        const Mat3 ds = central_jacobian(s, x, h);
        return (ds.squaredNorm() - (ds * eta.vec()).squaredNorm()) * area;
    });
}

double gram_integral(const MobiusTransform& t, double radius, const SphericalQuadrature& quad) {
    const double area = radius * radius;
    return quad.integrate(
        [&](const SpherePoint& eta) { return gram_determinant(t, radius * eta.vec()) * area; });
}

}  // namespace annuli
